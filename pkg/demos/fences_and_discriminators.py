"""
Which litmus tests tell the models apart
========================================

Each corpus test has an exists-condition that is reachable on some
architectures and not on others.  The table shows the verdict for every
pair, plus how much the Foata pruning saves.
"""

from weaktrace import by_name, check_condition, reachable
from weaktrace.corpus import litmus_files, load
from weaktrace.evaluation import litmus_config
from weaktrace.gen import count_paths

ARCHS = ("sc", "tso", "pso", "rmo")

print(f"{'test':22}" + "".join(f"{a:>14}" for a in ARCHS))
for file in litmus_files():
    lit = load(file)
    cells = []
    for name in ARCHS:
        arch = by_name(name)
        reach = reachable(lit, arch)
        holds, _ = check_condition(lit, reach)
        total, _ = count_paths(arch, litmus_config(lit, 2))
        cells.append(f"{'yes' if holds else 'no'} {reach.executions}/{total}")
    print(f"{lit.name:22}" + "".join(f"{c:>14}" for c in cells))

# Reading the table:
#  - dekker needs store-load reordering, so only SC forbids it; the
#    store-load fence restores the SC answer everywhere.
#  - mp needs two stores to different variables to reach memory out of
#    order: PSO and RMO only.
#  - load_reorder fences the writer, so only reordering the reader's loads
#    helps: RMO only, and a load-load fence removes it again.
