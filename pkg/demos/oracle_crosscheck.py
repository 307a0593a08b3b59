"""
Checking the pruned enumeration against brute force
===================================================

The oracle generates every execution, groups them into classes under swaps
of adjacent independent events, and compares with what the pruned
generator produced.
"""

import random

from weaktrace import by_name, render_execution
from weaktrace.corpus import load
from weaktrace.evaluation import litmus_config
from weaktrace.lang import format_litmus
from weaktrace.oracle import all_executions, equiv_classes, foata_normalize, random_litmus, verify

# The six SC interleavings of the store-buffering test fall into three
# classes; the big one holds acbd, cabd, acdb and cadb.
arch = by_name("sc")
lit = load("dekker.lit")
execs = all_executions(arch, litmus_config(lit, 2))
for cls in equiv_classes(arch, execs):
    print(f"class of {len(cls.members)}, normal form {render_execution(arch, cls.canonical)}")

# Normalizing any member by legal swaps lands on the class representative.
cabd = next(es for es in execs if [(e.pid, e.eid) for e in es] == [(1, 0), (0, 0), (0, 1), (1, 1)])
print("cabd ->", render_execution(arch, foata_normalize(arch, cabd)))

# Random programs under every architecture.
rng = random.Random(1)
for i in range(5):
    lit = random_litmus(rng, unroll=1, max_executions=5000)
    if i == 0:
        print(format_litmus(lit))
    for name in ("sc", "tso", "pso", "rmo"):
        rep = verify(lit, by_name(name), unroll=1)
        status = "ok" if rep.passed else "; ".join(rep.failures)
        print(f"program {i} {name}: {rep.total} executions, {rep.classes} classes, {status}")
