"""
Store buffering under SC and TSO
================================

Two processors each raise a flag and then read the other one's flag.
Under sequential consistency at least one of them sees the other's write;
with store buffers both can read 0.
"""

from weaktrace import by_name, check_condition, normal_executions, reachable, render_execution
from weaktrace.corpus import load
from weaktrace.evaluation import litmus_config
from weaktrace.gen import count_paths

lit = load("dekker.lit")

# Every interleaving versus one representative per equivalence class.
for name in ("sc", "tso", "pso", "rmo"):
    arch = by_name(name)
    c0 = litmus_config(lit, unroll=2)
    total, _ = count_paths(arch, c0)
    forms = [render_execution(arch, es) for es in normal_executions(arch, c0)]
    print(f"{name}: {total} executions, {len(forms)} normal: {' '.join(forms)}")

# Final register values.  The normal executions alone are enough: every
# execution in a class ends in the same state.
for name in ("sc", "tso"):
    arch = by_name(name)
    reach = reachable(lit, arch)
    pairs = sorted((dict(o)["P1:r1"], dict(o)["P2:r2"]) for o in reach.states)
    holds, witness = check_condition(lit, reach)
    print(f"{name}: (r1, r2) in {pairs}")
    if holds:
        # a and c put the stores in the buffers, b and d read memory,
        # a' and c' flush the buffers afterwards
        print(f"  both zero via {render_execution(arch, witness)}")
