"""Brute-force reference used to certify the pruned enumeration.

Everything here is exponential on purpose and refuses inputs beyond
:data:`MAX_PROCS` processors or :data:`MAX_EVENTS` events per execution.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .arch import Architecture, rmo
from .events import Fence, Load, RegOp, Store
from .evaluation import Observation, apply_event, finish, initial_state, litmus_config, observe, AssertionFailed
from .expr import BinOp, BoolConst, Cmp, Lit, Reg
from .gen import Execution, GenStats, SysConfig, all_paths, count_paths, normal_executions
from .lang import Act, Choice, If, Litmus, Proc, Program, While, expand
from .trace import EMPTY_CONTEXT, Context, indep, is_foata_normal, step_indep

MAX_PROCS = 4
MAX_EVENTS = 12


class OracleLimitError(ValueError):
    pass


def max_events(arch: Architecture, prog: Program) -> int:
    """Longest possible event count of one processor running ``prog``."""
    total = 0
    for cmd in prog:
        if isinstance(cmd, Act):
            total += 2 if arch.shadows(cmd.action) else 1
        elif isinstance(cmd, Choice):
            total += max(max_events(arch, cmd.left), max_events(arch, cmd.right))
        else:
            raise TypeError(f"program is not expanded: {cmd!r}")
    return total


def check_limits(arch: Architecture, c0: SysConfig) -> None:
    if len(c0) > MAX_PROCS:
        raise OracleLimitError(f"oracle handles at most {MAX_PROCS} processors, got {len(c0)}")
    n = sum(max_events(arch, lc.prog) for lc in c0)
    if n > MAX_EVENTS:
        raise OracleLimitError(f"oracle handles at most {MAX_EVENTS} events per execution, got up to {n}")


def all_executions(arch: Architecture, c0: SysConfig, stats: Optional[GenStats] = None) -> list[Execution]:
    """Every complete execution, in DFS order, with no pruning."""
    check_limits(arch, c0)
    return list(all_paths(arch, c0, stats))


# --------------------------------------------------------------- swap closure


def _adjacent_swaps(arch: Architecture, es: Execution):
    ctx = EMPTY_CONTEXT
    for k in range(len(es) - 1):
        if indep(arch, ctx, es[k], es[k + 1]):
            yield k, es[:k] + (es[k + 1], es[k]) + es[k + 2 :]
        ctx = ctx.advance(arch, es[k])


def swap_closure_violations(arch: Architecture, execs: Iterable[Execution]) -> list[tuple[Execution, int]]:
    """(execution, position) pairs whose legal swap leaves the set."""
    return swap_partition(arch, execs)[1]


@dataclass(frozen=True)
class EquivClass:
    members: frozenset
    normal: tuple  # members accepted by the normality checker

    @property
    def canonical(self) -> Execution:
        if len(self.normal) != 1:
            raise ValueError(f"class has {len(self.normal)} normal members")
        return self.normal[0]


def equiv_classes(arch: Architecture, execs: Iterable[Execution]) -> list[EquivClass]:
    """Partition by closure under adjacent swaps of independent events,
    independence being evaluated in the context of the prefix before the pair."""
    return swap_partition(arch, execs)[0]


def swap_partition(arch: Architecture, execs: Iterable[Execution]):
    """Equivalence classes and swap-closure violations in one pass."""
    execs = list(dict.fromkeys(execs))
    index = {es: i for i, es in enumerate(execs)}
    parent = list(range(len(execs)))
    violations = []

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, es in enumerate(execs):
        for k, sw in _adjacent_swaps(arch, es):
            j = index.get(sw)
            if j is None:
                violations.append((es, k))
                continue
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list] = {}
    for i, es in enumerate(execs):
        groups.setdefault(find(i), []).append(es)
    classes = [
        EquivClass(frozenset(ms), tuple(m for m in ms if is_foata_normal(arch, m)))
        for _, ms in sorted(groups.items())
    ]
    return classes, violations


def equivalent(arch: Architecture, a: Execution, b: Execution, limit: int = 200_000) -> bool:
    """Breadth-first search for ``b`` among the swap-rearrangements of ``a``."""
    if sorted(map(repr, a)) != sorted(map(repr, b)):
        return False
    seen = {a}
    frontier = [a]
    while frontier:
        nxt = []
        for es in frontier:
            if es == b:
                return True
            for _, sw in _adjacent_swaps(arch, es):
                if sw not in seen:
                    seen.add(sw)
                    nxt.append(sw)
        if len(seen) > limit:
            raise OracleLimitError("swap closure too large")
        frontier = nxt
    return False


# ----------------------------------------------------------- normal forms


def foata_conditions(arch: Architecture, steps: Sequence[Sequence]) -> bool:
    """The three defining conditions of a Foata decomposition, checked directly."""
    contexts = [EMPTY_CONTEXT]
    for s in steps:
        contexts.append(contexts[-1].advance_all(arch, s))
    for i, s in enumerate(steps):
        ctx = contexts[i]
        if not s:
            return False
        for a, b in itertools.combinations(s, 2):
            if not indep(arch, ctx, a, b):
                return False
            if not arch.prec(a, b):
                return False
        if i > 0:
            prev = steps[i - 1]
            for b in s:
                if step_indep(arch, contexts[i - 1], prev, b):
                    return False
    return True


def splits(es: Sequence) -> Iterable[list[tuple]]:
    n = len(es)
    if n == 0:
        yield []
        return
    for cuts in itertools.product((False, True), repeat=n - 1):
        steps, cur = [], [es[0]]
        for e, cut in zip(es[1:], cuts):
            if cut:
                steps.append(tuple(cur))
                cur = [e]
            else:
                cur.append(e)
        steps.append(tuple(cur))
        yield steps


def is_foata_by_definition(arch: Architecture, es: Sequence) -> bool:
    """Is there any split of ``es`` into steps satisfying the conditions?"""
    return any(foata_conditions(arch, s) for s in splits(es))


def foata_normalize(arch: Architecture, es: Execution) -> Execution:
    """Greedy left-to-right normalization using only legal adjacent swaps.

    Each step takes every remaining event that can be bubbled to the front of
    the remainder and is independent of the step so far (in the step's
    opening context); the step is then sorted by ``prec``.
    """
    work = list(es)
    placed = 0
    ctx = EMPTY_CONTEXT
    while placed < len(work):
        size = 0
        changed = True
        while changed:
            changed = False
            j = placed + size
            while j < len(work):
                e = work[j]
                step = work[placed : placed + size]
                if step_indep(arch, ctx, step, e) and _can_bubble(arch, ctx, work, placed, placed + size, j):
                    del work[j]
                    work.insert(placed + size, e)
                    size += 1
                    changed = True
                j += 1
        _sort_step(arch, ctx, work, placed, placed + size)
        ctx = ctx.advance_all(arch, work[placed : placed + size])
        placed += size
    return tuple(work)


def _can_bubble(arch: Architecture, ctx: Context, work: list, placed: int, target: int, j: int) -> bool:
    """Can ``work[j]`` move left to ``target`` through legal swaps?"""
    e = work[j]
    c = ctx.advance_all(arch, work[placed:target])
    contexts = []
    for k in range(target, j):
        contexts.append(c)
        c = c.advance(arch, work[k])
    return all(indep(arch, contexts[k - target], work[k], e) for k in reversed(range(target, j)))


def _sort_step(arch: Architecture, ctx: Context, work: list, lo: int, hi: int) -> None:
    """Insertion sort by ``prec`` where each swap must itself be legal."""
    for i in range(lo + 1, hi):
        k = i
        while k > lo and arch.prec(work[k], work[k - 1]):
            c = ctx.advance_all(arch, work[lo : k - 1])
            if not indep(arch, c, work[k - 1], work[k]):
                raise AssertionError("step members became dependent inside the step")
            work[k - 1], work[k] = work[k], work[k - 1]
            k -= 1


# ---------------------------------------------------------------- outcomes


def replay_all(litmus: Litmus, arch: Architecture, execs: Sequence[Execution]) -> list[Optional[Observation]]:
    """Final observation of every execution (``None`` when an assert fails).

    Consecutive executions in DFS order share prefixes, so the replay keeps
    the state after each event of the previous execution and resumes from the
    longest common prefix.
    """
    base = initial_state(dict(litmus.init))
    states: list = [base]  # states[k]: state after k events, None once an assert failed
    prev: Execution = ()
    out = []
    for es in execs:
        k = 0
        limit = min(len(es), len(prev), len(states) - 1)
        while k < limit and es[k] == prev[k]:
            k += 1
        del states[k + 1 :]
        for ev in es[k:]:
            st = states[-1]
            if st is not None:
                try:
                    st = apply_event(arch, st, ev)
                except AssertionFailed:
                    st = None
            states.append(st)
        final = states[-1]
        if final is not None:
            try:
                final = finish(final)
            except AssertionFailed:
                final = None
        out.append(None if final is None else observe(litmus, final))
        prev = es
    return out


@dataclass
class VerifyReport:
    litmus: str
    arch: str
    unroll: int
    total: int
    classes: int
    normal: int
    stuck: int
    swap_closed: bool
    normal_equals_classes: bool
    one_normal_per_class: bool
    same_reachable: bool
    normalizer_agrees: bool = True
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.swap_closed
            and self.normal_equals_classes
            and self.one_normal_per_class
            and self.same_reachable
            and self.normalizer_agrees
        )


def verify(litmus: Litmus, arch: Architecture, unroll: int = 2, normalize: bool = False) -> VerifyReport:
    """Cross-check the pruned enumeration against full enumeration."""
    c0 = litmus_config(litmus, unroll)
    stats = GenStats()
    execs = all_executions(arch, c0, stats)
    normals = list(normal_executions(arch, c0))
    classes, violations = swap_partition(arch, execs)
    outcomes = replay_all(litmus, arch, execs)
    all_states = {o for o in outcomes if o is not None}
    normal_set = set(normals)
    normal_states = {o for es, o in zip(execs, outcomes) if o is not None and es in normal_set}
    failures = []
    if violations:
        failures.append(f"{len(violations)} swaps leave the execution set")
    bad = [c for c in classes if len(c.normal) != 1]
    if bad:
        failures.append(f"{len(bad)} classes without exactly one normal member")
    if len(normals) != len(classes):
        failures.append(f"{len(normals)} normal executions for {len(classes)} classes")
    if all_states != normal_states:
        failures.append("normal executions miss reachable observations")
    agrees = True
    if normalize:
        for c in classes:
            if len(c.normal) == 1:
                for es in c.members:
                    if foata_normalize(arch, es) != c.normal[0]:
                        agrees = False
        if not agrees:
            failures.append("greedy normalization disagrees with class representative")
    return VerifyReport(
        litmus=litmus.name,
        arch=arch.name,
        unroll=unroll,
        total=len(execs),
        classes=len(classes),
        normal=len(normals),
        stuck=stats.stuck,
        swap_closed=not violations,
        normal_equals_classes=len(normals) == len(classes),
        one_normal_per_class=not bad,
        same_reachable=all_states == normal_states,
        normalizer_agrees=agrees,
        failures=failures,
    )


# -------------------------------------------------------- random programs

_VARS = ("x", "y")
_REGS = ("r0", "r1", "r2")
_FENCE = ("store", "load")


def _random_action(rng: random.Random):
    kind = rng.choice(("store", "store", "load", "load", "regop", "fence"))
    if kind == "store":
        value = Reg(rng.choice(_REGS)) if rng.random() < 0.3 else Lit(rng.choice((1, 2)))
        return Store(rng.choice(_VARS), value)
    if kind == "load":
        return Load(rng.choice(_REGS), rng.choice(_VARS))
    if kind == "regop":
        return RegOp(rng.choice(_REGS), BinOp("+", Reg(rng.choice(_REGS)), Lit(1)))
    return Fence(rng.choice(_FENCE), rng.choice(_FENCE))


def _random_conditional(rng: random.Random):
    cond = Cmp(rng.choice(("==", "!=")), Reg(rng.choice(_REGS)), Lit(rng.choice((0, 1))))
    if rng.random() < 0.7:
        orelse = (Act(_random_action(rng)),) if rng.random() < 0.4 else ()
        return If(cond, (Act(_random_action(rng)),), orelse)
    return While(cond, (Act(Load(rng.choice(_REGS), rng.choice(_VARS))),))


def random_litmus(
    rng: random.Random,
    max_procs: int = 3,
    max_actions: int = 3,
    max_total_events: int = MAX_EVENTS,
    unroll: int = 1,
    limit_arch: Optional[Architecture] = None,
    max_executions: Optional[int] = None,
) -> Litmus:
    """A random small litmus test with at most one conditional.

    Programs are redrawn until executions stay within ``max_total_events``
    events and, if given, ``max_executions`` complete paths, both measured
    under ``limit_arch`` (RMO by default, which splits every action).
    """
    limit_arch = limit_arch or rmo()
    while True:
        nprocs = rng.randint(2, max_procs)
        cond_slot = (rng.randrange(nprocs), rng.randrange(max_actions)) if rng.random() < 0.5 else None
        procs = []
        for pid in range(nprocs):
            prog = []
            for i in range(rng.randint(1, max_actions)):
                if cond_slot == (pid, i):
                    prog.append(_random_conditional(rng))
                else:
                    prog.append(Act(_random_action(rng)))
            procs.append(Proc(f"P{pid}", tuple(prog)))
        init = {v: rng.choice((0, 0, 1)) for v in _VARS}
        lit = Litmus("random", init, tuple(procs), BoolConst(True))
        total = sum(max_events(limit_arch, expand(p.program, unroll)) for p in procs)
        if total > max_total_events:
            continue
        if max_executions is not None:
            done, stuck = count_paths(limit_arch, litmus_config(lit, unroll))
            if done + stuck > max_executions:
                continue
        return lit
