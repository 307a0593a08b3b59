"""Replaying symbolic executions from an initial state.

Every action takes effect at its completion event: the shadow event when the
architecture splits the action, the main event otherwise.  Stores are
buffered at their main event and reach memory at their shadow event; a load
completing while its own processor still buffers an older store to the same
variable reads the newest such entry.

Register operands are bound when the main event issues (main events always
follow program order), so each read names the exact definition it consumes.
Under RMO that definition may still be pending; the value is then kept as a
:class:`Deferred` and forced once the definition completes.  Conditions that
cannot be decided yet are re-checked at the end of the execution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .arch import Architecture
from .events import Assert, Event, Load, RegOp, Store, reg_use
from .expr import AExpr, BExpr, eval_arith, eval_bool
from .gen import GenStats, initial_config, normal_executions
from .lang import Litmus, expand

DefId = tuple[int, int]  # (pid, eid) of the event defining a register value
Binding = tuple[tuple[str, Optional[DefId]], ...]


class AssertionFailed(Exception):
    def __init__(self, event: Event):
        super().__init__(f"assertion failed at {event}")
        self.event = event


class Unresolved(Exception):
    pass


@dataclass(frozen=True)
class Deferred:
    """An expression whose register operands are not all computed yet."""

    expr: Union[AExpr, BExpr]
    env: Binding


Value = Union[int, Deferred]


@dataclass(frozen=True)
class BufferEntry:
    eid: int
    var: str
    value: Value


@dataclass
class MachineState:
    mem: dict[str, Value]
    buffers: dict[int, tuple[BufferEntry, ...]] = field(default_factory=dict)
    defs: dict[DefId, Value] = field(default_factory=dict)
    names: dict[tuple[int, str], DefId] = field(default_factory=dict)
    bound: dict[DefId, Binding] = field(default_factory=dict)
    checks: tuple[tuple[Event, Binding], ...] = ()

    def copy(self) -> "MachineState":
        return MachineState(
            dict(self.mem), dict(self.buffers), dict(self.defs), dict(self.names), dict(self.bound), self.checks
        )

    def force(self, value: Value) -> int:
        if isinstance(value, int):
            return value
        return eval_arith(self._env(value.env), value.expr)

    def _env(self, env: Binding) -> dict[str, int]:
        out = {}
        for reg, src in env:
            if src is None:
                out[reg] = 0
            elif src in self.defs:
                out[reg] = self.force(self.defs[src])
            else:
                raise Unresolved(src)
        return out

    def compute(self, expr: AExpr, env: Binding) -> Value:
        try:
            return eval_arith(self._env(env), expr)
        except Unresolved:
            return Deferred(expr, env)

    def register(self, pid: int, reg: str) -> int:
        src = self.names.get((pid, reg))
        return 0 if src is None else self.force(self.defs[src])


def initial_state(init: dict[str, int]) -> MachineState:
    return MachineState(mem=dict(init))


def _check(st: MachineState, ev: Event, env: Binding) -> None:
    try:
        ok = eval_bool(st._env(env), ev.act.cond)
    except Unresolved:
        st.checks = st.checks + ((ev, env),)
        return
    if not ok:
        raise AssertionFailed(ev)


def _complete(arch: Architecture, st: MachineState, ev: Event, env: Binding) -> None:
    act, key = ev.act, (ev.pid, ev.eid)
    if isinstance(act, RegOp):
        st.defs[key] = st.compute(act.expr, env)
    elif isinstance(act, Load):
        value = None
        for entry in st.buffers.get(ev.pid, ()):
            if entry.var == act.var and entry.eid < ev.eid:
                value = entry.value
                break
        st.defs[key] = value if value is not None else st.mem.get(act.var, 0)
    elif isinstance(act, Store):
        if arch.shadows(act):
            buf = st.buffers[ev.pid]
            entry = next(b for b in buf if b.eid == ev.eid)
            st.buffers[ev.pid] = tuple(b for b in buf if b.eid != ev.eid)
            value = entry.value
            if isinstance(value, Deferred):
                try:
                    value = st.force(value)
                except Unresolved:
                    pass
            st.mem[act.var] = value
        else:
            st.mem[act.var] = st.compute(act.expr, env)
    elif isinstance(act, Assert):
        _check(st, ev, env)


def apply_event(arch: Architecture, st: MachineState, ev: Event) -> MachineState:
    """State after ``ev``; raises :class:`AssertionFailed` on a false assert."""
    st = st.copy()
    key = (ev.pid, ev.eid)
    if ev.is_main:
        use = reg_use(ev.act)
        env = tuple((r, st.names.get((ev.pid, r))) for r in sorted(use.reads))
        for r in use.writes:
            st.names[(ev.pid, r)] = key
        if not arch.shadows(ev.act):
            _complete(arch, st, ev, env)
            return st
        st.bound[key] = env
        if isinstance(ev.act, Store):
            entry = BufferEntry(ev.eid, ev.act.var, st.compute(ev.act.expr, env))
            st.buffers[ev.pid] = (entry,) + st.buffers.get(ev.pid, ())
        return st
    env = st.bound.pop(key)
    _complete(arch, st, ev, env)
    return st


def finish(st: MachineState) -> MachineState:
    """Resolve deferred values and pending checks at the end of an execution."""
    for ev, env in st.checks:
        if not eval_bool(st._env(env), ev.act.cond):
            raise AssertionFailed(ev)
    st = st.copy()
    st.checks = ()
    st.mem = {v: st.force(x) for v, x in st.mem.items()}
    return st


Observation = tuple[tuple[str, int], ...]


def observe(litmus: Litmus, st: MachineState) -> Observation:
    """Final memory plus every register, keyed ``x`` and ``P:r`` respectively."""
    obs = {v: st.force(st.mem.get(v, 0)) for v in litmus.variables()}
    for pid, reg in litmus.registers():
        obs[f"{litmus.procs[pid].name}:{reg}"] = st.register(pid, reg)
    return tuple(sorted(obs.items()))


def run_execution(litmus: Litmus, arch: Architecture, es: Iterable[Event]) -> Optional[MachineState]:
    st = initial_state(dict(litmus.init))
    try:
        for ev in es:
            st = apply_event(arch, st, ev)
        st = finish(st)
    except AssertionFailed:
        return None
    if any(st.buffers.values()):
        raise ValueError("execution ended with non-empty store buffers")
    return st


def condition_env(litmus: Litmus, obs: Observation) -> dict[str, int]:
    return dict(obs)


def holds(litmus: Litmus, obs: Observation) -> bool:
    return eval_bool(condition_env(litmus, obs), litmus.cond)


@dataclass
class Reachability:
    states: frozenset
    witnesses: dict  # observation -> first execution (DFS order) reaching it
    order: list  # observations in order of first discovery
    executions: int = 0
    invalid: int = 0
    stats: GenStats = field(default_factory=GenStats)


def litmus_config(litmus: Litmus, unroll: int):
    return initial_config([expand(p, unroll) for p in litmus.programs])


def collect(litmus: Litmus, arch: Architecture, executions: Iterable, stats: Optional[GenStats] = None) -> Reachability:
    witnesses: dict = {}
    order: list = []
    count = invalid = 0
    for es in executions:
        count += 1
        st = run_execution(litmus, arch, es)
        if st is None:
            invalid += 1
            continue
        obs = observe(litmus, st)
        if obs not in witnesses:
            witnesses[obs] = es
            order.append(obs)
    return Reachability(frozenset(witnesses), witnesses, order, count, invalid, stats or GenStats())


def reachable(litmus: Litmus, arch: Architecture, unroll: int = 2, max_execs: Optional[int] = None) -> Reachability:
    """Final observations over the normal executions of ``litmus``."""
    stats = GenStats()
    execs = normal_executions(arch, litmus_config(litmus, unroll), stats)
    if max_execs is not None:
        execs = _capped(execs, max_execs)
    return collect(litmus, arch, execs, stats)


class ExecutionLimitExceeded(RuntimeError):
    pass


def _capped(execs, limit):
    for i, es in enumerate(execs):
        if i >= limit:
            raise ExecutionLimitExceeded(f"more than {limit} normal executions")
        yield es


def check_condition(litmus: Litmus, reach: Reachability) -> tuple[bool, Optional[tuple]]:
    """Does some reachable observation satisfy the exists-condition?

    The witness is the earliest (in enumeration order) execution reaching a
    satisfying observation.
    """
    for obs in reach.order:
        if holds(litmus, obs):
            return True, reach.witnesses[obs]
    return False, None
