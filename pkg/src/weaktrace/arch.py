"""Memory-model architectures.

An architecture is four predicates:

* ``shadows(act)``: does the action run in two phases (main + shadow)?
* ``same_dep(a, b)``: must ``a`` precede ``b`` on the same processor?
* ``diff_dep(x, y, a, b)``: are ``a`` and ``b`` (different processors, with
  backlogs ``x`` and ``y`` in the current context) dependent?
* ``prec(a, b)``: the order used to sort events inside a step.

Backlogs are tuples of shadow events, newest first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .events import Action, Event, Fence, Store, in_class, reg_use, shared_var

Backlog = Sequence[Event]


@dataclass(frozen=True)
class Architecture:
    name: str
    shadows: Callable[[Action], bool]
    same_dep: Callable[[Event, Event], bool]
    diff_dep: Callable[[Backlog, Backlog, Event, Event], bool]
    prec: Callable[[Event, Event], bool]

    def same_indep(self, a: Event, b: Event) -> bool:
        return not self.same_dep(a, b) and not self.same_dep(b, a)

    def __repr__(self) -> str:
        return f"Architecture({self.name!r})"


def crxw(a: Event, b: Event) -> bool:
    va, vb = shared_var(a.act), shared_var(b.act)
    return va is not None and va == vb and (a.is_write or b.is_write)


def _pending_store(backlog: Backlog, var: str, eid: int) -> bool:
    return any(p.is_write and p.act.var == var and p.eid < eid for p in backlog)


def _global_contact(x: Backlog, y: Backlog, a: Event, b: Event, read_kind_ok) -> bool:
    va, vb = shared_var(a.act), shared_var(b.act)
    if va is None or va != vb:
        return False

    def role(e: Event, bk: Backlog):
        if e.is_write:
            return "w" if e.is_shadow else None
        if read_kind_ok(e) and not _pending_store(bk, e.act.var, e.eid):
            return "r"
        return None

    ra, rb = role(a, x), role(b, y)
    return ra is not None and rb is not None and "w" in (ra, rb)


def crxw_p(x: Backlog, y: Backlog, a: Event, b: Event) -> bool:
    """Shadow stores are the global writes; a load is a global read when its
    own backlog has no older pending store to the same variable."""
    return _global_contact(x, y, a, b, lambda e: True)


def crxw_pp(x: Backlog, y: Backlog, a: Event, b: Event) -> bool:
    """As :func:`crxw_p` but only shadow loads count as global reads."""
    return _global_contact(x, y, a, b, lambda e: e.is_shadow)


def data_dep(a: Event, b: Event) -> bool:
    """The newer event ``b`` uses a register the older ``a`` defines."""
    return bool(reg_use(b.act).reads & reg_use(a.act).writes)


def control_dep(a: Event, b: Event) -> bool:
    return a.is_assert and b.is_write


def fence_clauses(a: Event, b: Event) -> bool:
    """Extra same-processor ordering contributed by fence shadows.

    A shadow ``fence(X, Y)`` waits for older shadow events of class X, and
    holds back newer events (main or shadow) of class Y.
    """
    if b.is_shadow and isinstance(b.act, Fence) and a.is_shadow and a.eid < b.eid:
        if in_class(a, b.act.before):
            return True
    if a.is_shadow and isinstance(a.act, Fence) and a.eid < b.eid:
        if in_class(b, a.act.after):
            return True
    return False


def _program_order_core(a: Event, b: Event) -> bool:
    return (a.is_main and b.is_main and a.eid < b.eid) or (
        a.is_main and b.is_shadow and a.eid == b.eid
    )


def _pid_then_eid(a: Event, b: Event) -> bool:
    return (a.pid, a.eid) < (b.pid, b.eid)


def sc() -> Architecture:
    return Architecture(
        name="sc",
        shadows=lambda act: False,
        same_dep=lambda a, b: a.eid < b.eid,
        diff_dep=lambda x, y, a, b: crxw(a, b),
        prec=lambda a, b: a.pid < b.pid,
    )


def _tso_same_dep(a: Event, b: Event) -> bool:
    return (
        _program_order_core(a, b)
        or (a.is_shadow and b.is_shadow and a.eid < b.eid)
        or fence_clauses(a, b)
    )


def _pso_same_dep(a: Event, b: Event) -> bool:
    return (
        _program_order_core(a, b)
        or (a.is_shadow and b.is_shadow and a.eid < b.eid and a.var == b.var and a.var is not None)
        or fence_clauses(a, b)
    )


def _rmo_same_dep(a: Event, b: Event) -> bool:
    if _program_order_core(a, b):
        return True
    if a.is_shadow and b.is_shadow and a.eid < b.eid:
        same_loc = a.var is not None and a.var == b.var and (a.is_write or a.is_read) and b.is_write
        if same_loc or data_dep(a, b) or control_dep(a, b):
            return True
    return fence_clauses(a, b)


def _store_or_fence(act: Action) -> bool:
    return isinstance(act, (Store, Fence))


def tso() -> Architecture:
    return Architecture("tso", _store_or_fence, _tso_same_dep, crxw_p, _pid_then_eid)


def pso() -> Architecture:
    return Architecture("pso", _store_or_fence, _pso_same_dep, crxw_p, _pid_then_eid)


def rmo() -> Architecture:
    return Architecture("rmo", lambda act: True, _rmo_same_dep, crxw_pp, _pid_then_eid)


ARCHITECTURES = {"sc": sc, "tso": tso, "pso": pso, "rmo": rmo}


def by_name(name: str) -> Architecture:
    try:
        return ARCHITECTURES[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown architecture {name!r}; expected one of {', '.join(ARCHITECTURES)}") from None
