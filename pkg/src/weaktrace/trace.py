"""Contextual independence and incremental Foata-normality checking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .arch import Architecture
from .events import Event

Step = tuple[Event, ...]


@dataclass(frozen=True)
class Context:
    """Per-processor backlogs reached after some prefix of an execution.

    Stored as sorted ``(pid, backlog)`` pairs with empty backlogs dropped,
    so equal contexts compare and hash equal.
    """

    entries: tuple[tuple[int, tuple[Event, ...]], ...] = ()

    def backlog(self, pid: int) -> tuple[Event, ...]:
        for p, b in self.entries:
            if p == pid:
                return b
        return ()

    def with_backlog(self, pid: int, backlog: tuple[Event, ...]) -> "Context":
        rest = [(p, b) for p, b in self.entries if p != pid]
        if backlog:
            rest.append((pid, backlog))
        return Context(tuple(sorted(rest, key=lambda pb: pb[0])))

    def advance(self, arch: Architecture, e: Event) -> "Context":
        if e.is_shadow:
            return self.with_backlog(e.pid, tuple(b for b in self.backlog(e.pid) if b != e))
        if arch.shadows(e.act):
            return self.with_backlog(e.pid, (e.shadow(),) + self.backlog(e.pid))
        return self

    def advance_all(self, arch: Architecture, events: Iterable[Event]) -> "Context":
        ctx = self
        for e in events:
            ctx = ctx.advance(arch, e)
        return ctx


EMPTY_CONTEXT = Context()


def indep(arch: Architecture, ctx: Context, a: Event, b: Event) -> bool:
    if a == b:
        return False
    if a.pid == b.pid:
        return arch.same_indep(a, b)
    return not arch.diff_dep(ctx.backlog(a.pid), ctx.backlog(b.pid), a, b)


def step_indep(arch: Architecture, ctx: Context, step: Sequence[Event], e: Event) -> bool:
    return all(indep(arch, ctx, s, e) for s in step)


@dataclass(frozen=True)
class CheckerState:
    prev: Optional[Step] = None
    curr: Optional[Step] = None
    ctx_before_prev: Context = EMPTY_CONTEXT
    ctx_before_curr: Context = EMPTY_CONTEXT
    ctx_now: Context = EMPTY_CONTEXT


def checker_init() -> CheckerState:
    return CheckerState()


def checker_extend(arch: Architecture, st: CheckerState, e: Event) -> Optional[CheckerState]:
    """Extend a normal prefix by ``e``; ``None`` means the result is not normal.

    ``e`` opens a new step when it depends on some member of the current
    step.  Otherwise it may join the current step only if it depends on the
    previous step (or the current step is the first one) and it sorts after
    the current step's last member.
    """
    if st.curr is None:
        return CheckerState(None, (e,), st.ctx_now, st.ctx_now, st.ctx_now.advance(arch, e))
    if not step_indep(arch, st.ctx_before_curr, st.curr, e):
        return CheckerState(st.curr, (e,), st.ctx_before_curr, st.ctx_now, st.ctx_now.advance(arch, e))
    anchored = st.prev is None or not step_indep(arch, st.ctx_before_prev, st.prev, e)
    if anchored and arch.prec(st.curr[-1], e):
        return CheckerState(
            st.prev, st.curr + (e,), st.ctx_before_prev, st.ctx_before_curr, st.ctx_now.advance(arch, e)
        )
    return None


def is_foata_normal(arch: Architecture, es: Iterable[Event]) -> bool:
    st = checker_init()
    for e in es:
        st = checker_extend(arch, st, e)
        if st is None:
            return False
    return True


def decompose(arch: Architecture, es: Iterable[Event]) -> list[Step]:
    """Split a normal execution into its steps."""
    st = checker_init()
    steps: list[list[Event]] = []
    for i, e in enumerate(es):
        nxt = checker_extend(arch, st, e)
        if nxt is None:
            raise ValueError(f"execution is not in Foata normal form at position {i}")
        if len(nxt.curr) == 1:
            steps.append([e])
        else:
            steps[-1].append(e)
        st = nxt
    return [tuple(s) for s in steps]


def event_labels(events: Iterable[Event]) -> dict[tuple[int, int], str]:
    """Letters for each (pid, eid), assigned in (pid, eid) order."""
    keys = sorted({(e.pid, e.eid) for e in events})
    labels = {}
    for i, key in enumerate(keys):
        labels[key] = chr(ord("a") + i) if i < 26 else f"e{i}"
    return labels


def render_event(e: Event, labels: dict[tuple[int, int], str]) -> str:
    return labels[(e.pid, e.eid)] + ("'" if e.is_shadow else "")


def render_steps(steps: Sequence[Sequence[Event]], labels: Optional[dict] = None) -> str:
    """Bracketed rendering such as ``(ac)(bd)(a'c')``."""
    if labels is None:
        labels = event_labels(e for s in steps for e in s)
    return "".join("(" + "".join(render_event(e, labels) for e in s) + ")" for s in steps)


def render_execution(arch: Architecture, es: Sequence[Event], labels: Optional[dict] = None) -> str:
    return render_steps(decompose(arch, es), labels)
