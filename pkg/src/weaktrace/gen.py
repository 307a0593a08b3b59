"""Small-step execution generation and Foata-pruned enumeration.

A processor either starts its next action (emitting the main event and, for
two-phase actions, pushing the shadow event onto its backlog) or completes a
pending shadow event from the backlog.  Enumerating all interleavings yields a
tree of executions; :func:`normal_executions` walks that tree while running
the normality checker and never expands a node whose event is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .arch import Architecture
from .events import MAIN, Event
from .lang import Act, Choice, Program
from .trace import CheckerState, checker_extend, checker_init

Execution = tuple[Event, ...]


@dataclass(frozen=True)
class LocalConfig:
    prog: Program
    bklg: tuple[Event, ...] = ()
    next_eid: int = 0

    @property
    def done(self) -> bool:
        return not self.prog and not self.bklg


SysConfig = tuple[LocalConfig, ...]


def initial_config(programs: Sequence[Program]) -> SysConfig:
    """Configuration for already-expanded programs, one per processor."""
    return tuple(LocalConfig(tuple(p)) for p in programs)


def is_complete(c: SysConfig) -> bool:
    return all(lc.done for lc in c)


def _starts(arch: Architecture, pid: int, prog: Program, lc: LocalConfig):
    if not prog:
        return
    head, rest = prog[0], prog[1:]
    if isinstance(head, Choice):
        yield from _starts(arch, pid, head.left + rest, lc)
        yield from _starts(arch, pid, head.right + rest, lc)
        return
    if not isinstance(head, Act):
        raise TypeError(f"program is not expanded: {head!r}")
    ev = Event(pid, lc.next_eid, MAIN, head.action)
    if not all(arch.same_indep(b, ev) for b in lc.bklg):
        return
    bklg = (ev.shadow(),) + lc.bklg if arch.shadows(ev.act) else lc.bklg
    yield ev, LocalConfig(rest, bklg, lc.next_eid + 1)


def proc_steps(arch: Architecture, pid: int, lc: LocalConfig) -> list[tuple[Event, LocalConfig]]:
    """Every small step of one processor, flushes (oldest first) before starts."""
    steps = []
    for i in reversed(range(len(lc.bklg))):
        le = lc.bklg[i]
        if all(arch.same_indep(older, le) for older in lc.bklg[i + 1 :]):
            steps.append((le, LocalConfig(lc.prog, lc.bklg[:i] + lc.bklg[i + 1 :], lc.next_eid)))
    steps.extend(_starts(arch, pid, lc.prog, lc))
    return steps


def sys_steps(arch: Architecture, c: SysConfig) -> list[tuple[Event, SysConfig]]:
    out = []
    for pid, lc in enumerate(c):
        for ev, lc2 in proc_steps(arch, pid, lc):
            out.append((ev, c[:pid] + (lc2,) + c[pid + 1 :]))
    return out


class ExecTree:
    """A lazily built node of the execution tree.

    ``children()`` computes the successors on every call and caches nothing,
    so walking the tree never holds more than the current path in memory.
    """

    __slots__ = ("arch", "event", "config")

    def __init__(self, arch: Architecture, config: SysConfig, event: Optional[Event] = None):
        self.arch = arch
        self.config = config
        self.event = event

    def children(self) -> list["ExecTree"]:
        return [ExecTree(self.arch, c, ev) for ev, c in sys_steps(self.arch, self.config)]

    @property
    def complete(self) -> bool:
        return is_complete(self.config)

    def __repr__(self) -> str:
        return f"ExecTree(event={self.event})"


def exec_tree(arch: Architecture, c0: SysConfig) -> ExecTree:
    return ExecTree(arch, c0)


@dataclass
class GenStats:
    """Counters filled in while walking a tree."""

    nodes: int = 0
    pruned: int = 0
    complete: int = 0
    stuck: int = 0
    stuck_paths: list = field(default_factory=list)


def walk(
    tree: ExecTree,
    stats: Optional[GenStats] = None,
    prune: bool = False,
) -> Iterator[Execution]:
    """Depth-first enumeration of complete paths.

    With ``prune`` the normality checker rides along and a rejected child is
    skipped before its own children are computed.
    """
    stats = stats if stats is not None else GenStats()
    arch = tree.arch
    path: list[Event] = []
    stack: list[tuple[Iterator[ExecTree], Optional[CheckerState]]] = []

    def push(node: ExecTree, st: Optional[CheckerState]):
        stats.nodes += 1
        kids = node.children()
        if not kids:
            if node.complete:
                stats.complete += 1
                return tuple(path)
            stats.stuck += 1
            stats.stuck_paths.append(tuple(path))
            return None
        stack.append((iter(kids), st))
        return None

    done = push(tree, checker_init() if prune else None)
    if done is not None:
        yield done
    while stack:
        kids, st = stack[-1]
        child = next(kids, None)
        if child is None:
            stack.pop()
            if path:
                path.pop()
            continue
        nst = None
        if prune:
            nst = checker_extend(arch, st, child.event)
            if nst is None:
                stats.pruned += 1
                continue
        path.append(child.event)
        depth = len(stack)
        result = push(child, nst)
        if result is not None:
            yield result
        if len(stack) == depth:  # leaf: nothing pushed
            path.pop()


def all_paths(arch: Architecture, c0: SysConfig, stats: Optional[GenStats] = None) -> Iterator[Execution]:
    return walk(exec_tree(arch, c0), stats, prune=False)


def normal_executions(
    arch: Architecture, c0: SysConfig, stats: Optional[GenStats] = None
) -> Iterator[Execution]:
    """Exactly one execution per equivalence class, in deterministic DFS order."""
    return walk(exec_tree(arch, c0), stats, prune=True)


def count_paths(arch: Architecture, c0: SysConfig) -> tuple[int, int]:
    """(complete, stuck) path counts of the whole tree, memoized on configs."""
    memo: dict[SysConfig, tuple[int, int]] = {}

    def count(c: SysConfig) -> tuple[int, int]:
        hit = memo.get(c)
        if hit is not None:
            return hit
        steps = sys_steps(arch, c)
        if not steps:
            res = (1, 0) if is_complete(c) else (0, 1)
        else:
            done = stuck = 0
            for _, c2 in steps:
                d, s = count(c2)
                done += d
                stuck += s
            res = (done, stuck)
        memo[c] = res
        return res

    return count(c0)
