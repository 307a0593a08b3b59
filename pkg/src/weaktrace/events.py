"""Actions, events and the small predicates every other module builds on."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

from .expr import AExpr, BExpr, format_arith, format_bool, registers

FENCE_CLASSES = ("store", "load")


@dataclass(frozen=True)
class RegOp:
    dst: str
    expr: AExpr

    def __str__(self) -> str:
        return f"{self.dst} := {format_arith(self.expr)}"


@dataclass(frozen=True)
class Load:
    dst: str
    var: str

    def __str__(self) -> str:
        return f"{self.dst} := [{self.var}]"


@dataclass(frozen=True)
class Store:
    var: str
    expr: AExpr

    def __str__(self) -> str:
        return f"[{self.var}] := {format_arith(self.expr)}"


@dataclass(frozen=True)
class Assert:
    cond: BExpr

    def __str__(self) -> str:
        return f"assert {format_bool(self.cond)}"


@dataclass(frozen=True)
class Fence:
    before: str  # "store" | "load": class of older events held back
    after: str  # "store" | "load": class of newer events held back

    def __post_init__(self):
        if self.before not in FENCE_CLASSES or self.after not in FENCE_CLASSES:
            raise ValueError(f"fence parameters must be store or load, got {self.before}, {self.after}")

    def __str__(self) -> str:
        return f"fence({self.before}, {self.after})"


Action = Union[RegOp, Load, Store, Assert, Fence]


class Kind(enum.Enum):
    MAIN = "main"
    SHADOW = "shadow"


MAIN = Kind.MAIN
SHADOW = Kind.SHADOW


@dataclass(frozen=True)
class Event:
    pid: int
    eid: int
    kind: Kind
    act: Action
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # executions are hashed constantly by the oracle
        object.__setattr__(self, "_hash", hash((self.pid, self.eid, self.kind is MAIN, self.act)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def is_main(self) -> bool:
        return self.kind is MAIN

    @property
    def is_shadow(self) -> bool:
        return self.kind is SHADOW

    @property
    def is_write(self) -> bool:
        return isinstance(self.act, Store)

    @property
    def is_read(self) -> bool:
        return isinstance(self.act, Load)

    @property
    def is_fence(self) -> bool:
        return isinstance(self.act, Fence)

    @property
    def is_assert(self) -> bool:
        return isinstance(self.act, Assert)

    @property
    def var(self) -> Optional[str]:
        return shared_var(self.act)

    def shadow(self) -> "Event":
        return Event(self.pid, self.eid, SHADOW, self.act)

    def __str__(self) -> str:
        mark = "'" if self.is_shadow else ""
        return f"P{self.pid}.{self.eid}{mark} {self.act}"


class Classification(NamedTuple):
    is_main: bool
    is_shadow: bool
    is_write: bool
    is_read: bool
    is_fence: bool
    is_assert: bool


def classify(e: Event) -> Classification:
    return Classification(e.is_main, e.is_shadow, e.is_write, e.is_read, e.is_fence, e.is_assert)


def shared_var(act: Action) -> Optional[str]:
    if isinstance(act, (Load, Store)):
        return act.var
    return None


class RegUse(NamedTuple):
    reads: frozenset[str]
    writes: frozenset[str]


_NOTHING = frozenset()


def reg_use(act: Action) -> RegUse:
    """Registers read and written by ``act``."""
    if isinstance(act, RegOp):
        return RegUse(registers(act.expr), frozenset((act.dst,)))
    if isinstance(act, Load):
        return RegUse(_NOTHING, frozenset((act.dst,)))
    if isinstance(act, Store):
        return RegUse(registers(act.expr), _NOTHING)
    if isinstance(act, Assert):
        return RegUse(registers(act.cond), _NOTHING)
    return RegUse(_NOTHING, _NOTHING)


def in_class(e: Event, cls: str) -> bool:
    """Whether ``e`` belongs to a fence parameter class."""
    return e.is_write if cls == "store" else e.is_read
