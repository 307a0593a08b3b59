"""Arithmetic and boolean expressions over registers.

Inside processor programs only registers (``Reg``) and literals appear.  The
exists-condition of a litmus test may also mention shared variables
(``Var``) and processor-qualified registers (``QReg``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union


class EvalError(Exception):
    """Raised when an expression mentions a name the environment lacks."""


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Reg:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class QReg:
    proc: str
    name: str

    @property
    def key(self) -> str:
        return f"{self.proc}:{self.name}"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - *
    left: "AExpr"
    right: "AExpr"


AExpr = Union[Lit, Reg, Var, QReg, BinOp]


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class Not:
    arg: "BExpr"


@dataclass(frozen=True)
class BoolOp:
    op: str  # "&&" or "||"
    left: "BExpr"
    right: "BExpr"


@dataclass(frozen=True)
class Cmp:
    op: str  # == != < <= > >=
    left: AExpr
    right: AExpr


BExpr = Union[BoolConst, Not, BoolOp, Cmp]

ARITH_OPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
}

CMP_OPS = {
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def _lookup(env: Mapping[str, int], key: str) -> int:
    try:
        return env[key]
    except KeyError:
        raise EvalError(f"unbound name {key!r}") from None


def eval_arith(env: Mapping[str, int], expr: AExpr) -> int:
    """Evaluate ``expr``; registers are looked up by name, qualified registers
    by ``"P:r"`` and shared variables by their bare name."""
    if isinstance(expr, Lit):
        return expr.value
    if isinstance(expr, (Reg, Var)):
        return _lookup(env, expr.name)
    if isinstance(expr, QReg):
        return _lookup(env, expr.key)
    if isinstance(expr, BinOp):
        return ARITH_OPS[expr.op](eval_arith(env, expr.left), eval_arith(env, expr.right))
    raise TypeError(f"not an arithmetic expression: {expr!r}")


def eval_bool(env: Mapping[str, int], expr: BExpr) -> bool:
    if isinstance(expr, BoolConst):
        return expr.value
    if isinstance(expr, Not):
        return not eval_bool(env, expr.arg)
    if isinstance(expr, BoolOp):
        if expr.op == "&&":
            return eval_bool(env, expr.left) and eval_bool(env, expr.right)
        return eval_bool(env, expr.left) or eval_bool(env, expr.right)
    if isinstance(expr, Cmp):
        return CMP_OPS[expr.op](eval_arith(env, expr.left), eval_arith(env, expr.right))
    raise TypeError(f"not a boolean expression: {expr!r}")


def registers(expr: Union[AExpr, BExpr]) -> frozenset[str]:
    """Unqualified register names occurring in ``expr``."""
    if isinstance(expr, Reg):
        return frozenset((expr.name,))
    if isinstance(expr, (BinOp, BoolOp, Cmp)):
        return registers(expr.left) | registers(expr.right)
    if isinstance(expr, Not):
        return registers(expr.arg)
    return frozenset()


def names(expr: Union[AExpr, BExpr]) -> frozenset[Union[Var, QReg, Reg]]:
    """Every name leaf (registers, qualified registers, variables)."""
    if isinstance(expr, (Reg, Var, QReg)):
        return frozenset((expr,))
    if isinstance(expr, (BinOp, BoolOp, Cmp)):
        return names(expr.left) | names(expr.right)
    if isinstance(expr, Not):
        return names(expr.arg)
    return frozenset()


def format_arith(expr: AExpr) -> str:
    if isinstance(expr, Lit):
        return str(expr.value)
    if isinstance(expr, (Reg, Var)):
        return expr.name
    if isinstance(expr, QReg):
        return expr.key
    return f"({format_arith(expr.left)} {expr.op} {format_arith(expr.right)})"


def format_bool(expr: BExpr) -> str:
    if isinstance(expr, BoolConst):
        return "true" if expr.value else "false"
    if isinstance(expr, Not):
        inner = format_bool(expr.arg)
        if isinstance(expr.arg, Cmp):
            inner = f"({inner})"
        return f"!{inner}"
    if isinstance(expr, BoolOp):
        return f"({format_bool(expr.left)} {expr.op} {format_bool(expr.right)})"
    return f"{format_arith(expr.left)} {expr.op} {format_arith(expr.right)}"
