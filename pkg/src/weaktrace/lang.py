"""Litmus programs: AST, parser, pretty-printer and conditional expansion.

Grammar (``//`` comments run to end of line)::

    litmus  := "name" (STRING | IDENT)? init proc+ "exists" bexpr
    init    := "init" "{" (VAR "=" INT ";")* "}"
    proc    := "proc" IDENT "{" stmt* "}"
    stmt    := REG ":=" aexpr ";" | REG ":=" "[" VAR "]" ";" | "[" VAR "]" ":=" aexpr ";"
             | "if" bexpr "{" stmt* "}" ("else" "{" stmt* "}")?
             | "while" bexpr "{" stmt* "}"
             | "fence" "(" ("store"|"load") "," ("store"|"load") ")" ";"

In the exists-condition registers are written ``P:r`` and shared variables
bare.  ``=`` is accepted as a synonym of ``==`` in comparisons.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .events import Action, Assert, Fence, Load, RegOp, Store, reg_use, shared_var
from .expr import (
    AExpr,
    BExpr,
    BinOp,
    BoolConst,
    BoolOp,
    Cmp,
    Lit,
    Not,
    QReg,
    Reg,
    Var,
    eval_arith,
    eval_bool,
    format_bool,
    names,
)

__all__ = [
    "Act",
    "If",
    "While",
    "Choice",
    "Program",
    "Proc",
    "Litmus",
    "LitmusSyntaxError",
    "parse_litmus",
    "format_litmus",
    "expand",
    "eval_arith",
    "eval_bool",
]


@dataclass(frozen=True)
class Act:
    action: Action


@dataclass(frozen=True)
class If:
    cond: BExpr
    then: "Program"
    orelse: "Program" = ()


@dataclass(frozen=True)
class While:
    cond: BExpr
    body: "Program"


@dataclass(frozen=True)
class Choice:
    left: "Program"
    right: "Program"


Cmd = Union[Act, If, While, Choice]
Program = tuple[Cmd, ...]


@dataclass(frozen=True)
class Proc:
    name: str
    program: Program


@dataclass(frozen=True)
class Litmus:
    name: str
    init: Mapping[str, int]
    procs: tuple[Proc, ...]
    cond: BExpr = field(default=BoolConst(True))

    def __eq__(self, other):
        if not isinstance(other, Litmus):
            return NotImplemented
        return (self.name, dict(self.init), self.procs, self.cond) == (
            other.name,
            dict(other.init),
            other.procs,
            other.cond,
        )

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.init.items())), self.procs, self.cond))

    @property
    def programs(self) -> tuple[Program, ...]:
        return tuple(p.program for p in self.procs)

    def proc_index(self, name: str) -> int:
        for i, p in enumerate(self.procs):
            if p.name == name:
                return i
        raise KeyError(name)

    def registers(self) -> list[tuple[int, str]]:
        """All (pid, register) pairs mentioned by the programs, sorted."""
        out = set()
        for pid, p in enumerate(self.procs):
            for act in actions(p.program):
                use = reg_use(act)
                out.update((pid, r) for r in use.reads | use.writes)
        return sorted(out)

    def variables(self) -> list[str]:
        out = set(self.init)
        for p in self.procs:
            for act in actions(p.program):
                v = shared_var(act)
                if v is not None:
                    out.add(v)
        out.update(n.name for n in names(self.cond) if isinstance(n, Var))
        return sorted(out)


def actions(prog: Program):
    """Every action occurring anywhere in ``prog``; branch conditions show up
    as the asserts expansion would create for them."""
    for cmd in prog:
        if isinstance(cmd, Act):
            yield cmd.action
        elif isinstance(cmd, If):
            yield Assert(cmd.cond)
            yield from actions(cmd.then)
            yield from actions(cmd.orelse)
        elif isinstance(cmd, While):
            yield Assert(cmd.cond)
            yield from actions(cmd.body)
        elif isinstance(cmd, Choice):
            yield from actions(cmd.left)
            yield from actions(cmd.right)


# ---------------------------------------------------------------- expansion


def expand(prog: Program, unroll: int = 2) -> Program:
    """Replace ``if``/``while`` by assert-guarded choices.

    Each ``while`` is unrolled at most ``unroll`` times; at the bound only the
    exit branch remains.
    """
    if unroll < 0:
        raise ValueError("unroll bound must be non-negative")
    out: list[Cmd] = []
    for cmd in prog:
        if isinstance(cmd, Act):
            out.append(cmd)
        elif isinstance(cmd, Choice):
            out.append(Choice(expand(cmd.left, unroll), expand(cmd.right, unroll)))
        elif isinstance(cmd, If):
            out.append(
                Choice(
                    (Act(Assert(cmd.cond)),) + expand(cmd.then, unroll),
                    (Act(Assert(Not(cmd.cond))),) + expand(cmd.orelse, unroll),
                )
            )
        elif isinstance(cmd, While):
            out.extend(_unroll(cmd, unroll, unroll))
        else:
            raise TypeError(f"unknown command {cmd!r}")
    return tuple(out)


def _unroll(loop: While, remaining: int, unroll: int) -> Program:
    exit_branch = (Act(Assert(Not(loop.cond))),)
    if remaining == 0:
        return exit_branch
    body = (Act(Assert(loop.cond)),) + expand(loop.body, unroll) + _unroll(loop, remaining - 1, unroll)
    return (Choice(body, exit_branch),)


# ------------------------------------------------------------------ parsing


class LitmusSyntaxError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


KEYWORDS = {"name", "init", "proc", "if", "else", "while", "fence", "exists", "true", "false"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|//[^\n]*)
  | (?P<string>"[^"\n]*")
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>:=|==|!=|<=|>=|&&|\|\||[-+*<>=!:;,(){}\[\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # string | int | ident | op | eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LitmusSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = pos + m.group().rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Backtrack(Exception):
    pass


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.in_cond = False

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.toks[min(self.pos + offset, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise LitmusSyntaxError(f"{msg} (found {found!r})", tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def ident(self, what: str) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.error(f"expected {what}")
        self.pos += 1
        return tok.text

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "int":
            self.error("expected integer")
        value = int(self.tok.text)
        self.pos += 1
        return sign * value

    # litmus structure

    def litmus(self) -> Litmus:
        self.expect("name")
        name = ""
        if self.tok.kind == "string":
            name = self.tok.text[1:-1]
            self.pos += 1
        elif self.tok.kind == "ident" and self.tok.text not in KEYWORDS:
            name = self.tok.text
            self.pos += 1
        init = self.init_section()
        procs: list[Proc] = []
        seen: dict[str, Token] = {}
        while self.at("proc"):
            self.pos += 1
            name_tok = self.tok
            pname = self.ident("processor name")
            if pname in seen:
                self.error(f"duplicate processor {pname!r}", name_tok)
            seen[pname] = name_tok
            procs.append(Proc(pname, self.block()))
        if not procs:
            self.error("expected at least one 'proc'")
        self.expect("exists")
        cond_tok = self.tok
        self.in_cond = True
        cond = self.bexpr()
        self.in_cond = False
        if self.tok.kind != "eof":
            self.error("trailing input")
        lit = Litmus(name, init, tuple(procs), cond)
        _check_cond(lit, cond_tok)
        return lit

    def init_section(self) -> dict[str, int]:
        self.expect("init")
        self.expect("{")
        init: dict[str, int] = {}
        while not self.accept("}"):
            var = self.ident("variable")
            self.expect("=")
            init[var] = self.integer()
            self.expect(";")
        return init

    def block(self) -> Program:
        self.expect("{")
        stmts: list[Cmd] = []
        while not self.accept("}"):
            cmd = self.stmt()
            if cmd is not None:
                stmts.append(cmd)
        return tuple(stmts)

    def stmt(self) -> Optional[Cmd]:
        if self.accept("if"):
            cond = self.bexpr()
            then = self.block()
            orelse = self.block() if self.accept("else") else ()
            return If(cond, then, orelse)
        if self.accept("while"):
            cond = self.bexpr()
            body = self.block()
            # an empty loop body contributes no actions; the command is dropped
            return While(cond, body) if body else None
        if self.accept("fence"):
            self.expect("(")
            before = self.fence_class()
            self.expect(",")
            after = self.fence_class()
            self.expect(")")
            self.expect(";")
            return Act(Fence(before, after))
        if self.accept("["):
            var = self.ident("variable")
            self.expect("]")
            self.expect(":=")
            expr = self.aexpr()
            self.expect(";")
            return Act(Store(var, expr))
        reg = self.ident("statement")
        self.expect(":=")
        if self.accept("["):
            var = self.ident("variable")
            self.expect("]")
            self.expect(";")
            return Act(Load(reg, var))
        expr = self.aexpr()
        self.expect(";")
        return Act(RegOp(reg, expr))

    def fence_class(self) -> str:
        if self.tok.kind == "ident" and self.tok.text in ("store", "load"):
            self.pos += 1
            return self.toks[self.pos - 1].text
        self.error("expected 'store' or 'load'")

    # expressions

    def bexpr(self) -> BExpr:
        left = self.band()
        while self.accept("||"):
            left = BoolOp("||", left, self.band())
        return left

    def band(self) -> BExpr:
        left = self.bnot()
        while self.accept("&&"):
            left = BoolOp("&&", left, self.bnot())
        return left

    def bnot(self) -> BExpr:
        if self.accept("!"):
            return Not(self.bnot())
        return self.batom()

    def batom(self) -> BExpr:
        if self.accept("true"):
            return BoolConst(True)
        if self.accept("false"):
            return BoolConst(False)
        if self.at("("):
            saved = self.pos
            try:
                self.pos += 1
                inner = self.bexpr()
                if not self.at(")"):
                    raise _Backtrack
                self.pos += 1
                return inner
            except (_Backtrack, LitmusSyntaxError):
                self.pos = saved
        left = self.aexpr()
        op_tok = self.tok
        if op_tok.kind == "op" and op_tok.text in ("==", "=", "!=", "<", "<=", ">", ">="):
            self.pos += 1
            op = "==" if op_tok.text == "=" else op_tok.text
            return Cmp(op, left, self.aexpr())
        self.error("expected comparison operator")

    def aexpr(self) -> AExpr:
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.tok.text
            self.pos += 1
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> AExpr:
        left = self.factor()
        while self.accept("*"):
            left = BinOp("*", left, self.factor())
        return left

    def factor(self) -> AExpr:
        if self.accept("-"):
            if self.tok.kind == "int":
                return Lit(-self.integer())
            return BinOp("-", Lit(0), self.factor())
        if self.tok.kind == "int":
            return Lit(self.integer())
        if self.accept("("):
            inner = self.aexpr()
            self.expect(")")
            return inner
        first = self.ident("register or literal")
        if self.in_cond:
            if self.accept(":"):
                return QReg(first, self.ident("register"))
            return Var(first)
        return Reg(first)


def _check_cond(lit: Litmus, tok: Token) -> None:
    regs = set(lit.registers())
    for n in names(lit.cond):
        if isinstance(n, QReg):
            try:
                pid = lit.proc_index(n.proc)
            except KeyError:
                raise LitmusSyntaxError(f"unknown processor {n.proc!r} in condition", tok.line, tok.col) from None
            if (pid, n.name) not in regs:
                raise LitmusSyntaxError(
                    f"register {n.name!r} is not used by processor {n.proc!r}", tok.line, tok.col
                )


def parse_litmus(text: str) -> Litmus:
    return _Parser(text).litmus()


# ----------------------------------------------------------------- printing


def _format_block(prog: Program, indent: int) -> list[str]:
    pad = "    " * indent
    lines = []
    for cmd in prog:
        if isinstance(cmd, Act):
            act = cmd.action
            if isinstance(act, Assert):
                raise ValueError("asserts have no source syntax; print the program before expansion")
            lines.append(f"{pad}{act};")
        elif isinstance(cmd, If):
            lines.append(f"{pad}if {format_bool(cmd.cond)} {{")
            lines += _format_block(cmd.then, indent + 1)
            if cmd.orelse:
                lines.append(f"{pad}}} else {{")
                lines += _format_block(cmd.orelse, indent + 1)
            lines.append(f"{pad}}}")
        elif isinstance(cmd, While):
            lines.append(f"{pad}while {format_bool(cmd.cond)} {{")
            lines += _format_block(cmd.body, indent + 1)
            lines.append(f"{pad}}}")
        else:
            raise ValueError("choices have no source syntax; print the program before expansion")
    return lines


def format_litmus(lit: Litmus) -> str:
    lines = [f'name "{lit.name}"' if lit.name else "name"]
    lines.append("init {" + "".join(f" {v} = {n};" for v, n in lit.init.items()) + " }")
    for p in lit.procs:
        lines.append(f"proc {p.name} {{")
        lines += _format_block(p.program, 1)
        lines.append("}")
    lines.append(f"exists {format_bool(lit.cond)}")
    return "\n".join(lines) + "\n"
