import pytest

from weaktrace.expr import (
    BinOp,
    BoolConst,
    BoolOp,
    Cmp,
    EvalError,
    Lit,
    Not,
    QReg,
    Reg,
    Var,
    eval_arith,
    eval_bool,
    format_arith,
    format_bool,
    names,
    registers,
)


def test_arith_examples():
    assert eval_arith({"r1": 3}, BinOp("+", Reg("r1"), Lit(1))) == 4
    assert eval_arith({}, Lit(7)) == 7
    assert eval_arith({"r1": 2}, BinOp("*", BinOp("-", Reg("r1"), Lit(5)), Lit(4))) == -12


def test_bool_examples():
    both_zero = BoolOp("&&", Cmp("==", Reg("r1"), Lit(0)), Cmp("==", Reg("r2"), Lit(0)))
    assert eval_bool({"r1": 0, "r2": 0}, both_zero)
    assert not eval_bool({"r1": 0, "r2": 1}, both_zero)
    assert eval_bool({}, Not(BoolConst(False)))
    assert eval_bool({"r1": 1}, BoolOp("||", BoolConst(False), Cmp(">=", Reg("r1"), Lit(1))))


@pytest.mark.parametrize(
    "op, expected",
    [("==", False), ("!=", True), ("<", True), ("<=", True), (">", False), (">=", False)],
)
def test_comparisons(op, expected):
    assert eval_bool({}, Cmp(op, Lit(1), Lit(2))) is expected


def test_unbound_register_is_an_error():
    with pytest.raises(EvalError):
        eval_arith({}, Reg("r9"))


def test_qualified_names():
    q = QReg("P1", "r1")
    assert q.key == "P1:r1"
    assert eval_bool({"P1:r1": 0, "x": 1}, BoolOp("&&", Cmp("==", q, Lit(0)), Cmp("==", Var("x"), Lit(1))))
    assert names(Cmp("==", q, Var("x"))) == {q, Var("x")}


def test_registers_collects_plain_registers():
    e = BoolOp("&&", Cmp("<", Reg("r1"), BinOp("+", Reg("r2"), Lit(1))), Not(Cmp("==", Reg("r1"), Lit(0))))
    assert registers(e) == {"r1", "r2"}


def test_formatting():
    assert format_arith(BinOp("+", Reg("r1"), BinOp("*", Lit(2), Reg("r2")))) == "(r1 + (2 * r2))"
    assert format_bool(Not(Cmp("==", Reg("r1"), Lit(0)))) == "!(r1 == 0)"
