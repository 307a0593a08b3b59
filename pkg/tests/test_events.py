import pytest

from weaktrace.events import (
    MAIN,
    SHADOW,
    Assert,
    Event,
    Fence,
    Load,
    RegOp,
    Store,
    classify,
    in_class,
    reg_use,
    shared_var,
)
from weaktrace.expr import BinOp, Cmp, Lit, Reg


def test_classify_store_main_and_shadow():
    e = Event(0, 0, MAIN, Store("x", Lit(1)))
    c = classify(e)
    assert c.is_main and not c.is_shadow and c.is_write and not c.is_read
    sh = e.shadow()
    assert sh.is_shadow and sh.is_write and sh.eid == e.eid and sh.pid == e.pid
    assert sh != e


def test_classify_other_actions():
    assert classify(Event(0, 1, MAIN, Load("r1", "y"))).is_read
    assert classify(Event(0, 2, MAIN, Fence("store", "load"))).is_fence
    assert classify(Event(0, 3, MAIN, Assert(Cmp("==", Reg("r1"), Lit(0))))).is_assert
    c = classify(Event(0, 4, MAIN, RegOp("r1", Lit(0))))
    assert not (c.is_write or c.is_read or c.is_fence or c.is_assert)


def test_shared_var():
    assert shared_var(Store("x", Lit(1))) == "x"
    assert shared_var(Load("r1", "y")) == "y"
    assert shared_var(RegOp("r1", Lit(1))) is None
    assert shared_var(Fence("load", "load")) is None


def test_reg_use():
    assert reg_use(RegOp("r1", BinOp("+", Reg("r2"), Reg("r3")))) == ({"r2", "r3"}, {"r1"})
    assert reg_use(Load("r1", "x")) == (set(), {"r1"})
    assert reg_use(Store("x", Reg("r2"))) == ({"r2"}, set())
    assert reg_use(Assert(Cmp("!=", Reg("r4"), Lit(0)))) == ({"r4"}, set())
    assert reg_use(Fence("store", "store")) == (set(), set())


def test_fence_rejects_unknown_class():
    with pytest.raises(ValueError):
        Fence("store", "rmw")


def test_in_class():
    st = Event(0, 0, SHADOW, Store("x", Lit(1)))
    ld = Event(0, 1, MAIN, Load("r1", "x"))
    assert in_class(st, "store") and not in_class(st, "load")
    assert in_class(ld, "load") and not in_class(ld, "store")


def test_events_hash_by_value():
    a = Event(1, 2, MAIN, Load("r1", "x"))
    b = Event(1, 2, MAIN, Load("r1", "x"))
    assert a == b and hash(a) == hash(b)
    assert len({a, b, a.shadow()}) == 2
