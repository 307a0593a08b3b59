import random

import pytest

from weaktrace.arch import ARCHITECTURES, by_name, rmo, sc, tso
from weaktrace.corpus import load
from weaktrace.evaluation import (
    AssertionFailed,
    apply_event,
    check_condition,
    initial_state,
    litmus_config,
    observe,
    reachable,
    run_execution,
)
from weaktrace.events import Assert, Load, RegOp, Store
from weaktrace.expr import Cmp, Lit, Reg
from weaktrace.gen import all_paths
from weaktrace.lang import parse_litmus
from weaktrace.oracle import equiv_classes, random_litmus
from weaktrace.trace import render_execution

from helpers import dekker_events, m, s, sc_reference_outcomes

A, B, C, D, A_, C_ = dekker_events()
SC_SET = {(0, 1), (1, 0), (1, 1)}


def regs(lit, st):
    obs = dict(observe(lit, st))
    return obs["P1:r1"], obs["P2:r2"]


def test_replay_examples(dekker):
    assert regs(dekker, run_execution(dekker, sc(), [A, C, B, D])) == (1, 1)
    assert regs(dekker, run_execution(dekker, sc(), [A, B, C, D])) == (0, 1)
    assert regs(dekker, run_execution(dekker, tso(), [A, C, B, D, A_, C_])) == (0, 0)


def test_store_takes_effect_at_flush():
    st = apply_event(tso(), initial_state({"x": 0}), A)
    assert st.mem.get("x", 0) == 0
    st = apply_event(tso(), st, A_)
    assert st.mem["x"] == 1


def test_load_forwards_newest_own_store():
    lit = parse_litmus('name init { x = 0; } proc P { [x] := 1; [x] := 2; r1 := [x]; } exists true')
    es = [m(0, 0, Store("x", Lit(1))), m(0, 1, Store("x", Lit(2))), m(0, 2, Load("r1", "x"))]
    es += [s(0, 0, Store("x", Lit(1))), s(0, 1, Store("x", Lit(2)))]
    assert dict(observe(lit, run_execution(lit, tso(), es))) == {"P:r1": 2, "x": 2}


def test_failed_assertion():
    st = initial_state({})
    st = apply_event(sc(), st, m(0, 0, RegOp("r1", Lit(1))))
    with pytest.raises(AssertionFailed):
        apply_event(sc(), st, m(0, 1, Assert(Cmp("==", Reg("r1"), Lit(0)))))


def test_contradicting_branch_is_dropped():
    lit = parse_litmus('name init { x = 1; } proc P { r1 := [x]; if r1 == 0 { [y] := 1; } } exists true')
    paths = list(all_paths(sc(), litmus_config(lit, 2)))
    results = [run_execution(lit, sc(), es) for es in paths]
    assert results[0] is None and results[1] is not None
    assert dict(observe(lit, results[1]))["y"] == 0


def test_single_store_under_sc():
    lit = parse_litmus('name init { } proc P { [x] := 1; } exists true')
    (es,) = all_paths(sc(), litmus_config(lit, 2))
    assert run_execution(lit, sc(), es).mem["x"] == 1


def rr(reach):
    return {(dict(o)["P1:r1"], dict(o)["P2:r2"]) for o in reach.states}


def test_reachable_dekker(dekker):
    assert rr(reachable(dekker, sc())) == SC_SET
    assert rr(reachable(dekker, tso())) == SC_SET | {(0, 0)}
    assert rr(reachable(load("dekker_fenced.lit"), tso())) == SC_SET


def test_check_condition(dekker):
    assert check_condition(dekker, reachable(dekker, sc())) == (False, None)
    holds, witness = check_condition(dekker, reachable(dekker, tso()))
    assert holds and render_execution(tso(), witness) == "(ac)(bd)(a'c')"
    always = parse_litmus('name init { } proc P { r1 := 1; } exists true')
    assert check_condition(always, reachable(always, rmo()))[0]


def test_rmo_store_of_loaded_value():
    # the store's source is a load that completes only at its own shadow
    lit = parse_litmus(
        'name init { x = 5; } proc P1 { r1 := [x]; [y] := r1 + 1; } proc P2 { [x] := 7; } exists true'
    )
    ys = {dict(o)["y"] for o in reachable(lit, rmo()).states}
    assert ys == {6, 8}


STRAIGHT = [
    "dekker.lit",
    "mp.lit",
    'name init { x = 1; } proc P { r1 := [x]; [y] := r1 + 1; } proc Q { r2 := [y]; [x] := r2 * 3; } exists true',
    'name init { } proc P { [x] := 1; r1 := [x]; r2 := r1 + 1; } proc Q { [x] := 2; r1 := [x]; } exists true',
]


@pytest.mark.parametrize("src", STRAIGHT)
def test_sc_matches_reference_interpreter(src):
    lit = load(src) if src.endswith(".lit") else parse_litmus(src)
    assert set(reachable(lit, sc()).states) == sc_reference_outcomes(lit)


def _outcome(lit, arch, es):
    st = run_execution(lit, arch, es)
    return None if st is None else observe(lit, st)


@pytest.mark.parametrize("name", sorted(ARCHITECTURES))
def test_outcome_is_invariant_within_classes(name):
    arch = by_name(name)
    rng = random.Random(11)
    lits = [load("dekker.lit"), load("mp.lit")]
    lits += [random_litmus(rng, unroll=1, max_executions=600) for _ in range(12)]
    for lit in lits:
        execs = list(all_paths(arch, litmus_config(lit, 1)))
        for cls in equiv_classes(arch, execs):
            assert len({_outcome(lit, arch, es) for es in cls.members}) == 1
