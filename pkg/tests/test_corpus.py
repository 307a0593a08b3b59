import pytest

from weaktrace.arch import by_name
from weaktrace.corpus import corpus_cases, litmus_files
from weaktrace.evaluation import check_condition, holds, reachable
from weaktrace.oracle import verify

CASES = corpus_cases()


def _id(case):
    return f"{case.file}-{case.arch}"


def test_required_cases_present():
    have = {(c.file, c.arch) for c in CASES}
    required = {("dekker.lit", a) for a in ("sc", "tso", "pso", "rmo")}
    required |= {("dekker_fenced.lit", "tso"), ("mp.lit", "tso"), ("mp.lit", "pso")}
    required |= {("load_reorder.lit", "pso"), ("load_reorder.lit", "rmo")}
    assert required <= have
    assert {c.file for c in CASES} == set(litmus_files())
    assert all(c.note for c in CASES)


@pytest.mark.parametrize("case", CASES, ids=_id)
def test_golden_matches_engine(case):
    lit, arch = case.litmus(), by_name(case.arch)
    reach = reachable(lit, arch)
    assert reach.executions == case.normal_count
    assert reach.states == case.observations
    verdict, witness = check_condition(lit, reach)
    assert verdict == case.condition_holds
    assert (witness is not None) == verdict
    assert verdict == any(holds(lit, o) for o in case.observations)


@pytest.mark.parametrize("case", CASES, ids=_id)
def test_golden_passes_oracle(case):
    rep = verify(case.litmus(), by_name(case.arch))
    assert rep.passed, rep.failures
    assert rep.normal == case.normal_count and rep.stuck == 0
