from __future__ import annotations

import pytest

from hallforge.checks import SUITES, CheckResult, guarded
from hallforge.checks.context import CheckContext
from hallforge.config import CHECK_NAMES, SampleConfig
from hallforge.errors import ConsistencyError, PreconditionError
from hallforge.heredcat import make_provider, preset


def test_suites_follow_check_order():
    assert tuple(SUITES) == CHECK_NAMES


@pytest.mark.parametrize("name", CHECK_NAMES)
def test_suites_pass_on_a1(name, a1_q2):
    result = SUITES[name](a1_q2)
    assert len(result) > 0
    assert result.passed, result.errors[:3]


@pytest.mark.parametrize("name", CHECK_NAMES)
def test_suites_pass_on_jordan(name, jordan_q2):
    result = SUITES[name](jordan_q2)
    assert result.passed, result.errors[:3]


@pytest.mark.parametrize("name", CHECK_NAMES)
def test_suites_pass_on_a2(name, a2_q2):
    result = SUITES[name](a2_q2)
    assert result.passed, result.errors[:3]


def test_assoc_on_a2_samples_beyond_the_hom_cap():
    provider = make_provider(preset("a2", 2))
    provider.build(2)
    ctx = CheckContext.build(provider, 2, seed=5, samples=SampleConfig(assoc=200))
    result = SUITES["assoc"](ctx)
    assert len(result) == 200
    assert result.passed, result.errors[:3]


@pytest.mark.parametrize("fixture,pairs", [("a1_q2", 228), ("jordan_q2", 356)])
def test_oracle_sweeps_every_pair_on_one_vertex(fixture, pairs, request):
    result = SUITES["oracle"](request.getfixturevalue(fixture))
    assert len(result) == pairs
    assert result.passed, result.errors[:3]


def test_d3_records_keep_the_verdict(jordan_q2):
    records = [r.to_json() for r in SUITES["d3"](jordan_q2).records]
    cross = [data for data in records if "equal" in data]
    assert cross
    assert all(data["equal"] == data["passed"] for data in cross)
    assert all({"a", "b", "lhs_terms", "rhs_terms"} <= set(data) for data in cross)


def test_serre_is_skipped_without_single_arrows(a1_q2):
    result = SUITES["serre"](a1_q2)
    assert [record.payload for record in result.records] == [{"skipped": True}]


def test_serre_runs_on_a2(a2_q2):
    result = SUITES["serre"](a2_q2)
    assert {(r.payload["i"], r.payload["j"]) for r in result.records} == {(0, 1), (1, 0)}


def test_records_are_json_ready(a1_q2):
    for record in SUITES["uv"](a1_q2).records:
        data = record.to_json()
        assert data["check"] == "uv"
        assert {"u", "v", "formula", "passed"} <= set(data)


def test_guarded_turns_consistency_errors_into_failures():
    result = CheckResult("euler")

    def broken():
        raise ConsistencyError("identify found no class")

    guarded(result, broken, A=1)
    guarded(result, lambda: (True, {"value": 3}), A=2)
    assert not result.passed
    assert result.failures == 1
    assert result.records[0].error == "identify found no class"
    assert result.records[1].to_json() == {"check": "euler", "A": 2, "value": 3, "passed": True}
    assert "FAILED" in repr(result)


def test_guarded_lets_precondition_errors_escape():
    result = CheckResult("uv")

    def misuse():
        raise PreconditionError("bad instance")

    with pytest.raises(PreconditionError):
        guarded(result, misuse)
