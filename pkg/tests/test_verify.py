import random

import pytest

import cyclowed.verify as verify
from cyclowed.absolute import FinSuppSeq
from cyclowed.verify import (
    SuiteResult,
    random_points,
    random_sequence,
    run_suite,
    toperator_composition_i,
    toperator_evaluation,
    toperator_support,
)


def test_generators_are_seeded():
    a, b = random.Random(5), random.Random(5)
    assert random_points(a, 6).values == random_points(b, 6).values
    assert random_sequence(a) == random_sequence(b)
    assert len(set(random_points(a, 7).values)) == 7


@pytest.mark.parametrize("suite", ["vandermonde", "qpascal", "toperators"])
def test_each_suite_passes(suite):
    (res,) = run_suite(suite, trials=5, seed=1)
    assert res.ok and res.suite == suite and not res.failures
    assert all(total > 0 for _, total in res.checks.values())


def test_same_seed_same_report():
    one = [r.to_json() for r in run_suite("all", trials=4, seed=9)]
    two = [r.to_json() for r in run_suite("all", trials=4, seed=9)]
    assert one == two
    assert [r["suite"] for r in one] == ["vandermonde", "qpascal", "toperators"]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_suite_result_records_failures():
    res = SuiteResult("demo")
    res.record("law", True)
    res.record("law", False, {"x": 1})
    assert not res.ok
    assert res.to_json() == {
        "suite": "demo",
        "ok": False,
        "checks": {"law": {"passed": 1, "total": 2}},
        "failures": [{"check": "law", "detail": {"x": 1}}],
    }


def test_laws_fail_outside_their_hypotheses():
    x = FinSuppSeq({0: 1, 5: 2})
    # (a, b, c, d, s) = (0, 0, 0, 1, 0) breaks d - c <= b + s
    assert not toperator_composition_i(3, 0, 0, 0, 1, 0, 0, x)
    assert toperator_composition_i(3, 0, 1, 0, 1, 0, 0, x)
    assert toperator_evaluation(3, 2, x)
    assert toperator_support(3, 2, 0, x)


def test_broken_operator_is_detected(monkeypatch):
    real = verify.t_operator

    def off_by_one(m_shift, s, i, p, x):
        y = real(m_shift, s, i, p, x)
        return y + FinSuppSeq({0: 1}) if i >= 2 else y

    monkeypatch.setattr(verify, "t_operator", off_by_one)
    (res,) = run_suite("toperators", trials=10, seed=0)
    assert not res.ok and res.failures
