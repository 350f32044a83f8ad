import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from banach_constants import (
    DayJamesSpace,
    EuclideanSpace,
    LpSpace,
    ParamPair,
    SearchConfig,
    UnsupportedSpaceError,
)
from banach_constants.theorems import (
    THEOREM_IDS,
    TheoremReport,
    certify_normal_structure,
    check_ball_sphere_equivalence,
    check_t1_bounds,
    check_t1_t_relation,
    check_t2_bounds,
    check_t2_cnj_bound,
    check_t2_delta_bounds,
    check_t2_t_relation,
    classify_uniform_nonsquareness,
    normal_structure_verdict,
    run_check,
)

E, L1, L4, LINF, DJ = EuclideanSpace(), LpSpace(1.0), LpSpace(4.0), LpSpace(math.inf), DayJamesSpace()
CFG = SearchConfig(coarse_grid=512)


def test_t1_bounds_examples():
    r = check_t1_bounds(E, ParamPair(1, 1), CFG)
    assert r.satisfied and r.mid == pytest.approx(math.sqrt(2)) and abs(r.mid - r.lhs) <= r.tol
    r = check_t1_bounds(L1, ParamPair(2, 3), CFG)
    assert r.satisfied and abs(r.mid - 5) <= r.tol and abs(r.margin) <= r.tol
    r = check_t1_bounds(DJ, ParamPair(1, 1), CFG)
    assert r.satisfied and math.sqrt(2) - r.tol <= r.mid <= 2 + r.tol
    assert all(x.audit() for x in (r,))


def test_t1_t_relation_examples():
    for space in (E, L4, DJ):
        r = check_t1_t_relation(space, ParamPair(1.5, 1.5), CFG)
        assert r.satisfied and abs(r.lhs - r.rhs) <= 2 * r.tol and abs(r.mid - r.lhs) <= r.tol
    assert check_t1_t_relation(L4, ParamPair(1, 2), CFG).satisfied
    r = check_t1_t_relation(E, ParamPair(1, 3), CFG)
    assert r.satisfied and r.mid == pytest.approx(math.sqrt(10)) and r.margin > 0.1


def test_t2_bounds():
    r = check_t2_bounds(E, ParamPair(1, 2), CFG)
    assert r.satisfied and abs(r.mid - r.lhs) <= r.tol and r.details["expected_lower_holds"]
    assert any("infinite-dimensional" in c for c in r.caveats)
    r = check_t2_bounds(L1, ParamPair(2, 3), CFG)
    assert r.satisfied and abs(r.margin) <= r.tol


def test_t2_bounds_dayjames_flags_reference_value():
    r = check_t2_bounds(DJ, ParamPair(2, 3), CFG)
    assert r.satisfied  # measured T2 ~ 3.878 < 5
    assert r.mid == pytest.approx(math.sqrt(361 / 24), abs=1e-9)
    assert len(r.flags) == 1 and "15" in r.flags[0]


def test_t2_delta_examples():
    r = check_t2_delta_bounds(E, ParamPair(1, 1), math.sqrt(2), CFG)
    assert r.satisfied
    assert r.lhs == pytest.approx(2) and r.mid == pytest.approx(2) and r.rhs == pytest.approx(2)
    r = check_t2_delta_bounds(L1, ParamPair(1, 1), 1.0, CFG)
    assert not r.satisfied and r.verdict == "violated"
    assert r.lhs == pytest.approx(2) and r.mid == pytest.approx(4) and r.rhs == pytest.approx(2)
    assert r.details["lower_margin"] > 0 and r.details["upper_margin"] < 0
    # kappa = tau: both sides collapse to 2 k^2 eps (1 - delta)
    r = check_t2_delta_bounds(L4, ParamPair(2, 2), 1.0, CFG)
    assert r.lhs == pytest.approx(r.rhs, abs=1e-12)


def test_t2_cnj_examples():
    r = check_t2_cnj_bound(E, ParamPair(1, 1), CFG)
    assert r.satisfied and r.rhs == pytest.approx(2) and r.mid == pytest.approx(2)
    r = check_t2_cnj_bound(L1, ParamPair(2, 3), CFG)
    assert r.satisfied and r.rhs == pytest.approx(25) and r.mid == pytest.approx(25)
    r = check_t2_cnj_bound(L4, ParamPair(1, 2), CFG)
    assert r.satisfied and r.margin > 0.1
    assert r.lhs is None


def test_t2_t_relation_examples():
    r = check_t2_t_relation(L1, ParamPair(2, 3), CFG)
    assert r.satisfied and (r.lhs, r.mid, r.rhs) == pytest.approx((25, 25, 25))
    r = check_t2_t_relation(E, ParamPair(1, 2), CFG)
    assert r.satisfied and (r.lhs, r.mid, r.rhs) == pytest.approx((1, 5, 7))
    r = check_t2_t_relation(L4, ParamPair(1.3, 1.3), CFG)
    assert abs(r.lhs - r.rhs) <= 2 * r.tol and abs(r.mid - r.lhs) <= r.tol


@pytest.mark.parametrize("space, verdict", [(E, "UNS"), (L4, "UNS"), (L1, "NOT_UNS"), (LINF, "NOT_UNS"),
                                            (DJ, "UNS")], ids=str)
def test_classification(space, verdict):
    r = classify_uniform_nonsquareness(space, CFG)
    assert r.verdict == verdict and r.t2_verdict == verdict and r.agree


def test_classification_margin_l4():
    r = classify_uniform_nonsquareness(L4, CFG)
    assert 2 - r.t_value == pytest.approx(2 - 2 ** 0.75, abs=1e-9)


def test_normal_structure_examples():
    r = certify_normal_structure(E, ParamPair(2, 1), CFG)
    assert r.verdict == "NOT_CERTIFIED" and r.details["case"] == "i"
    assert r.rhs == pytest.approx(math.sqrt(3)) and r.mid == pytest.approx(math.sqrt(5))
    r = certify_normal_structure(E, ParamPair(1, 1.2), CFG)
    assert r.verdict == "NOT_CERTIFIED" and r.details["case"] == "ii"
    assert r.rhs == pytest.approx(math.sqrt(2.16))
    r = certify_normal_structure(E, ParamPair(1, 3), CFG)
    assert r.verdict == "NOT_CERTIFIED" and r.details["reason"] == "vacuous condition" and r.rhs is None
    assert all(x.audit() for x in (r,))


def test_normal_structure_verdict_cases():
    assert normal_structure_verdict(1, 1, 1.0, 0.01)["verdict"] == "CERTIFIED"  # threshold sqrt(2)
    assert normal_structure_verdict(1, 1, 1.41, 0.01)["verdict"] == "NOT_CERTIFIED"  # within one error bound
    assert normal_structure_verdict(1, 2.5, 0.1, 0.0)["case"] == "iii"
    assert normal_structure_verdict(1, 3.5, 0.1, 0.0)["reason"] == "vacuous condition"


@settings(max_examples=300, deadline=None)
@given(k=st.floats(0.05, 10), t=st.floats(0.05, 10), t2=st.floats(0, 20), err=st.floats(0, 1),
       drop=st.floats(0, 5))
def test_normal_structure_is_monotone_in_estimate(k, t, t2, err, drop):
    before = normal_structure_verdict(k, t, t2, err)
    after = normal_structure_verdict(k, t, max(0.0, t2 - drop), err)
    if before["verdict"] == "CERTIFIED":
        assert after["verdict"] == "CERTIFIED"
    assert before["case"] == after["case"]


@pytest.mark.parametrize("space, pp", [(E, ParamPair(1, 1)), (L1, ParamPair(2, 3)), (DJ, ParamPair(1, 2))], ids=str)
def test_ball_sphere(space, pp):
    r = check_ball_sphere_equivalence(space, pp, CFG)
    assert r.satisfied and r.audit()
    assert r.mid == pytest.approx(r.rhs, rel=1e-3)  # the sphere sup is reached on the ball grid too


@pytest.mark.parametrize("tid", THEOREM_IDS)
def test_reports_self_audit_and_round_trip(tid):
    cfg = SearchConfig(coarse_grid=128)
    r = run_check(tid, L4, ParamPair(1, 2), 1.0, cfg)
    if isinstance(r, TheoremReport):
        assert r.audit()
        assert TheoremReport.from_dict(r.to_dict()) == r
        if r.satisfied and r.lhs is not None and r.rhs is not None:
            assert r.lhs <= r.rhs + r.tol


def test_run_check_validation():
    with pytest.raises(ValueError):
        run_check("nope", E)
    with pytest.raises(ValueError):
        run_check("t1-bounds", E)
    with pytest.raises(ValueError):
        run_check("t2-delta", E, ParamPair(1, 1))
    with pytest.raises(UnsupportedSpaceError):
        check_t1_bounds(EuclideanSpace(3), ParamPair(1, 1))


def test_audit_detects_tampering():
    r = check_t1_bounds(E, ParamPair(1, 2), CFG)
    r.satisfied = not r.satisfied
    assert not r.audit()
