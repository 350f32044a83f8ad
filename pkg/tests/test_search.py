import math

import numpy as np
import pytest

from banach_constants import (
    DomainError,
    EuclideanSpace,
    InfeasibleError,
    LpSpace,
    ObjectiveError,
    SearchConfig,
    UnsupportedSpaceError,
    maximize_pairwise,
    minimize_constrained_pair,
)
from banach_constants.search import Estimate, maximize_pairwise_scaled

import oracles


def t_product(space):
    return lambda x, y: space.norm(x + y) * space.norm(x - y)


def half_sum(space):
    return lambda x, y: 1.0 - space.norm(x + y) / 2.0


def test_config_validation():
    for bad in (dict(coarse_grid=4), dict(refine_rounds=0), dict(shrink=1.0), dict(shrink=0),
                dict(target_tol=0), dict(multistart=0)):
        with pytest.raises(ValueError):
            SearchConfig(**bad)
    assert SearchConfig.from_dict({"coarse_grid": 64}).coarse_grid == 64
    with pytest.raises(ValueError, match="unknown"):
        SearchConfig.from_dict({"grid": 64})


def test_euclid_product_sup():
    est = maximize_pairwise(EuclideanSpace(), t_product(EuclideanSpace()))
    assert est.value == pytest.approx(2.0, abs=est.error_bound)
    x, y = est.witness
    assert abs(x @ y) < 1e-6
    assert est.method == "grid2d" and est.certified


def test_l1_product_sup_and_witness():
    s = LpSpace(1.0)
    est = maximize_pairwise(s, t_product(s))
    assert abs(est.value - 4.0) <= est.error_bound
    np.testing.assert_allclose(np.abs(est.witness), [[1, 0], [0, 1]], atol=1e-12)


def test_constant_functional_and_tie_break():
    est = maximize_pairwise(EuclideanSpace(), lambda x, y: np.ones(np.broadcast_shapes(x.shape, y.shape)[:-1]),
                            SearchConfig(coarse_grid=64))
    assert est.value == 1.0
    assert est.extra["angles"] == [0.0, 0.0]


@pytest.mark.parametrize("space", [EuclideanSpace(), LpSpace(1.0), LpSpace(4.0)], ids=str)
def test_witness_and_unit_norm_invariants(space):
    f = lambda x, y: space.norm(2 * x + 3 * y) * space.norm(3 * x - 2 * y)
    est = maximize_pairwise(space, f, SearchConfig(coarse_grid=256))
    x, y = est.witness
    assert abs(space.norm(x) - 1) <= 1e-10 and abs(space.norm(y) - 1) <= 1e-10
    again = float(f(x[None], y[None])[0])
    assert abs(again - est.value) <= 1e-12 * abs(est.value)


def test_refinement_history_is_monotone():
    s = LpSpace(4.0)
    est = maximize_pairwise(s, t_product(s), SearchConfig(coarse_grid=64))
    h = est.extra["history"]
    assert all(b >= a for a, b in zip(h, h[1:]))
    assert len(h) == 41


def test_determinism_bit_identical():
    s = LpSpace(3.0)
    a = maximize_pairwise(s, t_product(s), SearchConfig(coarse_grid=128, seed=7))
    b = maximize_pairwise(s, t_product(s), SearchConfig(coarse_grid=128, seed=7))
    assert a.value == b.value and a.error_bound == b.error_bound and a.evaluations == b.evaluations
    np.testing.assert_array_equal(a.witness[0], b.witness[0])
    np.testing.assert_array_equal(a.witness[1], b.witness[1])


def test_finer_grid_never_worse():
    s = LpSpace(4.0)
    f = lambda x, y: s.norm(x + 2 * y) * s.norm(2 * x - y)
    coarse = maximize_pairwise(s, f, SearchConfig(coarse_grid=64))
    fine = maximize_pairwise(s, f, SearchConfig(coarse_grid=4096))
    assert fine.value >= coarse.value - 1e-12


def test_matches_independent_grid_oracle():
    s = LpSpace(4.0)
    f = lambda x, y: s.norm(x + 2 * y) * s.norm(2 * x - y)
    est = maximize_pairwise(s, f, SearchConfig(coarse_grid=256))
    norm4 = lambda v: oracles.lp_norm(v, 4)
    ref = oracles.grid_sup(norm4, oracles.product_functional(norm4, 1, 2, 2, -1), n=2048)
    assert ref <= est.value + est.error_bound
    assert est.value - ref < 1e-4  # the oracle is a lower bound only


def test_asymmetric_functional_scans_full_torus(caplog):
    s = EuclideanSpace()
    f = lambda x, y: x[..., 0] + 0.0 * y[..., 0]
    est = maximize_pairwise(s, f, SearchConfig(coarse_grid=64))
    assert not est.extra["symmetry_reduced"]
    assert est.value == pytest.approx(1.0)
    assert "not invariant" in caplog.text


def test_symmetry_reduction_agrees_with_full_scan():
    s = LpSpace(3.0)
    f = lambda x, y: s.norm(x + 3 * y) * s.norm(x - 0.5 * y)
    a = maximize_pairwise(s, f, SearchConfig(coarse_grid=128, use_symmetry=True))
    b = maximize_pairwise(s, f, SearchConfig(coarse_grid=128, use_symmetry=False))
    assert a.extra["symmetry_reduced"] and not b.extra["symmetry_reduced"]
    assert a.value == pytest.approx(b.value, abs=a.error_bound + b.error_bound)


def test_objective_error_carries_pair():
    def f(x, y):
        out = np.ones(np.broadcast_shapes(x.shape, y.shape)[:-1])
        return np.where(x[..., 0] > 0.99, np.nan, out)

    with pytest.raises(ObjectiveError) as info:
        maximize_pairwise(EuclideanSpace(), f, SearchConfig(coarse_grid=64))
    x, _ = info.value.pair
    assert x[0] > 0.99


def test_higher_dimension_is_lower_bound_only():
    s = EuclideanSpace(3)
    est = maximize_pairwise(s, t_product(s), SearchConfig(multistart=8))
    assert est.method == "multistart" and est.error_bound == math.inf and not est.certified
    assert 1.9 < est.value <= 2.0 + 1e-12
    again = maximize_pairwise(s, t_product(s), SearchConfig(multistart=8))
    assert again.value == est.value


def test_scaled_search_keeps_unit_witness():
    s = LpSpace(1.0)
    def f(x, y, t):
        t = np.asarray(t)
        ty = t[..., None] * y
        return (s.norm(x + ty) ** 2 + s.norm(x - ty) ** 2) / (2 + 2 * t * t)

    est = maximize_pairwise_scaled(s, f, SearchConfig(coarse_grid=64))
    assert abs(est.value - 2.0) <= est.error_bound
    assert 0.0 <= est.extra["radius"] <= 1.0
    for w in est.witness:
        assert abs(s.norm(w) - 1.0) < 1e-12


def test_constrained_examples():
    e = EuclideanSpace()
    est = minimize_constrained_pair(e, half_sum(e), 2.0)
    assert abs(est.value - 1.0) <= est.error_bound
    x, y = est.witness
    np.testing.assert_allclose(x, -y, atol=1e-3)
    est = minimize_constrained_pair(e, half_sum(e), 1.0)
    assert abs(est.value - (1 - math.sqrt(3) / 2)) <= est.error_bound
    l1 = LpSpace(1.0)
    est = minimize_constrained_pair(l1, half_sum(l1), 1.0)
    assert abs(est.value) <= max(est.error_bound, 1e-15)
    x, y = est.witness
    assert l1.norm(x - y) >= 1.0 - 1e-12


def test_constrained_below_dense_grid_oracle():
    for space, norm in ((EuclideanSpace(), lambda v: oracles.lp_norm(v, 2)),
                        (LpSpace(4.0), lambda v: oracles.lp_norm(v, 4))):
        for eps in (0.5, 1.0, 1.5):
            est = minimize_constrained_pair(space, half_sum(space), eps)
            assert est.value <= oracles.grid_min_constrained(norm, eps, n=1024) + est.error_bound


def test_constrained_errors():
    e = EuclideanSpace()
    with pytest.raises(InfeasibleError):
        minimize_constrained_pair(e, half_sum(e), 2.5)
    with pytest.raises(DomainError):
        minimize_constrained_pair(e, half_sum(e), -0.1)
    with pytest.raises(UnsupportedSpaceError):
        minimize_constrained_pair(EuclideanSpace(3), half_sum(EuclideanSpace(3)), 1.0)


def test_estimate_dict_round_trip():
    s = EuclideanSpace()
    est = maximize_pairwise(s, t_product(s), SearchConfig(coarse_grid=64))
    back = Estimate.from_dict(est.to_dict())
    assert back.value == est.value and back.extra == est.extra
    np.testing.assert_array_equal(back.witness[1], est.witness[1])
