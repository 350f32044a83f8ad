"""Estimators for the geometric constants of a normed space.

Product-form constants (``T``, ``T1``, ``T2``) are searched as the product
of the two norms and square-rooted afterwards; the witness is unchanged
and the error bound is carried through the square root.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import DomainError, UnsupportedSpaceError
from .search import (
    Estimate,
    SearchConfig,
    maximize_pairwise,
    maximize_pairwise_scaled,
    minimize_constrained_pair,
)
from .spaces import DayJamesSpace, LpSpace, NormedSpace, ParamPair

__all__ = [
    "ConstantId",
    "ExactValue",
    "t_constant",
    "t1_constant",
    "t2_constant",
    "james_constant",
    "cnj_constant",
    "cnj_prime_constant",
    "a2_constant",
    "a_kt_constant",
    "convexity_modulus",
    "estimate",
    "exact_value",
    "functional",
]


class ConstantId(str, enum.Enum):
    T = "T"
    T1 = "T1"
    T2 = "T2"
    J = "J"
    CNJ = "CNJ"
    CNJ_PRIME = "CNJp"
    A2 = "A2"
    A_KT = "Akt"
    DELTA = "delta"

    @classmethod
    def parse(cls, text: str) -> "ConstantId":
        for member in cls:
            if text == member.value or text.upper() == member.name:
                return member
        raise ValueError(f"unknown constant {text!r}; expected one of {[m.value for m in cls]}")

    @property
    def needs_params(self) -> bool:
        return self in (ConstantId.T1, ConstantId.T2, ConstantId.A_KT)

    @property
    def needs_eps(self) -> bool:
        return self is ConstantId.DELTA

    @property
    def is_root_of_product(self) -> bool:
        return self in (ConstantId.T, ConstantId.T1, ConstantId.T2)


def _sqrt_estimate(est: Estimate) -> Estimate:
    """Square-root a product estimate, mapping its error bound accordingly.

    If the product sup lies in ``[P, P + e]`` the root lies in
    ``[sqrt(P), sqrt(P) + e / (2 sqrt(P))]``.
    """
    p = est.value
    root = math.sqrt(p)
    if not math.isfinite(est.error_bound):
        err = math.inf
    elif p > 0:
        err = est.error_bound / (2.0 * root)
    else:
        err = math.sqrt(est.error_bound)
    return replace(est, value=root, error_bound=err, extra={**est.extra, "squared": p,
                                                             "squared_error_bound": est.error_bound})


def _product(space: NormedSpace, a: float, b: float, c: float, d: float):
    """``||a x + b y|| * ||c x + d y||`` as a vectorized functional."""
    norm = space.norm

    def f(x, y):
        return norm(a * x + b * y) * norm(c * x + d * y)

    return f


def functional(space: NormedSpace, cid: ConstantId, pp: ParamPair | None = None) -> Callable:
    """The vectorized pair functional whose sup (or inf for delta) defines ``cid``.

    For the product-form constants this is the product before the square
    root; for ``CNJ`` it takes a third argument, the radius of ``y``.
    """
    norm = space.norm
    if cid is ConstantId.T:
        return _product(space, 1.0, 1.0, 1.0, -1.0)
    if cid is ConstantId.T1:
        return _product(space, pp.kappa, pp.tau, pp.kappa, -pp.tau)
    if cid is ConstantId.T2:
        return _product(space, pp.kappa, pp.tau, pp.tau, -pp.kappa)
    if cid is ConstantId.J:
        return lambda x, y: np.minimum(norm(x + y), norm(x - y))
    if cid is ConstantId.CNJ_PRIME:
        return lambda x, y: (norm(x + y) ** 2 + norm(x - y) ** 2) / 4.0
    if cid is ConstantId.CNJ:
        def ratio(x, y, t):
            t = np.asarray(t, dtype=float)
            ty = t[..., None] * y
            return (norm(x + ty) ** 2 + norm(x - ty) ** 2) / (2.0 + 2.0 * t * t)
        return ratio
    if cid is ConstantId.A2:
        return lambda x, y: (norm(x + y) + norm(x - y)) / 2.0
    if cid is ConstantId.A_KT:
        k, t = pp.kappa, pp.tau
        return lambda x, y: (norm(k * x + t * y) + norm(t * x - k * y)) / 2.0
    if cid is ConstantId.DELTA:
        return lambda x, y: 1.0 - norm(x + y) / 2.0
    raise ValueError(cid)


def t_constant(space: NormedSpace, cfg: SearchConfig | None = None) -> Estimate:
    """sup over unit x, y of (||x + y|| ||x - y||)^(1/2)."""
    return _sqrt_estimate(maximize_pairwise(space, functional(space, ConstantId.T), cfg))


def t1_constant(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None) -> Estimate:
    """sup over unit x, y of (||k x + t y|| ||k x - t y||)^(1/2)."""
    return _sqrt_estimate(maximize_pairwise(space, functional(space, ConstantId.T1, pp), cfg))


def t2_constant(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None) -> Estimate:
    """sup over unit x, y of (||k x + t y|| ||t x - k y||)^(1/2)."""
    return _sqrt_estimate(maximize_pairwise(space, functional(space, ConstantId.T2, pp), cfg))


def james_constant(space: NormedSpace, cfg: SearchConfig | None = None) -> Estimate:
    return maximize_pairwise(space, functional(space, ConstantId.J), cfg)


def cnj_prime_constant(space: NormedSpace, cfg: SearchConfig | None = None) -> Estimate:
    return maximize_pairwise(space, functional(space, ConstantId.CNJ_PRIME), cfg)


def cnj_constant(space: NormedSpace, cfg: SearchConfig | None = None) -> Estimate:
    """von Neumann-Jordan constant.

    By homogeneity and the x <-> y symmetry of the ratio it suffices to
    take ``x`` on the sphere and ``y = t * u`` with ``u`` on the sphere and
    ``t`` in ``[0, 1]``.  ``t = 0`` is kept (ratio 1 there).
    """
    return maximize_pairwise_scaled(space, functional(space, ConstantId.CNJ), cfg)


def a2_constant(space: NormedSpace, cfg: SearchConfig | None = None) -> Estimate:
    return maximize_pairwise(space, functional(space, ConstantId.A2), cfg)


def a_kt_constant(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None) -> Estimate:
    return maximize_pairwise(space, functional(space, ConstantId.A_KT, pp), cfg)


def convexity_modulus(space: NormedSpace, eps: float, cfg: SearchConfig | None = None) -> Estimate:
    """inf of 1 - ||x + y|| / 2 over unit pairs with ||x - y|| >= eps."""
    if not (math.isfinite(eps) and 0.0 <= eps <= 2.0):
        raise DomainError(f"the modulus of convexity is defined for 0 <= eps <= 2, got {eps}")
    if space.dim != 2:
        raise UnsupportedSpaceError("the modulus of convexity is only estimated on planar spaces")
    est = minimize_constrained_pair(space, functional(space, ConstantId.DELTA), eps, cfg)
    # 1 - ||x + y|| / 2 can round a few ulps below 0 when y = x
    return replace(est, value=min(max(est.value, 0.0), 1.0))


def estimate(space: NormedSpace, cid: ConstantId | str, pp: ParamPair | None = None,
             eps: float | None = None, cfg: SearchConfig | None = None) -> Estimate:
    """Dispatch to the estimator for ``cid``; validates the parameters it needs."""
    cid = ConstantId.parse(cid) if isinstance(cid, str) else cid
    if cid.needs_params and pp is None:
        raise DomainError(f"{cid.value} needs kappa and tau")
    if cid.needs_eps and eps is None:
        raise DomainError("delta needs eps")
    if cid is ConstantId.T:
        return t_constant(space, cfg)
    if cid is ConstantId.T1:
        return t1_constant(space, pp, cfg)
    if cid is ConstantId.T2:
        return t2_constant(space, pp, cfg)
    if cid is ConstantId.J:
        return james_constant(space, cfg)
    if cid is ConstantId.CNJ:
        return cnj_constant(space, cfg)
    if cid is ConstantId.CNJ_PRIME:
        return cnj_prime_constant(space, cfg)
    if cid is ConstantId.A2:
        return a2_constant(space, cfg)
    if cid is ConstantId.A_KT:
        return a_kt_constant(space, pp, cfg)
    return convexity_modulus(space, eps, cfg)


def recheck(space: NormedSpace, cid: ConstantId, est: Estimate, pp: ParamPair | None = None) -> float:
    """Re-evaluate the defining functional at ``est``'s witness."""
    x, y = (np.asarray(w, dtype=float)[None, :] for w in est.witness)
    f = functional(space, cid, pp)
    if cid is ConstantId.CNJ:
        return float(f(x, y, np.array([est.extra.get("radius", 1.0)]))[0])
    value = float(np.broadcast_to(f(x, y), (1,))[0])
    return math.sqrt(value) if cid.is_root_of_product else value


@dataclass(frozen=True)
class ExactValue:
    """A closed-form value of a constant on a specific space.

    ``verified`` is False for catalog entries whose stated value is
    contradicted by brute-force search; ``note`` explains why.
    """

    value: float
    source: str
    verified: bool = True
    note: str = ""


def _lp_closed_form(p: float, pp: ParamPair) -> float:
    k, t = pp.kappa, pp.tau
    return 2.0 ** (-1.0 / p) * ((k + t) ** p + abs(k - t) ** p) ** (1.0 / p)


def _is_l1_like(space: NormedSpace) -> bool:
    return isinstance(space, LpSpace) and space.p in (1.0, math.inf)


def exact_value(space: NormedSpace, cid: ConstantId | str, pp: ParamPair | None = None,
                eps: float | None = None) -> ExactValue | None:
    """Closed-form value of ``cid`` on ``space`` when one is known, else None.

    Only constants in the catalog below are covered; ``delta`` has none.
    """
    cid = ConstantId.parse(cid) if isinstance(cid, str) else cid
    hilbert = space.is_hilbert
    lp_gt2 = isinstance(space, LpSpace) and 2 < space.p < math.inf
    one = ParamPair(1.0, 1.0)

    if cid is ConstantId.T:
        if hilbert:
            return ExactValue(math.sqrt(2.0), "T of a Hilbert space is sqrt(2)")
        if lp_gt2:
            return ExactValue(_lp_closed_form(space.p, one),
                              "l_p closed form for T1 at kappa = tau = 1 (T1(1,1) = T)")
        if _is_l1_like(space):
            return ExactValue(2.0, "T = 2 exactly when the space is not uniformly non-square")
    if cid is ConstantId.T1 and pp is not None:
        if lp_gt2:
            return ExactValue(_lp_closed_form(space.p, pp),
                              "T1 on l_p, p > 2: 2^(-1/p) [(k+t)^p + |k-t|^p]^(1/p)")
        if _is_l1_like(space):
            return ExactValue(pp.kappa + pp.tau,
                              "T1 < k + t forces uniform non-squareness; l_1/l_inf are not")
    if cid is ConstantId.T2 and pp is not None:
        if hilbert:
            return ExactValue(math.hypot(pp.kappa, pp.tau), "T2 of a Hilbert space is sqrt(k^2 + t^2)")
        if _is_l1_like(space):
            return ExactValue(pp.kappa + pp.tau, "T2 = k + t on spaces that are not uniformly non-square")
        if isinstance(space, DayJamesSpace):
            return ExactValue(
                pp.hi * (pp.kappa + pp.tau),
                "reference value (k v t)(k + t) for the l_inf-l_1 plane",
                verified=False,
                note=("brute force gives sup ||kx+ty|| ||tx-ky|| = 361/24 at (2, 3), so "
                      "T2 = sqrt(361/24) ~ 3.8784; the reference number is not T2"),
            )
    if cid is ConstantId.CNJ_PRIME and _is_l1_like(space):
        return ExactValue(2.0, "C'_NJ = 2 on spaces that are not uniformly non-square")
    return None
