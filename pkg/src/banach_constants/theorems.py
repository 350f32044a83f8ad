"""Numerical checks of the inequalities relating the constants.

Each check estimates the constants it needs, evaluates both sides of the
inequality and returns a :class:`TheoremReport`.  Tolerances are built
from the estimates' own error bounds (propagated through the formula by
its partial derivatives) plus ``1e-9``, never from a fixed global
epsilon.  Checks run on planar spaces only, where the estimates carry
finite error bounds.

A report audits itself: ``satisfied`` must equal ``margin >= -tol``
(``margin > tol`` for strict conditions, which need a full error bound of
room before they are certified).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .constants import (
    ConstantId,
    cnj_prime_constant,
    convexity_modulus,
    exact_value,
    t1_constant,
    t2_constant,
    t_constant,
)
from .errors import UnsupportedSpaceError
from .search import Estimate, SearchConfig
from .spaces import NormedSpace, ParamPair, sphere_points_2d

__all__ = [
    "TheoremReport",
    "ClassificationReport",
    "THEOREM_IDS",
    "check_t1_bounds",
    "check_t1_t_relation",
    "check_t2_bounds",
    "check_t2_delta_bounds",
    "check_t2_cnj_bound",
    "check_t2_t_relation",
    "classify_uniform_nonsquareness",
    "certify_normal_structure",
    "normal_structure_verdict",
    "check_ball_sphere_equivalence",
    "run_check",
]

BASE_TOL = 1e-9
NOT_UNS_SLACK = 1e-6

SATISFIED = "satisfied"
VIOLATED = "violated"
CERTIFIED = "CERTIFIED"
NOT_CERTIFIED = "NOT_CERTIFIED"
UNS = "UNS"
NOT_UNS = "NOT_UNS"
UNDECIDED = "UNDECIDED"


@dataclass
class TheoremReport:
    theorem_id: str
    space_id: str
    params: dict
    lhs: float | None
    mid: float | None
    rhs: float | None
    satisfied: bool
    margin: float
    tol: float
    verdict: str
    strict: bool = False
    caveats: list[str] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def audit(self) -> bool:
        """True when ``satisfied`` agrees with the stored margin and tolerance."""
        expected = self.margin > self.tol if self.strict else self.margin >= -self.tol
        return expected == self.satisfied

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "TheoremReport":
        return cls(**data)


@dataclass
class ClassificationReport:
    space_id: str
    verdict: str
    t_value: float
    t_error: float
    t2_value: float
    t2_error: float
    t2_verdict: str
    agree: bool
    params: dict = field(default_factory=lambda: {"kappa": 1.0, "tau": 2.0})
    theorem_id: str = "uns"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationReport":
        return cls(**data)


def _require_planar(space: NormedSpace) -> None:
    if space.dim != 2:
        raise UnsupportedSpaceError(
            f"theorem checks need two-sided estimates, available on planar spaces only ({space.id})"
        )


def _pp_dict(pp: ParamPair, **more) -> dict:
    return {"kappa": float(pp.kappa), "tau": float(pp.tau), **more}


def _summary(est: Estimate) -> dict:
    return {
        "value": est.value,
        "error_bound": est.error_bound,
        "witness": [est.witness[0].tolist(), est.witness[1].tolist()],
    }


def _report(theorem_id, space, params, lhs, mid, rhs, margin, tol, **kw) -> TheoremReport:
    ok = margin >= -tol
    return TheoremReport(
        theorem_id=theorem_id, space_id=space.id, params=params,
        lhs=lhs, mid=mid, rhs=rhs, satisfied=ok, margin=margin, tol=tol,
        verdict=SATISFIED if ok else VIOLATED, **kw,
    )


def check_t1_bounds(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None) -> TheoremReport:
    """sqrt(k^2 + t^2) <= T1(k, t) <= k + t."""
    _require_planar(space)
    est = t1_constant(space, pp, cfg)
    lhs = math.hypot(pp.kappa, pp.tau)
    rhs = pp.kappa + pp.tau
    margin = min(est.value - lhs, rhs - est.value)
    return _report("t1-bounds", space, _pp_dict(pp), lhs, est.value, rhs, margin,
                   est.error_bound + BASE_TOL, details={"T1": _summary(est)})


def check_t1_t_relation(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None) -> TheoremReport:
    """min(k, t) T <= T1(k, t) <= max(k, t) T."""
    _require_planar(space)
    t = t_constant(space, cfg)
    t1 = t1_constant(space, pp, cfg)
    lhs = pp.lo * t.value
    rhs = pp.hi * t.value
    margin = min(t1.value - lhs, rhs - t1.value)
    tol = t1.error_bound + pp.hi * t.error_bound + BASE_TOL
    return _report("t1-vs-t", space, _pp_dict(pp), lhs, t1.value, rhs, margin, tol,
                   details={"T": _summary(t), "T1": _summary(t1)})


def check_t2_bounds(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None) -> TheoremReport:
    """T2(k, t) <= k + t, plus the expected lower bound sqrt(k^2 + t^2).

    Only the upper bound decides ``satisfied``.  The lower bound is proved
    for infinite-dimensional spaces, so on a plane it is reported under
    ``details`` and a miss becomes a caveat rather than a failure.
    """
    _require_planar(space)
    est = t2_constant(space, pp, cfg)
    lhs = math.hypot(pp.kappa, pp.tau)
    rhs = pp.kappa + pp.tau
    tol = est.error_bound + BASE_TOL
    upper = rhs - est.value
    lower = est.value - lhs
    caveats = ["lower bound sqrt(k^2 + t^2) is proved for infinite-dimensional spaces only; "
               "checked here as an expectation"]
    if lower < -tol:
        caveats.append(f"expected lower bound missed by {-lower:.6g}")
    flags = []
    known = exact_value(space, ConstantId.T2, pp)
    if known is not None and not known.verified:
        flags.append(
            f"{known.source} = {known.value:.6g} exceeds the upper bound "
            f"k + t = {rhs:.6g}; measured T2 = {est.value:.10g} +/- {est.error_bound:.2g} "
            f"(product {est.extra['squared']:.10g}) is consistent with the upper bound"
        )
    return _report("t2-bounds", space, _pp_dict(pp), lhs, est.value, rhs, upper, tol,
                   caveats=caveats, flags=flags,
                   details={"T2": _summary(est), "expected_lower_margin": lower,
                            "expected_lower_holds": lower >= -tol})


def _t3_sides(pp: ParamPair, eps: float, delta: float) -> tuple[float, float]:
    big, small, gap = pp.hi, pp.lo, pp.gap
    s = 1.0 - delta
    lhs = 2 * big**2 * eps * s - big * gap * (2 * s + eps) + gap**2
    rhs = 2 * small**2 * eps * s + small * gap * (2 * s + eps) + gap**2
    return lhs, rhs


def check_t2_delta_bounds(space: NormedSpace, pp: ParamPair, eps: float,
                          cfg: SearchConfig | None = None) -> TheoremReport:
    """Both bounds on T2^2 in terms of 1 - delta(eps).

    The upper bound does not hold for every ``eps`` (it fails on l_1 at
    ``eps = 1``); a failure is reported, not raised.
    """
    _require_planar(space)
    d = convexity_modulus(space, eps, cfg)
    t2 = t2_constant(space, pp, cfg)
    lhs, rhs = _t3_sides(pp, eps, d.value)
    mid = t2.value**2
    big, small, gap = pp.hi, pp.lo, pp.gap
    # |d side / d delta| for each side
    slope = max(abs(2 * big**2 * eps - 2 * big * gap), abs(2 * small**2 * eps + 2 * small * gap))
    tol = slope * d.error_bound + 2 * t2.value * t2.error_bound + BASE_TOL
    margin = min(mid - lhs, rhs - mid)
    caveats = ["the upper bound is not valid for every eps; a violation here is a finding, "
               "not a numerical failure"]
    return _report("t2-delta", space, _pp_dict(pp, eps=eps), lhs, mid, rhs, margin, tol,
                   caveats=caveats,
                   details={"delta": _summary(d), "T2": _summary(t2),
                            "lower_margin": mid - lhs, "upper_margin": rhs - mid})


def check_t2_cnj_bound(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None) -> TheoremReport:
    """T2^2 <= 2 k^2 C' + 2 sqrt(2) k |k - t| sqrt(C') + (k - t)^2."""
    _require_planar(space)
    c = cnj_prime_constant(space, cfg)
    t2 = t2_constant(space, pp, cfg)
    k, gap = pp.kappa, pp.gap
    root_c = math.sqrt(c.value)
    rhs = 2 * k**2 * c.value + 2 * math.sqrt(2) * k * gap * root_c + gap**2
    mid = t2.value**2
    slope = 2 * k**2 + math.sqrt(2) * k * gap / root_c
    tol = slope * c.error_bound + 2 * t2.value * t2.error_bound + BASE_TOL
    return _report("t2-cnj", space, _pp_dict(pp), None, mid, rhs, rhs - mid, tol,
                   details={"CNJp": _summary(c), "T2": _summary(t2)})


def check_t2_t_relation(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None) -> TheoremReport:
    """(K T)^2 - 4 K |k-t| + (k-t)^2 <= T2^2 <= (m T)^2 + 4 m |k-t| + (k-t)^2.

    ``K`` and ``m`` are the larger and smaller of the two weights.
    """
    _require_planar(space)
    t = t_constant(space, cfg)
    t2 = t2_constant(space, pp, cfg)
    big, small, gap = pp.hi, pp.lo, pp.gap
    lhs = (big * t.value) ** 2 - 4 * big * gap + gap**2
    rhs = (small * t.value) ** 2 + 4 * small * gap + gap**2
    mid = t2.value**2
    margin = min(mid - lhs, rhs - mid)
    tol = 2 * big**2 * t.value * t.error_bound + 2 * t2.value * t2.error_bound + BASE_TOL
    return _report("t2-vs-t", space, _pp_dict(pp), lhs, mid, rhs, margin, tol,
                   details={"T": _summary(t), "T2": _summary(t2)})


def _uns_verdict(value: float, err: float, limit: float) -> str:
    if value + err < limit:
        return UNS
    if value - err >= limit - NOT_UNS_SLACK:
        return NOT_UNS
    return UNDECIDED


def classify_uniform_nonsquareness(space: NormedSpace, cfg: SearchConfig | None = None,
                                   pp: ParamPair | None = None) -> ClassificationReport:
    """Decide uniform non-squareness from T < 2, cross-checked by T2(k, t) < k + t."""
    _require_planar(space)
    pp = pp or ParamPair(1.0, 2.0)
    t = t_constant(space, cfg)
    t2 = t2_constant(space, pp, cfg)
    verdict = _uns_verdict(t.value, t.error_bound, 2.0)
    t2_verdict = _uns_verdict(t2.value, t2.error_bound, pp.kappa + pp.tau)
    agree = verdict == t2_verdict or UNDECIDED in (verdict, t2_verdict)
    return ClassificationReport(
        space_id=space.id, verdict=verdict, t_value=t.value, t_error=t.error_bound,
        t2_value=t2.value, t2_error=t2.error_bound, t2_verdict=t2_verdict, agree=agree,
        params=_pp_dict(pp),
    )


def normal_structure_verdict(kappa: float, tau: float, t2: float, err: float) -> dict:
    """Pure decision rule behind :func:`certify_normal_structure`.

    Returns the case label, the threshold (None when vacuous), the verdict
    and a reason.  CERTIFIED needs ``t2 + err < threshold``.
    """
    if tau < kappa:
        case, radicand = "i", tau * (kappa + tau)
    elif tau < 2 * kappa:
        case, radicand = "ii", tau * (3 * kappa - tau)
    else:
        case, radicand = "iii", (4 * kappa - tau) * (3 * kappa - tau)
    if radicand <= 0:
        return {"case": case, "threshold": None, "verdict": NOT_CERTIFIED, "reason": "vacuous condition"}
    threshold = math.sqrt(radicand)
    if t2 + err < threshold:
        return {"case": case, "threshold": threshold, "verdict": CERTIFIED,
                "reason": "T2 is below the threshold by more than its error bound"}
    return {"case": case, "threshold": threshold, "verdict": NOT_CERTIFIED,
            "reason": "T2 estimate is not below the threshold by a full error bound"}


def certify_normal_structure(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None) -> TheoremReport:
    """Check the sufficient condition for normal structure that applies to ``pp``.

    NOT_CERTIFIED says nothing about whether the space has normal structure.
    """
    _require_planar(space)
    est = t2_constant(space, pp, cfg)
    v = normal_structure_verdict(pp.kappa, pp.tau, est.value, est.error_bound)
    threshold = v["threshold"]
    margin = (threshold if threshold is not None else 0.0) - est.value
    ok = v["verdict"] == CERTIFIED
    return TheoremReport(
        theorem_id="normal-structure", space_id=space.id, params=_pp_dict(pp),
        lhs=None, mid=est.value, rhs=threshold, satisfied=ok, margin=margin,
        tol=est.error_bound, verdict=v["verdict"], strict=True,
        caveats=["NOT_CERTIFIED does not mean the space lacks normal structure"],
        details={"case": v["case"], "reason": v["reason"], "T2": _summary(est)},
    )


def check_ball_sphere_equivalence(space: NormedSpace, pp: ParamPair, cfg: SearchConfig | None = None,
                                  radii=(0.25, 0.5, 0.75, 1.0), angles: int = 256) -> TheoremReport:
    """The T1 product over the unit ball never exceeds its sup over the sphere.

    The ball is sampled on a polar grid (every radius pair times every
    angle pair); ``mid`` is the ball maximum, ``rhs`` the sphere estimate.
    """
    _require_planar(space)
    est = t1_constant(space, pp, cfg)
    sphere_sup = est.extra["squared"]
    sphere_err = est.extra["squared_error_bound"]
    u = sphere_points_2d(space, 2 * np.pi * np.arange(angles) / angles)
    r = np.asarray(radii, dtype=float)
    pts = (r[:, None, None] * u[None, :, :]).reshape(-1, 2)
    x, y = pts[:, None, :], pts[None, :, :]
    k, t = pp.kappa, pp.tau
    vals = space.norm(k * x + t * y) * space.norm(k * x - t * y)
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    ball_max = float(vals[i, j])
    tol = sphere_err + BASE_TOL
    return _report("ball-sphere", space, _pp_dict(pp), None, ball_max, sphere_sup,
                   sphere_sup - ball_max, tol,
                   details={"T1": _summary(est), "ball_argmax": [pts[i].tolist(), pts[j].tolist()],
                            "radii": list(map(float, radii)), "angles": angles})


THEOREM_IDS = ("t1-bounds", "t1-vs-t", "t2-bounds", "t2-delta", "t2-cnj", "t2-vs-t",
               "uns", "normal-structure", "ball-sphere")

_NEEDS_PP = {"t1-bounds", "t1-vs-t", "t2-bounds", "t2-delta", "t2-cnj", "t2-vs-t",
             "normal-structure", "ball-sphere"}


def run_check(theorem_id: str, space: NormedSpace, pp: ParamPair | None = None,
              eps: float | None = None, cfg: SearchConfig | None = None):
    """Dispatch by theorem id string; returns a TheoremReport or ClassificationReport."""
    if theorem_id not in THEOREM_IDS:
        raise ValueError(f"unknown theorem {theorem_id!r}; expected one of {list(THEOREM_IDS)}")
    if theorem_id in _NEEDS_PP and pp is None:
        raise ValueError(f"{theorem_id} needs kappa and tau")
    if theorem_id == "t2-delta" and eps is None:
        raise ValueError("t2-delta needs eps")
    if theorem_id == "uns":
        return classify_uniform_nonsquareness(space, cfg, pp)
    if theorem_id == "t2-delta":
        return check_t2_delta_bounds(space, pp, eps, cfg)
    return {
        "t1-bounds": check_t1_bounds,
        "t1-vs-t": check_t1_t_relation,
        "t2-bounds": check_t2_bounds,
        "t2-cnj": check_t2_cnj_bound,
        "t2-vs-t": check_t2_t_relation,
        "normal-structure": certify_normal_structure,
        "ball-sphere": check_ball_sphere_equivalence,
    }[theorem_id](space, pp, cfg)
