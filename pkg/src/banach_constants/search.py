"""Deterministic global search over pairs of unit vectors.

In the plane the unit sphere is parametrized by angle, so a pair of unit
vectors is a point of the torus ``[0, 2pi)^2``.  The engines run an
exhaustive coarse grid over the torus and then shrink a small local grid
around the incumbent for a fixed number of rounds.  In higher dimension
there is no cheap exhaustive scan; a seeded multi-start hill climb runs
instead and its result is only a lower bound (``error_bound = inf``).

Functionals are vectorized callables ``f(x, y)`` where ``x`` and ``y``
are arrays whose last axis holds coordinates.  The engines assume
``f(-x, -y) == f(x, y)``, which holds for anything built from norms of
linear combinations of ``x`` and ``y``.  That lets the first angle range
over ``[0, pi)`` only; a spot check falls back to the full torus when the
assumption fails.

Error model (planar case): ``error_bound = L * h + 1e-13 * max(1, |value|)``
where ``h`` is the final local grid spacing and ``L`` is 1.5 times the
largest sampled finite-difference slope (sum of the absolute partials) of
the functional in angle coordinates.  The second term covers floating
point evaluation error.  The bound is heuristic: it assumes the coarse
grid already sits in the basin of the global optimum.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, InfeasibleError, ObjectiveError, UnsupportedSpaceError
from .spaces import NormedSpace, sphere_points_2d

log = logging.getLogger(__name__)

Functional = Callable[[np.ndarray, np.ndarray], np.ndarray]
ScaledFunctional = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

TWO_PI = 2.0 * math.pi
ROUNDING_ALLOWANCE = 1e-13
LOCAL_HALF_WIDTH = 2  # local grids are (2 * 2 + 1) points per axis
_CHUNK = 1 << 21  # functional evaluations per vectorized block


@dataclass(frozen=True)
class SearchConfig:
    coarse_grid: int = 2048
    refine_rounds: int = 40
    shrink: float = 0.5
    multistart: int = 64
    seed: int = 0
    target_tol: float = 1e-4
    use_symmetry: bool = True

    def __post_init__(self):
        if self.coarse_grid < 8:
            raise ValueError("coarse_grid must be >= 8")
        if self.refine_rounds < 1:
            raise ValueError("refine_rounds must be >= 1")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")
        if self.multistart < 1:
            raise ValueError("multistart must be >= 1")
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "SearchConfig":
        known = {k: data[k] for k in cls.__dataclass_fields__ if k in data}
        unknown = set(data) - set(known)
        if unknown:
            raise ValueError(f"unknown SearchConfig keys: {sorted(unknown)}")
        return cls(**known)


@dataclass
class Estimate:
    value: float
    witness: tuple[np.ndarray, np.ndarray]
    evaluations: int
    error_bound: float
    method: str
    extra: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return math.isfinite(self.error_bound)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "error_bound": self.error_bound,
            "witness": [self.witness[0].tolist(), self.witness[1].tolist()],
            "evaluations": self.evaluations,
            "method": self.method,
            **({"extra": self.extra} if self.extra else {}),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Estimate":
        w = data["witness"]
        return cls(
            value=data["value"],
            witness=(np.asarray(w[0], dtype=float), np.asarray(w[1], dtype=float)),
            evaluations=data["evaluations"],
            error_bound=data["error_bound"],
            method=data["method"],
            extra=data.get("extra", {}),
        )


def _evaluate(f: Functional, x, y) -> np.ndarray:
    out = np.asarray(f(x, y), dtype=float)
    shape = np.broadcast_shapes(x.shape[:-1], y.shape[:-1])
    out = np.broadcast_to(out, shape)
    if not np.all(np.isfinite(out)):
        bad = np.unravel_index(int(np.argmax(~np.isfinite(out))), shape)
        xb = np.broadcast_to(x, shape + x.shape[-1:])[bad]
        yb = np.broadcast_to(y, shape + y.shape[-1:])[bad]
        raise ObjectiveError(
            f"objective returned {out[bad]} at x={xb.tolist()}, y={yb.tolist()}",
            pair=(xb.copy(), yb.copy()),
        )
    return out


def _symmetric(space: NormedSpace, f: Functional, seed: int, checks: int = 8) -> bool:
    rng = np.random.default_rng([seed, 0x5EED])
    t = rng.uniform(0.0, TWO_PI, size=(2, checks))
    x = sphere_points_2d(space, t[0])
    y = sphere_points_2d(space, t[1])
    a = _evaluate(f, x, y)
    b = _evaluate(f, -x, -y)
    return bool(np.all(np.abs(a - b) <= 1e-12 * np.maximum(1.0, np.abs(a))))


def _theta_grid(n: int) -> np.ndarray:
    return TWO_PI * np.arange(n) / n


def _first_axis(n: int, reduced: bool) -> np.ndarray:
    theta = _theta_grid(n)
    return theta[theta < math.pi] if reduced else theta


def _estimate_lipschitz(g: Callable[[np.ndarray], np.ndarray], lo, hi, center, seed: int,
                        samples: int = 256, step: float = 1e-6) -> float:
    """1.5 x the largest sampled slope of ``g`` (sum of |partials|) over a box."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    rng = np.random.default_rng([seed, 0x11F])
    d = lo.size
    pts = lo + (hi - lo) * rng.random((samples, d))
    near = np.asarray(center, dtype=float) + rng.uniform(-1e-3, 1e-3, size=(16, d))
    pts = np.clip(np.concatenate([pts, near]), lo + step, hi - step)
    slope = np.zeros(len(pts))
    for k in range(d):
        e = np.zeros(d)
        e[k] = step
        slope += np.abs(g(pts + e) - g(pts - e)) / (2 * step)
    return 1.5 * float(slope.max())


def _finish_bound(lipschitz: float, h: float, value: float) -> float:
    return lipschitz * h + ROUNDING_ALLOWANCE * max(1.0, abs(value))


def _local_offsets(h: float) -> np.ndarray:
    return h * np.arange(-LOCAL_HALF_WIDTH, LOCAL_HALF_WIDTH + 1)


def maximize_pairwise(space: NormedSpace, f: Functional, cfg: SearchConfig | None = None,
                      lipschitz: float | None = None) -> Estimate:
    """Maximize ``f(x, y)`` over pairs of unit vectors of ``space``.

    Ties on the coarse grid go to the lexicographically smallest
    ``(theta1, theta2)``; refinement only moves the incumbent on strict
    improvement, so the result is deterministic and the incumbent value is
    non-decreasing across rounds.
    """
    cfg = cfg or SearchConfig()
    if space.dim != 2:
        return _multistart(space, f, cfg)

    def on_angles(t1, t2):
        return _evaluate(f, sphere_points_2d(space, t1), sphere_points_2d(space, t2))

    reduced = cfg.use_symmetry and _symmetric(space, f, cfg.seed)
    if cfg.use_symmetry and not reduced:
        log.warning("functional is not invariant under (x, y) -> (-x, -y); scanning the full torus")
    n = cfg.coarse_grid
    t1_axis = _first_axis(n, reduced)
    t2_axis = _theta_grid(n)
    sphere = sphere_points_2d(space, t2_axis)
    rows = sphere[: len(t1_axis)] if reduced else sphere

    best, bi, bj = -math.inf, 0, 0
    evaluations = 0
    block = max(1, _CHUNK // n)
    for start in range(0, len(t1_axis), block):
        vals = _evaluate(f, rows[start:start + block, None, :], sphere[None, :, :])
        evaluations += vals.size
        k = int(np.argmax(vals))
        v = float(vals.flat[k])
        if v > best:
            best = v
            bi, bj = divmod(k, n)
            bi += start

    a, b = float(t1_axis[bi]), float(t2_axis[bj])
    h = TWO_PI / n
    history = [best]
    for _ in range(cfg.refine_rounds):
        h *= cfg.shrink
        off = _local_offsets(h)
        g1, g2 = np.meshgrid(a + off, b + off, indexing="ij")
        vals = on_angles(g1.ravel(), g2.ravel())
        evaluations += vals.size
        k = int(np.argmax(vals))
        if vals[k] > best:
            best = float(vals[k])
            a, b = float(g1.ravel()[k]), float(g2.ravel()[k])
        history.append(best)

    wx = sphere_points_2d(space, np.array([a]))
    wy = sphere_points_2d(space, np.array([b]))
    value = float(_evaluate(f, wx, wy)[0])
    evaluations += 1

    if lipschitz is None:
        lipschitz = _estimate_lipschitz(
            lambda p: on_angles(p[:, 0], p[:, 1]),
            lo=(0.0, 0.0), hi=(TWO_PI, TWO_PI), center=(a, b), seed=cfg.seed,
        )
        evaluations += 2 * 2 * (256 + 16)
    bound = _finish_bound(lipschitz, h, value)
    if bound > cfg.target_tol:
        log.warning("error bound %.3g exceeds target tolerance %.3g", bound, cfg.target_tol)
    return Estimate(
        value=value,
        witness=(wx[0], wy[0]),
        evaluations=evaluations,
        error_bound=bound,
        method="grid2d",
        extra={"angles": [a, b], "lipschitz": lipschitz, "final_spacing": h,
               "symmetry_reduced": reduced, "history": history},
    )


def maximize_pairwise_scaled(space: NormedSpace, f: ScaledFunctional, cfg: SearchConfig | None = None,
                             radius_points: int = 64) -> Estimate:
    """Maximize ``f(x, y, t)`` over unit ``x``, ``y`` and a radius ``t`` in ``[0, 1]``.

    The radius is a third grid axis with ``radius_points`` coarse nodes,
    refined together with the two angles.  The witness holds the unit
    vectors ``(x, y)``; the maximizing pair is ``(x, t * y)`` with ``t`` in
    ``extra["radius"]``.

    With the radius axis the coarse scan uses ``coarse_grid // 4`` angles
    per axis (at least 8); the local refinement reaches the same final
    spacing regardless, and a full-size 3-axis scan costs 16x more.
    """
    cfg = cfg or SearchConfig()
    if space.dim != 2:
        return _multistart_scaled(space, f, cfg)

    def on_grid(t1, t2, r):
        return np.asarray(f(sphere_points_2d(space, t1), sphere_points_2d(space, t2), r), dtype=float)

    reduced = cfg.use_symmetry and _symmetric(space, lambda x, y: f(x, y, 0.5), cfg.seed)
    n = max(8, cfg.coarse_grid // 4)
    t1_axis = _first_axis(n, reduced)
    t2_axis = _theta_grid(n)
    r_axis = np.linspace(0.0, 1.0, radius_points)
    sphere = sphere_points_2d(space, t2_axis)
    rows = sphere[: len(t1_axis)]

    best, best_idx = -math.inf, (0, 0, 0)
    evaluations = 0
    block = max(1, _CHUNK // n)
    for ri, r in enumerate(r_axis):
        for start in range(0, len(t1_axis), block):
            x = rows[start:start + block, None, :]
            y = sphere[None, :, :]
            vals = np.broadcast_to(np.asarray(f(x, y, r), dtype=float), (x.shape[0], n))
            if not np.all(np.isfinite(vals)):
                raise ObjectiveError(f"objective returned non-finite values at radius {r}")
            evaluations += vals.size
            k = int(np.argmax(vals))
            if vals.flat[k] > best:
                best = float(vals.flat[k])
                i, j = divmod(k, n)
                best_idx = (i + start, j, ri)

    a, b, t = float(t1_axis[best_idx[0]]), float(t2_axis[best_idx[1]]), float(r_axis[best_idx[2]])
    h = TWO_PI / n
    hr = 1.0 / (radius_points - 1)
    history = [best]
    for _ in range(cfg.refine_rounds):
        h *= cfg.shrink
        hr *= cfg.shrink
        off = _local_offsets(h)
        g1, g2, g3 = np.meshgrid(a + off, b + off, np.clip(t + _local_offsets(hr), 0.0, 1.0), indexing="ij")
        vals = on_grid(g1.ravel(), g2.ravel(), g3.ravel())
        evaluations += vals.size
        k = int(np.argmax(vals))
        if vals[k] > best:
            best = float(vals[k])
            a, b, t = float(g1.ravel()[k]), float(g2.ravel()[k]), float(g3.ravel()[k])
        history.append(best)

    wx = sphere_points_2d(space, np.array([a]))
    wy = sphere_points_2d(space, np.array([b]))
    value = float(np.asarray(f(wx, wy, np.array([t])), dtype=float).ravel()[0])
    lip = _estimate_lipschitz(
        lambda p: on_grid(p[:, 0], p[:, 1], p[:, 2]),
        lo=(0.0, 0.0, 0.0), hi=(TWO_PI, TWO_PI, 1.0), center=(a, b, t), seed=cfg.seed,
    )
    evaluations += 2 * 3 * (256 + 16) + 1
    bound = _finish_bound(lip, max(h, hr), value)
    return Estimate(
        value=value,
        witness=(wx[0], wy[0]),
        evaluations=evaluations,
        error_bound=bound,
        method="grid2d",
        extra={"angles": [a, b], "radius": t, "lipschitz": lip, "final_spacing": max(h, hr),
               "coarse_angles": n, "symmetry_reduced": reduced, "history": history},
    )


CONSTRAINT_SLACK = 1e-15


def _slack(eps: float) -> float:
    return CONSTRAINT_SLACK * max(1.0, eps)


def _feasible(space: NormedSpace, x, y, eps: float, sign: float = -1.0) -> np.ndarray:
    """``||x - y|| >= eps -/+ slack``; ``sign=-1`` relaxes, ``sign=+1`` is conservative."""
    return space.norm(x - y) >= eps + sign * _slack(eps)


def _bisect_boundary(space: NormedSpace, eps: float, x: np.ndarray, lo: np.ndarray, hi: np.ndarray,
                     sign: float, iterations: int = 60) -> np.ndarray:
    """Bisect in the second angle; ``lo`` is feasible, ``hi`` is not."""
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        ok = _feasible(space, x, sphere_points_2d(space, mid), eps, sign)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return lo


def _crossings(feasible: np.ndarray, t2: np.ndarray):
    """Rows, feasible ends and infeasible ends of every feasibility change along axis 1."""
    r, c = np.nonzero(feasible[:, :-1] != feasible[:, 1:])
    lo = t2[r, c].copy() if t2.ndim == 2 else t2[c].copy()
    hi = t2[r, c + 1].copy() if t2.ndim == 2 else t2[c + 1].copy()
    swap = ~feasible[r, c]
    lo[swap], hi[swap] = hi[swap], lo[swap].copy()
    return r, lo, hi


def _boundary_points(space: NormedSpace, eps: float, t1: np.ndarray, t2: np.ndarray,
                     sign: float = -1.0):
    """Points of ``||x(t1) - y(t2)|| = eps`` on the feasible side, row by row of ``t2``."""
    x = sphere_points_2d(space, t1)
    feasible = _feasible(space, x[:, None, :], sphere_points_2d(space, t2), eps, sign)
    r, lo, hi = _crossings(feasible, t2)
    return t1[r], _bisect_boundary(space, eps, x[r], lo, hi, sign)


def minimize_constrained_pair(space: NormedSpace, objective: Functional, eps: float,
                              cfg: SearchConfig | None = None) -> Estimate:
    """Minimize ``objective(x, y)`` over unit pairs with ``||x - y|| >= eps``.

    Grid points violating the constraint are skipped.  In each row of the
    grid the boundary ``||x - y|| = eps`` is located by bisection in the
    second angle and the boundary points join the candidate set, as do the
    antipodal pairs ``y = -x``, which are feasible for every ``eps <= 2``.

    Feasibility is decided with a slack of a few ulps.  Near a tangency
    (``eps = 2`` on a round sphere, say) that slack lets in pairs whose
    objective lies well below the infimum, so a second refinement from the
    same start with the conservative test brackets the answer: the gap
    between the two minima is added to the error bound.
    """
    cfg = cfg or SearchConfig()
    if space.dim != 2:
        raise UnsupportedSpaceError("constrained pair search needs a planar space")
    if not math.isfinite(eps) or eps < 0:
        raise DomainError(f"eps must be >= 0, got {eps}")
    if eps > 2:
        raise InfeasibleError(f"no unit pair has ||x - y|| >= {eps} > 2")

    def scored(t1, t2, antipodal, sign):
        """Objective at the given angles, +inf where infeasible."""
        x = sphere_points_2d(space, t1)
        y = sphere_points_2d(space, t2)
        ok = _feasible(space, x, y, eps, sign) | antipodal
        return np.where(ok, _evaluate(objective, x, y), math.inf)

    def extra_candidates(t1_rows, t2_window, sign):
        bt1, bt2 = _boundary_points(space, eps, t1_rows, t2_window, sign)
        c1 = np.concatenate([t1_rows, bt1])
        c2 = np.concatenate([t1_rows + math.pi, bt2])
        anti = np.zeros(c1.size, dtype=bool)
        anti[: t1_rows.size] = True
        return c1, c2, anti

    reduced = cfg.use_symmetry and _symmetric(space, objective, cfg.seed)
    n = cfg.coarse_grid
    t1_axis = _first_axis(n, reduced)
    t2_axis = _theta_grid(n)
    sphere = sphere_points_2d(space, t2_axis)
    rows = sphere[: len(t1_axis)]

    best, a, b = math.inf, 0.0, 0.0
    evaluations = 0
    block = max(1, _CHUNK // n)
    wrapped = np.append(t2_axis, TWO_PI)
    cross_t1, cross_lo, cross_hi = [], [], []
    for start in range(0, len(t1_axis), block):
        x = rows[start:start + block, None, :]
        y = sphere[None, :, :]
        ok = _feasible(space, x, y, eps)
        vals = np.where(ok, _evaluate(objective, x, y), math.inf)
        evaluations += vals.size
        k = int(np.argmin(vals))
        if vals.flat[k] < best:
            best = float(vals.flat[k])
            i, j = divmod(k, n)
            a, b = float(t1_axis[start + i]), float(t2_axis[j])
        r, lo, hi = _crossings(np.concatenate([ok, ok[:, :1]], axis=1), wrapped)
        cross_t1.append(t1_axis[start + r])
        cross_lo.append(lo)
        cross_hi.append(hi)

    bt1 = np.concatenate(cross_t1)
    bt2 = _bisect_boundary(space, eps, sphere_points_2d(space, bt1),
                           np.concatenate(cross_lo), np.concatenate(cross_hi), -1.0)
    c1 = np.concatenate([t1_axis, bt1])
    c2 = np.concatenate([t1_axis + math.pi, bt2])
    anti = np.arange(c1.size) < t1_axis.size
    vals = scored(c1, c2, anti, -1.0)
    evaluations += vals.size
    k = int(np.argmin(vals))
    if vals[k] < best:
        best = float(vals[k])
        a, b = float(c1[k]), float(c2[k])
    if not math.isfinite(best):
        raise InfeasibleError(f"no feasible pair found for eps={eps}")

    def refine(a, b, best, sign):
        nonlocal evaluations
        h = TWO_PI / n
        history = [best]
        for _ in range(cfg.refine_rounds):
            h *= cfg.shrink
            off = _local_offsets(h)
            g1, g2 = np.meshgrid(a + off, b + off, indexing="ij")
            window = b + np.linspace(-LOCAL_HALF_WIDTH * h, LOCAL_HALF_WIDTH * h, 4 * LOCAL_HALF_WIDTH + 1)
            e1, e2, eanti = extra_candidates(a + off, np.broadcast_to(window, (off.size, window.size)), sign)
            c1 = np.concatenate([g1.ravel(), e1])
            c2 = np.concatenate([g2.ravel(), e2])
            anti = np.concatenate([np.zeros(g1.size, dtype=bool), eanti])
            vals = scored(c1, c2, anti, sign)
            evaluations += vals.size
            k = int(np.argmin(vals))
            if vals[k] < best:
                best = float(vals[k])
                a, b = float(c1[k]), float(c2[k])
            history.append(best)
        return a, b, best, h, history

    start_ab = (a, b)
    a, b, best, h, history = refine(a, b, best, -1.0)
    wx = sphere_points_2d(space, np.array([a]))
    wy = sphere_points_2d(space, np.array([b]))
    value = float(_evaluate(objective, wx, wy)[0])

    # conservative bracket, started where the relaxed search started
    s_init = float(scored(np.array([start_ab[0]]), np.array([start_ab[1]]), np.array([False]), 1.0)[0])
    *_, strict_best, _, _ = refine(*start_ab, s_init, 1.0)
    gap = max(0.0, strict_best - value)

    lip = _estimate_lipschitz(
        lambda p: _evaluate(objective, sphere_points_2d(space, p[:, 0]), sphere_points_2d(space, p[:, 1])),
        lo=(0.0, 0.0), hi=(TWO_PI, TWO_PI), center=(a, b), seed=cfg.seed,
    )
    evaluations += 2 * 2 * (256 + 16) + 2
    return Estimate(
        value=value,
        witness=(wx[0], wy[0]),
        evaluations=evaluations,
        error_bound=_finish_bound(lip, h, value) + gap,
        method="grid2d",
        extra={"angles": [a, b], "lipschitz": lip, "final_spacing": h, "eps": eps,
               "strict_value": strict_best, "symmetry_reduced": reduced, "history": history},
    )


def _unit_rows(space: NormedSpace, v: np.ndarray) -> np.ndarray:
    return v / space.norm(v)[:, None]


def _hill_climb(space: NormedSpace, score: Callable, starts: list[np.ndarray], cfg: SearchConfig,
                steps_per_round: int = 8):
    """Seeded parallel hill climb; ``starts`` are arrays of shape (m, dim)."""
    rng = np.random.default_rng([cfg.seed, 0x3A17])
    current = [s.copy() for s in starts]
    vals = score(*current)
    evaluations = vals.size
    sigma = np.full(vals.shape, 0.5)
    for _ in range(cfg.refine_rounds):
        improved = np.zeros(vals.shape, dtype=bool)
        for _ in range(steps_per_round):
            trial = [_unit_rows(space, c + sigma[:, None] * rng.standard_normal(c.shape)) for c in current]
            tv = score(*trial)
            evaluations += tv.size
            better = tv > vals
            for c, t in zip(current, trial):
                c[better] = t[better]
            vals = np.where(better, tv, vals)
            improved |= better
        sigma = np.where(improved, sigma, sigma * cfg.shrink)
    return current, vals, evaluations


def _multistart(space: NormedSpace, f: Functional, cfg: SearchConfig) -> Estimate:
    rng = np.random.default_rng([cfg.seed, 0x7E57])
    m, d = cfg.multistart, space.dim
    x0 = _unit_rows(space, rng.standard_normal((m, d)))
    y0 = _unit_rows(space, rng.standard_normal((m, d)))
    (x, y), vals, evaluations = _hill_climb(space, lambda a, b: _evaluate(f, a, b), [x0, y0], cfg)
    k = int(np.argmax(vals))
    return Estimate(
        value=float(vals[k]),
        witness=(x[k].copy(), y[k].copy()),
        evaluations=evaluations,
        error_bound=math.inf,
        method="multistart",
        extra={"lower_bound_only": True},
    )


def _multistart_scaled(space: NormedSpace, f: ScaledFunctional, cfg: SearchConfig,
                       radius_points: int = 9) -> Estimate:
    rng = np.random.default_rng([cfg.seed, 0x7E58])
    m, d = cfg.multistart, space.dim
    x0 = _unit_rows(space, rng.standard_normal((m, d)))
    y0 = _unit_rows(space, rng.standard_normal((m, d)))
    best_val, best = -math.inf, None
    evaluations = 0
    for r in np.linspace(0.0, 1.0, radius_points):
        (x, y), vals, ev = _hill_climb(
            space, lambda a, b, r=r: np.asarray(f(a, b, r), dtype=float), [x0, y0], cfg)
        evaluations += ev
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val, best = float(vals[k]), (x[k].copy(), y[k].copy(), float(r))
    x, y, r = best
    return Estimate(
        value=best_val,
        witness=(x, y),
        evaluations=evaluations,
        error_bound=math.inf,
        method="multistart",
        extra={"lower_bound_only": True, "radius": r},
    )
