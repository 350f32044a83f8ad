"""Finite-dimensional real normed spaces and a small catalog of norms.

Every space evaluates its norm over the last axis of an array, so a
single call can handle a whole grid of vectors::

    >>> space = LpSpace(p=1.0, dim=2)
    >>> float(space.norm([2.0, 3.0]))
    5.0

Spaces are frozen dataclasses: immutable, hashable and safe to share.
Pseudo-random sampling anywhere in the package goes through
``numpy.random.default_rng(seed)`` (PCG64), so seeded runs repeat
bit-for-bit on one platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import (
    DegenerateInputError,
    DimensionError,
    SpaceDefinitionError,
    UnsupportedSpaceError,
)

__all__ = [
    "NormedSpace",
    "LpSpace",
    "EuclideanSpace",
    "DayJamesSpace",
    "PolyhedralSpace",
    "ParamPair",
    "ValidationReport",
    "as_vector",
    "norm",
    "normalize",
    "sphere_point_2d",
    "sphere_points_2d",
    "validate_norm_axioms",
    "parse_space",
    "read_extreme_points",
]


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Coerce ``v`` to a finite float64 vector of length >= 2."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise DimensionError(f"expected a 1-D vector, got shape {arr.shape}")
    if arr.size < 2:
        raise DimensionError("vectors must have at least 2 coordinates")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"vector has non-finite coordinates: {arr!r}")
    if dim is not None and arr.size != dim:
        raise DimensionError(f"vector of length {arr.size} in a space of dimension {dim}")
    return arr


@dataclass(frozen=True)
class ParamPair:
    """The two strictly positive weights ``kappa`` and ``tau``."""

    kappa: float
    tau: float

    def __post_init__(self):
        for name in ("kappa", "tau"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a finite positive number, got {value!r}")

    @property
    def lo(self) -> float:
        return min(self.kappa, self.tau)

    @property
    def hi(self) -> float:
        return max(self.kappa, self.tau)

    @property
    def gap(self) -> float:
        return abs(self.kappa - self.tau)

    def swapped(self) -> "ParamPair":
        return ParamPair(self.tau, self.kappa)


class NormedSpace:
    """Base class: a norm on R^dim.

    Subclasses implement :meth:`_norm`, which receives an array whose last
    axis has length ``dim`` and returns the norms over that axis.
    """

    dim: int

    @property
    def id(self) -> str:
        raise NotImplementedError

    @property
    def is_hilbert(self) -> bool:
        return False

    def _norm(self, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def norm(self, v) -> np.ndarray:
        arr = np.asarray(v, dtype=float)
        if arr.shape[-1] != self.dim:
            raise DimensionError(
                f"last axis has length {arr.shape[-1]}, space {self.id} has dimension {self.dim}"
            )
        return self._norm(arr)

    def __str__(self) -> str:
        return self.id


def _check_dim(dim: int) -> None:
    if int(dim) != dim or dim < 2:
        raise SpaceDefinitionError(f"dimension must be an integer >= 2, got {dim!r}")


@dataclass(frozen=True)
class LpSpace(NormedSpace):
    """R^dim with the l_p norm; ``p=math.inf`` selects the max norm."""

    p: float
    dim: int = 2

    def __post_init__(self):
        _check_dim(self.dim)
        if math.isnan(self.p) or self.p < 1:
            raise SpaceDefinitionError(f"l_p needs p >= 1 or inf, got {self.p!r}")

    @property
    def id(self) -> str:
        return f"lp:{_format_p(self.p)}:{self.dim}"

    @property
    def is_hilbert(self) -> bool:
        return self.p == 2

    def _norm(self, v):
        a = np.abs(v)
        p = self.p
        if p == math.inf:
            return a.max(axis=-1)
        if p == 1:
            return a.sum(axis=-1)
        if p == 2:
            return np.sqrt((a * a).sum(axis=-1))
        if a.ndim == 1:
            return self._norm(v[None, :])[0]
        with np.errstate(over="ignore", under="ignore"):
            out = np.power(np.power(a, p).sum(axis=-1), 1.0 / p)
        bad = ~np.isfinite(out) | ((out == 0) & np.any(a > 0, axis=-1))
        if np.any(bad):
            # a**p left the float range: rescale those rows by their max coordinate
            m = a[bad].max(axis=-1)
            out[bad] = m * np.power(np.power(a[bad] / m[:, None], p).sum(axis=-1), 1.0 / p)
        return out


@dataclass(frozen=True)
class EuclideanSpace(NormedSpace):
    dim: int = 2

    def __post_init__(self):
        _check_dim(self.dim)

    @property
    def id(self) -> str:
        return f"euclid:{self.dim}"

    @property
    def is_hilbert(self) -> bool:
        return True

    def _norm(self, v):
        return np.sqrt((v * v).sum(axis=-1))


@dataclass(frozen=True)
class DayJamesSpace(NormedSpace):
    """R^2 with the l_inf norm on same-sign vectors and l_1 on opposite-sign ones.

    Points with a zero coordinate take the same-sign (max) branch; the two
    formulas agree there.
    """

    dim: int = 2

    def __post_init__(self):
        if self.dim != 2:
            raise UnsupportedSpaceError("the Day-James l_inf-l_1 norm is only defined on R^2")

    @property
    def id(self) -> str:
        return "dayjames"

    def _norm(self, v):
        a = np.abs(v[..., 0])
        b = np.abs(v[..., 1])
        opposite = v[..., 0] * v[..., 1] < 0
        return np.where(opposite, a + b, np.maximum(a, b))


@dataclass(frozen=True)
class PolyhedralSpace(NormedSpace):
    """Minkowski gauge of the convex hull of a symmetric set of extreme points.

    In the plane the facets come from sorting the vertices by angle; in
    higher dimension they come from Qhull.  Either way the gauge is the
    maximum of the facet functionals ``a_i . v`` with ``a_i . x = 1`` on
    facet ``i``, which is the exact value of the gauge linear program.
    """

    extreme_points: tuple[tuple[float, ...], ...]
    label: str | None = None
    _facets: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pts = np.asarray(self.extreme_points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 4:
            raise SpaceDefinitionError("need at least 4 extreme points given as rows")
        if not np.all(np.isfinite(pts)):
            raise SpaceDefinitionError("extreme points must be finite")
        dim = pts.shape[1]
        _check_dim(dim)
        object.__setattr__(self, "extreme_points", tuple(map(tuple, pts.tolist())))
        _validate_extreme_points(pts)
        facets = _planar_facets(pts) if dim == 2 else _hull_facets(pts)
        object.__setattr__(self, "_facets", facets)

    @property
    def dim(self) -> int:  # type: ignore[override]
        return len(self.extreme_points[0])

    @property
    def id(self) -> str:
        return f"poly:{self.label}" if self.label else f"poly[{len(self.extreme_points)}x{self.dim}]"

    def _norm(self, v):
        return np.max(v @ self._facets.T, axis=-1).clip(min=0.0)


def _validate_extreme_points(pts: np.ndarray, tol: float = 1e-12) -> None:
    n, dim = pts.shape
    for v in pts:
        if not np.any(np.all(np.abs(pts + v) <= tol * (1 + np.abs(v)), axis=1)):
            raise SpaceDefinitionError(f"extreme point set is not symmetric: -{v.tolist()} missing")
    if np.linalg.matrix_rank(pts) < dim:
        raise SpaceDefinitionError("extreme points do not span the space")
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise SpaceDefinitionError(f"convex hull failed: {exc}") from exc
    if len(set(hull.vertices.tolist())) != n:
        missing = sorted(set(range(n)) - set(hull.vertices.tolist()))
        raise SpaceDefinitionError(
            f"points {[pts[i].tolist() for i in missing]} lie in the hull of the others"
        )


def _planar_facets(pts: np.ndarray) -> np.ndarray:
    order = np.argsort(np.arctan2(pts[:, 1], pts[:, 0]), kind="stable")
    ring = pts[order]
    nxt = np.roll(ring, -1, axis=0)
    # a . v = 1 on the edge through two consecutive vertices
    normals = np.stack([nxt[:, 1] - ring[:, 1], ring[:, 0] - nxt[:, 0]], axis=1)
    offsets = normals[:, 0] * ring[:, 0] + normals[:, 1] * ring[:, 1]
    return normals / offsets[:, None]


def _hull_facets(pts: np.ndarray) -> np.ndarray:
    eq = ConvexHull(pts).equations
    return eq[:, :-1] / -eq[:, -1:]


def read_extreme_points(path: str | Path) -> list[list[float]]:
    """Read one extreme point per line, coordinates separated by whitespace."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError as exc:
            raise SpaceDefinitionError(f"{path}:{lineno}: {exc}") from exc
    if len({len(r) for r in rows}) > 1:
        raise SpaceDefinitionError(f"{path}: rows have different lengths")
    return rows


def _format_p(p: float) -> str:
    if p == math.inf:
        return "inf"
    return f"{p:g}"


def parse_space(space_id: str) -> NormedSpace:
    """Build a space from its catalog id.

    Accepted forms are ``lp:<p>:<dim>`` (``p`` a decimal or ``inf``),
    ``euclid:<dim>``, ``dayjames`` and ``poly:<file>``.
    """
    kind, _, rest = space_id.partition(":")
    try:
        if kind == "lp":
            p_str, _, dim_str = rest.partition(":")
            p = math.inf if p_str.lower() in ("inf", "infinity") else float(p_str)
            return LpSpace(p=p, dim=int(dim_str) if dim_str else 2)
        if kind == "euclid":
            return EuclideanSpace(dim=int(rest) if rest else 2)
        if kind == "dayjames" and not rest:
            return DayJamesSpace()
        if kind == "poly" and rest:
            return PolyhedralSpace(tuple(map(tuple, read_extreme_points(rest))), label=rest)
    except (ValueError, OSError) as exc:
        if isinstance(exc, SpaceDefinitionError):
            raise
        raise SpaceDefinitionError(f"cannot parse space id {space_id!r}: {exc}") from exc
    raise SpaceDefinitionError(f"unknown space id {space_id!r}")


def norm(space: NormedSpace, v) -> float:
    """Norm of a single vector, with dimension checking."""
    return float(space.norm(as_vector(v, space.dim)))


def normalize(space: NormedSpace, v) -> np.ndarray:
    arr = as_vector(v, space.dim)
    n = float(space.norm(arr))
    if n == 0.0:
        raise DegenerateInputError("cannot normalize the zero vector")
    return arr / n


def sphere_points_2d(space: NormedSpace, theta) -> np.ndarray:
    """Unit-sphere points ``(cos t, sin t) / ||(cos t, sin t)||`` for an array of angles."""
    if space.dim != 2:
        raise UnsupportedSpaceError(f"angle parametrization needs dim 2, {space.id} has {space.dim}")
    theta = np.asarray(theta, dtype=float)
    u = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    return u / space.norm(u)[..., None]


def sphere_point_2d(space: NormedSpace, theta: float) -> np.ndarray:
    return sphere_points_2d(space, np.array([theta]))[0]


@dataclass
class ValidationReport:
    passed: bool
    samples: int
    worst_homogeneity: float
    worst_triangle_slack: float
    worst_positivity: float
    failures: list[str] = field(default_factory=list)


HOMOGENEITY_TOL = 1e-9
TRIANGLE_TOL = 1e-9
POSITIVITY_TOL = 1e-9


def validate_norm_axioms(space: NormedSpace, samples: int = 1000, seed: int = 0) -> ValidationReport:
    """Statistically check the norm axioms on seeded random vectors.

    Homogeneity and triangle defects are measured relative to ``1 + ||v||``.
    Positivity is probed on the random vectors and on every +/- basis
    vector, so a seminorm that vanishes on a coordinate axis is caught.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    dim = space.dim
    scale = np.exp(rng.uniform(-3.0, 3.0, size=(samples, 1)))
    u = rng.standard_normal((samples, dim)) * scale
    v = rng.standard_normal((samples, dim)) * scale[::-1]
    alpha = rng.uniform(-10.0, 10.0, size=samples)

    nu = space.norm(u)
    nv = space.norm(v)
    failures: list[str] = []

    homog = np.abs(space.norm(alpha[:, None] * u) - np.abs(alpha) * nu) / (1.0 + nu)
    sym = np.abs(space.norm(-u) - nu) / (1.0 + nu)
    homog = np.maximum(homog, sym)
    worst_h = float(homog.max())
    if worst_h > HOMOGENEITY_TOL:
        i = int(homog.argmax())
        failures.append(f"homogeneity violated by {worst_h:.3g} at v={u[i].tolist()}, alpha={alpha[i]:.6g}")

    slack = (nu + nv - space.norm(u + v)) / (1.0 + nu + nv)
    worst_t = float(slack.min())
    if worst_t < -TRIANGLE_TOL:
        i = int(slack.argmin())
        failures.append(f"triangle inequality violated by {-worst_t:.3g} at u={u[i].tolist()}, v={v[i].tolist()}")

    basis = np.concatenate([np.eye(dim), -np.eye(dim)])
    probes = np.concatenate([u, basis])
    n_probe = space.norm(probes)
    euclid = np.sqrt((probes * probes).sum(axis=1))
    degenerate = n_probe <= 1e-12 * euclid
    pos = np.where(degenerate, euclid, 0.0)
    pos = np.maximum(pos, np.maximum(-n_probe, 0.0))
    zero_norm = float(space.norm(np.zeros(dim)))
    pos_worst = max(float(pos.max()), abs(zero_norm))
    if pos_worst > POSITIVITY_TOL:
        if abs(zero_norm) > POSITIVITY_TOL:
            failures.append(f"positivity violated: norm of 0 is {zero_norm}")
        else:
            i = int(pos.argmax())
            failures.append(f"positivity violated at v={probes[i].tolist()} (norm {n_probe[i]:.3g})")

    return ValidationReport(
        passed=not failures,
        samples=samples,
        worst_homogeneity=worst_h,
        worst_triangle_slack=worst_t,
        worst_positivity=pos_worst,
        failures=failures,
    )
