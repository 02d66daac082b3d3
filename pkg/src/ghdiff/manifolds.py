"""Concrete Riemannian manifolds with closed-form geodesics.

Five manifolds are supported:

``Euclidean(n)``
    straight lines ``x + s v``.
``Circle()``
    points stored by angle.  Angles live in the closed chart ``[0, 2pi]``;
    both ends are kept because the example functions on the circle are
    written in that chart and are not periodic.  A tangent number ``v`` at
    ``e^{i theta}`` generates ``x e^{-i s v}``, i.e. the angle moves as
    ``theta - s v``.  At ``x = i`` this ``v`` is exactly the (real) complex
    velocity of the curve.
``PositiveReals()``
    ``(0, inf)`` with metric ``v w / x^2``; geodesics ``x exp(s v / x)``.
``Spd2()``
    2x2 symmetric positive definite matrices with the affine-invariant
    metric; geodesics ``P^{1/2} exp(s P^{-1/2} V P^{-1/2}) P^{1/2}``.
``Cylinder()``
    the unit cylinder in chart ``(theta, z)``.  Only axis-aligned
    directions are admitted: vertical lines and horizontal circles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BadTangent, NotPositiveDefinite, OffManifold

TWO_PI = 2.0 * math.pi
EPS_PD = 1e-10
EPS_GEO = 1e-10
_SYM_TOL = 1e-12


# --------------------------------------------------------------------------
# 2x2 symmetric spectral calculus
# --------------------------------------------------------------------------

def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.shape == (4,):
        a = a.reshape(2, 2)
    if a.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
    return a


def spd2_eig(m) -> tuple[float, float, float]:
    """Closed-form eigen-decomposition of a symmetric 2x2 matrix.

    Returns ``(lam1, lam2, phi)`` with ``lam1 >= lam2`` such that
    ``M = R(phi) diag(lam1, lam2) R(phi)^T`` for the rotation ``R(phi)``.
    """
    a_ = _as_matrix(m)
    a, b, d = a_[0, 0], 0.5 * (a_[0, 1] + a_[1, 0]), a_[1, 1]
    mean = 0.5 * (a + d)
    r = math.hypot(0.5 * (a - d), b)
    lam1 = mean + r
    lam2 = mean - r
    if mean > 0 and lam1 > 0:
        # avoids cancellation in mean - r for well-separated positive spectra
        lam2 = (a * d - b * b) / lam1
    phi = 0.5 * math.atan2(2.0 * b, a - d)
    return float(lam1), float(lam2), float(phi)


def _rebuild(mu1: float, mu2: float, phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    r = np.array([[c, -s], [s, c]])
    out = r @ np.diag([mu1, mu2]) @ r.T
    return 0.5 * (out + out.T)


def sym2_fun(m, f: Callable[[float], float]) -> np.ndarray:
    """Apply ``f`` to the eigenvalues of a symmetric 2x2 matrix."""
    lam1, lam2, phi = spd2_eig(m)
    return _rebuild(f(lam1), f(lam2), phi)


def spd2_fun(m, f: Callable[[float], float]) -> np.ndarray:
    """Like :func:`sym2_fun` but insists on positive definiteness first."""
    lam1, lam2, phi = spd2_eig(m)
    if not (lam1 > 0 and lam2 > EPS_PD * lam1):
        raise NotPositiveDefinite(f"eigenvalues ({lam1}, {lam2}) are not safely positive")
    return _rebuild(f(lam1), f(lam2), phi)


def det2(m) -> float:
    a = _as_matrix(m)
    return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


# --------------------------------------------------------------------------
# points, tangents, geodesics
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    manifold: "Manifold"
    coords: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", self.manifold.validate_point(self.coords))

    @property
    def angle(self) -> float:
        return self.coords[0]

    @property
    def value(self) -> float:
        return self.coords[0]

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.coords, dtype=float).reshape(2, 2)


@dataclass(frozen=True)
class Tangent:
    base: Point
    vec: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "vec", self.base.manifold.validate_tangent(self.base, self.vec))

    @property
    def manifold(self) -> "Manifold":
        return self.base.manifold

    def scaled(self, lam: float) -> Tangent:
        return Tangent(self.base, tuple(lam * c for c in self.vec))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.vec, dtype=float).reshape(2, 2)


@dataclass(frozen=True)
class Geodesic:
    base: Point
    velocity: Tangent
    domain: tuple[float, float]
    path: Callable[[float], Point]

    @property
    def manifold(self) -> "Manifold":
        return self.base.manifold

    def contains(self, s: float) -> bool:
        lo, hi = self.domain
        return lo - 1e-12 <= s <= hi + 1e-12

    def __call__(self, s: float) -> Point:
        if not self.contains(s):
            raise ValueError(f"parameter {s} outside geodesic domain {self.domain}")
        if s == 0:
            return self.base
        return self.path(s)


def _as_tuple(vals) -> tuple[float, ...]:
    arr = np.atleast_1d(np.asarray(vals, dtype=float)).ravel()
    return tuple(float(v) for v in arr)


def _wrap_angle(t: float) -> float:
    if 0.0 <= t <= TWO_PI:
        return t
    return t % TWO_PI


class Manifold:
    """Common surface of the concrete manifolds below."""

    kind: str = "manifold"

    def validate_point(self, coords) -> tuple[float, ...]:
        raise NotImplementedError

    def validate_tangent(self, base: Point, vec) -> tuple[float, ...]:
        raise NotImplementedError

    def geodesic(self, v: Tangent) -> Geodesic:
        raise NotImplementedError

    def segment(self, x: Point, y: Point, **kw) -> Geodesic:
        raise NotImplementedError

    def point(self, *coords) -> Point:
        if len(coords) == 1 and np.ndim(coords[0]) > 0:
            coords = coords[0]
        return Point(self, _as_tuple(coords))

    def tangent(self, base: Point, *vec) -> Tangent:
        if len(vec) == 1 and np.ndim(vec[0]) > 0:
            vec = vec[0]
        return Tangent(base, _as_tuple(vec))

    def chart_velocity(self, v: Tangent) -> tuple[float, ...]:
        """Derivative of the chart coordinates along the geodesic at s=0."""
        return v.vec

    def chart_distance(self, p: Point, q: Point) -> float:
        return max(abs(a - b) for a, b in zip(p.coords, q.coords))

    def _require(self, p: Point) -> None:
        if p.manifold != self:
            raise OffManifold(f"point on {p.manifold} used with {self}")

    def _finite(self, vals: tuple[float, ...], what: str) -> tuple[float, ...]:
        if not all(math.isfinite(v) for v in vals):
            raise OffManifold(f"non-finite {what} {vals}")
        return vals


@dataclass(frozen=True)
class Euclidean(Manifold):
    n: int = 1
    kind = "euclidean"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Euclidean dimension must be >= 1")

    def validate_point(self, coords):
        coords = self._finite(_as_tuple(coords), "coordinates")
        if len(coords) != self.n:
            raise OffManifold(f"expected {self.n} coordinates, got {len(coords)}")
        return coords

    def validate_tangent(self, base, vec):
        vec = _as_tuple(vec)
        if len(vec) != self.n or not all(math.isfinite(c) for c in vec):
            raise BadTangent(f"bad tangent {vec} for R^{self.n}")
        return vec

    def geodesic(self, v):
        x = np.array(v.base.coords)
        d = np.array(v.vec)
        return Geodesic(v.base, v, (-math.inf, math.inf), lambda s: self.point(x + s * d))

    def segment(self, x, y, **kw):
        self._require(x)
        self._require(y)
        v = self.tangent(x, np.array(y.coords) - np.array(x.coords))
        g = self.geodesic(v)
        return Geodesic(x, v, (0.0, 1.0), g.path)


@dataclass(frozen=True)
class Circle(Manifold):
    kind = "circle"

    def validate_point(self, coords):
        coords = self._finite(_as_tuple(coords), "angle")
        if len(coords) != 1:
            raise OffManifold("a circle point is a single angle")
        return (_wrap_angle(coords[0]),)

    def validate_tangent(self, base, vec):
        vec = _as_tuple(vec)
        if len(vec) != 1 or not math.isfinite(vec[0]):
            raise BadTangent(f"circle tangent must be one real number, got {vec}")
        return vec

    def chart_velocity(self, v):
        return (-v.vec[0],)

    def chart_distance(self, p, q):
        d = abs(p.angle - q.angle) % TWO_PI
        return min(d, TWO_PI - d)

    def _arc(self, base: Point, v: Tangent, dtheta_ds: float, domain) -> Geodesic:
        theta0 = base.angle
        return Geodesic(base, v, domain, lambda s: self.point(theta0 + s * dtheta_ds))

    def geodesic(self, v):
        rate = -v.vec[0]
        domain = (-math.inf, math.inf) if rate == 0 else (-TWO_PI / abs(rate), TWO_PI / abs(rate))
        return self._arc(v.base, v, rate, domain)

    def segment(self, x, y, delta: float | None = None, **kw):
        """Arc from ``x`` to ``y`` with signed angular displacement ``delta``.

        The default ``delta = theta_y - theta_x`` keeps the whole arc inside
        the chart ``[0, 2pi]``; pass ``delta`` explicitly for the other arc.
        """
        self._require(x)
        self._require(y)
        if delta is None:
            delta = y.angle - x.angle
        elif self.chart_distance(self.point(x.angle + delta), y) > EPS_GEO:
            raise OffManifold(f"displacement {delta} does not reach angle {y.angle}")
        v = self.tangent(x, -delta)
        return self._arc(x, v, delta, (0.0, 1.0))


@dataclass(frozen=True)
class PositiveReals(Manifold):
    kind = "positive-reals"

    def validate_point(self, coords):
        coords = self._finite(_as_tuple(coords), "coordinate")
        if len(coords) != 1 or not coords[0] > 0:
            raise OffManifold(f"{coords} is not a positive real")
        return coords

    def validate_tangent(self, base, vec):
        vec = _as_tuple(vec)
        if len(vec) != 1 or not math.isfinite(vec[0]):
            raise BadTangent(f"tangent must be one real number, got {vec}")
        return vec

    def geodesic(self, v):
        x = v.base.value
        rate = v.vec[0] / x
        return Geodesic(v.base, v, (-math.inf, math.inf), lambda s: self.point(x * math.exp(rate * s)))

    def segment(self, x, y, **kw):
        self._require(x)
        self._require(y)
        x0, y0 = x.value, y.value
        ratio = y0 / x0
        v = self.tangent(x, x0 * math.log(ratio))
        if x0 == 1.0:
            path = lambda s: self.point(y0**s)
        else:
            path = lambda s: self.point(x0 * ratio**s)
        return Geodesic(x, v, (-math.inf, math.inf), path)


def _check_symmetric(a: np.ndarray, what: str, err) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(a))))
    if abs(a[0, 1] - a[1, 0]) > _SYM_TOL * scale:
        raise err(f"{what} is not symmetric: {a.tolist()}")
    return 0.5 * (a + a.T)


@dataclass(frozen=True)
class Spd2(Manifold):
    kind = "spd2"

    def validate_point(self, coords):
        coords = self._finite(_as_tuple(coords), "entries")
        if len(coords) != 4:
            raise OffManifold("an SPD(2) point has 4 row-major entries")
        a = _check_symmetric(np.array(coords).reshape(2, 2), "matrix", OffManifold)
        lam1, lam2, _ = spd2_eig(a)
        if not (lam1 > 0 and lam2 > EPS_PD * lam1):
            raise OffManifold(f"matrix with eigenvalues ({lam1}, {lam2}) is not positive definite")
        return tuple(float(c) for c in a.ravel())

    def validate_tangent(self, base, vec):
        vec = _as_tuple(vec)
        if len(vec) != 4 or not all(math.isfinite(c) for c in vec):
            raise BadTangent("an SPD(2) tangent has 4 finite row-major entries")
        a = _check_symmetric(np.array(vec).reshape(2, 2), "tangent", BadTangent)
        return tuple(float(c) for c in a.ravel())

    def geodesic(self, v):
        p = v.base.matrix
        half = spd2_fun(p, math.sqrt)
        ihalf = spd2_fun(p, lambda t: 1.0 / math.sqrt(t))
        w = ihalf @ v.matrix @ ihalf

        def path(s):
            return self.point(half @ sym2_fun(s * w, math.exp) @ half)

        return Geodesic(v.base, v, (-math.inf, math.inf), path)

    def segment(self, x, y, **kw):
        self._require(x)
        self._require(y)
        p, q = x.matrix, y.matrix
        half = spd2_fun(p, math.sqrt)
        ihalf = spd2_fun(p, lambda t: 1.0 / math.sqrt(t))
        inner = 0.5 * ((ihalf @ q @ ihalf) + (ihalf @ q @ ihalf).T)
        v = self.tangent(x, half @ spd2_fun(inner, math.log) @ half)

        def path(s):
            return self.point(half @ spd2_fun(inner, lambda t: t**s) @ half)

        return Geodesic(x, v, (-math.inf, math.inf), path)


@dataclass(frozen=True)
class Cylinder(Manifold):
    """Unit cylinder ``x^2 + y^2 = 1`` in chart ``(theta, z)``."""

    kind = "cylinder"

    def validate_point(self, coords):
        coords = self._finite(_as_tuple(coords), "chart coordinates")
        if len(coords) != 2:
            raise OffManifold("a cylinder point is (theta, z)")
        return (_wrap_angle(coords[0]), coords[1])

    def validate_tangent(self, base, vec):
        vec = _as_tuple(vec)
        if len(vec) != 2 or not all(math.isfinite(c) for c in vec):
            raise BadTangent("a cylinder tangent is (angular rate, vertical rate)")
        if vec[0] != 0 and vec[1] != 0:
            raise BadTangent(f"direction {vec} is neither vertical nor horizontal")
        return vec

    def chart_distance(self, p, q):
        d = abs(p.coords[0] - q.coords[0]) % TWO_PI
        return max(min(d, TWO_PI - d), abs(p.coords[1] - q.coords[1]))

    @staticmethod
    def ambient(p: Point) -> tuple[float, float, float]:
        theta, z = p.coords
        return math.cos(theta), math.sin(theta), z

    def geodesic(self, v):
        theta0, z0 = v.base.coords
        v1, v2 = v.vec
        if v1 == 0:
            return Geodesic(v.base, v, (-math.inf, math.inf), lambda s: self.point(theta0, z0 + s * v2))
        return Geodesic(v.base, v, (0.0, TWO_PI / abs(v1)), lambda s: self.point(theta0 + s * v1, z0))

    def segment(self, x, y, **kw):
        self._require(x)
        self._require(y)
        (tx, zx), (ty, zy) = x.coords, y.coords
        if tx == ty:
            v = self.tangent(x, 0.0, zy - zx)
        elif zx == zy:
            v = self.tangent(x, ty - tx, 0.0)
        else:
            raise BadTangent("points are not joined by an axis-aligned geodesic")
        g = self.geodesic(v)
        return Geodesic(x, v, (0.0, 1.0), g.path)


def geodesic_from_velocity(m: Manifold, x: Point, v: Tangent) -> Geodesic:
    m._require(x)
    if v.base != x:
        raise BadTangent("tangent is not based at the given point")
    return m.geodesic(v)


def geodesic_segment(m: Manifold, x: Point, y: Point, **kw) -> Geodesic:
    return m.segment(x, y, **kw)


def spd(entries: Sequence[float] | np.ndarray) -> Point:
    """Shorthand for an SPD(2) point from a 2x2 array or 4 entries."""
    return Spd2().point(np.asarray(entries, dtype=float).ravel())
