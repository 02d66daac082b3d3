"""Built-in example functions, with their base points and known properties.

Each ``CatalogEntry`` records a function, the point it is studied at, a set
of sample targets for geodesics leaving that point, and which convexity
facts are known to hold there.  The checks in :mod:`ghdiff.lab` and the
property tests consume these entries; nothing here computes derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import OffManifold
from .interval import from_cw, from_endpoints
from .ivf import Ivf, RealFn, Track, TrackedCurveFn, make_tracked
from .manifolds import TWO_PI, Circle, Cylinder, Euclidean, Geodesic, Point, PositiveReals, Spd2, det2, spd

HALF_PI = 0.5 * math.pi
LN4 = math.log(4.0)


def _logdet(p: Point) -> float:
    return math.log(det2(p.matrix))


# -- real-valued ------------------------------------------------------------

def kinked_log() -> RealFn:
    """On the positive reals: 1 up to x = 1, then -ln x."""
    return RealFn(PositiveReals(), lambda p: 1.0 if p.value <= 1 else -math.log(p.value), "kinked_log")


def kinked_line() -> RealFn:
    """On R: 0 for x <= 0 and -x afterwards."""
    return RealFn(Euclidean(1), lambda p: 0.0 if p.value <= 0 else -p.value, "kinked_line")


def shifted_kinked_line() -> RealFn:
    """On R: 1 for x <= 0 and 1 - x afterwards."""
    return RealFn(Euclidean(1), lambda p: 1.0 if p.value <= 0 else 1.0 - p.value, "shifted_kinked_line")


def log_bump() -> RealFn:
    """On the circle: ln((theta - pi/2)^2 + e)."""
    return RealFn(Circle(), lambda p: math.log((p.angle - HALF_PI) ** 2 + math.e), "log_bump")


def angle_sq() -> RealFn:
    """On the circle: (theta - pi/2)^2."""
    return RealFn(Circle(), lambda p: (p.angle - HALF_PI) ** 2, "angle_sq")


def cylinder_piecewise() -> RealFn:
    """On the union of the line theta = 0 and the circle z = 0 of the cylinder."""

    def f(p: Point) -> float:
        theta, z = p.coords
        x, _, _ = Cylinder.ambient(p)
        if theta == 0.0:
            return z * z + z + 1.0
        if z == 0.0:
            return math.exp(1.0 - x * x)
        raise OffManifold(f"point {p.coords} is off the union of the two axis curves")

    return RealFn(Cylinder(), f, "cylinder_piecewise")


def logdet() -> RealFn:
    return RealFn(Spd2(), _logdet, "logdet")


def logdet_sq() -> RealFn:
    return RealFn(Spd2(), lambda p: _logdet(p) ** 2, "logdet_sq")


# -- interval-valued --------------------------------------------------------

def square_unit() -> Ivf:
    """On R: <x^2, 1>."""
    return Ivf.from_cw(Euclidean(1), lambda p: p.value**2, lambda p: 1.0, "square_unit")


def circle_unit_sq() -> Ivf:
    """On the circle: <1, (theta - pi/2)^2>."""
    return Ivf.from_cw(Circle(), lambda p: 1.0, lambda p: (p.angle - HALF_PI) ** 2, "circle_unit_sq")


def spd_logdet() -> Ivf:
    """On SPD(2): <ln det x, (ln det x)^2>."""
    return Ivf.from_cw(Spd2(), _logdet, lambda p: _logdet(p) ** 2, "spd_logdet")


def angle_sq_log_bump() -> Ivf:
    """On the circle: <theta^2, ln((theta - pi/2)^2 + e)>."""
    return Ivf.from_cw(Circle(), lambda p: p.angle**2,
                       lambda p: math.log((p.angle - HALF_PI) ** 2 + math.e), "angle_sq_log_bump")


# -- two-track curves -------------------------------------------------------

def circle_quarter_arc() -> Geodesic:
    """Arc from i to -1 (angle pi/2 to pi)."""
    c = Circle()
    return c.segment(c.point(HALF_PI), c.point(math.pi))


def circle_tracked(geo: Geodesic | None = None) -> TrackedCurveFn:
    """Width theta on the rational track and pi - theta on the irrational one; center 0."""
    geo = geo or circle_quarter_arc()
    return make_tracked({
        Track.RATIONAL: lambda p: from_cw(0.0, p.angle),
        Track.IRRATIONAL: lambda p: from_cw(0.0, math.pi - p.angle),
    }, geo)


def spd_doubling() -> Geodesic:
    """Geodesic from I to 2I, which is 2^s I."""
    s2 = Spd2()
    return s2.segment(spd(np.eye(2)), spd(2 * np.eye(2)))


def spd_endpoint_tracked(geo: Geodesic | None = None) -> TrackedCurveFn:
    """[0, det x] on the rational track, [ln det x, (ln det x)^2 + 1] on the irrational one."""
    geo = geo or spd_doubling()
    return make_tracked({
        Track.RATIONAL: lambda p: from_endpoints(0.0, det2(p.matrix)),
        Track.IRRATIONAL: lambda p: from_endpoints(_logdet(p), _logdet(p) ** 2 + 1.0),
    }, geo)


# -- catalog ----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    key: str
    fn: Union[RealFn, Ivf]
    base: Point
    targets: tuple[Point, ...]
    convex_at_base: bool
    smooth: bool = False

    @property
    def interval_valued(self) -> bool:
        return isinstance(self.fn, Ivf)


def _circle_targets(n: int = 17) -> tuple[Point, ...]:
    c = Circle()
    return tuple(c.point(t) for t in np.linspace(0.0, TWO_PI, n))


def _spd_targets() -> tuple[Point, ...]:
    mats = [np.eye(2), 0.25 * np.eye(2), np.diag([1.0, 2.0]), [[2.0, 0.5], [0.5, 1.0]],
            [[0.3, -0.1], [-0.1, 0.6]], [[5.0, 1.0], [1.0, 0.5]]]
    return tuple(spd(m) for m in mats)


def catalog() -> dict[str, CatalogEntry]:
    """All example functions keyed by name; ``convex_at_base`` is the known truth
    (cw-convexity for interval-valued entries)."""
    r1 = Euclidean(1)
    pr = PositiveReals()
    c = Circle()
    i = c.point(HALF_PI)
    half = spd(0.5 * np.eye(2))
    entries = [
        CatalogEntry("kinked_log", kinked_log(), pr.point(1.0),
                     tuple(pr.point(v) for v in (0.25, 0.5, 2.0, 3.0, 10.0)), True),
        CatalogEntry("kinked_line", kinked_line(), r1.point(0.0),
                     tuple(r1.point(v) for v in (-2.0, -1.0, 1.0, 2.0)), True),
        CatalogEntry("shifted_kinked_line", shifted_kinked_line(), r1.point(0.0),
                     tuple(r1.point(v) for v in (-2.0, -1.0, 1.0, 2.0)), True),
        CatalogEntry("log_bump", log_bump(), i, _circle_targets(), False, smooth=True),
        CatalogEntry("angle_sq", angle_sq(), i, _circle_targets(), True, smooth=True),
        CatalogEntry("logdet", logdet(), half, _spd_targets(), True, smooth=True),
        CatalogEntry("logdet_sq", logdet_sq(), half, _spd_targets(), True, smooth=True),
        CatalogEntry("square_unit", square_unit(), r1.point(0.0),
                     tuple(r1.point(v) for v in (-2.0, -0.5, 0.5, 1.0, 3.0)), True, smooth=True),
        CatalogEntry("circle_unit_sq", circle_unit_sq(), i, _circle_targets(), True, smooth=True),
        CatalogEntry("spd_logdet", spd_logdet(), half, _spd_targets(), True, smooth=True),
        CatalogEntry("angle_sq_log_bump", angle_sq_log_bump(), i, _circle_targets(), False, smooth=True),
    ]
    return {e.key: e for e in entries}
