"""Sampling falsifiers for geodesic convexity and first-order conditions.

Every checker either returns ``Verdict.ok`` (no violation on the samples,
which is evidence rather than proof) or a ``Violation`` carrying the values
that were actually compared.  Geodesic families are supplied by a segment
factory ``(x0, x) -> [geodesics from x0 to x]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .directional import (
    DEFAULT_SCHEDULE,
    DEFAULT_TOL,
    StepSchedule,
    gh_directional_derivative,
    real_directional_derivative,
    slope_gh,
    slope_real,
)
from .errors import DerivativeMissing
from .interval import MinOrdering, cmp_min, gh_diff
from .ivf import Ivf, RealFn
from .manifolds import TWO_PI, Circle, Geodesic, Point
from .verdict import Verdict, Witness

SegFactory = Callable[[Point, Point], Sequence[Geodesic]]


@dataclass(frozen=True)
class SampleGrid:
    targets: tuple[Point, ...]
    s_params: tuple[float, ...]
    tol: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "s_params", tuple(float(s) for s in self.s_params))
        if any(not 0 < s < 1 for s in self.s_params):
            raise ValueError("sample parameters must lie strictly inside (0, 1)")


def default_s_params(count: int = 9) -> tuple[float, ...]:
    """``count`` evenly spaced values in [0.1, 0.9], always including 0.5."""
    vals = set(np.round(np.linspace(0.1, 0.9, count), 12).tolist()) | {0.5}
    return tuple(sorted(vals))


def circle_targets(count: int = 17) -> tuple[Point, ...]:
    c = Circle()
    return tuple(c.point(t) for t in np.linspace(0.0, TWO_PI, count))


def default_segments(x0: Point, x: Point) -> list[Geodesic]:
    return [x0.manifold.segment(x0, x)]


def circle_arcs(both: bool = True) -> SegFactory:
    """Circle segment factory; with ``both`` the arc through the seam is added."""

    def factory(x0: Point, x: Point) -> list[Geodesic]:
        m = x0.manifold
        delta = x.angle - x0.angle
        arcs = [m.segment(x0, x, delta=delta)]
        if both and delta != 0:
            arcs.append(m.segment(x0, x, delta=delta - math.copysign(TWO_PI, delta)))
        return arcs

    return factory


def _convex_scan(f: RealFn, pairs: Iterable[tuple[Point, Point]], s_params, tol, seg_factory,
                 worst: bool, target_of) -> Verdict:
    found: Witness | None = None
    checked = 0
    for x, y in pairs:
        fx, fy = f(x), f(y)
        for geo in seg_factory(x, y):
            for s in s_params:
                lhs = f(geo(s))
                rhs = (1 - s) * fx + s * fy
                checked += 1
                if lhs > rhs + tol:
                    w = Witness(target_of(x, y), s, lhs, rhs)
                    if not worst:
                        return Verdict.violation(w, checked)
                    if found is None or w.gap > found.gap:
                        found = w
    return Verdict.violation(found, checked) if found else Verdict.ok(checked)


def convex_at(f: RealFn, x0: Point, grid: SampleGrid, seg_factory: SegFactory = default_segments,
              worst: bool = False) -> Verdict:
    """Falsify ``f(g(s)) <= (1-s) f(x0) + s f(x)`` along geodesics leaving ``x0``.

    By default the first violation in grid order is returned; ``worst=True``
    scans the whole grid and returns the one with the largest gap.
    """
    pairs = ((x0, x) for x in grid.targets)
    return _convex_scan(f, pairs, grid.s_params, grid.tol, seg_factory, worst, lambda _, y: y)


def convex_on(f: RealFn, pairs: Sequence[tuple[Point, Point]], s_params: Sequence[float],
              tol: float = 1e-9, seg_factory: SegFactory = default_segments, worst: bool = False) -> Verdict:
    return _convex_scan(f, pairs, s_params, tol, seg_factory, worst, lambda x, y: (x, y))


def cw_convex_at(f: Ivf, x0: Point, grid: SampleGrid, seg_factory: SegFactory = default_segments,
                 worst: bool = False) -> Verdict:
    """Center and width must both be convex at ``x0``; reports the failing channel."""
    checked = 0
    for channel, fn in (("center", f.center), ("width", f.width)):
        v = convex_at(fn, x0, grid, seg_factory, worst)
        checked += v.checked
        if not v.holds:
            return Verdict.violation(replace(v.witness, channel=channel), checked)
    return Verdict.ok(checked)


def _ascending(s_grid: Sequence[float], strict_positive: bool) -> list[float]:
    s_grid = [float(s) for s in s_grid]
    if any(b <= a for a, b in zip(s_grid, s_grid[1:])):
        raise ValueError("s grid must be strictly increasing")
    if s_grid and (s_grid[0] <= 0 if strict_positive else s_grid[0] < 0):
        raise ValueError("s grid must lie in the positive half-line")
    return s_grid


def monotone_q_check(f: Union[RealFn, Ivf], geo: Geodesic, s_grid: Sequence[float],
                     tol: float = 1e-9) -> Verdict:
    """Check that the slope function ``Q(s)`` is non-decreasing on ``s_grid``.

    For an IVF the slope is the gH quotient and the comparison is the
    minimization order with a tie band of ``tol``.
    """
    s_grid = _ascending(s_grid, strict_positive=True)
    if isinstance(f, Ivf):
        qs = [slope_gh(f, geo, s) for s in s_grid]
        bad = lambda a, b: cmp_min(a, b, tol) is MinOrdering.GREATER
    else:
        qs = [slope_real(f, geo, s) for s in s_grid]
        bad = lambda a, b: a > b + tol
    for k in range(len(qs) - 1):
        if bad(qs[k], qs[k + 1]):
            return Verdict.violation(Witness(geo.base, s_grid[k + 1], qs[k], qs[k + 1],
                                             detail=f"Q({s_grid[k]}) exceeds Q({s_grid[k + 1]})"), k + 1)
    return Verdict.ok(len(qs) - 1)


def width_monotone_check(f: Ivf, geo: Geodesic, s_grid: Sequence[float], tol: float = 1e-9) -> Verdict:
    s_grid = _ascending(s_grid, strict_positive=False)
    ws = [f.cw_at(geo(s))[1] for s in s_grid]
    for k in range(len(ws) - 1):
        if ws[k] > ws[k + 1] + tol:
            return Verdict.violation(Witness(geo.base, s_grid[k + 1], ws[k], ws[k + 1], channel="width"), k + 1)
    return Verdict.ok(len(ws) - 1)


def first_order_check_real(f: RealFn, x0: Point, grid: SampleGrid, seg_factory: SegFactory = default_segments,
                           sched: StepSchedule = DEFAULT_SCHEDULE, deriv_tol: float = DEFAULT_TOL) -> Verdict:
    """Falsify ``f(x) - f(x0) >= Df(x0; X)`` for each sampled geodesic."""
    fx0 = f(x0)
    checked = 0
    for x in grid.targets:
        rhs = f(x) - fx0
        for geo in seg_factory(x0, x):
            d = real_directional_derivative(f, geo, sched, deriv_tol)
            if not d.converged:
                raise DerivativeMissing(f"no directional derivative toward {x.coords}: {d}")
            checked += 1
            if d.value > rhs + grid.tol:
                return Verdict.violation(Witness(x, 1.0, d.value, rhs), checked)
    return Verdict.ok(checked)


def first_order_check_ivf(f: Ivf, x0: Point, grid: SampleGrid, seg_factory: SegFactory = default_segments,
                          sched: StepSchedule = DEFAULT_SCHEDULE, deriv_tol: float = DEFAULT_TOL) -> Verdict:
    """Falsify ``Df(x0; X) <=min f(x) gH- f(x0)`` for each sampled geodesic."""
    fx0 = f(x0)
    checked = 0
    for x in grid.targets:
        rhs = gh_diff(f(x), fx0)
        for geo in seg_factory(x0, x):
            d = gh_directional_derivative(f, geo, sched, deriv_tol)
            if not d.converged:
                raise DerivativeMissing(f"no gH-directional derivative toward {x.coords}: {d}")
            checked += 1
            if cmp_min(d.value, rhs, grid.tol) is MinOrdering.GREATER:
                return Verdict.violation(Witness(x, 1.0, d.value, rhs), checked)
    return Verdict.ok(checked)
