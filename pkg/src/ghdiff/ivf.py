"""Real- and interval-valued functions on the manifolds of :mod:`ghdiff.manifolds`.

Function bodies are black boxes and must be side-effect free; an IVF's
half-width is validated each time it is evaluated, not at construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Generic, Mapping, TypeVar, Union

from .errors import NegativeWidth, OffManifold
from .interval import Interval, from_cw
from .manifolds import Geodesic, Manifold, Point

T = TypeVar("T")


@dataclass(frozen=True)
class RealFn:
    domain: Manifold
    fn: Callable[[Point], float]
    name: str = ""

    def __call__(self, p: Point) -> float:
        if p.manifold != self.domain:
            raise OffManifold(f"{self.name or 'function'} is defined on {self.domain}, got a point on {p.manifold}")
        return float(self.fn(p))


def real_combo(a1: float, f: RealFn, a2: float, g: RealFn) -> RealFn:
    """Pointwise ``a1*f + a2*g``."""
    if f.domain != g.domain:
        raise OffManifold("functions live on different manifolds")
    return RealFn(f.domain, lambda p: a1 * f(p) + a2 * g(p), f"{a1}*{f.name}+{a2}*{g.name}")


@dataclass(frozen=True)
class Ivf:
    """Interval-valued function ``x -> <center(x), width(x)>``."""

    domain: Manifold
    center: RealFn
    width: RealFn
    name: str = ""

    @classmethod
    def from_cw(cls, domain: Manifold, center: Callable[[Point], float],
                width: Callable[[Point], float], name: str = "") -> Ivf:
        return cls(domain, RealFn(domain, center, f"{name}^c"), RealFn(domain, width, f"{name}^w"), name)

    @classmethod
    def from_endpoints(cls, domain: Manifold, lower: Callable[[Point], float],
                       upper: Callable[[Point], float], name: str = "") -> Ivf:
        return cls.from_cw(
            domain,
            lambda p: 0.5 * (lower(p) + upper(p)),
            lambda p: 0.5 * (upper(p) - lower(p)),
            name,
        )

    def cw_at(self, p: Point) -> tuple[float, float]:
        c, w = self.center(p), self.width(p)
        if w < 0:
            raise NegativeWidth(f"{self.name or 'IVF'} has half-width {w} at {p.coords}")
        return c, w

    def __call__(self, p: Point) -> Interval:
        return from_cw(*self.cw_at(p))

    @property
    def lower(self) -> RealFn:
        return RealFn(self.domain, lambda p: self.center(p) - self.width(p), f"{self.name}^l")

    @property
    def upper(self) -> RealFn:
        return RealFn(self.domain, lambda p: self.center(p) + self.width(p), f"{self.name}^u")


def eval_ivf(f: Ivf, p: Point) -> Interval:
    return f(p)


def compose(f: Union[RealFn, Ivf], g: Geodesic) -> Callable[[float], Union[float, Interval]]:
    """The curve ``s -> f(g(s))``."""
    if f.domain != g.manifold:
        raise OffManifold("function and geodesic live on different manifolds")
    return lambda s: f(g(s))


class Track(enum.Enum):
    RATIONAL = "rational"
    IRRATIONAL = "irrational"


@dataclass(frozen=True)
class TrackedCurveFn(Generic[T]):
    """A curve along one geodesic with a separate formula per parameter track.

    The track is always named explicitly by the caller: deciding whether a
    float parameter is rational is not meaningful.
    """

    branches: Mapping[Track, Callable[[float], T]]
    geodesic: Geodesic | None = None

    def __call__(self, track: Track, s: float) -> T:
        return self.branches[track](s)


def make_tracked(defs: Mapping[Track, Callable[[Point], T]], geodesic: Geodesic) -> TrackedCurveFn[T]:
    """Restrict per-track point formulas to ``geodesic``."""
    missing = set(Track) - set(defs)
    if missing:
        raise ValueError(f"missing track definitions: {sorted(t.value for t in missing)}")
    branches = {t: (lambda fn: (lambda s: fn(geodesic(s))))(fn) for t, fn in defs.items()}
    return TrackedCurveFn(branches, geodesic)


def single_track(curve: Callable[[float], T]) -> TrackedCurveFn[T]:
    """Wrap an ordinary curve as two identical tracks."""
    return TrackedCurveFn({Track.RATIONAL: curve, Track.IRRATIONAL: curve})

