"""Closed bounded real intervals.

Intervals are stored by their endpoints ``[lo, hi]``; the center/half-width
view ``<c, w>`` with ``c = (lo + hi) / 2`` and ``w = (hi - lo) / 2`` is
computed on demand.  Two orders are provided:

* ``cmp_lu``  -- the componentwise endpoint order, which is only partial;
* ``cmp_min`` -- centers first, half-widths break ties; total.

Arithmetic is ordinary floating point (no outward rounding).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptySet, InvalidInterval, NegativeWidth

__all__ = [
    "Interval",
    "LuComparison",
    "MinOrdering",
    "ZERO",
    "from_endpoints",
    "from_cw",
    "scale",
    "linear_combo",
    "minkowski_add",
    "minkowski_sub",
    "hausdorff",
    "gh_diff",
    "gh_diff_endpoints",
    "cmp_lu",
    "cmp_min",
    "leq_min",
    "min_of",
    "max_of",
    "is_lower_bound",
    "is_upper_bound",
]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidInterval(f"non-finite endpoint in [{lo}, {hi}]")
        if lo > hi:
            raise InvalidInterval(f"lower endpoint {lo} exceeds upper endpoint {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def center(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        """Half-width (radius), never negative."""
        return 0.5 * (self.hi - self.lo)

    @property
    def cw(self) -> tuple[float, float]:
        return self.center, self.width

    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def isclose(self, other: Interval, tol: float) -> bool:
        """Endpoint-wise comparison with an explicit absolute tolerance."""
        return hausdorff(self, other) <= tol

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __add__(self, other: Interval) -> Interval:
        return minkowski_add(self, other)

    def __sub__(self, other: Interval) -> Interval:
        return minkowski_sub(self, other)

    def __mul__(self, k: float) -> Interval:
        return scale(k, self)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"[{self.lo:.6g}, {self.hi:.6g}]"

    def cw_str(self, digits: int = 6) -> str:
        return f"<{self.center:.{digits}g}, {self.width:.{digits}g}>"


ZERO = Interval(0.0, 0.0)


def from_endpoints(lo: float, hi: float) -> Interval:
    return Interval(lo, hi)


def from_cw(c: float, w: float) -> Interval:
    """Build ``<c, w>`` = ``[c - w, c + w]``."""
    c, w = float(c), float(w)
    if not (math.isfinite(c) and math.isfinite(w)):
        raise InvalidInterval(f"non-finite center/width <{c}, {w}>")
    if w < 0:
        raise NegativeWidth(f"half-width {w} is negative")
    return Interval(c - w, c + w)


def scale(k: float, a: Interval) -> Interval:
    """Scalar multiple ``kA`` by the endpoint rule (order flips for k < 0)."""
    k = float(k)
    if not math.isfinite(k):
        raise InvalidInterval(f"non-finite scalar {k}")
    if k >= 0:
        return Interval(k * a.lo, k * a.hi)
    return Interval(k * a.hi, k * a.lo)


def linear_combo(alpha: float, a: Interval, beta: float, b: Interval) -> Interval:
    """``alpha*A + beta*B`` evaluated in center/half-width form."""
    alpha, beta = float(alpha), float(beta)
    if not (math.isfinite(alpha) and math.isfinite(beta)):
        raise InvalidInterval("non-finite coefficient")
    c = alpha * a.center + beta * b.center
    w = abs(alpha) * a.width + abs(beta) * b.width
    return from_cw(c, w)


def minkowski_add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def minkowski_sub(a: Interval, b: Interval) -> Interval:
    """Classical difference ``A - B = A + (-B)``; note ``A - A`` is not ``[0, 0]``."""
    return minkowski_add(a, -b)


def hausdorff(a: Interval, b: Interval) -> float:
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


def gh_diff(a: Interval, b: Interval) -> Interval:
    """Generalized Hukuhara difference ``<a_c - b_c, |a_w - b_w|>``."""
    return from_cw(a.center - b.center, abs(a.width - b.width))


def gh_diff_endpoints(a: Interval, b: Interval) -> Interval:
    """Same difference via ``[min(dl, du), max(dl, du)]`` on endpoint gaps."""
    dl = a.lo - b.lo
    du = a.hi - b.hi
    return Interval(min(dl, du), max(dl, du))


class LuComparison(enum.Enum):
    LESS_EQ = "LessEq"
    GREATER_EQ = "GreaterEq"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


class MinOrdering(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


def cmp_lu(a: Interval, b: Interval) -> LuComparison:
    le = a.lo <= b.lo and a.hi <= b.hi
    ge = a.lo >= b.lo and a.hi >= b.hi
    if le and ge:
        return LuComparison.EQUAL
    if le:
        return LuComparison.LESS_EQ
    if ge:
        return LuComparison.GREATER_EQ
    return LuComparison.INCOMPARABLE


def cmp_min(a: Interval, b: Interval, tol: float = 0.0) -> MinOrdering:
    """Compare under the minimization order.

    Centers decide unless they lie within ``tol`` of each other; inside that
    tie band the half-widths decide, again with ``tol``.  ``tol=0`` gives the
    exact order.
    """
    ac, aw = a.cw
    bc, bw = b.cw
    if abs(ac - bc) > tol:
        return MinOrdering.LESS if ac < bc else MinOrdering.GREATER
    if abs(aw - bw) <= tol:
        return MinOrdering.EQUAL
    return MinOrdering.LESS if aw < bw else MinOrdering.GREATER


def leq_min(a: Interval, b: Interval, tol: float = 0.0) -> bool:
    return cmp_min(a, b, tol) is not MinOrdering.GREATER


def _extreme(items: Sequence[Interval], want: MinOrdering) -> Interval:
    if not items:
        raise EmptySet("min/max of an empty set of intervals")
    best = items[0]
    for item in items[1:]:
        if cmp_min(item, best) is want:
            best = item
    return best


def min_of(items: Iterable[Interval]) -> Interval:
    return _extreme(list(items), MinOrdering.LESS)


def max_of(items: Iterable[Interval]) -> Interval:
    return _extreme(list(items), MinOrdering.GREATER)


def is_lower_bound(b: Interval, items: Iterable[Interval]) -> bool:
    return all(leq_min(b, a) for a in items)


def is_upper_bound(b: Interval, items: Iterable[Interval]) -> bool:
    return all(leq_min(a, b) for a in items)
