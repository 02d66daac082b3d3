"""Slopes along geodesics and one-sided limit estimation as ``s -> 0+``.

The limit estimator samples a curve on a geometric step schedule
``s_k = s0 * rho**k`` and applies one level of Richardson extrapolation,
which removes the leading ``O(s)`` term of a difference quotient.  Outcomes
are data, never exceptions: a slope may converge, diverge, or have no
detectable limit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

from .errors import DerivativeMissing, EvaluationFailed
from .interval import ZERO, Interval, from_cw, gh_diff, hausdorff, linear_combo, scale
from .ivf import Ivf, RealFn, Track, TrackedCurveFn, real_combo
from .manifolds import Geodesic, Tangent
from .verdict import Verdict, Witness

DEFAULT_TOL = 1e-6
DIVERGENCE_CAP = 1e8
GROWTH_STEPS = 5
NOISE_FLOOR = 1e-14


@dataclass(frozen=True)
class StepSchedule:
    s0: float = 0.1
    rho: float = 0.5
    K: int = 20

    def __post_init__(self):
        if not self.s0 > 0:
            raise ValueError("s0 must be positive")
        if not 0 < self.rho < 1:
            raise ValueError("rho must lie in (0, 1)")
        if int(self.K) != self.K or self.K < 4:
            raise ValueError("K must be an integer >= 4")
        if self.s0 * self.rho**self.K <= NOISE_FLOOR:
            raise ValueError("schedule reaches below the 1e-14 noise floor")

    def steps(self) -> list[float]:
        return [self.s0 * self.rho**k for k in range(int(self.K) + 1)]


DEFAULT_SCHEDULE = StepSchedule()


class LimitKind(enum.Enum):
    CONVERGED = "Converged"
    DIVERGED = "Diverged"
    NO_LIMIT = "NoLimit"


@dataclass(frozen=True)
class LimitResult:
    kind: LimitKind
    value: float = math.nan
    residual: float = math.nan
    sign: int = 0
    evidence: tuple[float, ...] = ()

    @property
    def converged(self) -> bool:
        return self.kind is LimitKind.CONVERGED

    @property
    def diverged(self) -> bool:
        return self.kind is LimitKind.DIVERGED

    def __str__(self) -> str:
        if self.converged:
            return f"Converged({self.value:.10g})"
        if self.diverged:
            return f"Diverged({self.sign:+d})"
        return f"NoLimit({', '.join(f'{e:.6g}' for e in self.evidence)})"


def _diverges(vals: Sequence[float], cap: float) -> int:
    """Sign of a detected divergence, or 0.

    The last few magnitudes must grow strictly with a fixed sign, and either
    exceed ``cap`` or grow by non-shrinking increments (a convergent O(s)
    sequence has increments shrinking by ``rho`` each step).
    """
    n = min(GROWTH_STEPS, len(vals) - 1)
    tail = vals[-(n + 1):]
    if any(v == 0 for v in tail):
        return 0
    sign = 1 if tail[0] > 0 else -1
    if any((v > 0) != (sign > 0) for v in tail):
        return 0
    mags = [abs(v) for v in tail]
    incs = [b - a for a, b in zip(mags, mags[1:])]
    if any(d <= 1e-9 * max(1.0, mags[-1]) for d in incs):
        return 0
    if mags[-1] > cap:
        return sign
    if all(d2 >= d1 * (1 - 1e-6) for d1, d2 in zip(incs, incs[1:])):
        return sign
    return 0


def estimate_limit(curve: Callable[[float], float], sched: StepSchedule = DEFAULT_SCHEDULE,
                   tol: float = DEFAULT_TOL, cap: float = DIVERGENCE_CAP) -> LimitResult:
    """Estimate ``lim_{s->0+} curve(s)``."""
    vals = []
    for s in sched.steps():
        try:
            v = float(curve(s))
        except Exception as exc:  # any failure inside a user curve
            raise EvaluationFailed(f"curve failed at s={s}: {exc}") from exc
        if not math.isfinite(v):
            raise EvaluationFailed(f"curve returned {v} at s={s}")
        vals.append(v)

    sign = _diverges(vals, cap)
    if sign:
        return LimitResult(LimitKind.DIVERGED, sign=sign, evidence=tuple(vals[-2:]))

    rho = sched.rho
    rich = [(vals[k + 1] - rho * vals[k]) / (1 - rho) for k in range(len(vals) - 1)]
    best_spread, best_value = math.inf, math.nan
    for k in range(len(rich) - 2):
        window = rich[k:k + 3]
        spread = max(window) - min(window)
        if spread <= best_spread:
            best_spread, best_value = spread, window[-1]
    if best_spread <= tol:
        return LimitResult(LimitKind.CONVERGED, value=best_value, residual=best_spread)
    return LimitResult(LimitKind.NO_LIMIT, evidence=tuple(rich[-2:]))


# --------------------------------------------------------------------------
# slopes and derivatives
# --------------------------------------------------------------------------

def _check_step(g: Geodesic, s: float) -> None:
    if not s > 0:
        raise ValueError(f"slope step must be positive, got {s}")
    if not g.contains(s):
        raise ValueError(f"step {s} outside geodesic domain {g.domain}")


def slope_real(f: RealFn, g: Geodesic, s: float) -> float:
    _check_step(g, s)
    return (f(g(s)) - f(g.base)) / s


def slope_gh(f: Ivf, g: Geodesic, s: float) -> Interval:
    _check_step(g, s)
    return scale(1.0 / s, gh_diff(f(g(s)), f(g.base)))


def real_directional_derivative(f: RealFn, g: Geodesic, sched: StepSchedule = DEFAULT_SCHEDULE,
                                tol: float = DEFAULT_TOL) -> LimitResult:
    return estimate_limit(lambda s: slope_real(f, g, s), sched, tol)


class GhKind(enum.Enum):
    CONVERGED = "Converged"
    CENTER_DIVERGED = "CenterDiverged"
    WIDTH_NO_LIMIT = "WidthChannelNoLimit"
    NO_LIMIT = "NoLimit"


@dataclass(frozen=True)
class GhDerivResult:
    kind: GhKind
    center: LimitResult
    width: LimitResult
    signed_width: LimitResult
    value: Interval | None = None

    @property
    def converged(self) -> bool:
        return self.kind is GhKind.CONVERGED

    @property
    def sign(self) -> int:
        return self.center.sign

    def __str__(self) -> str:
        if self.converged:
            return f"Converged({self.value.cw_str(10)})"
        return self.kind.value


def _gh_from_channels(center: LimitResult, width: LimitResult) -> Interval | None:
    if center.converged and width.converged:
        # the width channel is a limit of non-negative numbers
        return from_cw(center.value, max(width.value, 0.0))
    return None


def gh_directional_derivative(f: Ivf, g: Geodesic, sched: StepSchedule = DEFAULT_SCHEDULE,
                              tol: float = DEFAULT_TOL) -> GhDerivResult:
    """gH-directional derivative estimated channel by channel.

    The center channel is ``(f^c(g(s)) - f^c(x)) / s``; the width channel is
    ``|f^w(g(s)) - f^w(x)| / s``.  The signed width slope is estimated too so
    callers can inspect its sign when it converges.
    """
    c0, w0 = f.cw_at(g.base)
    s0 = sched.steps()[0]
    _check_step(g, s0)

    def dc(s):
        return (f.cw_at(g(s))[0] - c0) / s

    def dw(s):
        return (f.cw_at(g(s))[1] - w0) / s

    center = estimate_limit(dc, sched, tol)
    width = estimate_limit(lambda s: abs(dw(s)), sched, tol)
    signed = estimate_limit(dw, sched, tol)
    value = _gh_from_channels(center, width)
    if value is not None:
        kind = GhKind.CONVERGED
    elif center.diverged:
        kind = GhKind.CENTER_DIVERGED
    elif center.converged:
        kind = GhKind.WIDTH_NO_LIMIT
    else:
        kind = GhKind.NO_LIMIT
    return GhDerivResult(kind, center, width, signed, value)


def real_deriv_at(f: RealFn, sched: StepSchedule = DEFAULT_SCHEDULE,
                  tol: float = DEFAULT_TOL) -> Callable[[Tangent], LimitResult]:
    """``v -> Df(x; v)`` along the geodesic generated by ``v``."""
    return lambda v: real_directional_derivative(f, v.manifold.geodesic(v), sched, tol)


def gh_deriv_at(f: Ivf, sched: StepSchedule = DEFAULT_SCHEDULE,
                tol: float = DEFAULT_TOL) -> Callable[[Tangent], GhDerivResult]:
    return lambda v: gh_directional_derivative(f, v.manifold.geodesic(v), sched, tol)


# --------------------------------------------------------------------------
# two-track analysis
# --------------------------------------------------------------------------

CHANNELS: Mapping[str, Callable[[Interval], float]] = {
    "center": lambda a: a.center,
    "width": lambda a: a.width,
    "lower": lambda a: a.lo,
    "upper": lambda a: a.hi,
}


@dataclass
class TrackedDerivReport:
    limits: dict[Track, dict[str, LimitResult]] = field(default_factory=dict)
    gh_width: dict[Track, LimitResult] = field(default_factory=dict)
    gh: dict[Track, Interval | None] = field(default_factory=dict)
    exists: dict[str, bool] = field(default_factory=dict)
    gh_exists: bool = False

    @property
    def center_exists(self) -> bool:
        return self.exists["center"]

    @property
    def width_exists(self) -> bool:
        return self.exists["width"]

    @property
    def lower_exists(self) -> bool:
        return self.exists["lower"]

    @property
    def upper_exists(self) -> bool:
        return self.exists["upper"]

    def track_limit(self, track: Track, channel: str) -> float:
        return self.limits[track][channel].value


def _as_interval(v) -> Interval:
    return v if isinstance(v, Interval) else Interval(v, v)


def tracked_derivative(tf: TrackedCurveFn, sched: StepSchedule = DEFAULT_SCHEDULE,
                       tol: float = DEFAULT_TOL) -> TrackedDerivReport:
    """Per-track channel limits for an interval curve given on two tracks.

    A channel exists when both tracks converge to values within ``tol`` of
    each other; the gH limit is built per track from the center channel and
    the absolute width slope.
    """
    report = TrackedDerivReport()
    for track in Track:
        base = _as_interval(tf(track, 0.0))
        point = lambda s, t=track: _as_interval(tf(t, s))
        per = {}
        for name, get in CHANNELS.items():
            per[name] = estimate_limit(lambda s, g=get: (g(point(s)) - g(base)) / s, sched, tol)
        report.limits[track] = per
        gw = estimate_limit(lambda s: abs(point(s).width - base.width) / s, sched, tol)
        report.gh_width[track] = gw
        report.gh[track] = _gh_from_channels(per["center"], gw)

    r, i = Track.RATIONAL, Track.IRRATIONAL
    for name in CHANNELS:
        a, b = report.limits[r][name], report.limits[i][name]
        report.exists[name] = a.converged and b.converged and abs(a.value - b.value) <= tol
    ga, gb = report.gh[r], report.gh[i]
    report.gh_exists = ga is not None and gb is not None and hausdorff(ga, gb) <= tol
    return report


# --------------------------------------------------------------------------
# structural checks
# --------------------------------------------------------------------------

DerivResult = Union[LimitResult, GhDerivResult]


def _deriv_value(res: DerivResult, what: str):
    if not res.converged:
        raise DerivativeMissing(f"derivative {what} did not converge: {res}")
    return res.value


def homogeneity_check(deriv_at: Callable[[Tangent], DerivResult], v: Tangent,
                      lambdas: Sequence[float], tol: float = DEFAULT_TOL) -> Verdict:
    """Check ``D(lam v) = lam D(v)`` for each non-negative ``lam``."""
    base = _deriv_value(deriv_at(v), f"along {v.vec}")
    for lam in lambdas:
        if lam < 0:
            raise ValueError("positive homogeneity is only defined for lam >= 0")
        got = _deriv_value(deriv_at(v.scaled(lam)), f"along {lam}*{v.vec}")
        if isinstance(base, Interval):
            want = linear_combo(lam, base, 0.0, ZERO)
            err = hausdorff(got, want)
        else:
            want = lam * base
            err = abs(got - want)
        if err > tol:
            return Verdict.violation(Witness(v, lam, got, want, detail=f"error {err:.3g}"), len(lambdas))
    return Verdict.ok(len(lambdas))


def linearity_check(f: RealFn, g: RealFn, a1: float, a2: float, geo: Geodesic,
                    sched: StepSchedule = DEFAULT_SCHEDULE, tol: float = DEFAULT_TOL) -> Verdict:
    """Check ``D(a1 f + a2 g) = a1 Df + a2 Dg`` along ``geo``."""
    df = _deriv_value(real_directional_derivative(f, geo, sched, tol), f"of {f.name}")
    dg = _deriv_value(real_directional_derivative(g, geo, sched, tol), f"of {g.name}")
    h = real_combo(a1, f, a2, g)
    dh = _deriv_value(real_directional_derivative(h, geo, sched, tol), "of the combination")
    want = a1 * df + a2 * dg
    if abs(dh - want) > tol:
        return Verdict.violation(Witness(geo.base, 0.0, dh, want, detail="combination slope mismatch"), 1)
    return Verdict.ok(1)
