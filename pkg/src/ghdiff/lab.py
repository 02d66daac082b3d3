"""Registry of reproducible example checks and their reports.

Every case runs a fixed, seeded computation and records a list of named
assertions (expected value, actual value, tolerance, pass flag).  Cases never
raise for numerical trouble; a library error inside a case becomes a failed
assertion in its report.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Iterable

import numpy as np

from . import catalog as cat
from .convexity import (
    SampleGrid,
    convex_at,
    convex_on,
    cw_convex_at,
    default_s_params,
    first_order_check_ivf,
    first_order_check_real,
    monotone_q_check,
    width_monotone_check,
)
from .directional import (
    StepSchedule,
    gh_deriv_at,
    gh_directional_derivative,
    homogeneity_check,
    linearity_check,
    real_deriv_at,
    real_directional_derivative,
    slope_gh,
    slope_real,
    tracked_derivative,
)
from .errors import GhDiffError, UnknownCase
from .interval import (
    ZERO,
    Interval,
    LuComparison,
    MinOrdering,
    cmp_lu,
    cmp_min,
    from_cw,
    gh_diff,
    gh_diff_endpoints,
    hausdorff,
    is_lower_bound,
    is_upper_bound,
    linear_combo,
    minkowski_add,
    minkowski_sub,
    scale,
)
from .ivf import RealFn, Track, compose
from .manifolds import TWO_PI, Circle, Cylinder, Euclidean, PositiveReals, Spd2, spd

HALF_PI = 0.5 * math.pi
LN2 = math.log(2.0)
LN4 = math.log(4.0)
EXACT_TOL = 1e-12
REFERENCE_TOL = 0.05
# comparison slack for sampled convexity inequalities; independent of the limit tolerance
GRID_TOL = 1e-9


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ToleranceConfig:
    tol: float = 1e-6
    s0: float = 0.1
    rho: float = 0.5
    K: int = 20
    theta_count: int = 17
    s_count: int = 9

    _FILE_KEYS = {
        "tol": ("tol", float),
        "s0": ("s0", float),
        "rho": ("rho", float),
        "K": ("K", int),
        "grid.theta.count": ("theta_count", int),
        "grid.s.count": ("s_count", int),
    }

    def __post_init__(self):
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.theta_count < 2 or self.s_count < 1:
            raise ConfigError("grid counts are too small")
        try:
            self.schedule
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def schedule(self) -> StepSchedule:
        return StepSchedule(self.s0, self.rho, self.K)

    @classmethod
    def parse(cls, text: str, base: ToleranceConfig | None = None) -> ToleranceConfig:
        """Read ``key=value`` lines; blank lines and ``#`` comments are skipped."""
        updates = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in cls._FILE_KEYS:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            attr, conv = cls._FILE_KEYS[key]
            try:
                updates[attr] = conv(value)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from exc
        return replace(base or cls(), **updates)

    @classmethod
    def from_file(cls, path: str | Path) -> ToleranceConfig:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.parse(text)


@dataclass
class Assertion:
    name: str
    expected: Any
    actual: Any
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual,
                "tol": self.tol, "pass": self.passed}


@dataclass
class Report:
    case: str
    paper_location: str
    assertions: list[Assertion] = field(default_factory=list)
    runtime_ms: int = 0

    @property
    def passed(self) -> bool:
        return bool(self.assertions) and all(a.passed for a in self.assertions)

    def to_dict(self, with_runtime: bool = True) -> dict:
        out = {"case": self.case, "paper_location": self.paper_location,
               "assertions": [a.to_dict() for a in self.assertions]}
        if with_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out

    def to_markdown(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"### `{self.case}` {status}", "", f"*{self.paper_location}*, {self.runtime_ms} ms", "",
                 "| assertion | expected | actual | tol | pass |", "|---|---|---|---|---|"]
        for a in self.assertions:
            lines.append(f"| {a.name} | {_fmt(a.expected)} | {_fmt(a.actual)} | {a.tol:g} | "
                         f"{'yes' if a.passed else '**no**'} |")
        return "\n".join(lines) + "\n"


def _fmt(v: Any) -> str:
    return f"{v:.10g}" if isinstance(v, float) else str(v)


def _jsonable(v: Any) -> Any:
    if isinstance(v, Interval):
        return v.cw_str(10)
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    return str(v)


class Recorder:
    """Collects assertions for one case."""

    def __init__(self):
        self.items: list[Assertion] = []

    def add(self, name: str, expected, actual, tol: float, passed: bool) -> bool:
        self.items.append(Assertion(name, _jsonable(expected), _jsonable(actual), float(tol), bool(passed)))
        return bool(passed)

    def close(self, name: str, expected: float, actual: float, tol: float) -> bool:
        ok = math.isfinite(actual) and abs(actual - expected) <= tol
        return self.add(name, expected, actual, tol, ok)

    def close_iv(self, name: str, expected: Interval, actual: Interval | None, tol: float) -> bool:
        ok = actual is not None and hausdorff(actual, expected) <= tol
        return self.add(name, expected, actual if actual is not None else "missing", tol, ok)

    def at_least(self, name: str, bound: float, actual: float, tol: float = 0.0) -> bool:
        return self.add(name, f">= {bound:.10g}", actual, tol, actual >= bound - tol)

    def at_most(self, name: str, bound: float, actual: float, tol: float = 0.0) -> bool:
        return self.add(name, f"<= {bound:.10g}", actual, tol, actual <= bound + tol)

    def same(self, name: str, expected, actual) -> bool:
        return self.add(name, expected, actual, 0.0, str(expected) == str(actual))

    def holds(self, name: str, ok: bool, actual="") -> bool:
        return self.add(name, "true", actual if actual != "" else str(bool(ok)).lower(), 0.0, ok)


# --------------------------------------------------------------------------
# refutation scripts for the two order-incompleteness families
# --------------------------------------------------------------------------

def _positive_below(c: float, w: float) -> float:
    """A positive center that makes ``<., 0>`` strictly min-smaller than ``<c, w>``."""
    if c / 2 > 0:
        return c / 2
    if w > 0:
        return c
    raise ValueError(f"no representable positive float below {c}")


def zero_center_member(x: float) -> Interval:
    """Member ``<0, x>`` (x >= 0) of the zero-center family, which is bounded above."""
    return from_cw(0.0, x)


def refute_supremum(g: Interval) -> tuple[str, Interval]:
    """Show ``g`` is not the least upper bound of ``{<0, x> : x >= 0}``.

    Returns ``("member", a)`` with a family member above ``g`` when ``g`` is
    not an upper bound, or ``("better", b)`` with an upper bound strictly
    below ``g``.  Upper bounds are exactly the intervals with positive center.
    """
    c, w = g.cw
    if c < 0:
        return "member", zero_center_member(0.0)
    if c == 0:
        return "member", zero_center_member(w + 1.0)
    return "better", from_cw(_positive_below(c, w), 0.0)


def slope_member(s: float) -> Interval:
    """Member ``<s, 0>`` (s > 0) of the slope family of ``<x^2, 1>`` at 0."""
    return from_cw(s, 0.0)


def refute_infimum(g: Interval) -> tuple[str, Interval]:
    """Show ``g`` is not the greatest lower bound of ``{<s, 0> : s > 0}``.

    Lower bounds are exactly the intervals with center <= 0, and among
    those with center 0 the width is unbounded, so none is greatest.
    """
    c, w = g.cw
    if c > 0:
        return "member", slope_member(_positive_below(c, w))
    return "better", from_cw(0.0, w + 1.0)


# --------------------------------------------------------------------------
# cases
# --------------------------------------------------------------------------

def _rng(tag: str) -> np.random.Generator:
    return np.random.default_rng(sum(ord(ch) * (i + 1) for i, ch in enumerate(tag)))


def _random_interval(rng: np.random.Generator) -> Interval:
    return from_cw(rng.uniform(-100, 100), rng.uniform(0, 50))


def _case_split_combo(alpha: float, a: Interval, beta: float, b: Interval) -> Interval:
    return minkowski_add(scale(alpha, a), scale(beta, b))


def _rel_err(a: Interval, b: Interval) -> float:
    mag = max(1.0, abs(a.lo), abs(a.hi), abs(b.lo), abs(b.hi))
    return hausdorff(a, b) / mag


def case_interval_algebra(cfg: ToleranceConfig, r: Recorder) -> None:
    rng = _rng("interval-algebra")
    worst = 0.0
    for _ in range(10_000):
        alpha, beta = rng.uniform(-10, 10, size=2)
        a, b = _random_interval(rng), _random_interval(rng)
        worst = max(worst, _rel_err(linear_combo(alpha, a, beta, b), _case_split_combo(alpha, a, beta, b)))
    r.at_most("linear_combo vs case-split endpoint arithmetic, 10000 draws (max rel err)", EXACT_TOL, worst)
    r.close_iv("2<1,2> - <3,1> = <-1,5>", from_cw(-1, 5),
               linear_combo(2, from_cw(1, 2), -1, from_cw(3, 1)), EXACT_TOL)
    r.close_iv("-[1,4] = [-4,-1]", Interval(-4, -1), linear_combo(-1, Interval(1, 4), 0, ZERO), EXACT_TOL)
    r.close_iv("[1,4] + [2,3] = [3,7]", Interval(3, 7), minkowski_add(Interval(1, 4), Interval(2, 3)), EXACT_TOL)
    r.close_iv("[1,4] - [2,3] = [-2,2]", Interval(-2, 2), minkowski_sub(Interval(1, 4), Interval(2, 3)), EXACT_TOL)
    r.close("d_H([1,4],[2,3]) = 1", 1.0, hausdorff(Interval(1, 4), Interval(2, 3)), EXACT_TOL)
    r.close("d_H([0,0],[3,5]) = 5", 5.0, hausdorff(ZERO, Interval(3, 5)), EXACT_TOL)
    r.same("[1,4] - [1,4] is not [0,0]", "[-3, 3]", minkowski_sub(Interval(1, 4), Interval(1, 4)))


def _order_triples(rng: np.random.Generator, n: int):
    # a coarse lattice so that equal centers and equal widths actually occur
    cs = rng.integers(-4, 5, size=(n, 3)) / 2.0
    ws = rng.integers(0, 4, size=(n, 3)) / 2.0
    for crow, wrow in zip(cs, ws):
        yield tuple(from_cw(c, w) for c, w in zip(crow, wrow))


def case_order_axioms(cfg: ToleranceConfig, r: Recorder) -> None:
    rng = _rng("order-axioms")
    totality = antisym = trans = 0
    for a, b, c in _order_triples(rng, 10_000):
        ab, ba = cmp_min(a, b), cmp_min(b, a)
        if ab not in MinOrdering:
            totality += 1
        expect_ba = {MinOrdering.LESS: MinOrdering.GREATER, MinOrdering.GREATER: MinOrdering.LESS,
                     MinOrdering.EQUAL: MinOrdering.EQUAL}[ab]
        if ba is not expect_ba or ((ab is MinOrdering.EQUAL) != (a.cw == b.cw)):
            antisym += 1
        le = lambda x, y: cmp_min(x, y) is not MinOrdering.GREATER
        if le(a, b) and le(b, c) and not le(a, c):
            trans += 1
    r.close("totality counterexamples over 10000 triples", 0, totality, 0)
    r.close("antisymmetry counterexamples over 10000 triples", 0, antisym, 0)
    r.close("transitivity counterexamples over 10000 triples", 0, trans, 0)
    r.same("[1,4] vs [2,3] under the endpoint order", LuComparison.INCOMPARABLE.value,
           cmp_lu(Interval(1, 4), Interval(2, 3)).value)
    r.same("[2,3] vs [1,4] under the min order (equal centers)", MinOrdering.LESS.value,
           cmp_min(Interval(2, 3), Interval(1, 4)).value)
    r.same("<1,9> vs <2,0> under the min order", MinOrdering.LESS.value,
           cmp_min(from_cw(1, 9), from_cw(2, 0)).value)
    r.same("[0,10] vs [1,2] under the endpoint order", LuComparison.INCOMPARABLE.value,
           cmp_lu(Interval(0, 10), Interval(1, 2)).value)
    r.same("<5,5> vs <1.5,0.5> under the min order", MinOrdering.GREATER.value,
           cmp_min(from_cw(5, 5), from_cw(1.5, 0.5)).value)


def _candidate_bounds(tag: str) -> list[Interval]:
    fixed = [from_cw(-1, 0), from_cw(0, 0), from_cw(0, 100), from_cw(1e-9, 0), from_cw(3, 2), from_cw(-1e-12, 7)]
    rng = _rng(tag)
    return fixed + [from_cw(rng.uniform(-5, 5), rng.uniform(0, 5)) for _ in range(200)]


def case_no_supremum(cfg: ToleranceConfig, r: Recorder) -> None:
    sample = [zero_center_member(x) for x in (0.0, 0.5, 1.0, 10.0, 1e6)]
    r.holds("<1,0> is an upper bound of sampled members", is_upper_bound(from_cw(1, 0), sample))
    refuted = 0
    candidates = _candidate_bounds("no-supremum")
    for g in candidates:
        how, witness = refute_supremum(g)
        if how == "member":
            ok = witness.center == 0 and cmp_min(g, witness) is MinOrdering.LESS
        else:
            ok = (cmp_min(witness, g) is MinOrdering.LESS and witness.center > 0
                  and is_upper_bound(witness, sample))
        refuted += ok
    r.close("candidate suprema refuted", len(candidates), refuted, 0)


def case_gh_identities(cfg: ToleranceConfig, r: Recorder) -> None:
    rng = _rng("gh-identities")
    worst = 0.0
    self_exact = True
    for _ in range(10_000):
        a, b = _random_interval(rng), _random_interval(rng)
        worst = max(worst, _rel_err(gh_diff(a, b), gh_diff_endpoints(a, b)))
        self_exact &= gh_diff(a, a) == ZERO and gh_diff_endpoints(a, a) == ZERO
    r.at_most("endpoint vs center/width gH formula, 10000 draws (max rel err)", EXACT_TOL, worst)
    r.holds("A gH- A = [0,0] exactly on all draws", self_exact)
    r.close_iv("[1,4] gH- [2,3] = [-1,1]", Interval(-1, 1), gh_diff(Interval(1, 4), Interval(2, 3)), 0.0)
    r.close_iv("<5,2> gH- <3,2> = <2,0>", from_cw(2, 0), gh_diff(from_cw(5, 2), from_cw(3, 2)), 0.0)
    r.holds("Minkowski A - A differs from gH for A=[1,4]",
            minkowski_sub(Interval(1, 4), Interval(1, 4)) != gh_diff(Interval(1, 4), Interval(1, 4)))


def case_cylinder_deriv(cfg: ToleranceConfig, r: Recorder) -> None:
    cyl = Cylinder()
    f = cat.cylinder_piecewise()
    x0 = cyl.point(0.0, 0.0)
    for v2 in (1.0, -2.0):
        d = real_directional_derivative(f, cyl.geodesic(cyl.tangent(x0, 0.0, v2)), cfg.schedule, cfg.tol)
        r.close(f"Df(x0; vertical {v2:g}) = {v2:g}", v2, d.value, cfg.tol)
    for v1 in (1.0, math.pi):
        d = real_directional_derivative(f, cyl.geodesic(cyl.tangent(x0, v1, 0.0)), cfg.schedule, cfg.tol)
        r.close(f"Df(x0; horizontal {v1:.6g}) = 0", 0.0, d.value, cfg.tol)


def case_appendix_divergence(cfg: ToleranceConfig, r: Recorder) -> None:
    pr = PositiveReals()
    f = cat.kinked_log()
    x = pr.point(1.0)
    geo = pr.segment(x, pr.point(2.0))
    r.close("velocity of the segment 1 -> 2 is ln 2", LN2, geo.velocity.vec[0], EXACT_TOL)
    r.close("slope at s=0.01 = -ln2 - 1/s", -LN2 - 100.0, slope_real(f, geo, 0.01), 1e-3)
    res = real_directional_derivative(f, geo, cfg.schedule, cfg.tol)
    r.same("limit of the slope diverges to -inf", "Diverged(-1)", res)
    for s0 in (0.5, 0.01):
        alt = real_directional_derivative(f, geo, StepSchedule(s0, cfg.rho, cfg.K), cfg.tol)
        r.same(f"still diverges with s0={s0}", "Diverged(-1)", alt)
    grid = SampleGrid([pr.point(v) for v in (0.5, 2.0, 3.0)], default_s_params(cfg.s_count), GRID_TOL)
    v = convex_at(f, x, grid)
    r.same("convex at x=1 on the sample grid", "HoldsOnSamples", "HoldsOnSamples" if v else str(v))


def case_minus_direction(cfg: ToleranceConfig, r: Recorder) -> None:
    r1 = Euclidean(1)
    f = cat.kinked_line()
    x0 = r1.point(0.0)
    d_plus = real_directional_derivative(f, r1.geodesic(r1.tangent(x0, 1.0)), cfg.schedule, cfg.tol)
    d_minus = real_directional_derivative(f, r1.geodesic(r1.tangent(x0, -1.0)), cfg.schedule, cfg.tol)
    r.close("Df(0; 1) = -1", -1.0, d_plus.value, cfg.tol)
    r.close("Df(0; -1) = 0", 0.0, d_minus.value, cfg.tol)
    r.holds("-Df(0;-1) >= Df(0;1) (the opposite of the convex-on-set inequality)",
            -d_minus.value >= d_plus.value, f"{-d_minus.value:.6g} >= {d_plus.value:.6g}")
    grid = SampleGrid([r1.point(v) for v in (-2.0, -1.0, 1.0, 2.0)], default_s_params(cfg.s_count), GRID_TOL)
    r.holds("f is convex at 0 on the sample grid", convex_at(f, x0, grid).holds)


def _derivative_map(f: RealFn, x0, cfg: ToleranceConfig) -> RealFn:
    """``y -> Df(x0; y)`` on the tangent line, as a function on R."""
    r1 = Euclidean(1)

    def g(p):
        res = real_directional_derivative(f, r1.geodesic(r1.tangent(x0, p.value)), cfg.schedule, cfg.tol)
        if not res.converged:
            raise GhDiffError(f"no derivative in direction {p.value}: {res}")
        return res.value

    return RealFn(r1, g, "Df(0; .)")


def case_tangent_nonconvex(cfg: ToleranceConfig, r: Recorder) -> None:
    r1 = Euclidean(1)
    x0 = r1.point(0.0)
    g = _derivative_map(cat.shifted_kinked_line(), x0, cfg)
    ys = np.linspace(-1.0, 1.0, 21)
    err = max(abs(g(r1.point(y)) - (0.0 if y <= 0 else -y)) for y in ys)
    r.at_most("derived map matches {0 for y<=0, -y for y>0} at 21 points (max err)", cfg.tol, err)
    grid = SampleGrid([r1.point(y) for y in ys], default_s_params(cfg.s_count), GRID_TOL)
    r.holds("derived map is convex at 0", convex_at(g, r1.point(0.0), grid).holds)
    v = convex_on(g, [(r1.point(-1.0), r1.point(1.0))], [0.5], GRID_TOL)
    r.holds("derived map is not convex on R", not v.holds, str(v))
    gap = v.witness.gap if v.witness else float("nan")
    r.at_least("midpoint gap g(0) - (g(-1)+g(1))/2", 0.5 - 1e-6, gap)


def _circle_grid(cfg: ToleranceConfig) -> SampleGrid:
    c = Circle()
    return SampleGrid([c.point(t) for t in np.linspace(0.0, TWO_PI, cfg.theta_count)],
                      default_s_params(cfg.s_count), GRID_TOL)


def _stated_witness(fn: RealFn, r: Recorder, label: str) -> None:
    c = Circle()
    i, minus_i = c.point(HALF_PI), c.point(1.5 * math.pi)
    mid = c.segment(i, minus_i)(0.5)
    lhs = fn(mid)
    rhs = 0.5 * fn(i) + 0.5 * fn(minus_i)
    r.add(f"{label}: stated witness at s=1/2 toward -i evaluated (lhs <= rhs, so it does not violate)",
          f"lhs {lhs:.6f} <= rhs {rhs:.6f}", "no violation" if lhs <= rhs else "violation", 0.0, lhs <= rhs)


def case_converse_real(cfg: ToleranceConfig, r: Recorder) -> None:
    c = Circle()
    f = cat.log_bump()
    i = c.point(HALF_PI)
    grid = _circle_grid(cfg)
    fo = first_order_check_real(f, i, grid, sched=cfg.schedule, deriv_tol=cfg.tol)
    r.holds("first-order inequality f(x)-f(i) >= Df(i;X) on the grid", fo.holds, str(fo))
    d = real_directional_derivative(f, c.segment(i, c.point(2.0)), cfg.schedule, cfg.tol)
    r.close("Df(i; X) = 0 toward theta=2", 0.0, d.value, cfg.tol)
    v = convex_at(f, i, grid, worst=True)
    r.holds("convexity at i is violated on the grid", not v.holds, str(v))
    if v.witness is not None:
        r.at_least("largest violation target angle is near 2pi", 1.75 * math.pi, v.witness.target.angle)
        r.at_least("largest violation gap", 0.003, v.witness.gap)
    spot = convex_at(f, i, SampleGrid([c.point(TWO_PI)], [0.5], GRID_TOL))
    r.holds("target 2pi at s=1/2 violates", not spot.holds,
            f"lhs {spot.witness.lhs:.6f} > rhs {spot.witness.rhs:.6f}" if spot.witness else "no violation")
    _stated_witness(f, r, "f")


def case_circle_tracked(cfg: ToleranceConfig, r: Recorder) -> None:
    geo = cat.circle_quarter_arc()
    r.close("arc velocity is -pi/2", -HALF_PI, geo.velocity.vec[0], EXACT_TOL)
    tf = cat.circle_tracked(geo)
    r.close("tracks agree at s=0 (width pi/2)", 0.0,
            abs(tf(Track.RATIONAL, 0.0).width - tf(Track.IRRATIONAL, 0.0).width), EXACT_TOL)
    rep = tracked_derivative(tf, cfg.schedule, cfg.tol)
    r.close("width slope limit, rational track", HALF_PI, rep.track_limit(Track.RATIONAL, "width"), cfg.tol)
    r.close("width slope limit, irrational track", -HALF_PI, rep.track_limit(Track.IRRATIONAL, "width"), cfg.tol)
    r.holds("width function has no directional derivative", not rep.width_exists)
    r.holds("gH-directional derivative exists", rep.gh_exists)
    for track in Track:
        r.close_iv(f"gH derivative on the {track.value} track = <0, pi/2>", from_cw(0, HALF_PI),
                   rep.gh[track], cfg.tol)
    for s in (0.5, 0.1):
        q = scale(1.0 / s, gh_diff(tf(Track.RATIONAL, s), tf(Track.RATIONAL, 0.0)))
        r.close_iv(f"rational-track gH slope at s={s} = <0, pi/2>", from_cw(0, HALF_PI), q, EXACT_TOL)


def _circle_chart_limit(v: float) -> float:
    # the angle moves as pi/2 - s v and must stay inside [0, 2pi]
    return min(1.0, (HALF_PI if v > 0 else 1.5 * math.pi) / abs(v))


def case_width_equivalence(cfg: ToleranceConfig, r: Recorder) -> None:
    c = Circle()
    f = cat.circle_unit_sq()
    i = c.point(HALF_PI)
    for v in (-HALF_PI, 1.0, 2.5):
        geo = c.geodesic(c.tangent(i, v))
        smax = _circle_chart_limit(v)
        r.close(f"(f^w o g)(s) = s^2 v^2 at s={0.3 * smax:.4g}, v={v:.4g}", (0.3 * smax * v) ** 2,
                compose(f.width, geo)(0.3 * smax), EXACT_TOL)
        wm = width_monotone_check(f, geo, np.linspace(0.0, smax, 11), cfg.tol)
        r.holds(f"width non-decreasing along the geodesic, v={v:.4g}", wm.holds, str(wm))
        d = gh_directional_derivative(f, geo, cfg.schedule, cfg.tol)
        r.close_iv(f"Df(i; {v:.4g}) = <0,0>", ZERO, d.value, cfg.tol)
        dc = real_directional_derivative(f.center, geo, cfg.schedule, cfg.tol)
        dw = real_directional_derivative(f.width, geo, cfg.schedule, cfg.tol)
        r.at_least(f"Df^w >= 0, v={v:.4g}", 0.0, dw.value, cfg.tol)
        both = from_cw(dc.value, max(dw.value, 0.0)) if dc.converged and dw.converged else None
        r.close_iv(f"gH derivative equals <Df^c, Df^w>, v={v:.4g}", d.value or ZERO, both, cfg.tol)
        dl = real_directional_derivative(f.lower, geo, cfg.schedule, cfg.tol)
        du = real_directional_derivative(f.upper, geo, cfg.schedule, cfg.tol)
        ends = None
        if dl.converged and du.converged and dl.value <= du.value + cfg.tol:
            ends = Interval(*sorted((dl.value, du.value)))
        r.close_iv(f"gH derivative equals [Df^l, Df^u], v={v:.4g}", d.value or ZERO, ends, cfg.tol)


def _catalog_geodesics(entry: cat.CatalogEntry):
    for x in entry.targets:
        if x != entry.base:
            yield entry.base.manifold.segment(entry.base, x)


def case_q_monotone(cfg: ToleranceConfig, r: Recorder) -> None:
    r1 = Euclidean(1)
    f = cat.square_unit()
    geo = r1.geodesic(r1.tangent(r1.point(0.0), 1.0))
    s_grid = default_s_params(cfg.s_count)
    err = max(hausdorff(slope_gh(f, geo, s), from_cw(s, 0.0)) for s in s_grid + (1e-3, 2.0))
    r.at_most("Q(s) = <s, 0> for <x^2, 1> (max err)", EXACT_TOL, err)
    checked = failures = skipped = 0
    for entry in cat.catalog().values():
        if not entry.convex_at_base:
            continue
        for g in _catalog_geodesics(entry):
            if entry.interval_valued and not width_monotone_check(entry.fn, g, (0.0,) + s_grid, cfg.tol):
                skipped += 1
                continue
            checked += 1
            failures += not monotone_q_check(entry.fn, g, s_grid, cfg.tol).holds
    r.at_least("geodesics checked across convex catalog entries", 20, checked)
    r.close("slope monotonicity failures", 0, failures, 0)
    r.add("geodesics skipped for decreasing width", "recorded", skipped, 0.0, True)


def case_no_infimum(cfg: ToleranceConfig, r: Recorder) -> None:
    r1 = Euclidean(1)
    f = cat.square_unit()
    geo = r1.geodesic(r1.tangent(r1.point(0.0), 1.0))
    qs = [slope_gh(f, geo, s) for s in (1.0, 0.1, 0.01, 0.001, 1e-6)]
    r.holds("<0,0> is a lower bound of sampled Q(s)", is_lower_bound(ZERO, qs))
    d = gh_directional_derivative(f, geo, cfg.schedule, cfg.tol)
    r.close_iv("lim Q(s) = <0,0>", ZERO, d.value, cfg.tol)
    r.holds("<0,1> is a strictly greater lower bound than <0,0>",
            is_lower_bound(from_cw(0, 1), qs) and cmp_min(ZERO, from_cw(0, 1)) is MinOrdering.LESS)
    refuted = 0
    candidates = _candidate_bounds("no-infimum-Q")
    for g in candidates:
        how, witness = refute_infimum(g)
        if how == "member":
            ok = witness.center > 0 and cmp_min(witness, g) is MinOrdering.LESS
        else:
            ok = cmp_min(g, witness) is MinOrdering.LESS and witness.center <= 0 and is_lower_bound(witness, qs)
        refuted += ok
    r.close("candidate infima refuted", len(candidates), refuted, 0)


# two-decimal reference values quoted for the SPD example
REFERENCE_SPD = {"Df_c": 1.38, "Df_w_abs": 3.81, "gh_c": 1.38, "gh_w": 1.90}


def case_spd_counterexample(cfg: ToleranceConfig, r: Recorder) -> None:
    s2 = Spd2()
    f = cat.spd_logdet()
    x, y = spd(0.5 * np.eye(2)), spd(np.eye(2))
    geo = s2.segment(x, y)
    r.close_iv("f(x) = <-ln 4, (ln 4)^2>", from_cw(-LN4, LN4**2), f(x), EXACT_TOL)
    d = gh_directional_derivative(f, geo, cfg.schedule, cfg.tol)
    dc = d.center.value
    dw = d.width.value
    r.close("Df^c(x; X) = ln 4", LN4, dc, cfg.tol)
    r.close("|Df^w(x; X)| = 2 (ln 4)^2", 2 * LN4**2, dw, cfg.tol)
    r.close("signed Df^w(x; X) = -2 (ln 4)^2", -2 * LN4**2, d.signed_width.value, cfg.tol)
    gh = gh_diff(f(y), f(x))
    r.close_iv("f(y) gH- f(x) = <ln 4, (ln 4)^2>", from_cw(LN4, LN4**2), gh, cfg.tol)
    if d.value is not None:
        r.same("f(y) gH- f(x) is strictly below Df under the min order", MinOrdering.LESS.value,
               cmp_min(gh, d.value, cfg.tol).value)
    wm = width_monotone_check(f, geo, np.linspace(0, 1, 11), cfg.tol)
    r.holds("width decreases along the geodesic", not wm.holds, str(wm))
    spd_targets = cat.catalog()["spd_logdet"].targets
    cw = cw_convex_at(f, x, SampleGrid(spd_targets, default_s_params(cfg.s_count), GRID_TOL))
    r.holds("f is cw-convex at x on the sample grid", cw.holds, str(cw))
    fo = first_order_check_ivf(f, x, SampleGrid([y], [0.5], GRID_TOL), sched=cfg.schedule, deriv_tol=cfg.tol)
    r.holds("first-order min-order inequality fails toward y", not fo.holds, str(fo))
    r.close("two-decimal Df^c 1.38 vs computed", REFERENCE_SPD["Df_c"], dc, REFERENCE_TOL)
    r.close("two-decimal gH center 1.38 vs computed", REFERENCE_SPD["gh_c"], gh.center, REFERENCE_TOL)
    r.close("two-decimal gH width 1.90 vs computed (ln 4)^2", REFERENCE_SPD["gh_w"], gh.width, REFERENCE_TOL)
    r.add("two-decimal |Df^w| 3.81 vs closed form 2(ln 4)^2: discrepancy recorded, not reconciled",
          REFERENCE_SPD["Df_w_abs"], 2 * LN4**2, REFERENCE_TOL,
          abs(2 * LN4**2 - REFERENCE_SPD["Df_w_abs"]) <= REFERENCE_TOL)
    r.add("size of that discrepancy", "recorded", 2 * LN4**2 - REFERENCE_SPD["Df_w_abs"], 0.0, True)


def case_final_noninversion(cfg: ToleranceConfig, r: Recorder) -> None:
    c = Circle()
    f = cat.angle_sq_log_bump()
    i = c.point(HALF_PI)
    grid = _circle_grid(cfg)
    fo = first_order_check_ivf(f, i, grid, sched=cfg.schedule, deriv_tol=cfg.tol)
    r.holds("Df(i;X) <=min f(x) gH- f(i) on the grid", fo.holds, str(fo))
    for theta in (0.0, math.pi, TWO_PI):
        d = gh_directional_derivative(f, c.segment(i, c.point(theta)), cfg.schedule, cfg.tol)
        r.close_iv(f"Df toward theta={theta:.4g} = <pi(theta - pi/2), 0>",
                   from_cw(math.pi * (theta - HALF_PI), 0.0), d.value, cfg.tol)
    mono = all(width_monotone_check(f, c.segment(i, x), np.linspace(0, 1, 11), cfg.tol).holds
               for x in grid.targets)
    r.holds("width non-decreasing along every sampled geodesic from i", mono)
    v = cw_convex_at(f, i, grid, worst=True)
    r.holds("not cw-convex at i", not v.holds, str(v))
    r.same("failing channel", "width", v.witness.channel if v.witness else "none")
    if v.witness is not None:
        r.at_least("width violation gap", 0.003, v.witness.gap)
    _stated_witness(f.width, r, "f^w")


def case_appendix_endpoints(cfg: ToleranceConfig, r: Recorder) -> None:
    geo = cat.spd_doubling()
    r.close("geodesic I -> 2I at s=0.5 is sqrt(2) I", 0.0,
            float(np.max(np.abs(geo(0.5).matrix - math.sqrt(2) * np.eye(2)))), 1e-12)
    r.close("velocity is ln(2) I", 0.0,
            float(np.max(np.abs(geo.velocity.matrix - LN2 * np.eye(2)))), 1e-12)
    tf = cat.spd_endpoint_tracked(geo)
    rep = tracked_derivative(tf, cfg.schedule, cfg.tol)
    r.close("lower slope limit, rational track", 0.0, rep.track_limit(Track.RATIONAL, "lower"), cfg.tol)
    r.close("lower slope limit, irrational track", LN4, rep.track_limit(Track.IRRATIONAL, "lower"), cfg.tol)
    r.close("upper slope limit, rational track", LN4, rep.track_limit(Track.RATIONAL, "upper"), cfg.tol)
    r.close("upper slope limit, irrational track", 0.0, rep.track_limit(Track.IRRATIONAL, "upper"), cfg.tol)
    r.holds("lower endpoint function not directionally differentiable", not rep.lower_exists)
    r.holds("upper endpoint function not directionally differentiable", not rep.upper_exists)
    r.holds("gH-directional derivative exists", rep.gh_exists)
    for track in Track:
        r.close_iv(f"gH derivative on the {track.value} track = [0, ln 4]", Interval(0.0, LN4),
                   rep.gh[track], cfg.tol)


def case_homogeneity(cfg: ToleranceConfig, r: Recorder) -> None:
    lambdas = (0.0, 0.5, 1.0, 2.0, 10.0)
    s2 = Spd2()
    x = spd(0.5 * np.eye(2))
    v = s2.segment(x, spd(np.eye(2))).velocity
    f = cat.spd_logdet()
    h = homogeneity_check(gh_deriv_at(f, cfg.schedule, cfg.tol), v, lambdas, cfg.tol)
    r.holds("SPD <ln det, (ln det)^2>: D(lam v) = lam D(v)", h.holds, str(h))
    d2 = gh_directional_derivative(f, s2.geodesic(v.scaled(2.0)), cfg.schedule, cfg.tol)
    r.close_iv("SPD: lam=2 doubles both channels", from_cw(2 * LN4, 4 * LN4**2), d2.value, cfg.tol)
    h = homogeneity_check(real_deriv_at(cat.logdet(), cfg.schedule, cfg.tol), v, lambdas, cfg.tol)
    r.holds("SPD ln det: D(lam v) = lam D(v)", h.holds, str(h))
    c = Circle()
    i = c.point(HALF_PI)
    # lam = 10 shrinks the circle geodesic domain to 2pi/(10|v|), so start inside it
    circ = replace(cfg.schedule, s0=min(cfg.s0, 0.05))
    for vv in (-HALF_PI, 0.7):
        t = c.tangent(i, vv)
        h = homogeneity_check(gh_deriv_at(cat.circle_unit_sq(), circ, cfg.tol), t, lambdas, cfg.tol)
        r.holds(f"circle <1, (theta-pi/2)^2>, v={vv:.4g}", h.holds, str(h))
        h = homogeneity_check(real_deriv_at(cat.angle_sq_log_bump().center, circ, cfg.tol), t,
                              lambdas, cfg.tol)
        r.holds(f"circle theta^2, v={vv:.4g}", h.holds, str(h))
    d0 = gh_directional_derivative(f, s2.geodesic(v.scaled(0.0)), cfg.schedule, cfg.tol)
    r.close_iv("D(x; 0) = <0,0>", ZERO, d0.value, cfg.tol)


def case_linearity(cfg: ToleranceConfig, r: Recorder) -> None:
    rng = _rng("linearity")
    tol = 10 * cfg.tol
    s2 = Spd2()
    c = Circle()
    pairs = [
        ("ln det, (ln det)^2", cat.logdet(), cat.logdet_sq(), s2.segment(spd(0.5 * np.eye(2)), spd(np.diag([1.0, 2.0])))),
        ("log bump, (theta-pi/2)^2", cat.log_bump(), cat.angle_sq(), c.segment(c.point(HALF_PI), c.point(2.5))),
        ("theta^2, log bump", cat.angle_sq_log_bump().center, cat.log_bump(),
         c.segment(c.point(HALF_PI), c.point(0.3))),
    ]
    for label, f, g, geo in pairs:
        for _ in range(3):
            a1, a2 = rng.uniform(-3, 3, size=2)
            v = linearity_check(f, g, a1, a2, geo, cfg.schedule, tol)
            r.holds(f"{label}: a1={a1:.4f}, a2={a2:.4f}", v.holds, str(v))
    F = cat.spd_logdet()
    geo = s2.segment(spd(0.5 * np.eye(2)), spd(np.eye(2)))
    du = real_directional_derivative(F.upper, geo, cfg.schedule, cfg.tol)
    dl = real_directional_derivative(F.lower, geo, cfg.schedule, cfg.tol)
    dw = real_directional_derivative(F.width, geo, cfg.schedule, cfg.tol)
    r.close("Df^w = (Df^u - Df^l)/2 on the SPD example", dw.value, 0.5 * (du.value - dl.value), tol)
    v = linearity_check(F.upper, F.lower, 0.5, -0.5, geo, cfg.schedule, tol)
    r.holds("linearity_check with (1/2, -1/2) on (f^u, f^l)", v.holds, str(v))


# --------------------------------------------------------------------------
# registry and runners
# --------------------------------------------------------------------------

CaseFn = Callable[[ToleranceConfig, Recorder], None]

REGISTRY: dict[str, tuple[str, CaseFn]] = {
    "interval-algebra": ("preliminaries: interval arithmetic and linear combinations", case_interval_algebra),
    "order-axioms": ("preliminaries: endpoint order and minimization order", case_order_axioms),
    "no-supremum": ("preliminaries: order incompleteness of the minimization order", case_no_supremum),
    "gh-identities": ("gH derivatives: gH-difference in center/width form", case_gh_identities),
    "cylinder-deriv": ("real derivatives: cylinder example", case_cylinder_deriv),
    "appendixA-divergence": ("appendix: positive-reals counterexample (convex at a point, no derivative)",
                             case_appendix_divergence),
    "minus-direction": ("real derivatives: opposite-direction example", case_minus_direction),
    "tangent-g-nonconvex": ("real derivatives: non-convex derivative map example", case_tangent_nonconvex),
    "converse-thm-firstorder-real": ("real derivatives: circle example against the first-order converse",
                                     case_converse_real),
    "circle-tracked-ghd": ("gH derivatives: circle example with rational/irrational tracks", case_circle_tracked),
    "lemma44-equivalence": ("gH derivatives: non-decreasing width equivalence and its circle example", case_width_equivalence),
    "q-monotone-interval": ("gH derivatives: slope monotonicity under cw-convexity", case_q_monotone),
    "no-infimum-Q": ("gH derivatives: slope family without an infimum", case_no_infimum),
    "spd-thm42-counterexample": ("gH derivatives: SPD counterexample to the first-order inequality",
                                 case_spd_counterexample),
    "final-noninversion": ("gH derivatives: circle example against the first-order converse",
                           case_final_noninversion),
    "appendixA2-spd-endpoints": ("appendix: SPD endpoint-function counterexample", case_appendix_endpoints),
    "homogeneity": ("real derivatives and gH derivatives: positive homogeneity", case_homogeneity),
    "linearity": ("real derivatives: linear combinations", case_linearity),
}

LOCATION_PARTS = ("preliminaries", "real derivatives", "gH derivatives", "appendix")


def case_ids() -> list[str]:
    return list(REGISTRY)


def run_case(case_id: str, cfg: ToleranceConfig | None = None) -> Report:
    if case_id not in REGISTRY:
        raise UnknownCase(case_id)
    cfg = cfg or ToleranceConfig()
    location, fn = REGISTRY[case_id]
    rec = Recorder()
    start = time.perf_counter()
    try:
        fn(cfg, rec)
    except (GhDiffError, ValueError) as exc:
        rec.add("case completed without error", "no error", f"{type(exc).__name__}: {exc}", 0.0, False)
    runtime = int(round(1000 * (time.perf_counter() - start)))
    return Report(case_id, location, rec.items, runtime)


@dataclass(frozen=True)
class Summary:
    total: int
    passed: int

    @property
    def failed(self) -> int:
        return self.total - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        return {"total": self.total, "passed": self.passed, "failed": self.failed}


def run_all(cfg: ToleranceConfig | None = None, ids: Iterable[str] | None = None) -> tuple[list[Report], Summary]:
    reports = [run_case(cid, cfg) for cid in (ids or case_ids())]
    return reports, Summary(len(reports), sum(rep.passed for rep in reports))


def reports_json(reports: list[Report], summary: Summary, with_runtime: bool = True) -> str:
    payload = {"reports": [rep.to_dict(with_runtime) for rep in reports], "summary": summary.to_dict()}
    return json.dumps(payload, indent=2, sort_keys=False)


def reports_markdown(reports: list[Report], summary: Summary) -> str:
    head = f"# Verification report\n\n{summary.passed}/{summary.total} cases pass.\n\n"
    return head + "\n".join(rep.to_markdown() for rep in reports)
