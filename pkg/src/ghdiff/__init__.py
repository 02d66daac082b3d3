"""Interval-valued functions on Riemannian manifolds: gH-differences,
directional derivatives along geodesics, and sampling convexity checks."""

from .convexity import (
    SampleGrid,
    circle_arcs,
    convex_at,
    convex_on,
    cw_convex_at,
    first_order_check_ivf,
    first_order_check_real,
    monotone_q_check,
    width_monotone_check,
)
from .directional import (
    GhDerivResult,
    GhKind,
    LimitKind,
    LimitResult,
    StepSchedule,
    estimate_limit,
    gh_directional_derivative,
    homogeneity_check,
    linearity_check,
    real_directional_derivative,
    slope_gh,
    slope_real,
    tracked_derivative,
)
from .errors import *  # noqa: F401,F403
from .interval import (
    ZERO,
    Interval,
    LuComparison,
    MinOrdering,
    cmp_lu,
    cmp_min,
    from_cw,
    from_endpoints,
    gh_diff,
    hausdorff,
    linear_combo,
    minkowski_add,
    minkowski_sub,
    scale,
)
from .ivf import Ivf, RealFn, Track, TrackedCurveFn, compose, make_tracked
from .lab import Report, ToleranceConfig, run_all, run_case
from .manifolds import Circle, Cylinder, Euclidean, Geodesic, Point, PositiveReals, Spd2, Tangent, spd
from .verdict import Verdict, Witness

__version__ = "0.1.0"
