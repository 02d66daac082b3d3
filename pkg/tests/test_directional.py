import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ghdiff import catalog as cat
from ghdiff.directional import (
    DEFAULT_SCHEDULE,
    GhKind,
    LimitKind,
    LimitResult,
    StepSchedule,
    estimate_limit,
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
from ghdiff.errors import DerivativeMissing, EvaluationFailed
from ghdiff.interval import from_cw, hausdorff
from ghdiff.ivf import Ivf, RealFn, Track
from ghdiff.manifolds import Circle, Euclidean, PositiveReals, Spd2, spd

HALF_PI = math.pi / 2
LN4 = math.log(4)


class TestSchedule:
    def test_steps(self):
        steps = DEFAULT_SCHEDULE.steps()
        assert len(steps) == 21
        assert steps[0] == 0.1 and steps[-1] == pytest.approx(0.1 * 0.5**20)

    @pytest.mark.parametrize("kw", [dict(s0=0), dict(rho=1.0), dict(rho=0), dict(K=3), dict(s0=1e-10, K=20)])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            StepSchedule(**kw)


class TestEstimateLimit:
    @given(st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10))
    def test_quadratic_curves_converge(self, a, b, c):
        res = estimate_limit(lambda s: a + b * s + c * s * s)
        assert res.converged
        assert res.value == pytest.approx(a, abs=1e-6)

    def test_reciprocal_diverges_with_sign(self):
        assert str(estimate_limit(lambda s: 1 / s)) == "Diverged(+1)"
        assert str(estimate_limit(lambda s: -math.log(2) - 1 / s)) == "Diverged(-1)"

    @given(st.floats(1e-3, 0.5), st.floats(0.1, 0.9))
    @settings(max_examples=60)
    def test_log_kink_never_converges(self, s0, rho):
        k = 20
        while s0 * rho**k <= 1e-13:
            k -= 1
        if k < 4:
            return
        res = estimate_limit(lambda s: -math.log(2) - 1 / s, StepSchedule(s0, rho, k))
        assert res.kind is LimitKind.DIVERGED and res.sign == -1

    def test_oscillation_has_no_limit(self):
        res = estimate_limit(lambda s: math.sin(1 / s))
        assert res.kind is LimitKind.NO_LIMIT

    def test_slow_convergence_not_called_divergent(self):
        res = estimate_limit(lambda s: 3 - math.sqrt(s))
        assert not res.diverged

    def test_failures_raise(self):
        with pytest.raises(EvaluationFailed):
            estimate_limit(lambda s: float("nan"))
        with pytest.raises(EvaluationFailed):
            estimate_limit(lambda s: 1 / 0)


class TestRealDerivative:
    def test_slope_at_fixed_step(self):
        pr = PositiveReals()
        g = pr.segment(pr.point(1.0), pr.point(2.0))
        assert slope_real(cat.kinked_log(), g, 0.01) == pytest.approx(-math.log(2) - 100, abs=1e-9)
        with pytest.raises(ValueError):
            slope_real(cat.kinked_log(), g, 0.0)

    @given(st.floats(0.2, 2 * math.pi - 0.2), st.floats(-2, 2))
    @settings(max_examples=50)
    def test_circle_angle_square(self, theta0, v):
        c = Circle()
        t = c.tangent(c.point(theta0), v)
        res = real_directional_derivative(cat.angle_sq(), c.geodesic(t))
        assert res.converged
        assert res.value == pytest.approx(-2 * (theta0 - HALF_PI) * v, abs=1e-6)

    @given(st.floats(0.2, 3), st.floats(0.2, 3), st.floats(-0.9, 0.9),
           st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
    @settings(max_examples=50)
    def test_spd_logdet_is_trace(self, a, c, r, v11, v12, v22):
        p = np.array([[a, r * math.sqrt(a * c)], [r * math.sqrt(a * c), c]])
        v = np.array([[v11, v12], [v12, v22]])
        s2 = Spd2()
        res = real_directional_derivative(cat.logdet(), s2.geodesic(s2.tangent(spd(p), v)))
        assert res.converged
        assert res.value == pytest.approx(np.trace(np.linalg.solve(p, v)), abs=1e-6)

    def test_kink_one_sided(self):
        r1 = Euclidean(1)
        x0 = r1.point(0.0)
        d = real_deriv_at(cat.kinked_line())
        assert d(r1.tangent(x0, 1.0)).value == pytest.approx(-1)
        assert d(r1.tangent(x0, -1.0)).value == pytest.approx(0, abs=1e-12)


class TestGhDerivative:
    def test_spd_example(self):
        s2 = Spd2()
        g = s2.segment(spd(0.5 * np.eye(2)), spd(np.eye(2)))
        res = gh_directional_derivative(cat.spd_logdet(), g)
        assert res.kind is GhKind.CONVERGED
        assert res.value.cw == pytest.approx((LN4, 2 * LN4**2), abs=1e-6)
        assert res.signed_width.value == pytest.approx(-2 * LN4**2, abs=1e-6)

    @given(st.floats(-3, 3), st.floats(0.05, 0.9))
    @settings(max_examples=40)
    def test_channels_agree_with_real_derivatives(self, x0, v):
        r1 = Euclidean(1)
        f = cat.square_unit()
        g = r1.geodesic(r1.tangent(r1.point(x0), v))
        res = gh_directional_derivative(f, g)
        dc = real_directional_derivative(f.center, g).value
        dw = real_directional_derivative(f.width, g).value
        assert hausdorff(res.value, from_cw(dc, abs(dw))) <= 1e-6

    def test_slope_family(self):
        r1 = Euclidean(1)
        g = r1.geodesic(r1.tangent(r1.point(0.0), 1.0))
        for s in (1.0, 0.25, 1e-3):
            assert hausdorff(slope_gh(cat.square_unit(), g, s), from_cw(s, 0)) < 1e-12

    def test_center_divergence_classified(self):
        pr = PositiveReals()
        f = Ivf(pr, cat.kinked_log(), RealFn(pr, lambda p: 1.0))
        res = gh_directional_derivative(f, pr.segment(pr.point(1.0), pr.point(2.0)))
        assert res.kind is GhKind.CENTER_DIVERGED

    def test_tracked_circle(self):
        rep = tracked_derivative(cat.circle_tracked())
        assert rep.track_limit(Track.RATIONAL, "width") == pytest.approx(HALF_PI, abs=1e-6)
        assert rep.track_limit(Track.IRRATIONAL, "width") == pytest.approx(-HALF_PI, abs=1e-6)
        assert not rep.width_exists and rep.center_exists and rep.gh_exists

    def test_tracked_spd_endpoints(self):
        rep = tracked_derivative(cat.spd_endpoint_tracked())
        assert not rep.lower_exists and not rep.upper_exists and rep.gh_exists
        for t in Track:
            assert rep.gh[t].lo == pytest.approx(0, abs=1e-6)
            assert rep.gh[t].hi == pytest.approx(LN4, abs=1e-6)


class TestStructural:
    @given(st.floats(0.3, 2.5), st.lists(st.floats(0, 10), min_size=1, max_size=4))
    @settings(max_examples=30)
    def test_homogeneity_spd(self, scale, lambdas):
        s2 = Spd2()
        x = spd(scale * np.eye(2))
        v = s2.tangent(x, [[1.0, 0.3], [0.3, -0.5]])
        assert homogeneity_check(gh_deriv_at(cat.spd_logdet()), v, lambdas).holds
        assert homogeneity_check(real_deriv_at(cat.logdet_sq()), v, lambdas).holds

    def test_homogeneity_rejects_negative_lambda(self):
        s2 = Spd2()
        v = s2.tangent(spd(np.eye(2)), np.eye(2))
        with pytest.raises(ValueError):
            homogeneity_check(real_deriv_at(cat.logdet()), v, [-1.0])

    def test_homogeneity_needs_derivative(self):
        pr = PositiveReals()
        v = pr.tangent(pr.point(1.0), 1.0)
        with pytest.raises(DerivativeMissing):
            homogeneity_check(real_deriv_at(cat.kinked_log()), v, [1.0])

    def test_homogeneity_detects_failure(self):
        r1 = Euclidean(1)
        v = r1.tangent(r1.point(0.0), 1.0)
        fake = lambda t: LimitResult(LimitKind.CONVERGED, value=t.vec[0] ** 2)
        assert not homogeneity_check(fake, v, [2.0]).holds

    @given(st.floats(-3, 3), st.floats(-3, 3))
    @settings(max_examples=30)
    def test_linearity(self, a1, a2):
        c = Circle()
        g = c.segment(c.point(HALF_PI), c.point(2.5))
        assert linearity_check(cat.log_bump(), cat.angle_sq(), a1, a2, g, tol=1e-5).holds
