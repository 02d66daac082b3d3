import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ghdiff.errors import BadTangent, NotPositiveDefinite, OffManifold
from ghdiff.manifolds import (
    TWO_PI,
    Circle,
    Cylinder,
    Euclidean,
    PositiveReals,
    Spd2,
    det2,
    geodesic_from_velocity,
    spd,
    spd2_eig,
    spd2_fun,
)

angles = st.floats(0, TWO_PI, allow_nan=False)


def fd_velocity(geo, h=1e-6):
    """Central difference of chart coordinates at s=0 (one-sided if the domain starts at 0)."""
    x0 = np.array(geo.base.coords)
    if geo.domain[0] < 0:
        return (np.array(geo(h).coords) - np.array(geo(-h).coords)) / (2 * h)
    return (np.array(geo(h).coords) - x0) / h


@st.composite
def spd_mats(draw):
    a = draw(st.floats(0.05, 5))
    c = draw(st.floats(0.05, 5))
    b = draw(st.floats(-0.95, 0.95)) * math.sqrt(a * c)
    return np.array([[a, b], [b, c]])


@st.composite
def sym_mats(draw):
    a, b, c = (draw(st.floats(-2, 2)) for _ in range(3))
    return np.array([[a, b], [b, c]])


class TestEuclidean:
    def test_line(self):
        r2 = Euclidean(2)
        g = r2.segment(r2.point(0, 0), r2.point(2, 4))
        assert g(0.5).coords == (1.0, 2.0)
        assert g.velocity.vec == (2.0, 4.0)

    def test_dimension_checked(self):
        with pytest.raises(OffManifold):
            Euclidean(2).point(1.0)


class TestCircle:
    def test_velocity_convention(self):
        c = Circle()
        g = c.geodesic(c.tangent(c.point(math.pi / 2), -math.pi / 2))
        assert g(0.5).angle == pytest.approx(3 * math.pi / 4)
        assert c.chart_velocity(g.velocity) == (math.pi / 2,)

    def test_closed_chart_keeps_two_pi(self):
        assert Circle().point(TWO_PI).angle == TWO_PI
        assert Circle().point(-0.5).angle == pytest.approx(TWO_PI - 0.5)

    @given(angles, st.floats(-3, 3).filter(lambda v: abs(v) > 1e-3))
    def test_chart_velocity_matches_finite_difference(self, theta, v):
        c = Circle()
        theta = min(max(theta, 0.1), TWO_PI - 0.1)
        g = c.geodesic(c.tangent(c.point(theta), v))
        assert fd_velocity(g)[0] == pytest.approx(c.chart_velocity(g.velocity)[0], abs=1e-5)

    @given(angles, angles)
    def test_segment_endpoints(self, a, b):
        c = Circle()
        g = c.segment(c.point(a), c.point(b))
        assert c.chart_distance(g(1.0), c.point(b)) < 1e-9
        assert g(0.0) == c.point(a)

    def test_other_arc(self):
        c = Circle()
        x, y = c.point(math.pi / 2), c.point(math.pi)
        g = c.segment(x, y, delta=math.pi / 2 - TWO_PI)
        assert c.chart_distance(g(1.0), y) < 1e-12
        with pytest.raises(OffManifold):
            c.segment(x, y, delta=1.0)


class TestPositiveReals:
    def test_geodesic_formula(self):
        pr = PositiveReals()
        g = pr.geodesic(pr.tangent(pr.point(2.0), 3.0))
        assert g(0.7).value == pytest.approx(2.0 * math.exp(1.5 * 0.7))

    @given(st.floats(0.01, 100), st.floats(0.01, 100), st.floats(0, 1))
    def test_segment_is_geometric_interpolation(self, x, y, s):
        pr = PositiveReals()
        g = pr.segment(pr.point(x), pr.point(y))
        assert g(s).value == pytest.approx(x ** (1 - s) * y ** s, rel=1e-9)

    def test_rejects_nonpositive(self):
        with pytest.raises(OffManifold):
            PositiveReals().point(0.0)


class TestSpd:
    def test_eig_and_functions(self):
        m = np.array([[2.0, 0.5], [0.5, 1.0]])
        l1, l2, _ = spd2_eig(m)
        assert (l1, l2) == pytest.approx(sorted(np.linalg.eigvalsh(m), reverse=True))
        root = spd2_fun(m, math.sqrt)
        assert root @ root == pytest.approx(m)
        assert det2(m) == pytest.approx(1.75)

    def test_not_pd(self):
        with pytest.raises(NotPositiveDefinite):
            spd2_fun(np.array([[1.0, 0.0], [0.0, -1.0]]), math.sqrt)
        with pytest.raises(OffManifold):
            spd([[1.0, 2.0], [2.0, 1.0]])

    @given(spd_mats(), spd_mats(), st.floats(0, 1))
    def test_segment_stays_pd_and_hits_endpoints(self, p, q, s):
        g = Spd2().segment(spd(p), spd(q))
        assert np.all(np.linalg.eigvalsh(g(s).matrix) > 0)
        assert g(1.0).matrix == pytest.approx(q, rel=1e-7, abs=1e-9)

    @given(spd_mats(), spd_mats(), st.floats(0, 1))
    def test_log_det_is_affine_along_geodesic(self, p, q, s):
        g = Spd2().segment(spd(p), spd(q))
        want = (1 - s) * math.log(det2(p)) + s * math.log(det2(q))
        assert math.log(det2(g(s).matrix)) == pytest.approx(want, abs=1e-8)

    @given(spd_mats(), sym_mats())
    def test_velocity_matches_finite_difference(self, p, v):
        s2 = Spd2()
        g = geodesic_from_velocity(s2, spd(p), s2.tangent(spd(p), v))
        assert fd_velocity(g) == pytest.approx(v.ravel(), abs=1e-4)

    def test_doubling(self):
        g = Spd2().segment(spd(np.eye(2)), spd(2 * np.eye(2)))
        assert g(0.5).matrix == pytest.approx(math.sqrt(2) * np.eye(2))
        assert g.velocity.matrix == pytest.approx(math.log(2) * np.eye(2))


class TestCylinder:
    def test_axis_geodesics(self):
        cyl = Cylinder()
        x0 = cyl.point(0.0, 0.0)
        up = cyl.geodesic(cyl.tangent(x0, 0.0, 2.0))
        around = cyl.geodesic(cyl.tangent(x0, 1.0, 0.0))
        assert up(0.5).coords == (0.0, 1.0)
        assert around(math.pi / 2).coords == pytest.approx((math.pi / 2, 0.0))
        assert Cylinder.ambient(around(math.pi)) == pytest.approx((-1.0, 0.0, 0.0), abs=1e-12)

    def test_mixed_direction_rejected(self):
        cyl = Cylinder()
        with pytest.raises(BadTangent):
            cyl.tangent(cyl.point(0.0, 0.0), 1.0, 1.0)


def test_geodesic_domain_guard():
    c = Circle()
    g = c.segment(c.point(0.0), c.point(1.0))
    with pytest.raises(ValueError):
        g(1.5)
    with pytest.raises(OffManifold):
        Spd2().segment(c.point(0.0), c.point(1.0))
