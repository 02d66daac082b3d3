import math

import pytest

from ghdiff import catalog as cat
from ghdiff.errors import NegativeWidth, OffManifold
from ghdiff.interval import Interval, from_cw
from ghdiff.ivf import Ivf, RealFn, Track, compose, eval_ivf, make_tracked, real_combo, single_track
from ghdiff.manifolds import Circle, Euclidean, Spd2, spd

R1 = Euclidean(1)


def test_evaluation_and_endpoints():
    f = Ivf.from_endpoints(R1, lambda p: p.value - 1, lambda p: p.value + 3)
    x = R1.point(2.0)
    assert eval_ivf(f, x) == Interval(1, 5)
    assert f.cw_at(x) == (3.0, 2.0)
    assert f.lower(x) == 1 and f.upper(x) == 5


def test_negative_width_reported_at_evaluation():
    f = Ivf.from_cw(R1, lambda p: 0.0, lambda p: p.value)
    assert f(R1.point(1.0)) == from_cw(0, 1)
    with pytest.raises(NegativeWidth):
        f(R1.point(-1.0))


def test_domain_mismatch():
    f = cat.log_bump()
    with pytest.raises(OffManifold):
        f(R1.point(0.0))
    with pytest.raises(OffManifold):
        compose(f, R1.segment(R1.point(0.0), R1.point(1.0)))
    with pytest.raises(OffManifold):
        real_combo(1, f, 1, cat.kinked_line())


def test_compose_and_combo():
    c = Circle()
    g = c.segment(c.point(math.pi / 2), c.point(math.pi))
    curve = compose(cat.angle_sq(), g)
    assert curve(0.5) == pytest.approx((math.pi / 4) ** 2)
    h = real_combo(2.0, cat.angle_sq(), -1.0, cat.log_bump())
    p = c.point(1.0)
    assert h(p) == pytest.approx(2 * cat.angle_sq()(p) - cat.log_bump()(p))


def test_catalog_values():
    x = spd([[0.5, 0.0], [0.0, 0.5]])
    assert cat.spd_logdet()(x).cw == pytest.approx((-math.log(4), math.log(4) ** 2))
    assert cat.square_unit()(R1.point(3.0)) == from_cw(9, 1)


def test_tracked_curves():
    tf = cat.circle_tracked()
    assert tf(Track.RATIONAL, 0.0) == tf(Track.IRRATIONAL, 0.0) == from_cw(0, math.pi / 2)
    assert tf(Track.RATIONAL, 1.0).width == pytest.approx(math.pi)
    assert tf(Track.IRRATIONAL, 1.0).width == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        make_tracked({Track.RATIONAL: lambda p: p}, cat.circle_quarter_arc())
    st = single_track(lambda s: s * s)
    assert st(Track.RATIONAL, 3.0) == st(Track.IRRATIONAL, 3.0) == 9.0


def test_spd_endpoint_tracks():
    tf = cat.spd_endpoint_tracked()
    rat = tf(Track.RATIONAL, 1.0)
    assert (rat.lo, rat.hi) == pytest.approx((0.0, 4.0))
    irr = tf(Track.IRRATIONAL, 0.5)
    assert irr.lo == pytest.approx(math.log(2))
    assert irr.hi == pytest.approx(math.log(2) ** 2 + 1)


def test_cylinder_piecewise_off_union():
    from ghdiff.manifolds import Cylinder

    cyl = Cylinder()
    f = cat.cylinder_piecewise()
    assert f(cyl.point(0.0, 2.0)) == 7.0
    assert f(cyl.point(math.pi / 2, 0.0)) == pytest.approx(math.e)
    with pytest.raises(OffManifold):
        f(cyl.point(1.0, 1.0))
