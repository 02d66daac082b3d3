import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ghdiff import catalog as cat
from ghdiff.convexity import (
    SampleGrid,
    circle_arcs,
    circle_targets,
    convex_at,
    convex_on,
    cw_convex_at,
    default_s_params,
    first_order_check_ivf,
    first_order_check_real,
    monotone_q_check,
    width_monotone_check,
)
from ghdiff.errors import DerivativeMissing
from ghdiff.manifolds import TWO_PI, Circle, Euclidean, PositiveReals, Spd2, spd

HALF_PI = math.pi / 2
S = default_s_params()
CATALOG = cat.catalog()


def grid_for(entry, s_params=S):
    return SampleGrid(entry.targets, s_params)


def test_default_s_params():
    assert S[0] == pytest.approx(0.1) and S[-1] == pytest.approx(0.9)
    assert 0.5 in default_s_params(4)
    with pytest.raises(ValueError):
        SampleGrid([], [0.0])


@pytest.mark.parametrize("key", sorted(CATALOG))
def test_catalog_truth_matches_falsifier(key):
    entry = CATALOG[key]
    check = cw_convex_at if entry.interval_valued else convex_at
    v = check(entry.fn, entry.base, grid_for(entry), worst=True)
    assert v.holds == entry.convex_at_base, str(v)


@pytest.mark.parametrize("key", [k for k, e in CATALOG.items() if e.convex_at_base])
def test_supergrid_never_finds_fewer_violations(key):
    # convex entries stay clean on a denser grid; the falsifier is sound on them
    entry = CATALOG[key]
    check = cw_convex_at if entry.interval_valued else convex_at
    dense = tuple(np.round(np.linspace(0.02, 0.98, 49), 12))
    assert check(entry.fn, entry.base, grid_for(entry, dense)).holds


def test_violation_persists_on_supergrid():
    f, i = cat.log_bump(), Circle().point(HALF_PI)
    small = convex_at(f, i, SampleGrid(circle_targets(17), S), worst=True)
    big = convex_at(f, i, SampleGrid(circle_targets(33), default_s_params(17)), worst=True)
    assert not small.holds and not big.holds
    assert big.witness.gap >= small.witness.gap - 1e-12


def test_witness_values_are_real_evaluations():
    c = Circle()
    f, i = cat.log_bump(), c.point(HALF_PI)
    v = convex_at(f, i, SampleGrid(circle_targets(), S), worst=True)
    w = v.witness
    geo = c.segment(i, w.target)
    assert w.lhs == f(geo(w.s))
    assert w.rhs == pytest.approx((1 - w.s) * f(i) + w.s * f(w.target))
    assert w.target.angle > 1.75 * math.pi and w.gap >= 0.003


def test_convex_at_a_point_but_not_on_the_line():
    r1 = Euclidean(1)
    g = cat.shifted_kinked_line()
    assert CATALOG["shifted_kinked_line"].convex_at_base
    v = convex_on(g, [(r1.point(-1.0), r1.point(1.0))], [0.5])
    assert not v.holds and v.witness.gap == pytest.approx(0.5)
    assert convex_on(g, [(r1.point(1.0), r1.point(3.0))], S).holds
    bad = cat.log_bump()
    c = Circle()
    assert not convex_on(bad, [(c.point(HALF_PI), c.point(TWO_PI))], [0.5]).holds


def test_width_channel_is_tagged():
    i = Circle().point(HALF_PI)
    v = cw_convex_at(cat.angle_sq_log_bump(), i, SampleGrid(circle_targets(), S), worst=True)
    assert v.witness.channel == "width"


def test_both_arcs_factory():
    c = Circle()
    arcs = circle_arcs()(c.point(HALF_PI), c.point(math.pi))
    assert len(arcs) == 2
    assert {round(a.velocity.vec[0], 9) for a in arcs} == {round(-HALF_PI, 9), round(1.5 * math.pi, 9)}
    assert len(circle_arcs(both=False)(c.point(1.0), c.point(2.0))) == 1


class TestSlopeMonotonicity:
    @pytest.mark.parametrize("key", [k for k, e in CATALOG.items() if e.convex_at_base and not e.interval_valued])
    def test_real_convex_entries(self, key):
        entry = CATALOG[key]
        for x in entry.targets:
            if x != entry.base:
                assert monotone_q_check(entry.fn, entry.base.manifold.segment(entry.base, x), S, 1e-9).holds

    def test_nonconvex_can_fail(self):
        c = Circle()
        geo = c.segment(c.point(HALF_PI), c.point(TWO_PI))
        assert not monotone_q_check(cat.log_bump(), geo, S, 1e-9).holds

    def test_interval_slopes(self):
        r1 = Euclidean(1)
        geo = r1.geodesic(r1.tangent(r1.point(0.0), 1.0))
        assert monotone_q_check(cat.square_unit(), geo, S).holds

    def test_grid_must_increase(self):
        r1 = Euclidean(1)
        geo = r1.geodesic(r1.tangent(r1.point(0.0), 1.0))
        with pytest.raises(ValueError):
            monotone_q_check(cat.square_unit(), geo, [0.5, 0.1])


class TestImplicationChain:
    """On convex smooth entries the first-order inequality follows from convexity."""

    @pytest.mark.parametrize("key", ["angle_sq", "logdet", "logdet_sq"])
    def test_real(self, key):
        entry = CATALOG[key]
        assert convex_at(entry.fn, entry.base, grid_for(entry)).holds
        assert first_order_check_real(entry.fn, entry.base, grid_for(entry)).holds

    def test_interval_with_nondecreasing_width(self):
        entry = CATALOG["circle_unit_sq"]
        for x in entry.targets:
            geo = entry.base.manifold.segment(entry.base, x)
            assert width_monotone_check(entry.fn, geo, np.linspace(0, 1, 11)).holds
        assert first_order_check_ivf(entry.fn, entry.base, grid_for(entry)).holds

    def test_decreasing_width_breaks_first_order(self):
        s2 = Spd2()
        f, x, y = cat.spd_logdet(), spd(0.5 * np.eye(2)), spd(np.eye(2))
        assert not width_monotone_check(f, s2.segment(x, y), np.linspace(0, 1, 11)).holds
        v = first_order_check_ivf(f, x, SampleGrid([y], [0.5]))
        assert not v.holds

    def test_missing_derivative(self):
        pr = PositiveReals()
        with pytest.raises(DerivativeMissing):
            first_order_check_real(cat.kinked_log(), pr.point(1.0), SampleGrid([pr.point(2.0)], [0.5]))

    @given(st.floats(0.05, 6.2))
    @settings(max_examples=25, deadline=None)
    def test_first_order_on_random_target(self, theta):
        c = Circle()
        grid = SampleGrid([c.point(theta)], [0.5])
        assert first_order_check_real(cat.log_bump(), c.point(HALF_PI), grid).holds
        assert first_order_check_ivf(cat.angle_sq_log_bump(), c.point(HALF_PI), grid).holds
