"""Tests for Hugoniot curves and their intersections with the named surfaces."""

import numpy as np
import pytest

from src.domain.curves import (
    HugoniotCurve,
    characteristic_pair,
    critical_speed_polynomial,
    curve_from_kl,
    curve_through_point,
    eval_curve,
    eval_curve_array,
    eval_through_point,
    intersect_characteristic,
    intersect_son,
    intersect_sonprime,
    is_secondary,
    kl_from_point,
    sample_curve,
    son_polynomial,
    speed_along,
    speed_along_closed_form,
    speed_gap,
    speed_polynomials,
    through_point_coefficients,
)
from src.domain.model import ChartPoint, chart_to_blowup, manifold_residual, speed_at
from src.domain.surfaces import son_value, sonprime_value


class TestEvalCurve:
    """Curve evaluation and the invariants (k, l)."""

    def test_value_at_z_zero(self, params):
        cp = eval_curve(params, HugoniotCurve(k=0.0, l=-2.0), 0.0)
        assert cp.y == pytest.approx(-2.0)
        assert cp.t == pytest.approx(0.0)

    def test_prime_curve_reflects_y(self, params):
        plain = eval_curve(params, HugoniotCurve(k=1.3, l=0.4), 0.7)
        prime = eval_curve(params, HugoniotCurve(k=1.3, l=0.4, prime=True), 0.7)
        assert prime.t == plain.t
        assert prime.y == -plain.y

    def test_fold_point_invariants(self, params):
        assert kl_from_point(params, ChartPoint(z=1.0, t=0.0, y=0.0)) == pytest.approx((2.0, -1.0))
        assert kl_from_point(params, ChartPoint(z=0.0, t=0.0, y=0.0)) == pytest.approx((0.0, 0.0))

    def test_curve_passes_through_its_point(self, any_params, random_points):
        for cp in random_points[:50]:
            for prime in (False, True):
                curve = curve_through_point(any_params, cp, prime=prime)
                back = eval_curve(any_params, curve, cp.z)
                assert back.t == pytest.approx(cp.t, rel=1e-10, abs=1e-10)
                assert back.y == pytest.approx(cp.y, rel=1e-10, abs=1e-10)

    def test_curve_points_on_manifold(self, params, rng):
        for k, l, z in rng.uniform(-5.0, 5.0, size=(200, 3)):
            cp = eval_curve(params, curve_from_kl(params, k, l), z)
            bp = chart_to_blowup(params, cp)
            scale = 1.0 + abs(z * z - 1.0) * abs(bp.v1) + abs(z * bp.u_tilde)
            assert abs(manifold_residual(params, bp)) <= 1e-12 * scale

    def test_array_matches_scalar(self, params):
        curve = HugoniotCurve(k=0.8, l=-0.3)
        z = np.linspace(-3.0, 3.0, 41)
        t, y = eval_curve_array(params, curve, z)
        for zi, ti, yi in zip(z, t, y):
            cp = eval_curve(params, curve, float(zi))
            assert (ti, yi) == pytest.approx((cp.t, cp.y), rel=1e-13, abs=1e-13)

    def test_expanded_form_agrees(self, any_params, random_points):
        for cp in random_points[:30]:
            for prime in (False, True):
                coeffs = through_point_coefficients(any_params, cp, prime)
                curve = curve_through_point(any_params, cp, prime)
                for z in (-2.0, -0.3, 0.0, 0.9, 4.0):
                    expanded = eval_through_point(any_params, coeffs, cp.z, z, prime)
                    direct = eval_curve(any_params, curve, z)
                    assert expanded.t == pytest.approx(direct.t, rel=1e-9, abs=1e-9)
                    assert expanded.y == pytest.approx(direct.y, rel=1e-9, abs=1e-9)


class TestSpeedAlong:
    """Speed along a curve and its closed forms."""

    def test_fold_point_speed(self, params):
        curve = curve_through_point(params, ChartPoint(z=1.0, t=0.0, y=0.0))
        assert speed_along(params, curve, 1.0) == pytest.approx(1.0)

    def test_rational_form(self, any_params, rng):
        for k, l, z in rng.uniform(-4.0, 4.0, size=(100, 3)):
            curve = HugoniotCurve(k=k, l=l)
            numerator, denominator = speed_polynomials(any_params, curve)
            assert numerator(z) / denominator(z) == pytest.approx(
                speed_along(any_params, curve, z), rel=1e-10, abs=1e-10
            )

    def test_expanded_speed_agrees(self, params, random_points):
        for cp in random_points[:50]:
            curve = curve_through_point(params, cp)
            for z in (-1.5, 0.2, 2.5):
                assert speed_along_closed_form(params, cp, z) == pytest.approx(
                    speed_along(params, curve, z), rel=1e-9, abs=1e-9
                )

    def test_samples_carry_speed(self, params):
        curve = HugoniotCurve(k=1.0, l=0.5)
        samples = sample_curve(params, curve, np.linspace(-1.0, 1.0, 5))
        assert len(samples) == 5
        for s in samples:
            assert s.s == pytest.approx(speed_at(params, ChartPoint(z=s.z, t=s.t, y=s.y)))
        assert set(samples[0].to_dict()) == {"z", "t", "Y", "s"}


class TestCharacteristicIntersections:
    """Intersections with the characteristic plane Y = 0."""

    def test_fold_tangency_is_double(self, params):
        for z0 in (-1.2, 0.4, 2.0):
            curve = curve_through_point(params, ChartPoint(z=z0, t=0.0, y=0.0))
            roots = intersect_characteristic(params, curve)
            assert roots.multiplicities == (2,)
            assert roots.roots[0] == pytest.approx(z0, abs=1e-6)

    def test_hand_pair(self, params):
        curve = curve_through_point(params, ChartPoint(z=0.0, t=1.0, y=0.0))
        roots = intersect_characteristic(params, curve)
        assert roots.roots == pytest.approx((-1.0, 0.0), abs=1e-12)
        assert characteristic_pair(params, 0.0, 1.0) == pytest.approx((0.0, -1.0))

    def test_no_crossing_when_no_roots(self, params):
        curve = HugoniotCurve(k=0.0, l=-1.0)
        assert len(intersect_characteristic(params, curve)) == 0
        _, y = eval_curve_array(params, curve, np.linspace(-50.0, 50.0, 20001))
        assert np.all(y < 0.0)

    @pytest.mark.parametrize("z0, t0", [(0.0, 1.0), (0.5, -0.7), (-1.3, 0.4), (2.0, 1.5)])
    def test_speed_gap(self, params, z0, t0):
        curve = curve_through_point(params, ChartPoint(z=z0, t=t0, y=0.0))
        _, z1 = characteristic_pair(params, z0, t0)
        gap = speed_along(params, curve, z0) - speed_along(params, curve, z1)
        assert gap == pytest.approx(speed_gap(params, z0, t0), rel=1e-9, abs=1e-9)

    @pytest.mark.parametrize("z0, t0", [(0.0, 1.0), (0.5, -0.7), (-1.3, 0.4)])
    def test_point_with_positive_t_is_faster(self, params, z0, t0):
        curve = curve_through_point(params, ChartPoint(z=z0, t=t0, y=0.0))
        _, z1 = characteristic_pair(params, z0, t0)
        t1 = eval_curve(params, curve, z1).t
        s0, s1 = speed_along(params, curve, z0), speed_along(params, curve, z1)
        fast = s0 if t0 > 0 else s1
        slow = s1 if t0 > 0 else s0
        assert (t0 > 0) != (t1 > 0)
        assert fast > slow


class TestSonicIntersections:
    """Intersections with Son and Son'."""

    def test_son_roots_lie_on_son(self, params, rng):
        for k, l in rng.uniform(-5.0, 5.0, size=(50, 2)):
            curve = HugoniotCurve(k=k, l=l)
            for z in intersect_son(params, curve):
                cp = eval_curve(params, curve, z)
                assert abs(son_value(params, cp.z, cp.t, cp.y)) <= 1e-7 * (1.0 + z**6)

    def test_son_roots_are_speed_critical_points(self, params):
        curve = HugoniotCurve(k=4.0, l=0.0)
        critical = critical_speed_polynomial(params, curve)
        for z in intersect_son(params, curve):
            assert abs(critical(z)) <= 1e-8 * (1.0 + abs(z) ** 5)

    def test_son_polynomial_is_quartic(self, params):
        assert son_polynomial(params, HugoniotCurve(k=1.0, l=1.0)).degree() <= 4

    def test_sonprime_counts_even(self, params, rng):
        for k, l in rng.uniform(-5.0, 5.0, size=(200, 2)):
            count = intersect_sonprime(params, HugoniotCurve(k=k, l=l)).count_with_multiplicity
            assert count in (0, 2, 4)

    def test_sonprime_roots_lie_on_sonprime(self, params):
        curve = curve_through_point(params, ChartPoint(z=0.5, t=-0.6, y=1.0))
        roots = intersect_sonprime(params, curve)
        assert any(abs(z - 0.5) < 1e-8 for z in roots)
        for z in roots:
            cp = eval_curve(params, curve, z)
            assert abs(sonprime_value(params, cp.z, cp.t, cp.y)) <= 1e-7 * (1.0 + z**6)


class TestSecondary:
    def test_secondary_curve(self, params):
        assert is_secondary(params, HugoniotCurve(k=0.0, l=-2.0))
        assert not is_secondary(params, HugoniotCurve(k=0.0, l=0.0))

    def test_fold_curves_are_not_secondary(self, params):
        for z0 in (0.3, 1.0, 5.0):
            curve = curve_through_point(params, ChartPoint(z=z0, t=0.0, y=0.0))
            assert curve.l == pytest.approx(-2.0 * z0**2 / (z0**2 + 1.0))
            assert not is_secondary(params, curve)
