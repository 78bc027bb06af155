"""Tests for Lax admissibility: sides, regions, L3 and admissible arcs."""

import numpy as np
import pytest

from src.application.oracle import oracle_fd_speed
from src.domain.curves import (
    HugoniotCurve,
    curve_through_point,
    eval_curve,
    intersect_son,
    speed_along,
)
from src.domain.errors import (
    DegenerateDenominator,
    MissingSidePoint,
    NoRealRoots,
    SecondaryBifurcation,
    UnsupportedCurve,
    ZAxisDegenerate,
)
from src.domain.lax import (
    ArcClass,
    ArcSegment,
    CharacteristicSide,
    EndKind,
    RegionLabel,
    SonPrimeSide,
    StartKind,
    arc_is_monotone,
    classify_characteristic_point,
    classify_sonprime_point,
    extract_arcs,
    interval_condition,
    l3_closed_form,
    l3_interval,
    l3_numeric,
    lax_check,
    local_side_derivatives,
    region_classify,
    region_table,
    side_points,
    sign_vector,
    sonic_prime_fold_y,
    sonprime_characteristic_pair,
    sonprime_point,
    sonprime_speed,
    sonprime_speed_derivative,
    sonprime_t0,
)
from src.domain.model import ChartPoint, speed_at
from src.domain.surfaces import sonprime_value


class TestCharacteristicSides:
    """Slow and fast parts of C and the local behaviour of curves there."""

    def test_classification(self, params):
        assert classify_characteristic_point(params, 0.0, -1.0) is CharacteristicSide.SLOW
        assert classify_characteristic_point(params, 0.0, 0.5) is CharacteristicSide.FAST
        assert classify_characteristic_point(params, 3.0, 0.0) is CharacteristicSide.FOLD

    def test_local_derivatives_hand_values(self, params):
        assert local_side_derivatives(params, 0.0, 0.0) == pytest.approx((params.c, 0.0))
        assert local_side_derivatives(params, 0.0, -1.0)[1] == pytest.approx(2.0)

    @pytest.mark.parametrize("z0, t0", [(0.0, -1.0), (0.4, -0.3), (-1.1, 0.6), (1.7, 0.2)])
    def test_local_derivatives_match_finite_differences(self, any_params, z0, t0):
        curve = curve_through_point(any_params, ChartPoint(z=z0, t=t0, y=0.0))
        ds_dz, dy_dz = local_side_derivatives(any_params, z0, t0)
        h = 1e-5
        fd_y = (eval_curve(any_params, curve, z0 + h).y - eval_curve(any_params, curve, z0 - h).y) / (2.0 * h)
        assert ds_dz == pytest.approx(oracle_fd_speed(any_params, curve, z0), rel=1e-6, abs=1e-6)
        assert dy_dz == pytest.approx(fd_y, rel=1e-6, abs=1e-6)


class TestSonPrimePoints:
    """Son' points over (z0, Y0) and their closed forms."""

    @pytest.mark.parametrize(
        "z0, y0, expected",
        [(1.0, 1.0, 0.0), (1.0, 4.0, 0.5), (0.5, 1.0, -0.6), (0.5, 2.0, -2.0 / 3.0)],
    )
    def test_t0_hand_values(self, params, z0, y0, expected):
        assert sonprime_t0(params, z0, y0) == pytest.approx(expected)

    def test_t0_lands_on_sonprime(self, any_params, rng):
        for z0, y0 in rng.uniform(-3.0, 3.0, size=(100, 2)):
            if abs(z0) < 1e-2:
                continue
            cp = sonprime_point(any_params, z0, y0)
            assert sonprime_value(any_params, cp.z, cp.t, cp.y) == pytest.approx(0.0, abs=1e-9 * (1.0 + abs(z0)) ** 6)

    def test_z_axis_degenerate(self, params):
        with pytest.raises(ZAxisDegenerate):
            sonprime_t0(params, 0.0, 1.0)
        with pytest.raises(ZAxisDegenerate):
            sonprime_speed(params, 0.0, 1.0)

    def test_sides(self, params):
        assert sonic_prime_fold_y(params, 1.0) == pytest.approx(-0.2)
        assert classify_sonprime_point(params, 1.0, 1.0) is SonPrimeSide.SLOW_SIDE
        assert classify_sonprime_point(params, 1.0, -1.0) is SonPrimeSide.FAST_SIDE
        assert classify_sonprime_point(params, -1.0, -1.0) is SonPrimeSide.SLOW_SIDE
        assert classify_sonprime_point(params, 0.0, 1.0) is SonPrimeSide.ON_BOUNDARY

    def test_speed_hand_value(self, params):
        assert sonprime_speed(params, 0.5, 2.0) == pytest.approx(0.883333333333, rel=1e-10)

    def test_speed_matches_point_speed(self, any_params, rng):
        for z0, y0 in rng.uniform(-2.5, 2.5, size=(100, 2)):
            if abs(z0) < 1e-2:
                continue
            cp = sonprime_point(any_params, z0, y0)
            assert sonprime_speed(any_params, z0, y0) == pytest.approx(speed_at(any_params, cp), rel=1e-9, abs=1e-9)

    def test_second_characteristic_point_has_same_speed(self, params):
        z_c1, z_c2 = sonprime_characteristic_pair(params, 0.5, 2.0)
        assert z_c1 == pytest.approx(1.75)
        assert z_c2 == pytest.approx(-1.0 / 5.5)
        curve = curve_through_point(params, sonprime_point(params, 0.5, 2.0))
        for z in (z_c1, z_c2):
            assert eval_curve(params, curve, z).y == pytest.approx(0.0, abs=1e-12)
        assert speed_along(params, curve, z_c2) == pytest.approx(sonprime_speed(params, 0.5, 2.0), rel=1e-9)

    @pytest.mark.parametrize("z0, y0, expected", [(1.0, 1.0, 1.0), (0.5, 2.0, -0.4)])
    def test_speed_derivative_hand_values(self, params, z0, y0, expected):
        assert sonprime_speed_derivative(params, z0, y0) == pytest.approx(expected)

    def test_speed_derivative_matches_finite_differences(self, params):
        for z0, y0 in [(0.5, 2.0), (1.3, -0.4), (-0.8, 1.7)]:
            curve = curve_through_point(params, sonprime_point(params, z0, y0))
            assert sonprime_speed_derivative(params, z0, y0) == pytest.approx(
                oracle_fd_speed(params, curve, z0), rel=1e-6, abs=1e-6
            )


class TestRegions:
    """Sign-vector lookup of the twelve regions."""

    @pytest.mark.parametrize(
        "y, expected",
        [(1.0, RegionLabel.BELOW_BRIDGE), (3.0, RegionLabel.ABOVE_BRIDGE), (0.0, RegionLabel.BOUNDARY)],
    )
    def test_hand_values(self, params, y, expected):
        assert region_classify(params, ChartPoint(z=0.0, t=0.0, y=y)) is expected

    def test_sign_vector(self, params):
        assert sign_vector(params, ChartPoint(z=0.0, t=0.0, y=1.0)) == (1, -1, -1, 1)
        assert sign_vector(params, ChartPoint(z=0.0, t=0.0, y=2.0)) is None

    def test_table_has_twelve_labels(self):
        table = region_table()
        labels = set(table.values())
        assert len(labels) == 12
        assert RegionLabel.BOUNDARY not in labels
        with pytest.raises(TypeError):
            table[(1, 1, 1, 1)] = RegionLabel.ABOVE_BRIDGE

    def test_lateral_regions_far_out(self, params):
        # for z > 0 a large negative t makes son and son' both positive
        label = region_classify(params, ChartPoint(z=1.5, t=-3.0, y=0.5))
        assert label is RegionLabel.LATERAL_ZPLUS_YPLUS


class TestSidePoints:
    """Slow and fast C-intersections of the curves through a point."""

    def test_point_on_slow_characteristic(self, params):
        sides = side_points(params, ChartPoint(z=0.3, t=-0.5, y=0.0))
        assert sides.slow.z == pytest.approx(0.3, abs=1e-9)
        assert sides.slow.t == pytest.approx(-0.5, abs=1e-9)
        assert sides.fast.t > 0.0
        assert sides.slow_prime.z == pytest.approx(0.3, abs=1e-9)

    def test_missing_inside_tf(self, params):
        with pytest.raises(MissingSidePoint):
            side_points(params, ChartPoint(z=0.0, t=0.0, y=-1.0))
        sides = side_points(params, ChartPoint(z=0.0, t=0.0, y=-1.0), strict=False)
        assert sides.slow is None and sides.fast is None

    def test_sonprime_point_with_y_equal_c(self, params):
        cp = ChartPoint(z=1.0, t=0.0, y=1.0)
        with pytest.raises(SecondaryBifurcation):
            side_points(params, cp)
        sides = side_points(params, cp, strict=False)
        assert sides.slow is not None
        assert sides.slow_prime is None
        assert set(sides.to_dict()) == {"U_s", "U_f", "U'_s", "U'_f"}


class TestL3:
    """Closed form, direct numeric test and the interval condition."""

    @pytest.mark.parametrize("z0, expected", [(0.5, True), (0.7, False), (0.0, True)])
    def test_closed_form(self, params, z0, expected):
        assert l3_closed_form(params, z0) is expected

    @pytest.mark.parametrize("z0, expected", [(0.5, True), (1.0, False)])
    def test_numeric_agrees(self, params, z0, expected):
        assert l3_numeric(params, z0, 2.0) is expected
        assert l3_closed_form(params, z0) is expected

    def test_numeric_secondary_at_y_equal_c(self, params):
        with pytest.raises(SecondaryBifurcation):
            l3_numeric(params, 0.5, params.c)

    @pytest.mark.parametrize("z0", [0.5, 1.0])
    def test_interval_form_agrees(self, params, z0):
        assert l3_interval(params, z0, 2.0) is l3_numeric(params, z0, 2.0)

    def test_interval_condition_hand_values(self):
        assert interval_condition(1.0, 0.0, 0.0, 1.0, 1.0, 0.0, -1.0, 0.0) is True
        assert interval_condition(1.0, 0.0, 0.0, 1.0, 1.0, 0.0, -1.0, 2.0) is False

    def test_interval_condition_matches_direct_evaluation(self, rng):
        checked = 0
        for a, b, c_, d, f, g, h, s in rng.uniform(-3.0, 3.0, size=(2000, 8)):
            disc = g * g - 4.0 * f * h
            if disc <= 1e-6 or abs(f) < 1e-3:
                continue
            z1, z2 = np.roots([f, g, h]).real
            e1, e2 = c_ * z1 + d, c_ * z2 + d
            if min(abs(e1), abs(e2)) < 1e-3:
                continue
            v1, v2 = (a * z1 + b) / e1, (a * z2 + b) / e2
            if min(abs(s - v1), abs(s - v2)) < 1e-6:
                continue
            assert interval_condition(a, b, c_, d, f, g, h, s) == (min(v1, v2) < s < max(v1, v2))
            checked += 1
        assert checked > 500

    def test_interval_condition_errors(self):
        with pytest.raises(NoRealRoots):
            interval_condition(1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0)
        with pytest.raises(DegenerateDenominator):
            interval_condition(1.0, 0.0, 1.0, -1.0, 1.0, 0.0, -1.0, 0.0)


class TestArcs:
    """Admissible arc extraction."""

    def test_local_arc_from_slow_characteristic(self, params):
        curve = curve_through_point(params, ChartPoint(z=0.0, t=-1.0, y=0.0))
        arcs = extract_arcs(params, curve)
        local = [a for a in arcs if a.classification is ArcClass.LOCAL]
        assert len(local) == 1
        arc = local[0]
        assert arc.start_kind is StartKind.CS
        assert arc.z_start == pytest.approx(0.0, abs=1e-9)
        assert arc.z_end < arc.z_start
        assert eval_curve(params, curve, arc.z_start - 1e-3).y < 0.0
        assert arc_is_monotone(params, arc)

    @pytest.mark.parametrize("bumped, expected", [(5, False), (9, True)])
    def test_monotone_slack_only_at_ends(self, params, mocker, bumped, expected):
        arc = ArcSegment(
            curve=HugoniotCurve(k=1.0, l=0.0),
            z_start=0.0,
            z_end=1.0,
            start_kind=StartKind.CS,
            end_kind=EndKind.INFINITY,
            classification=ArcClass.LOCAL,
        )
        speeds = list(np.linspace(1.0, 0.0, 10))
        speeds[bumped] = speeds[bumped - 1] + 1e-14
        mocker.patch("src.domain.lax.speed_along", side_effect=speeds)
        assert arc_is_monotone(params, arc, samples=10) is expected

    def test_tangency_gives_no_local_arc(self, params):
        curve = curve_through_point(params, ChartPoint(z=1.0, t=0.0, y=0.0))
        arcs = extract_arcs(params, curve)
        assert not [a for a in arcs if a.classification is ArcClass.LOCAL]

    def test_non_local_arc_from_sonprime_slow_point(self, params):
        cp = sonprime_point(params, 0.5, 1.0)
        curve = curve_through_point(params, cp)
        arcs = extract_arcs(params, curve)
        starting_here = [
            a for a in arcs if a.classification is ArcClass.NON_LOCAL and abs(a.z_start - 0.5) < 1e-6
        ]
        assert len(starting_here) == 1
        assert starting_here[0].start_kind is StartKind.SON_PRIME_S
        # ds/dz < 0 at the start, so the arc runs towards larger z
        assert starting_here[0].z_end > 0.5

    def test_secondary_curve_rejected(self, params):
        with pytest.raises(SecondaryBifurcation):
            extract_arcs(params, HugoniotCurve(k=0.0, l=-2.0))

    def test_prime_curve_rejected(self, params):
        with pytest.raises(UnsupportedCurve):
            extract_arcs(params, HugoniotCurve(k=1.0, l=0.0, prime=True))

    def test_arcs_are_valid(self, params, rng):
        for k, l in rng.uniform(-4.0, 4.0, size=(60, 2)):
            curve = HugoniotCurve(k=k, l=l)
            if abs(l + 2.0) < 1e-3:
                continue
            son_roots = intersect_son(params, curve).roots
            for arc in extract_arcs(params, curve):
                assert arc_is_monotone(params, arc)
                low, high = sorted(arc.z_interval)
                trim = 1e-6
                assert not [z for z in son_roots if low + trim < z < high - trim]
                if arc.end_kind is EndKind.INFINITY:
                    assert abs(arc.z_end) == pytest.approx(50.0)
                data = arc.to_dict(params, samples=5)
                assert len(data["samples"]) == 5

    def test_lax_check_on_local_arc(self, params):
        curve = curve_through_point(params, ChartPoint(z=0.0, t=-1.0, y=0.0))
        arc = [a for a in extract_arcs(params, curve) if a.classification is ArcClass.LOCAL][0]
        z = arc.z_start + 0.05 * (arc.z_end - arc.z_start)
        check = lax_check(params, curve, z)
        assert check.speed_derivative > 0.0
        assert check.speed == pytest.approx(speed_along(params, curve, z))
