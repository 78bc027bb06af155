"""Tests for the flux model and the coordinate charts."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.domain.errors import NotOnManifold, ValidationError
from src.domain.model import (
    BlowupPoint,
    ChartPoint,
    ModelParams,
    StatePair,
    chart_from_blowup,
    chart_to_blowup,
    chart_to_states,
    flux_eval,
    manifold_residual,
    rh_residual,
    speed_at,
    speed_grid,
    speed_shift,
)

coordinate = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)


class TestModelParams:
    """Validation of the flux parameters."""

    def test_canonical_offsets(self):
        params = ModelParams.canonical(b1=3.0, c=2.0)
        assert (params.a1, params.a2, params.a3, params.a4) == (0.0, 0.0, 2.0, 0.0)

    @pytest.mark.parametrize("b1", [1.0, 0.5, -2.0])
    def test_b1_must_exceed_one(self, b1):
        with pytest.raises(ValidationError):
            ModelParams.canonical(b1=b1)

    def test_c_must_be_positive(self):
        with pytest.raises(ValidationError):
            ModelParams(b1=2.0, c=0.0, a3=0.0)

    def test_offsets_must_match_c(self):
        with pytest.raises(ValidationError):
            ModelParams(b1=2.0, c=1.0, a2=0.0, a3=2.0)

    def test_double_sonic_z(self, params):
        assert params.double_sonic_z == pytest.approx(1.0 / math.sqrt(3.0))

    def test_non_finite_chart_point_rejected(self):
        with pytest.raises(ValidationError):
            ChartPoint(z=float("nan"), t=0.0, y=0.0)


class TestFlux:
    """flux_eval and the Rankine-Hugoniot residual."""

    def test_flux_at_origin(self):
        assert flux_eval(ModelParams.canonical(), 0.0, 0.0) == (0.0, 0.0)

    def test_flux_quadratic_in_u(self):
        params = ModelParams(b1=2.0, c=1.0, a1=0.0, a2=0.0, a3=1.0, a4=0.0)
        f, g = flux_eval(params, 1.0, 0.0)
        assert f == pytest.approx(1.5)
        # g = u v + a3 u
        assert g == pytest.approx(1.0)

    def test_flux_hand_value(self, params):
        assert flux_eval(params, 1.0, 1.0) == pytest.approx((2.0, 2.0))

    def test_diagonal_residual_is_zero(self, params):
        sp = StatePair(u=0.7, v=-1.2, u_prime=0.7, v_prime=-1.2, s=13.0)
        assert rh_residual(params, sp) == (0.0, 0.0)


class TestCharts:
    """chart_to_blowup, chart_from_blowup and the manifold equation."""

    def test_fold_point_image(self, params):
        bp = chart_to_blowup(params, ChartPoint(z=0.5, t=0.0, y=0.0))
        assert bp.u_tilde == pytest.approx(2.0 * 0.5 / 1.25)
        assert bp.v1 == pytest.approx(1.0 / 1.25)
        assert manifold_residual(params, bp) == pytest.approx(0.0, abs=1e-15)

    def test_hand_value_at_z_zero(self, params):
        bp = chart_to_blowup(params, ChartPoint(z=0.0, t=1.0, y=0.0))
        assert bp.u_tilde == pytest.approx(-1.0)
        assert bp.v1 == pytest.approx(1.0)

    def test_residual_off_manifold(self, params):
        bp = BlowupPoint(u_tilde=0.0, v1=0.0, x=0.0, y=0.0, z=0.0)
        assert manifold_residual(params, bp) == 1.0

    def test_off_manifold_point_rejected(self, params):
        bp = BlowupPoint(u_tilde=0.0, v1=0.0, x=0.0, y=0.0, z=0.0)
        with pytest.raises(NotOnManifold):
            chart_from_blowup(params, bp)

    def test_inconsistent_slope_rejected(self, params):
        bp = chart_to_blowup(params, ChartPoint(z=1.0, t=0.5, y=2.0))
        broken = BlowupPoint(u_tilde=bp.u_tilde, v1=bp.v1, x=bp.x + 1.0, y=bp.y, z=bp.z)
        with pytest.raises(NotOnManifold):
            chart_from_blowup(params, broken)

    @given(z=coordinate, t=coordinate, y=coordinate)
    @settings(max_examples=200, deadline=None)
    def test_chart_lands_on_manifold(self, z, t, y):
        params = ModelParams.canonical()
        bp = chart_to_blowup(params, ChartPoint(z=z, t=t, y=y))
        scale = 1.0 + abs(z * z - 1.0) * abs(bp.v1) + abs(z * bp.u_tilde)
        assert abs(manifold_residual(params, bp)) <= 1e-12 * scale

    @given(z=coordinate, t=coordinate, y=coordinate)
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, z, t, y):
        params = ModelParams.canonical()
        cp = ChartPoint(z=z, t=t, y=y)
        back = chart_from_blowup(params, chart_to_blowup(params, cp))
        assert back.z == cp.z
        assert back.y == cp.y
        assert back.t == pytest.approx(cp.t, rel=1e-9, abs=1e-9)


class TestBlowDown:
    """chart_to_states and the jump condition."""

    def test_fold_point_is_diagonal(self, params):
        sp = chart_to_states(params, ChartPoint(z=1.0, t=0.0, y=0.0))
        assert sp.u == sp.u_prime
        assert sp.v == sp.v_prime

    def test_z_zero_keeps_v_jump(self, params):
        sp = chart_to_states(params, ChartPoint(z=0.0, t=0.0, y=1.0))
        assert sp.u == sp.u_prime
        assert sp.v - sp.v_prime == pytest.approx(1.0)

    @pytest.mark.parametrize("fixture_name", ["params", "shifted_params"])
    def test_jump_condition_holds(self, fixture_name, request, random_points):
        params = request.getfixturevalue(fixture_name)
        for cp in random_points:
            sp = chart_to_states(params, cp)
            r1, r2 = rh_residual(params, sp)
            scale = 1.0 + max(abs(v) for v in flux_eval(params, sp.u, sp.v) + flux_eval(params, sp.u_prime, sp.v_prime))
            scale += abs(sp.s) * (abs(sp.u - sp.u_prime) + abs(sp.v - sp.v_prime))
            assert max(abs(r1), abs(r2)) <= 1e-9 * scale

    def test_perturbed_speed_breaks_jump_condition(self, params):
        sp = chart_to_states(params, ChartPoint(z=0.3, t=0.2, y=1.5))
        bad = StatePair(sp.u, sp.v, sp.u_prime, sp.v_prime, sp.s + 0.1)
        assert max(abs(r) for r in rh_residual(params, bad)) > 1e-3

    def test_speed_shift_zero_for_canonical(self, params, shifted_params):
        assert speed_shift(params) == 0.0
        assert speed_shift(shifted_params) == pytest.approx((0.1 - 0.3) / 2.5 + 0.1)


class TestSpeed:
    """speed_at and its vectorised form."""

    @pytest.mark.parametrize(
        "z, t, expected",
        [(0.0, 1.0, -0.5), (1.0, 0.0, 1.0), (0.0, 0.0, 0.0)],
    )
    def test_hand_values(self, params, z, t, expected):
        assert speed_at(params, ChartPoint(z=z, t=t, y=0.0)) == pytest.approx(expected)

    def test_grid_matches_pointwise(self, params, random_points):
        z = np.array([cp.z for cp in random_points])
        t = np.array([cp.t for cp in random_points])
        expected = [speed_at(params, cp) for cp in random_points]
        np.testing.assert_allclose(speed_grid(params, z, t), expected, rtol=1e-13, atol=1e-13)
