"""Tests for the command objects behind the CLI."""

import pytest

from src.application import commands
from src.application.checks import OracleCheck, OracleRegistry
from src.application.commands import (
    ArcsCommand,
    ClassifyCommand,
    CurveCommand,
    MeshCommand,
    VerifyCommand,
)
from src.application.oracle import OracleReport
from src.domain.configuration import Config
from src.domain.curves import HugoniotCurve
from src.domain.errors import ExitCode, SecondaryBifurcation, ValidationError, VerificationFailed
from src.domain.model import ChartPoint, speed_at


def _failing_check(ctx):
    return OracleReport(name="always-off", samples=1, max_residual=1.0, tolerance=0.0)


class TestCommandResults:
    """Commands wrap their output or their failure in a Result."""

    def test_success(self, config):
        result = ClassifyCommand(config, ChartPoint(z=0.0, t=0.0, y=3.0)).execute()
        assert result.is_success()
        output = result.value
        assert output.document["label"] == "AboveBridge"
        assert output.rows[0][3] == "AboveBridge"

    def test_failure_keeps_operation(self, config, mocker):
        logger = mocker.Mock()
        result = ArcsCommand(config, curve=HugoniotCurve(k=1.0, l=-2.0), logger=logger).execute()
        assert result.is_failure()
        assert isinstance(result.error, SecondaryBifurcation)
        assert result.context.operation == "ArcsCommand"
        logger.error.assert_called_once()

    def test_curve_rows(self, config):
        output = CurveCommand(config, HugoniotCurve(k=2.0, l=0.0), (-1.0, 1.0), 5).execute().unwrap()
        assert output.header == ("z", "t", "Y", "s")
        assert [row[0] for row in output.rows] == [-1.0, -0.5, 0.0, 0.5, 1.0]


class TestCommandValidation:
    def test_arcs_needs_exactly_one_input(self, config):
        with pytest.raises(ValidationError):
            ArcsCommand(config)
        with pytest.raises(ValidationError):
            ArcsCommand(config, curve=HugoniotCurve(k=1.0, l=0.0), point=ChartPoint(z=0.0, t=0.0, y=1.0))

    def test_unknown_surface(self, config):
        with pytest.raises(ValidationError):
            MeshCommand(config, "torus")

    def test_unknown_check(self, config):
        with pytest.raises(ValidationError) as excinfo:
            VerifyCommand(config, ["sigma", "nope"])
        assert "nope" in str(excinfo.value)


class TestVerifyAndMesh:
    def test_selected_checks_pass(self, config):
        output = VerifyCommand(config, ["interval-condition"], samples=20).execute().unwrap()
        assert output.document["passed"] is True
        assert output.rows[0][0] == "interval-condition"

    def test_mesh_all_surfaces(self, config, coarse_grid):
        output = MeshCommand(config, "all", coarse_grid).execute().unwrap()
        assert {row[0] for row in output.rows} <= set(output.document)
        assert len(output.rows) == sum(len(points) for points in output.document.values())

    def test_failed_check_raises_verification_failed(self, config, mocker):
        mocker.patch.dict(
            OracleRegistry.REGISTERED_CHECKS,
            {"always-off": OracleCheck("always-off", (), "never passes", _failing_check)},
        )
        result = VerifyCommand(config, ["always-off"]).execute()
        assert result.is_failure()
        error = result.error
        assert isinstance(error, VerificationFailed)
        assert error.exit_code == ExitCode.VERIFICATION_FAILURE
        assert error.details["failed"] == ["always-off"]
        assert error.output.document["passed"] is False
        assert error.output.rows[0][0] == "always-off"


class TestClassifyShock:
    def test_states_and_residual(self, config, params):
        cp = ChartPoint(z=0.5, t=-0.6, y=1.0)
        document = ClassifyCommand(config, cp).execute().unwrap().document
        assert abs(document["manifold_residual"]) < 1e-12
        assert document["states"]["s"] == pytest.approx(speed_at(params, cp))
        assert document["states"]["v"] - document["states"]["v_prime"] == pytest.approx(1.0)

    def test_membership_tolerance_from_config(self, mocker):
        config = Config().with_overrides({"tolerances.membership": 1e-7})
        spy = mocker.spy(commands, "chart_from_blowup")
        ClassifyCommand(config, ChartPoint(z=0.0, t=0.0, y=1.0)).execute().unwrap()
        assert spy.call_args.args[2] == 1e-7
