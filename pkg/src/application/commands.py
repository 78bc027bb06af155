"""
Command pattern implementation for the toolkit operations.

Each command computes a CommandOutput (a JSON document plus an optional
table for CSV) and returns it wrapped in a Result; rendering and exit codes
are the CLI's business.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..common.result_handling import Result
from ..domain.configuration import Config, GridConfig
from ..domain.curves import (
    HugoniotCurve,
    curve_through_point,
    intersect_characteristic,
    intersect_son,
    intersect_sonprime,
    sample_curve,
)
from ..domain.errors import ValidationError, VerificationFailed
from ..domain.lax import extract_arcs, region_classify, sign_vector
from ..domain.model import (
    ChartPoint,
    ModelParams,
    chart_from_blowup,
    chart_to_blowup,
    chart_to_states,
    manifold_residual,
)
from ..domain.surfaces import SurfaceId, son_value, sonprime_value, surface_mesh
from ..infrastructure.export import MESH_HEADER, mesh_document, mesh_rows
from ..interfaces import ILogger
from .checks import CheckContext, OracleRegistry

SURFACE_CHOICES = tuple(s.value for s in SurfaceId) + ("all",)


@dataclass
class CommandOutput:
    """Structured result of one command"""

    document: Dict[str, Any]
    header: Optional[Sequence[str]] = None
    rows: List[Sequence[Any]] = field(default_factory=list)


class ICommand(ABC):
    """Interface for commands"""

    @abstractmethod
    def execute(self) -> Result[CommandOutput, Exception]:
        """Execute the command"""
        pass


class BaseCommand(ICommand):
    """Base command with common functionality"""

    def __init__(self, config: Config, logger: Optional[ILogger] = None):
        self.config = config
        self.logger = logger

    @property
    def params(self) -> ModelParams:
        return self.config.params

    def _log_info(self, message: str) -> None:
        """Log info message"""
        if self.logger:
            self.logger.info(message)

    def _log_error(self, message: str) -> None:
        """Log error message"""
        if self.logger:
            self.logger.error(message)

    def execute(self) -> Result[CommandOutput, Exception]:
        """Template method for execution"""
        name = self.__class__.__name__
        try:
            self._log_info(f"Executing command: {name}")
            output = self._do_execute()
            self._log_info(f"Command executed successfully: {name}")
            return Result.success(output)
        except Exception as e:
            result = Result.from_exception(e, operation=name)
            result.log_error(self.logger, "Command failed")
            return result

    @abstractmethod
    def _do_execute(self) -> CommandOutput:
        """Subclass implementation of execute"""
        pass


def _surface_distance(func: Callable[[float, float, float], float], cp: ChartPoint) -> float:
    """First-order distance |f| / |grad f| to the zero set of f"""
    h = 1e-6 * (1.0 + max(abs(cp.z), abs(cp.t), abs(cp.y)))
    value = func(cp.z, cp.t, cp.y)
    grad = np.array(
        [
            func(cp.z + h, cp.t, cp.y) - func(cp.z - h, cp.t, cp.y),
            func(cp.z, cp.t + h, cp.y) - func(cp.z, cp.t - h, cp.y),
            func(cp.z, cp.t, cp.y + h) - func(cp.z, cp.t, cp.y - h),
        ]
    ) / (2.0 * h)
    norm = float(np.linalg.norm(grad))
    return abs(value) / norm if norm > 0.0 else float("inf")


class ClassifyCommand(BaseCommand):
    """Region label of a point plus its surface values"""

    def __init__(self, config: Config, point: ChartPoint, logger: Optional[ILogger] = None):
        super().__init__(config, logger)
        self.point = point

    def _do_execute(self) -> CommandOutput:
        params, cp = self.params, self.point
        tolerance = self.config.tolerances.boundary
        blowup = chart_to_blowup(params, cp)
        # raises NotOnManifold when the blow-up image drifts off G = 0
        chart_from_blowup(params, blowup, self.config.tolerances.membership)
        states = chart_to_states(params, cp)
        label = region_classify(params, cp, tolerance)
        key = sign_vector(params, cp, tolerance)
        son = son_value(params, cp.z, cp.t, cp.y)
        sonprime = sonprime_value(params, cp.z, cp.t, cp.y)
        distances = {
            "C": abs(cp.y),
            "Son": _surface_distance(lambda z, t, y: son_value(params, z, t, y), cp),
            "Son'": _surface_distance(lambda z, t, y: sonprime_value(params, z, t, y), cp),
        }
        document = {
            "point": {"z": cp.z, "t": cp.t, "Y": cp.y},
            "label": label.value,
            "sign_vector": list(key) if key is not None else None,
            "son": son,
            "sonprime": sonprime,
            "Y": cp.y,
            "distances": distances,
            "manifold_residual": manifold_residual(params, blowup),
            "states": {
                "u": states.u,
                "v": states.v,
                "u_prime": states.u_prime,
                "v_prime": states.v_prime,
                "s": states.s,
            },
        }
        row = (cp.z, cp.t, cp.y, label.value, son, sonprime, distances["C"], distances["Son"], distances["Son'"])
        return CommandOutput(
            document=document,
            header=("z", "t", "Y", "label", "son", "sonprime", "dist_C", "dist_son", "dist_sonprime"),
            rows=[row],
        )


class CurveCommand(BaseCommand):
    """Sampled polyline of a Hugoniot curve with its surface intersections"""

    def __init__(
        self,
        config: Config,
        curve: HugoniotCurve,
        z_range: Tuple[float, float],
        n: int,
        logger: Optional[ILogger] = None,
    ):
        super().__init__(config, logger)
        if n < 2:
            raise ValidationError("n must be at least 2", {"n": n})
        if not z_range[0] < z_range[1]:
            raise ValidationError("z range must satisfy z_min < z_max", {"z_range": list(z_range)})
        self.curve = curve
        self.z_range = z_range
        self.n = n

    def _do_execute(self) -> CommandOutput:
        params, curve = self.params, self.curve
        tolerance = self.config.tolerances.root
        low, high = self.z_range
        samples = sample_curve(params, curve, np.linspace(low, high, self.n))
        intersections = {
            "C": intersect_characteristic(params, curve).in_window(low, high).to_dict(),
            "Son": intersect_son(params, curve, tolerance).in_window(low, high).to_dict(),
            "Son'": intersect_sonprime(params, curve, tolerance).in_window(low, high).to_dict(),
        }
        return CommandOutput(
            document={
                "curve": curve.to_dict(),
                "samples": [s.to_dict() for s in samples],
                "intersections": intersections,
            },
            header=("z", "t", "Y", "s"),
            rows=[(s.z, s.t, s.y, s.s) for s in samples],
        )


class ArcsCommand(BaseCommand):
    """Admissible arcs of the curve given by (k, l) or through a point"""

    def __init__(
        self,
        config: Config,
        curve: Optional[HugoniotCurve] = None,
        point: Optional[ChartPoint] = None,
        samples: int = 0,
        logger: Optional[ILogger] = None,
    ):
        super().__init__(config, logger)
        if (curve is None) == (point is None):
            raise ValidationError("give either a curve (k, l) or a point (z, t, Y)")
        self.curve = curve
        self.point = point
        self.samples = samples

    def _do_execute(self) -> CommandOutput:
        params = self.params
        curve = self.curve or curve_through_point(params, self.point, prime=False)
        arcs = extract_arcs(
            params,
            curve,
            z_max=self.config.z_max,
            tolerance=self.config.tolerances.root,
            tangency_trim=self.config.tolerances.tangency_trim,
        )
        document: Dict[str, Any] = {
            "curve": curve.to_dict(),
            "arcs": [arc.to_dict(params, self.samples) for arc in arcs],
        }
        if self.point is not None:
            document["point"] = {"z": self.point.z, "t": self.point.t, "Y": self.point.y}
        rows = [
            (i, arc.start_kind.value, arc.end_kind.value, arc.classification.value, arc.z_start, arc.z_end)
            for i, arc in enumerate(arcs)
        ]
        return CommandOutput(
            document=document,
            header=("arc", "start_kind", "end_kind", "classification", "z_start", "z_end"),
            rows=rows,
        )


class MeshCommand(BaseCommand):
    """Point samples of one or all surfaces over the configured (z, t) grid"""

    def __init__(
        self,
        config: Config,
        surface: str,
        grid: Optional[GridConfig] = None,
        logger: Optional[ILogger] = None,
    ):
        super().__init__(config, logger)
        if surface not in SURFACE_CHOICES:
            raise ValidationError(f"unknown surface {surface!r}", {"choices": list(SURFACE_CHOICES)})
        self.surfaces = [s for s in SurfaceId] if surface == "all" else [SurfaceId(surface)]
        self.grid = grid or config.grid

    def _do_execute(self) -> CommandOutput:
        meshes = {
            surface.value: surface_mesh(
                self.params, surface, self.grid, self.config.tolerances.guard_band
            )
            for surface in self.surfaces
        }
        rows: List[Sequence[Any]] = []
        for name, points in meshes.items():
            self._log_info(f"{name}: {len(points)} mesh point(s)")
            rows.extend(mesh_rows(name, points))
        return CommandOutput(document=mesh_document(meshes), header=MESH_HEADER, rows=rows)


class VerifyCommand(BaseCommand):
    """Run oracle checks; a failed check or a coverage gap raises VerificationFailed"""

    def __init__(
        self,
        config: Config,
        names: Optional[Iterable[str]] = None,
        samples: int = 200,
        logger: Optional[ILogger] = None,
    ):
        super().__init__(config, logger)
        available = OracleRegistry.get_all_names()
        self.names = list(names) if names else available
        unknown = [n for n in self.names if n not in available]
        if unknown:
            raise ValidationError(f"unknown check(s): {', '.join(unknown)}", {"available": available})
        self.full_suite = not names
        self.samples = samples

    def _do_execute(self) -> CommandOutput:
        context = CheckContext.from_config(self.config, self.samples)
        reports = OracleRegistry.run(self.names, context)
        failed = [r.name for r in reports if not r.passed]
        gaps = OracleRegistry.coverage_gaps() if self.full_suite else []
        document = {
            "passed": not failed and not gaps,
            "failed": failed,
            "coverage_gaps": gaps,
            "reports": [r.to_dict() for r in reports],
        }
        rows = [
            (r.name, r.samples, r.skipped, r.max_residual, r.tolerance, r.passed, "; ".join(r.notes))
            for r in reports
        ]
        output = CommandOutput(
            document=document,
            header=("check", "samples", "skipped", "max_residual", "tolerance", "passed", "notes"),
            rows=rows,
        )
        if not document["passed"]:
            raise VerificationFailed(failed, gaps, output)
        return output


class ListChecksCommand(BaseCommand):
    """Registered checks and the closed forms each covers"""

    def _do_execute(self) -> CommandOutput:
        checks = [OracleRegistry.get(name) for name in OracleRegistry.get_all_names()]
        return CommandOutput(
            document={
                "checks": [
                    {"name": c.name, "description": c.description, "covers": list(c.covers)}
                    for c in checks
                ]
            },
            header=("check", "description"),
            rows=[(c.name, c.description) for c in checks],
        )
