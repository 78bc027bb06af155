"""
Wave-manifold toolkit
Decomposition of the wave manifold of symmetric quadratic conservation laws
into regions bounded by the characteristic and sonic surfaces.
"""

from .application.cli import main
from .domain.configuration import Config
from .domain.curves import HugoniotCurve, eval_curve, intersect_characteristic
from .domain.errors import ErrorCode, ErrorSeverity, WaveManifoldError
from .domain.lax import RegionLabel, extract_arcs, region_classify
from .domain.model import ChartPoint, ModelParams
from .infrastructure.configuration_service import load_config
from .infrastructure.logging import LoggingService, configure_logging

__version__ = "1.0.0"

__all__ = [
    "main",
    "Config",
    "load_config",
    "ModelParams",
    "ChartPoint",
    "HugoniotCurve",
    "eval_curve",
    "intersect_characteristic",
    "RegionLabel",
    "region_classify",
    "extract_arcs",
    "WaveManifoldError",
    "ErrorCode",
    "ErrorSeverity",
    "LoggingService",
    "configure_logging",
]
