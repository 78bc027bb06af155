"""
Domain Layer - flux model, Hugoniot curves, surfaces and admissibility rules
This layer is pure computation: no IO, logging only at DEBUG.
"""

from .configuration import Config, GridConfig, LoggingConfig, ModelConfig, ToleranceConfig
from .curves import (
    CurveSample,
    HugoniotCurve,
    curve_from_kl,
    curve_through_point,
    eval_curve,
    intersect_characteristic,
    intersect_son,
    intersect_sonprime,
    speed_along,
)
from .errors import ErrorCode, ErrorSeverity, ExitCode, ValidationError, WaveManifoldError
from .lax import ArcSegment, RegionLabel, extract_arcs, region_classify, side_points
from .model import BlowupPoint, ChartPoint, ModelParams, StatePair
from .surfaces import SurfaceId, son_value, sonprime_value

__all__ = [
    "Config",
    "GridConfig",
    "LoggingConfig",
    "ModelConfig",
    "ToleranceConfig",
    "CurveSample",
    "HugoniotCurve",
    "curve_from_kl",
    "curve_through_point",
    "eval_curve",
    "intersect_characteristic",
    "intersect_son",
    "intersect_sonprime",
    "speed_along",
    "ErrorCode",
    "ErrorSeverity",
    "ExitCode",
    "ValidationError",
    "WaveManifoldError",
    "ArcSegment",
    "RegionLabel",
    "extract_arcs",
    "region_classify",
    "side_points",
    "BlowupPoint",
    "ChartPoint",
    "ModelParams",
    "StatePair",
    "SurfaceId",
    "son_value",
    "sonprime_value",
]
