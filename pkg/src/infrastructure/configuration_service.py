"""
Configuration service: locates, schema-checks and validates the toolkit config file
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from jsonschema import Draft202012Validator
from pydantic import ValidationError as PydanticValidationError

from ..common.result_handling import Result
from ..domain.configuration import Config
from ..domain.errors import ConfigurationError
from ..interfaces import IConfigurationService, ILogger

_BOUNDS = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

# Structural schema; numeric invariants (b1 > 1, z_max window) are left to pydantic
CONFIG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "model": {
            "type": "object",
            "properties": {
                "b1": {"type": "number"},
                "c": {"type": "number"},
                "a1": {"type": "number"},
                "a2": {"type": "number"},
                "a3": {"type": ["number", "null"]},
                "a4": {"type": "number"},
            },
            "additionalProperties": False,
        },
        "tolerances": {
            "type": "object",
            "properties": {
                "membership": _POSITIVE,
                "root": _POSITIVE,
                "boundary": _POSITIVE,
                "tangency_trim": _POSITIVE,
                "guard_band": _POSITIVE,
            },
            "additionalProperties": False,
        },
        "z_max": {"type": "number"},
        "grid": {
            "type": "object",
            "properties": {
                "z_bounds": _BOUNDS,
                "t_bounds": _BOUNDS,
                "y_bounds": _BOUNDS,
                "resolution": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 8},
                    "minItems": 3,
                    "maxItems": 3,
                },
                "guard_cells": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "output_format": {"type": "string", "enum": ["csv", "json"]},
        "seed": {"type": "integer"},
        "logging": {
            "type": "object",
            "properties": {
                "level": {
                    "type": "string",
                    "enum": ["TRACE", "DEBUG", "INFO", "WARNING", "ERROR"],
                },
                "file_path": {"type": ["string", "null"]},
                "rotation": {"type": "string"},
                "retention": {"type": "integer", "minimum": 0},
                "serialize": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

DEFAULT_SEARCH_PATHS = (
    Path("config") / "wave_manifold.json",
    Path.home() / ".config" / "wave-manifold" / "config.json",
)


def schema_errors(document: Any) -> List[str]:
    """Return every schema violation as 'path: message'"""
    validator = Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
    return [
        f"{'.'.join(str(p) for p in error.path) or '<root>'}: {error.message}"
        for error in errors
    ]


class BaseConfigurationService(IConfigurationService):
    """Base implementation ensuring consistent behavior"""

    def __init__(self, logger: Optional[ILogger] = None):
        self.logger = logger

    def _log_info(self, message: str) -> None:
        """Consistent logging helper"""
        if self.logger:
            self.logger.info(message)

    def _log_error(self, message: str) -> None:
        """Consistent logging helper"""
        if self.logger:
            self.logger.error(message)


class LocalConfigurationService(BaseConfigurationService):
    """Local file-based configuration service"""

    def __init__(
        self,
        logger: Optional[ILogger] = None,
        search_paths: tuple = DEFAULT_SEARCH_PATHS,
    ):
        super().__init__(logger)
        self.search_paths = tuple(Path(p) for p in search_paths)

    def locate(self, path: Optional[Path] = None) -> Optional[Path]:
        """An explicit path must exist; otherwise the first existing search path wins"""
        if path is not None:
            return Path(path)
        for candidate in self.search_paths:
            if candidate.is_file():
                return candidate
        return None

    def load(self, path: Optional[Path] = None) -> Result[Config, Exception]:
        """Load and validate a configuration file, or the defaults"""
        source = self.locate(path)
        if source is None:
            self._log_info("No configuration file found, using defaults")
            return Result.success(Config())

        result = (
            self._read(source)
            .and_then(lambda document: self._check_schema(source, document))
            .and_then(lambda document: self._validate(source, document))
        )
        if result.is_success():
            self._log_info(f"Configuration loaded from {source}")
        return result

    def _read(self, source: Path) -> Result[Any, Exception]:
        try:
            return Result.success(json.loads(source.read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as e:
            error_msg = f"Cannot read configuration {source}: {e}"
            self._log_error(error_msg)
            return Result.failure(
                ConfigurationError(error_msg, {"path": str(source)}, cause=e)
            )

    def _check_schema(self, source: Path, document: Any) -> Result[Any, Exception]:
        problems = schema_errors(document)
        if not problems:
            return Result.success(document)
        error_msg = f"Configuration {source} violates schema: {problems[0]}"
        self._log_error(error_msg)
        return Result.failure(
            ConfigurationError(error_msg, {"path": str(source), "violations": problems})
        )

    def _validate(self, source: Path, document: Any) -> Result[Config, Exception]:
        try:
            return Result.success(Config.model_validate(document))
        except PydanticValidationError as e:
            error_msg = f"Invalid configuration {source}: {e.errors()[0]['msg']}"
            self._log_error(error_msg)
            return Result.failure(
                ConfigurationError(error_msg, {"path": str(source)}, cause=e)
            )


def load_config(
    path: Optional[Path] = None, logger: Optional[ILogger] = None
) -> Config:
    """Load configuration, raising ConfigurationError on any problem"""
    return LocalConfigurationService(logger).load(path).unwrap()
