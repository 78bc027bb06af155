"""
Configuration models for the wave-manifold toolkit
"""

import math
from typing import Any, Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .model import ModelParams, offsets_consistent


class LoggingConfig(BaseSettings):
    """Logging configuration; WAVEMAN_LOG_LEVEL and friends override it"""

    model_config = SettingsConfigDict(env_prefix="WAVEMAN_LOG_", extra="forbid")

    level: Literal["TRACE", "DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    file_path: Optional[str] = None
    rotation: str = "10 MB"
    retention: int = 3
    serialize: bool = False

    @field_validator("level", mode="before")
    @classmethod
    def _upper(cls, value: Any) -> Any:
        return value.upper() if isinstance(value, str) else value


class ModelConfig(BaseModel):
    """Flux parameters of the symmetric quadratic model"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    b1: float = 2.0
    c: float = 1.0
    a1: float = 0.0
    a2: float = 0.0
    a3: Optional[float] = None
    a4: float = 0.0

    @field_validator("b1")
    @classmethod
    def _b1_above_one(cls, value: float) -> float:
        if not value > 1.0:
            raise ValueError("b1 must be greater than 1")
        return value

    @field_validator("c")
    @classmethod
    def _c_positive(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError("c must be positive")
        return value

    @model_validator(mode="after")
    def _offsets_consistent(self) -> "ModelConfig":
        if self.a3 is not None and not offsets_consistent(self.a2, self.a3, self.c):
            raise ValueError("offsets must satisfy c = a3 - a2")
        return self

    def to_params(self) -> ModelParams:
        a3 = self.a2 + self.c if self.a3 is None else self.a3
        return ModelParams(
            b1=self.b1, c=self.c, a1=self.a1, a2=self.a2, a3=a3, a4=self.a4
        )


class ToleranceConfig(BaseModel):
    """Numerical tolerances; every value must be positive"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    membership: float = Field(default=1e-9, gt=0)
    root: float = Field(default=1e-9, gt=0)
    boundary: float = Field(default=1e-9, gt=0)
    tangency_trim: float = Field(default=1e-6, gt=0)
    guard_band: float = Field(default=1e-3, gt=0)


class GridConfig(BaseModel):
    """Sampling box and resolution used by meshes and the flood fill"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    z_bounds: Tuple[float, float] = (-2.0, 2.0)
    t_bounds: Tuple[float, float] = (-3.0, 3.0)
    y_bounds: Tuple[float, float] = (-6.0, 6.0)
    resolution: Tuple[int, int, int] = (120, 120, 120)
    guard_cells: int = Field(default=2, gt=0)

    @field_validator("z_bounds", "t_bounds", "y_bounds")
    @classmethod
    def _finite_bounds(cls, value: Tuple[float, float]) -> Tuple[float, float]:
        low, high = value
        if not (math.isfinite(low) and math.isfinite(high) and low < high):
            raise ValueError("bounds must be finite with low < high")
        return value

    @field_validator("resolution")
    @classmethod
    def _min_resolution(cls, value: Tuple[int, int, int]) -> Tuple[int, int, int]:
        if min(value) < 8:
            raise ValueError("resolution must be at least 8 per axis")
        return value


class Config(BaseModel):
    """Top-level configuration"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    model: ModelConfig = Field(default_factory=ModelConfig)
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    z_max: float = 50.0
    grid: GridConfig = Field(default_factory=GridConfig)
    output_format: Literal["csv", "json"] = "json"
    seed: int = 20240611
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @model_validator(mode="after")
    def _clip_window(self) -> "Config":
        critical = 1.0 / math.sqrt(self.model.b1 + 1.0)
        if not self.z_max > critical + 1.0:
            raise ValueError(
                f"z_max must exceed 1/sqrt(b1+1) + 1 = {critical + 1.0:.6g}"
            )
        return self

    @property
    def params(self) -> ModelParams:
        return self.model.to_params()

    def with_overrides(self, overrides: Dict[str, Any]) -> "Config":
        """Return a validated copy with dotted-key overrides applied; None values are skipped"""
        data = self.model_dump()
        for dotted, value in overrides.items():
            if value is None:
                continue
            target = data
            *parents, leaf = dotted.split(".")
            for key in parents:
                target = target[key]
            target[leaf] = value
        return Config.model_validate(data)
