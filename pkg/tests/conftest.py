"""
Shared fixtures for the wave-manifold test suite.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from src.domain.configuration import Config, GridConfig
from src.domain.model import ChartPoint, ModelParams


@pytest.fixture
def params() -> ModelParams:
    """Default instance b1 = 2, c = 1, zero offsets except a3 = c."""
    return ModelParams.canonical()


@pytest.fixture(params=[(2.0, 1.0), (3.0, 1.0), (1.5, 0.5)], ids=["b1=2", "b1=3", "b1=1.5,c=0.5"])
def any_params(request) -> ModelParams:
    """Default and alternative instances."""
    b1, c = request.param
    return ModelParams.canonical(b1=b1, c=c)


@pytest.fixture(params=[(2.0, 1.0), (3.0, 1.0), (1.5, 2.0)], ids=["b1=2", "b1=3", "b1=1.5,c=2"])
def region_params(request) -> ModelParams:
    """Instances at which the twelve-region decomposition is checked."""
    b1, c = request.param
    return ModelParams.canonical(b1=b1, c=c)


@pytest.fixture
def shifted_params() -> ModelParams:
    """Instance with nonzero flux offsets."""
    return ModelParams(b1=2.5, c=1.0, a1=0.3, a2=-0.2, a3=0.8, a4=0.1)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def config() -> Config:
    return Config()


@pytest.fixture
def coarse_grid() -> GridConfig:
    """Small sampling box used by mesh and fast flood-fill tests."""
    return GridConfig(resolution=(24, 24, 24), guard_cells=1)


@pytest.fixture
def random_points(rng) -> list:
    return [
        ChartPoint(z=float(z), t=float(t), y=float(y))
        for z, t, y in rng.uniform(-3.0, 3.0, size=(200, 3))
    ]


@pytest.fixture
def temp_config_dir(tmp_path) -> Path:
    """Temporary directory for config files during testing."""
    directory = tmp_path / "config"
    directory.mkdir()
    return directory


@pytest.fixture
def write_config(temp_config_dir):
    """Write a JSON config document and return its path."""

    def _write(document, name: str = "wave_manifold.json") -> Path:
        path = temp_config_dir / name
        text = document if isinstance(document, str) else json.dumps(document)
        path.write_text(text, encoding="utf-8")
        return path

    return _write
