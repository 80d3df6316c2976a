"""Shared fixtures."""

from pathlib import Path

import pytest

from src.core.config import reset_settings
from src.engel.construct import EngelParams
from src.engel.presets import planar_example, spatial_example

GOLDEN = Path(__file__).parent / "golden"
PARAMS_DIR = Path(__file__).parent.parent / "params"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch: pytest.MonkeyPatch):
    """Every test starts from default settings, unaffected by a local .env."""
    for name in ("ENGELSET_MAX_POINTS", "ENGELSET_LOG_LEVEL", "ENGELSET_COVERING_SAMPLES"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr("src.core.config.load_environment", lambda: None)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def planar() -> EngelParams:
    return planar_example()


@pytest.fixture
def spatial() -> EngelParams:
    return spatial_example()


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def params_dir() -> Path:
    return PARAMS_DIR
