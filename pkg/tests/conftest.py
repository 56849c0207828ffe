"""Shared fixtures: the default scenario objects used across the test suite."""
import pytest

from aoatrack import BeamParams, NoiseModel, ReceiverGeometry
from aoatrack.config import ScenarioConfig


@pytest.fixture
def default_config() -> ScenarioConfig:
    return ScenarioConfig()


@pytest.fixture
def beam(default_config) -> BeamParams:
    return default_config.beam_params()


@pytest.fixture
def geometry(default_config) -> ReceiverGeometry:
    return default_config.geometry()


@pytest.fixture
def noise(default_config) -> NoiseModel:
    return default_config.noise_model()
