import numpy as np
import pytest

from main import build_orchestrator


@pytest.fixture
def orc():
    """Orchestrator with every agent registered."""
    return build_orchestrator()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
