"""Shared fixtures of the test suite."""
import numpy as np
import pytest

import core.eventsys
import core.vars as lvars
from harness import ArtifactCache

_SHARED = ('LOG_LEVEL', 'WORKERS', 'TRAIN_FRACTION', 'BURN_PROBABILITY',
           'CACHE_SIZE', 'CONFIG_DIR', 'CONFIG_PATH', 'DATA_DIR')


@pytest.fixture(autouse=True)
def clean_state():
    """Restore core.vars, listeners and the artifact cache after a test"""
    saved = {name: getattr(lvars, name) for name in _SHARED}
    yield
    for name, value in saved.items():
        setattr(lvars, name, value)
    core.eventsys.TrainEventListener.clear()
    core.eventsys.RunEventListener.clear()
    ArtifactCache.clear()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
