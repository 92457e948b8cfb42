import numpy as np
import pytest

from helpers import synthetic_speech


@pytest.fixture(scope="session")
def speech_clip():
    """3.2 s deterministic speech-like clip with a -55 dB room-tone floor."""
    return synthetic_speech()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
