import pytest

from geomr._rand import make_rng


@pytest.fixture
def rng():
    """Deterministic generator; every test sees the same fresh stream."""
    return make_rng(99173)
