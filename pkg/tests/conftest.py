"""Shared fixtures for the avfwave tests."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
from typing import Callable

##############################################################################
# NumPy imports.
import numpy as np

##############################################################################
# Pytest imports.
import pytest

##############################################################################
# Local imports.
from avfwave.core.spectral import PhaseState, SpectralField

##############################################################################
FieldMaker = Callable[..., SpectralField]
StateMaker = Callable[..., PhaseState]


##############################################################################
@pytest.fixture
def rng() -> np.random.Generator:
    """A fixed-seed generator so every test sees the same random data."""
    return np.random.default_rng(20210601)


##############################################################################
@pytest.fixture
def random_field(rng: np.random.Generator) -> FieldMaker:
    """Make random fields with coefficients decaying like `1/k`."""

    def make(N: int, dim: int, scale: float = 1.0) -> SpectralField:
        k = np.arange(1, N + 1, dtype=np.float64)
        decay = 1.0 / k if dim == 1 else 1.0 / (k[:, None] + k[None, :])
        return SpectralField(scale * decay * rng.standard_normal((N,) * dim))

    return make


##############################################################################
@pytest.fixture
def random_state(random_field: FieldMaker) -> StateMaker:
    """Make random phase states."""

    def make(N: int, dim: int, scale: float = 1.0) -> PhaseState:
        return PhaseState(random_field(N, dim, scale), random_field(N, dim, scale))

    return make


### conftest.py ends here
