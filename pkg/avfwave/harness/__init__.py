"""Configuration, Monte Carlo studies and their output."""

##############################################################################
# Import the harness pieces to make them easier to get at.
from .config import ExperimentConfig
from .output import RunManifest
from .studies import (
    StudyResult,
    energy_study,
    exp_moment_study,
    fit_slope,
    simulate,
    spatial_convergence,
    temporal_convergence,
)

##############################################################################
# Export the harness.
__all__ = [
    "ExperimentConfig",
    "RunManifest",
    "StudyResult",
    "energy_study",
    "exp_moment_study",
    "fit_slope",
    "simulate",
    "spatial_convergence",
    "temporal_convergence",
]

### __init__.py ends here
