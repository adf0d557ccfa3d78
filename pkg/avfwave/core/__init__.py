"""The numerical core: spectral fields, Q-Wiener paths, the AVF integrator."""

##############################################################################
# Import the core pieces to make them easier to get at.
from .errors import AVFWaveError, SolverDivergenceError
from .integrator import SchemeConfig, Solver, Trajectory, avf_det_step, cayley_step, integrate
from .noise import NoiseSpectrum, PathGenerator, trace_truncated
from .nonlinearity import CubicPolynomial, Potential, galerkin_avf, galerkin_f
from .observables import energy_V1, exp_moment, lp_norm, theorem_error
from .spectral import PhaseState, SpectralField, analyze, project, sobolev_norm, synthesize

##############################################################################
# Export the core.
__all__ = [
    "AVFWaveError",
    "CubicPolynomial",
    "NoiseSpectrum",
    "PathGenerator",
    "PhaseState",
    "Potential",
    "SchemeConfig",
    "Solver",
    "SolverDivergenceError",
    "SpectralField",
    "Trajectory",
    "analyze",
    "avf_det_step",
    "cayley_step",
    "energy_V1",
    "exp_moment",
    "galerkin_avf",
    "galerkin_f",
    "integrate",
    "lp_norm",
    "project",
    "sobolev_norm",
    "synthesize",
    "theorem_error",
    "trace_truncated",
]

### __init__.py ends here
