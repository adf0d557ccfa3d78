"""Energies, norms and the Monte Carlo statistics built on them."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import math
from dataclasses import dataclass
from typing import Final, Union

##############################################################################
# NumPy imports.
import numpy as np
from numpy.typing import ArrayLike

##############################################################################
# SciPy imports.
from scipy.special import logsumexp

##############################################################################
# Local imports.
from .errors import EmptySampleError, ShapeMismatchError, UnsupportedNormError
from .nonlinearity import CubicPolynomial, Potential, galerkin_f
from .spectral import (
    PhaseState,
    SpectralField,
    collocation_size,
    eigenvalues,
    phase_norm,
    sobolev_norm,
    synthesize,
)

##############################################################################
SUPPORTED_EXPONENTS: Final = (2, 4, 6, math.inf)
"""The Lebesgue exponents `lp_norm` knows about."""

SIXTH_POWER_GRID_FACTOR: Final = 8
"""Grid points per mode for sixth powers and the sup norm."""


##############################################################################
@dataclass(frozen=True)
class EnergyRecord:
    """The Lyapunov energy `V₁` of a state and its parts."""

    t: float
    """The time the energy belongs to."""

    V1: float
    """The total energy."""

    kinetic: float
    """`½‖v‖²_{L²}`."""

    elastic: float
    """`½‖u‖²_{Ḣ¹}`."""

    potential: float
    """`F(u) + C1`."""


##############################################################################
def energy_V1(state: PhaseState, potential: Potential, t: float = 0.0) -> EnergyRecord:
    """The Lyapunov energy `V₁(u, v) = ½‖u‖²_{Ḣ¹} + ½‖v‖²_{L²} + F(u) + C1`.

    Args:
        state: The state to measure.
        potential: The potential functional and its constant.
        t (optional): The time to stamp the record with.

    Returns:
        The energy and its decomposition.
    """
    kinetic = 0.5 * float(np.sum(state.v.coeffs**2))
    elastic = 0.5 * float(np.sum(eigenvalues(state.N, state.dim) * state.u.coeffs**2))
    potential_part = potential.functional(state.u) + potential.C1
    return EnergyRecord(t, kinetic + elastic + potential_part, kinetic, elastic, potential_part)


##############################################################################
def energy_V2(state: PhaseState, poly: CubicPolynomial) -> float:
    """The higher order Lyapunov functional, for diagnostics only.

    Args:
        state: The state to measure.
        poly: The drift polynomial.

    Returns:
        `½‖u‖²_{Ḣ²} + ½‖v‖²_{Ḣ¹} + ½⟨-Λu, f(u)⟩`.
    """
    lam = eigenvalues(state.N, state.dim)
    drift = galerkin_f(state.u, poly).coeffs
    return 0.5 * float(
        np.sum(lam**2 * state.u.coeffs**2)
        + np.sum(lam * state.v.coeffs**2)
        + np.sum(lam * state.u.coeffs * drift)
    )


##############################################################################
def lp_norm(field: SpectralField, p: Union[int, float]) -> float:
    """A Lebesgue norm of a field.

    `p = 2` is spectral and exact. `p = 4` uses the `4N` collocation grid
    and `p = 6` an `8N` grid, both exact for the powers involved. `p = ∞`
    is the maximum over the `8N` grid, so only a lower bound.

    Args:
        field: The field to measure.
        p: The exponent, one of 2, 4, 6 or `math.inf`.

    Returns:
        `‖u‖_{Lᵖ}`.

    Raises:
        UnsupportedNormError: For any other exponent.
    """
    if p not in SUPPORTED_EXPONENTS:
        raise UnsupportedNormError(f"L^{p} norms aren't supported")
    if p == 2:
        return sobolev_norm(field, 0)
    G = collocation_size(field.N, 4 if p == 4 else SIXTH_POWER_GRID_FACTOR)
    values = np.abs(synthesize(field, G))
    if p == math.inf:
        return float(values.max())
    return float((np.sum(values**p) / G**field.dim) ** (1.0 / p))


##############################################################################
def theorem_error(a: PhaseState, b: PhaseState) -> float:
    """The distance between two states in `ℍ⁰ = L² × Ḣ⁻¹`.

    The finer of the two states is projected onto the coarser truncation
    first.

    Args:
        a: One state.
        b: The other state.

    Returns:
        `(‖u_a - u_b‖²_{L²} + ‖v_a - v_b‖²_{Ḣ⁻¹})^{1/2}`.

    Raises:
        ShapeMismatchError: If the states differ in dimension.
    """
    if a.dim != b.dim:
        raise ShapeMismatchError("Can't compare states of different dimension")
    N = min(a.N, b.N)
    a, b = a.projected(N), b.projected(N)
    return phase_norm(PhaseState(a.u - b.u, a.v - b.v), 0)


##############################################################################
@dataclass(frozen=True)
class MomentEstimate:
    """A Monte Carlo estimate of an exponential moment."""

    estimate: float
    """The sample mean."""

    stderr: float
    """The standard error of the sample mean."""

    log_estimate: float
    """The logarithm of the sample mean, finite even when the mean overflows."""

    samples: int
    """The number of trajectories used."""


##############################################################################
def exp_moment(l6_norms: ArrayLike, c: float, h: float) -> MomentEstimate:
    """Estimate `E exp(c·h·Σᵢ‖uᵢ‖²_{L⁶})` across trajectories.

    Everything is aggregated in log space, so large exponents don't
    overflow before the final (optional) exponentiation.

    Args:
        l6_norms: The `‖uᵢ‖_{L⁶}` values, one row per trajectory.
        c: The exponent scale; must not be negative.
        h: The time step.

    Returns:
        The estimate and its standard error.

    Raises:
        EmptySampleError: If there are no trajectories.
    """
    norms = np.atleast_2d(np.asarray(l6_norms, dtype=np.float64))
    if norms.size == 0:
        raise EmptySampleError("An exponential moment needs at least one trajectory")
    if c < 0:
        raise ValueError(f"The exponent scale must not be negative, got {c}")
    n = norms.shape[0]
    if c == 0:
        return MomentEstimate(1.0, 0.0, 0.0, n)
    exponents = c * h * np.sum(norms**2, axis=1)
    log_mean = float(logsumexp(exponents) - math.log(n))
    if n < 2:
        return MomentEstimate(_safe_exp(log_mean), 0.0, log_mean, n)
    log_second = float(logsumexp(2.0 * exponents) - math.log(n))
    spread = 1.0 - math.exp(min(0.0, 2.0 * log_mean - log_second))
    if spread <= 0.0:
        stderr = 0.0
    else:
        log_variance = log_second + math.log(spread) + math.log(n / (n - 1))
        stderr = _safe_exp(0.5 * (log_variance - math.log(n)))
    return MomentEstimate(_safe_exp(log_mean), stderr, log_mean, n)


##############################################################################
def _safe_exp(value: float) -> float:
    """Exponentiate, saturating at infinity rather than raising.

    Args:
        value: The exponent.

    Returns:
        `exp(value)`, or infinity when that isn't representable.
    """
    return math.exp(value) if value < 709.0 else math.inf


### observables.py ends here
