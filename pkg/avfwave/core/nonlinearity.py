"""The cubic drift, its potential and their Galerkin projections."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
from dataclasses import dataclass, replace
from typing import Tuple

##############################################################################
# NumPy imports.
import numpy as np
from numpy.typing import ArrayLike, NDArray

##############################################################################
# Local imports.
from .errors import PolynomialError, ShapeMismatchError
from .spectral import (
    SpectralField,
    analyze,
    collocation_size,
    constant_projection,
    synthesize,
)


##############################################################################
@dataclass(frozen=True)
class CubicPolynomial:
    """The drift `f(u) = c₃u³ + c₂u² + c₁u + c₀`."""

    c0: float = 0.0
    """The constant coefficient."""

    c1: float = -1.0
    """The linear coefficient."""

    c2: float = 0.0
    """The quadratic coefficient."""

    c3: float = 1.0
    """The cubic coefficient; must be strictly positive."""

    strict: bool = True
    """Reject `c3 <= 0`? Only linear test problems should turn this off."""

    def __post_init__(self) -> None:
        if self.strict and not self.c3 > 0:
            raise PolynomialError(f"The cubic coefficient must be positive, got {self.c3}")

    @classmethod
    def zero(cls) -> CubicPolynomial:
        """The vanishing drift, for linear test problems.

        Returns:
            A non-strict polynomial with every coefficient zero.
        """
        return cls(0.0, 0.0, 0.0, 0.0, strict=False)

    @property
    def coefficients(self) -> Tuple[float, float, float, float]:
        """tuple[float, float, float, float]: `(c0, c1, c2, c3)`."""
        return (self.c0, self.c1, self.c2, self.c3)

    @property
    def is_zero(self) -> bool:
        """bool: Is the drift identically zero?"""
        return not any(self.coefficients)

    def without_constant(self) -> CubicPolynomial:
        """The same drift with `c0` dropped.

        Returns:
            The polynomial `c₃u³ + c₂u² + c₁u`.
        """
        return replace(self, c0=0.0)

    def f(self, u: ArrayLike) -> NDArray[np.float64]:
        """Evaluate the drift pointwise.

        Args:
            u: The values to evaluate at.

        Returns:
            `f(u)`.
        """
        u = np.asarray(u, dtype=np.float64)
        return ((self.c3 * u + self.c2) * u + self.c1) * u + self.c0

    def density(self, u: ArrayLike) -> NDArray[np.float64]:
        """Evaluate the potential density `F̃` with `F̃' = f` and `F̃(0) = 0`.

        Args:
            u: The values to evaluate at.

        Returns:
            `c₃u⁴/4 + c₂u³/3 + c₁u²/2 + c₀u`.
        """
        u = np.asarray(u, dtype=np.float64)
        return (((self.c3 / 4 * u + self.c2 / 3) * u + self.c1 / 2) * u + self.c0) * u

    def average(self, a: ArrayLike, b: ArrayLike) -> NDArray[np.float64]:
        """The averaged vector field `∫₀¹ f(a + θ(b - a)) dθ` in closed form.

        Args:
            a: Start of the chord.
            b: End of the chord.

        Returns:
            The average, symmetric in `a` and `b`, equal to `f(a)` when they
            coincide and to the difference quotient of `F̃` otherwise.
        """
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        ab = a * b
        square_sum = a * a + b * b
        return (
            self.c3 * (a + b) * square_sum / 4
            + self.c2 * (square_sum + ab) / 3
            + self.c1 * (a + b) / 2
            + self.c0
        )


##############################################################################
def eval_f(poly: CubicPolynomial, u: ArrayLike) -> NDArray[np.float64]:
    """Evaluate the drift.

    Args:
        poly: The drift polynomial.
        u: The values to evaluate at.

    Returns:
        `f(u)`.
    """
    return poly.f(u)


##############################################################################
def eval_F_density(poly: CubicPolynomial, u: ArrayLike) -> NDArray[np.float64]:
    """Evaluate the potential density.

    Args:
        poly: The drift polynomial.
        u: The values to evaluate at.

    Returns:
        `F̃(u)`.
    """
    return poly.density(u)


##############################################################################
def avf_average(
    poly: CubicPolynomial, a: ArrayLike, b: ArrayLike
) -> NDArray[np.float64]:
    """The averaged vector field of the drift along a chord.

    Args:
        poly: The drift polynomial.
        a: Start of the chord.
        b: End of the chord.

    Returns:
        `∫₀¹ f(a + θ(b - a)) dθ`.
    """
    return poly.average(a, b)


##############################################################################
def _quartic_minimum(coefficients: ArrayLike) -> float:
    """Find the global minimum of a quartic with positive leading term.

    Args:
        coefficients: The five coefficients, highest degree first.

    Returns:
        The minimum value over the real line.
    """
    quartic = np.poly1d(coefficients)
    critical = quartic.deriv().roots
    real = critical[np.abs(critical.imag) < 1e-9].real
    return float(np.min(quartic(real)))


##############################################################################
@dataclass(frozen=True)
class Potential:
    """The potential functional `F` together with the energy constant `C1`."""

    poly: CubicPolynomial
    """The drift the potential belongs to."""

    C1: float
    """The constant added to the energy so it stays non-negative."""

    volume: float = 1.0
    """The measure of the spatial domain."""

    @classmethod
    def canonical(cls, poly: CubicPolynomial, volume: float = 1.0) -> Potential:
        """Make the potential with the smallest `C1` keeping `F + C1 ≥ 0`.

        Args:
            poly: The drift polynomial.
            volume (optional): The measure of the domain.

        Returns:
            The potential with `C1 = volume·max(0, -min F̃)`.
        """
        return cls(poly, volume * max(0.0, -density_minimum(poly)), volume)

    def growth_constants(self) -> Tuple[float, float, float, float]:
        """The constants of `a₁‖u‖⁴_{L⁴} - b₁ ≤ F(u) ≤ a₂‖u‖⁴_{L⁴} + b₂`.

        Returns:
            `(a1, b1, a2, b2)` with `a1 = c₃/8` and `a2 = c₃/2`.
        """
        c0, c1, c2, c3 = self.poly.coefficients
        if c3 <= 0:
            raise PolynomialError("Growth bounds need a positive cubic coefficient")
        a1, a2 = c3 / 8, c3 / 2
        density = (c3 / 4, c2 / 3, c1 / 2, c0, 0.0)
        lower = _quartic_minimum(np.subtract(density, (a1, 0, 0, 0, 0)))
        upper = _quartic_minimum(np.subtract((a2, 0, 0, 0, 0), density))
        return (
            a1,
            self.volume * max(0.0, -lower),
            a2,
            self.volume * max(0.0, -upper),
        )

    def functional(self, u: SpectralField) -> float:
        """The potential `F(u) = ∫ F̃(u(x)) dx`.

        Args:
            u: The displacement.

        Returns:
            The value of `F(u)`, without `C1`.
        """
        return potential_functional(u, self.poly)


##############################################################################
def density_minimum(poly: CubicPolynomial) -> float:
    """The global minimum of the potential density.

    Args:
        poly: The drift polynomial.

    Returns:
        `min_u F̃(u)`, which is zero for the vanishing drift.
    """
    if poly.is_zero:
        return 0.0
    if poly.c3 <= 0:
        raise PolynomialError("The potential is unbounded below unless c3 > 0")
    return min(0.0, _quartic_minimum((poly.c3 / 4, poly.c2 / 3, poly.c1 / 2, poly.c0, 0.0)))


##############################################################################
def potential_functional(u: SpectralField, poly: CubicPolynomial) -> float:
    """Integrate the potential density of a field.

    The polynomial part is integrated with the rectangle rule on the
    `G = 4N` collocation grid, the same quadrature `galerkin_avf` projects
    with, so the discrete gradient identity holds to rounding. The `c₀u`
    term is integrated analytically.

    Args:
        u: The displacement.
        poly: The drift polynomial.

    Returns:
        `∫ F̃(u(x)) dx`.
    """
    G = collocation_size(u.N)
    values = poly.without_constant().density(synthesize(u, G))
    total = float(np.sum(values)) / G**u.dim
    if poly.c0:
        total += poly.c0 * u.inner(constant_projection(1.0, u.N, u.dim))
    return total


##############################################################################
def _with_constant(projected: SpectralField, poly: CubicPolynomial) -> SpectralField:
    """Add the analytic projection of the constant term of the drift.

    Args:
        projected: The projection of the non-constant part.
        poly: The drift polynomial.

    Returns:
        The projection of the whole drift.
    """
    if not poly.c0:
        return projected
    return projected + constant_projection(poly.c0, projected.N, projected.dim)


##############################################################################
def galerkin_f(u: SpectralField, poly: CubicPolynomial) -> SpectralField:
    """The Galerkin projection `P_N f(u)`.

    Args:
        u: The displacement.
        poly: The drift polynomial.

    Returns:
        The projected drift, exact for the cubic and linear terms.
    """
    grid = synthesize(u, collocation_size(u.N))
    return _with_constant(analyze(poly.without_constant().f(grid), u.N), poly)


##############################################################################
def galerkin_avf(a: SpectralField, b: SpectralField, poly: CubicPolynomial) -> SpectralField:
    """The Galerkin projection of the averaged vector field along `a → b`.

    Args:
        a: The start of the chord.
        b: The end of the chord.
        poly: The drift polynomial.

    Returns:
        `P_N ∫₀¹ f(a + θ(b - a)) dθ`.

    Raises:
        ShapeMismatchError: If the fields don't share a truncation.
    """
    if not a.same_space(b):
        raise ShapeMismatchError("The ends of an AVF chord must share a truncation")
    G = collocation_size(a.N)
    averaged = poly.without_constant().average(synthesize(a, G), synthesize(b, G))
    return _with_constant(analyze(averaged, a.N), poly)


### nonlinearity.py ends here
