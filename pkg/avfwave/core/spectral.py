"""The sine spectral basis on the unit interval and the unit square.

Fields are stored as coefficients against the orthonormal Dirichlet
eigenbasis of the Laplacian on (0,1)^d, that is `e_k(x) = √2 sin(kπx)` in
one dimension and `e_{k,l}(x, y) = 2 sin(kπx) sin(lπy)` in two. With that
normalisation the L² norm of a field is the plain Euclidean norm of its
coefficients.
"""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
from dataclasses import dataclass
from functools import lru_cache
from typing import Final, Sequence, Tuple, Union

##############################################################################
# NumPy imports.
import numpy as np
from numpy.typing import ArrayLike, NDArray

##############################################################################
# Local imports.
from .errors import GridError, ShapeMismatchError

##############################################################################
ModeIndex = Union[int, Tuple[int, ...]]
"""A mode index: `k` in one dimension, `(k, l)` in two."""

SUPPORTED_DIMS: Final = (1, 2)
"""The spatial dimensions the basis supports."""

GRID_FACTOR: Final = 4
"""Collocation points per retained mode; `G = 4N` keeps cubic terms alias-free."""


##############################################################################
def _check_dim(dim: int) -> None:
    """Check that a spatial dimension is one we support.

    Args:
        dim: The dimension to check.

    Raises:
        ShapeMismatchError: If the dimension isn't 1 or 2.
    """
    if dim not in SUPPORTED_DIMS:
        raise ShapeMismatchError(f"Only d = 1 and d = 2 are supported, not {dim}")


##############################################################################
@dataclass(frozen=True, eq=False)
class SpectralField:
    """A scalar field held as sine-basis coefficients.

    The coefficient tensor is a length `N` vector for `d = 1` and an `N×N`
    matrix for `d = 2`. The tensor is copied on construction and then
    locked, so a field can be shared freely between threads.
    """

    coeffs: NDArray[np.float64]
    """The coefficients `û_k = ⟨u, e_k⟩`."""

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=np.float64)
        _check_dim(coeffs.ndim)
        if coeffs.ndim == 2 and coeffs.shape[0] != coeffs.shape[1]:
            raise ShapeMismatchError(
                f"A 2D field needs a square coefficient matrix, not {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("Spectral coefficients must all be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, N: int, dim: int) -> SpectralField:
        """Make the zero field.

        Args:
            N: The truncation per dimension.
            dim: The spatial dimension.

        Returns:
            A field with every coefficient zero.
        """
        _check_dim(dim)
        return cls(np.zeros((N,) * dim))

    @classmethod
    def from_modes(
        cls, N: int, dim: int, modes: Sequence[Tuple[ModeIndex, float]]
    ) -> SpectralField:
        """Make a field from a handful of mode amplitudes.

        Args:
            N: The truncation per dimension.
            dim: The spatial dimension.
            modes: Pairs of one-based mode index and amplitude.

        Returns:
            The field with the given amplitudes and zero elsewhere.
        """
        coeffs = np.zeros((N,) * dim)
        for mode, amplitude in modes:
            index = _mode_tuple(mode, dim)
            if any(k > N for k in index):
                raise ShapeMismatchError(f"Mode {mode} lies beyond truncation {N}")
            coeffs[tuple(k - 1 for k in index)] += amplitude
        return cls(coeffs)

    @property
    def dim(self) -> int:
        """int: The spatial dimension of the field."""
        return self.coeffs.ndim

    @property
    def N(self) -> int:
        """int: The truncation per dimension."""
        return self.coeffs.shape[0]

    def same_space(self, other: SpectralField) -> bool:
        """Does the other field live in the same truncated space?

        Args:
            other: The field to compare with.

        Returns:
            `True` if both dimension and truncation agree.
        """
        return self.coeffs.shape == other.coeffs.shape

    def _require_same_space(self, other: SpectralField) -> None:
        if not self.same_space(other):
            raise ShapeMismatchError(
                f"Fields differ in shape: {self.coeffs.shape} vs {other.coeffs.shape}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpectralField):
            return NotImplemented
        return self.same_space(other) and bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: SpectralField) -> SpectralField:
        self._require_same_space(other)
        return SpectralField(self.coeffs + other.coeffs)

    def __sub__(self, other: SpectralField) -> SpectralField:
        self._require_same_space(other)
        return SpectralField(self.coeffs - other.coeffs)

    def __mul__(self, scale: float) -> SpectralField:
        return SpectralField(self.coeffs * scale)

    __rmul__ = __mul__

    def __truediv__(self, scale: float) -> SpectralField:
        return SpectralField(self.coeffs / scale)

    def __neg__(self) -> SpectralField:
        return SpectralField(-self.coeffs)

    def scaled(self, weights: ArrayLike) -> SpectralField:
        """Multiply each coefficient by a per-mode weight.

        Args:
            weights: Per-mode weights, broadcastable to the coefficients.

        Returns:
            The reweighted field.
        """
        return SpectralField(self.coeffs * np.asarray(weights))

    def inner(self, other: SpectralField) -> float:
        """The L² inner product with another field.

        Args:
            other: The other field.

        Returns:
            `⟨self, other⟩_{L²}`.
        """
        self._require_same_space(other)
        return float(np.sum(self.coeffs * other.coeffs))


##############################################################################
def _mode_tuple(mode: ModeIndex, dim: int) -> Tuple[int, ...]:
    """Normalise a mode index to a tuple.

    Args:
        mode: The mode index.
        dim: The spatial dimension.

    Returns:
        The mode as a tuple of `dim` positive integers.
    """
    index = (mode,) if isinstance(mode, (int, np.integer)) else tuple(mode)
    if len(index) != dim:
        raise ShapeMismatchError(f"Mode {mode} does not have {dim} components")
    if any(k < 1 for k in index):
        raise ValueError(f"Mode components start at 1, got {mode}")
    return tuple(int(k) for k in index)


##############################################################################
def eigenvalue(mode: ModeIndex, dim: int) -> float:
    """The Dirichlet Laplacian eigenvalue belonging to a mode.

    Args:
        mode: The mode index.
        dim: The spatial dimension.

    Returns:
        `π²·Σ kᵢ²`.
    """
    _check_dim(dim)
    return float(np.pi**2 * sum(k * k for k in _mode_tuple(mode, dim)))


##############################################################################
@lru_cache(maxsize=None)
def eigenvalues(N: int, dim: int) -> NDArray[np.float64]:
    """All eigenvalues for a truncation, laid out like the coefficients.

    Args:
        N: The truncation per dimension.
        dim: The spatial dimension.

    Returns:
        A read-only array of shape `(N,)` or `(N, N)`.
    """
    _check_dim(dim)
    squares = np.arange(1, N + 1, dtype=np.float64) ** 2
    lam = np.pi**2 * (squares if dim == 1 else squares[:, None] + squares[None, :])
    lam.setflags(write=False)
    return lam


##############################################################################
def collocation_size(N: int, factor: int = GRID_FACTOR) -> int:
    """The default grid size for a truncation.

    Args:
        N: The truncation per dimension.
        factor (optional): Points per retained mode.

    Returns:
        The number of grid intervals `G` per dimension.
    """
    return factor * N


##############################################################################
@lru_cache(maxsize=64)
def sine_matrix(N: int, G: int) -> NDArray[np.float64]:
    """The matrix evaluating `e_k` on the interior nodes `x_j = j/G`.

    Args:
        N: The number of modes.
        G: The number of grid intervals.

    Returns:
        A read-only `(G-1)×N` matrix with entries `√2 sin(kπj/G)`.
    """
    nodes = np.arange(1, G)[:, None]
    modes = np.arange(1, N + 1)[None, :]
    matrix = np.sqrt(2.0) * np.sin(np.pi * nodes * modes / G)
    matrix.setflags(write=False)
    return matrix


##############################################################################
def synthesize(field: SpectralField, G: int | None = None) -> NDArray[np.float64]:
    """Evaluate a field on the interior collocation nodes.

    Args:
        field: The field to evaluate.
        G (optional): Grid intervals per dimension; defaults to `4N`.

    Returns:
        The values on the nodes `x_j = j/G`, `j = 1..G-1`, per dimension.

    Raises:
        GridError: If the grid can't resolve every retained mode.
    """
    G = collocation_size(field.N) if G is None else G
    if G <= field.N:
        raise GridError(f"A grid of {G} intervals can't resolve {field.N} modes")
    basis = sine_matrix(field.N, G)
    if field.dim == 1:
        return basis @ field.coeffs
    return basis @ field.coeffs @ basis.T


##############################################################################
def analyze(grid: ArrayLike, N: int) -> SpectralField:
    """Project nodal values back onto the first `N` modes.

    The discrete sine sums are exact for every trigonometric integrand
    whose wavenumbers stay below `2G`, so this is the exact left inverse of
    `synthesize` and the exact L² projection of sufficiently low products.

    Args:
        grid: Values on the interior nodes of a uniform grid.
        N: The truncation of the result.

    Returns:
        The projected field.

    Raises:
        GridError: If the grid has the wrong shape for a 1D or 2D field.
    """
    values = np.asarray(grid, dtype=np.float64)
    if values.ndim not in SUPPORTED_DIMS or len(set(values.shape)) != 1:
        raise GridError(f"Can't analyze a grid of shape {values.shape}")
    G = values.shape[0] + 1
    if G <= N:
        raise GridError(f"A grid of {G} intervals can't resolve {N} modes")
    basis = sine_matrix(N, G)
    if values.ndim == 1:
        return SpectralField(basis.T @ values / G)
    return SpectralField(basis.T @ values @ basis / G**2)


##############################################################################
def sobolev_norm(field: SpectralField, r: float) -> float:
    """The homogeneous Sobolev norm `‖u‖_{Ḣʳ}`.

    Args:
        field: The field to measure.
        r: The smoothness index.

    Returns:
        `(Σ λ_kʳ û_k²)^{1/2}`.
    """
    if r == 0:
        return float(np.linalg.norm(field.coeffs))
    lam = eigenvalues(field.N, field.dim)
    return float(np.sqrt(np.sum(lam**r * field.coeffs**2)))


##############################################################################
def project(field: SpectralField, N: int) -> SpectralField:
    """Apply the spectral projection `P_N`.

    Truncating to a larger `N` embeds the field, padding with zeros.

    Args:
        field: The field to project.
        N: The target truncation.

    Returns:
        The projected field.
    """
    if N < 1:
        raise ValueError(f"Truncation must be at least 1, got {N}")
    if N == field.N:
        return field
    if N < field.N:
        return SpectralField(field.coeffs[(slice(0, N),) * field.dim])
    padded = np.zeros((N,) * field.dim)
    padded[(slice(0, field.N),) * field.dim] = field.coeffs
    return SpectralField(padded)


##############################################################################
def constant_projection(value: float, N: int, dim: int) -> SpectralField:
    """Project a constant function onto the first `N` modes analytically.

    Constants aren't trigonometric polynomials, so grid quadrature would
    only approximate this; `⟨1, e_k⟩ = √2(1 - (-1)^k)/(kπ)` per dimension.

    Args:
        value: The constant.
        N: The truncation.
        dim: The spatial dimension.

    Returns:
        `P_N` of the constant function.
    """
    _check_dim(dim)
    k = np.arange(1, N + 1, dtype=np.float64)
    factor = np.sqrt(2.0) * (1.0 - (-1.0) ** k) / (k * np.pi)
    coeffs = factor if dim == 1 else np.outer(factor, factor)
    return SpectralField(value * coeffs)


##############################################################################
@dataclass(frozen=True)
class PhaseState:
    """A position/velocity pair `X = (u, v)`."""

    u: SpectralField
    """The displacement."""

    v: SpectralField
    """The velocity."""

    def __post_init__(self) -> None:
        if not self.u.same_space(self.v):
            raise ShapeMismatchError(
                "Position and velocity must share dimension and truncation"
            )

    @classmethod
    def zeros(cls, N: int, dim: int) -> PhaseState:
        """Make the state at rest at the origin.

        Args:
            N: The truncation per dimension.
            dim: The spatial dimension.

        Returns:
            The zero state.
        """
        zero = SpectralField.zeros(N, dim)
        return cls(zero, zero)

    @property
    def dim(self) -> int:
        """int: The spatial dimension."""
        return self.u.dim

    @property
    def N(self) -> int:
        """int: The truncation per dimension."""
        return self.u.N

    def projected(self, N: int) -> PhaseState:
        """Project both components.

        Args:
            N: The target truncation.

        Returns:
            The projected state.
        """
        return PhaseState(project(self.u, N), project(self.v, N))


##############################################################################
def phase_norm(state: PhaseState, r: float) -> float:
    """The product-space norm `‖X‖_{ℍʳ}` with `ℍʳ = Ḣʳ × Ḣʳ⁻¹`.

    Args:
        state: The state to measure.
        r: The smoothness index.

    Returns:
        `(‖u‖²_{Ḣʳ} + ‖v‖²_{Ḣʳ⁻¹})^{1/2}`.
    """
    return float(np.hypot(sobolev_norm(state.u, r), sobolev_norm(state.v, r - 1)))


### spectral.py ends here
