"""Q-Wiener increments in the truncated sine basis.

The covariance operator is taken to be diagonal in the sine basis, so the
mode-k coefficient of the noise is an independent scalar Brownian motion
scaled by `√η_k`. Increments are drawn at a finest dyadic resolution from a
counter-based generator keyed by `(seed, trajectory id)` with the fine step
index as the counter; coarser increments are exact sums of finer ones.

Gaussian variates come from numpy's `Generator.standard_normal` over a
Philox4x64 stream whose counter starts at `[0, index, 0, 0]`; the stream
advances the first counter word, so steps never share blocks. Given the
same seed, trajectory, spectrum, level and horizon the streams are
bit-identical whatever order they're asked for in and whichever worker
asks.
"""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Final, Iterator, Optional, Tuple

##############################################################################
# NumPy imports.
import numpy as np
from numpy.typing import NDArray

##############################################################################
# Local imports.
from .errors import (
    LevelOutOfRangeError,
    MisalignedStepError,
    PathMemoryError,
    SpectrumError,
)
from .spectral import SpectralField

##############################################################################
log = logging.getLogger(__name__)

DEFAULT_MAX_PATH_BYTES: Final = 512 * 1024 * 1024
"""Default cap on the memory a materialised Brownian path may take."""


##############################################################################
@dataclass(frozen=True, eq=False)
class NoiseSpectrum:
    """The per-mode variances of a diagonal trace-class covariance."""

    eta: NDArray[np.float64]
    """The variances `η_k`, laid out like a field's coefficients."""

    beta: Optional[float] = None
    """User supplied noise regularity tag; metadata only."""

    name: str = "custom"
    """A short description of where the spectrum came from."""

    def __post_init__(self) -> None:
        eta = np.array(self.eta, dtype=np.float64)
        if eta.ndim not in (1, 2) or len(set(eta.shape)) > 1:
            raise SpectrumError(f"A spectrum can't have shape {eta.shape}")
        if not np.all(np.isfinite(eta)) or np.any(eta < 0):
            raise SpectrumError("Spectrum variances must be finite and non-negative")
        eta.setflags(write=False)
        object.__setattr__(self, "eta", eta)

    @property
    def dim(self) -> int:
        """int: The spatial dimension of the spectrum."""
        return self.eta.ndim

    @property
    def N(self) -> int:
        """int: The number of modes per dimension the spectrum covers."""
        return self.eta.shape[0]

    @classmethod
    def power1d(cls, p: float, N: int, beta: Optional[float] = None) -> NoiseSpectrum:
        """The one dimensional family `η_k = k^{-p}`.

        Args:
            p: The decay exponent.
            N: The number of modes.
            beta (optional): Regularity tag to record.

        Returns:
            The spectrum.
        """
        k = np.arange(1, N + 1, dtype=np.float64)
        return cls(k**-p, beta, f"power1d(p={p:g})")

    @classmethod
    def power2d(cls, p: float, N: int, beta: Optional[float] = None) -> NoiseSpectrum:
        """The two dimensional family `η_{k,l} = 1/(k^p + l^p)`.

        Args:
            p: The decay exponent.
            N: The number of modes per dimension.
            beta (optional): Regularity tag to record.

        Returns:
            The spectrum.
        """
        k = np.arange(1, N + 1, dtype=np.float64) ** p
        return cls(1.0 / (k[:, None] + k[None, :]), beta, f"power2d(p={p:g})")

    @classmethod
    def zero(cls, dim: int, N: int) -> NoiseSpectrum:
        """The spectrum of no noise at all.

        Args:
            dim: The spatial dimension.
            N: The number of modes per dimension.

        Returns:
            An all-zero spectrum.
        """
        return cls(np.zeros((N,) * dim), None, "zero")

    @classmethod
    def from_file(
        cls, path: Path, N: Optional[int] = None, beta: Optional[float] = None
    ) -> NoiseSpectrum:
        """Load a spectrum from a plain text file.

        Each non-blank line that isn't a `#` comment holds `k eta` (1D) or
        `k l eta` (2D). Modes not listed have zero variance.

        Args:
            path: The file to load.
            N (optional): Truncation to lay the spectrum out at; defaults to
                the largest mode listed.
            beta (optional): Regularity tag to record.

        Returns:
            The spectrum.

        Raises:
            SpectrumError: If the file is malformed.
        """
        entries: Dict[Tuple[int, ...], float] = {}
        dim: Optional[int] = None
        for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
            if not (line := line.split("#", 1)[0].strip()):
                continue
            parts = line.split()
            if dim is None:
                dim = len(parts) - 1
            if len(parts) - 1 != dim or dim not in (1, 2):
                raise SpectrumError(f"{path}:{number}: expected `k [l] eta`")
            try:
                mode = tuple(int(part) for part in parts[:-1])
                eta = float(parts[-1])
            except ValueError as error:
                raise SpectrumError(f"{path}:{number}: {error}") from None
            if any(k < 1 for k in mode):
                raise SpectrumError(f"{path}:{number}: mode indices start at 1")
            if not np.isfinite(eta) or eta < 0:
                raise SpectrumError(f"{path}:{number}: variance must be non-negative")
            if mode in entries:
                raise SpectrumError(f"{path}:{number}: mode {mode} given twice")
            entries[mode] = eta
        if dim is None:
            raise SpectrumError(f"{path} holds no spectrum entries")
        size = max(max(mode) for mode in entries) if N is None else N
        eta_grid = np.zeros((size,) * dim)
        for mode, eta in entries.items():
            if max(mode) <= size:
                eta_grid[tuple(k - 1 for k in mode)] = eta
        return cls(eta_grid, beta, f"file({Path(path).name})")

    def truncated(self, N: int) -> NDArray[np.float64]:
        """The variances laid out at a given truncation.

        Args:
            N: The truncation per dimension.

        Returns:
            The variances, zero-padded if the spectrum covers fewer modes.
        """
        eta = np.zeros((N,) * self.dim)
        keep = min(N, self.N)
        eta[(slice(0, keep),) * self.dim] = self.eta[(slice(0, keep),) * self.dim]
        return eta


##############################################################################
def trace_truncated(spectrum: NoiseSpectrum, N: int) -> float:
    """The trace of `(P_N Q^{1/2})(P_N Q^{1/2})*`.

    Args:
        spectrum: The covariance spectrum.
        N: The truncation per dimension.

    Returns:
        The sum of the variances of every mode at or below `N`.
    """
    if N < 1:
        raise ValueError(f"Truncation must be at least 1, got {N}")
    return float(spectrum.truncated(N).sum())


##############################################################################
@dataclass
class PathGenerator:
    """A seedable, dyadically refinable source of Wiener increments.

    A generator belongs to one trajectory and one worker. Everything it
    produces is a pure function of its fields, so distinct generators can
    run concurrently without coordination.
    """

    seed: int
    """The base seed of the study."""

    trajectory: int
    """The id of the trajectory the path belongs to."""

    spectrum: NoiseSpectrum
    """The covariance spectrum of the noise."""

    level: int
    """The finest dyadic level; the path has `2**level` steps over `[0, T]`."""

    T: float = 1.0
    """The time horizon."""

    max_path_bytes: int = DEFAULT_MAX_PATH_BYTES
    """Cap on the memory `materialize` may use."""

    _path: Optional[NDArray[np.float64]] = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.level < 0:
            raise LevelOutOfRangeError(f"Level must be non-negative, got {self.level}")
        if self.T <= 0:
            raise ValueError(f"The horizon must be positive, got {self.T}")
        self._scale = np.sqrt(self.spectrum.eta * self.finest_step)
        self._key = np.array(
            [self.seed & 0xFFFFFFFFFFFFFFFF, self.trajectory & 0xFFFFFFFFFFFFFFFF],
            dtype=np.uint64,
        )

    @property
    def steps(self) -> int:
        """int: The number of finest-level steps over the horizon."""
        return 2**self.level

    @property
    def finest_step(self) -> float:
        """float: The finest time resolution."""
        return self.T / self.steps

    def _normals(self, index: int) -> NDArray[np.float64]:
        """Draw the standard normals of one finest step.

        Args:
            index: The finest step index, used as the Philox counter.

        Returns:
            Normals laid out like the spectrum.
        """
        bits = np.random.Philox(
            key=self._key, counter=np.array([0, index, 0, 0], dtype=np.uint64)
        )
        return np.random.Generator(bits).standard_normal(self.spectrum.eta.shape)

    def fine_increment(self, index: int) -> NDArray[np.float64]:
        """The increment over one finest step.

        Args:
            index: The finest step index.

        Returns:
            The coefficient tensor of the increment.
        """
        if not 0 <= index < self.steps:
            raise LevelOutOfRangeError(
                f"Step {index} lies outside the {self.steps} steps of the path"
            )
        if self._path is not None:
            return self._path[index]
        return self._scale * self._normals(index)

    def _stride(self, h: float) -> int:
        """Work out how many finest steps make up a step of size `h`.

        Args:
            h: The step size.

        Returns:
            The number of finest steps in one step of size `h`.

        Raises:
            MisalignedStepError: If `h` isn't `T/2**ℓ` for some `ℓ ≤ level`.
        """
        if h <= 0:
            raise MisalignedStepError(f"Step size must be positive, got {h}")
        ratio = h / self.finest_step
        stride = int(round(ratio))
        if (
            stride < 1
            or stride > self.steps
            or stride & (stride - 1)
            or abs(ratio - stride) > 1e-9 * ratio
        ):
            raise MisalignedStepError(
                f"h = {h} is not a dyadic multiple of the finest step {self.finest_step}"
            )
        return stride

    def _summed(self, start: int, stride: int) -> NDArray[np.float64]:
        """Sum consecutive finest increments in index order.

        Args:
            start: The first finest step.
            stride: How many steps to sum.

        Returns:
            The summed coefficient tensor.
        """
        total = np.array(self.fine_increment(start), copy=True)
        for index in range(start + 1, start + stride):
            total += self.fine_increment(index)
        return total

    def sample_increment(self, m: int, h: float) -> SpectralField:
        """The increment `W(t_{m+1}) - W(t_m)` for steps of size `h`.

        Args:
            m: The step index at resolution `h`.
            h: The step size.

        Returns:
            The increment as a field.
        """
        stride = self._stride(h)
        if not 0 <= m < self.steps // stride:
            raise LevelOutOfRangeError(f"Step {m} lies beyond the horizon for h = {h}")
        return SpectralField(self._summed(m * stride, stride))

    def increments(self, h: float) -> Iterator[SpectralField]:
        """Iterate over every increment of the path at resolution `h`.

        Args:
            h: The step size.

        Yields:
            The increments in time order.
        """
        stride = self._stride(h)
        for increment in self.aggregate(self.level - (stride.bit_length() - 1)):
            yield SpectralField(increment)

    def aggregate(self, coarse_level: int) -> Iterator[NDArray[np.float64]]:
        """Stream the path at a coarser dyadic level.

        Each coarse increment is the sum, in index order, of the
        `2**(level - coarse_level)` finest increments under it.

        Args:
            coarse_level: The level to aggregate to.

        Returns:
            An iterator over `2**coarse_level` coefficient tensors.

        Raises:
            LevelOutOfRangeError: If the level is negative or finer than the
                path's.
        """
        if not 0 <= coarse_level <= self.level:
            raise LevelOutOfRangeError(
                f"Level {coarse_level} is outside 0..{self.level}"
            )
        stride = 2 ** (self.level - coarse_level)
        return (self._summed(m * stride, stride) for m in range(2**coarse_level))

    def materialize(self) -> NDArray[np.float64]:
        """Generate and keep the whole finest-level path.

        Returns:
            The array of every finest increment.

        Raises:
            PathMemoryError: If the path would exceed `max_path_bytes`.
        """
        if self._path is None:
            needed = self.steps * self.spectrum.eta.size * 8
            if needed > self.max_path_bytes:
                raise PathMemoryError(
                    f"Materialising the path needs {needed} bytes, "
                    f"over the cap of {self.max_path_bytes}"
                )
            log.debug(
                "Materialising %d steps for trajectory %d", self.steps, self.trajectory
            )
            path = np.stack([self._scale * self._normals(j) for j in range(self.steps)])
            path.setflags(write=False)
            self._path = path
        return self._path


### noise.py ends here
