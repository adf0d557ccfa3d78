"""The exceptions raised by the solver library and the experiment harness."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
from typing import Optional


##############################################################################
class AVFWaveError(Exception):
    """Base class for all errors raised by avfwave."""


##############################################################################
class GridError(AVFWaveError, ValueError):
    """A collocation grid is too small or has the wrong shape."""


##############################################################################
class ShapeMismatchError(AVFWaveError, ValueError):
    """Two fields that must share dimension and truncation do not."""


##############################################################################
class SpectrumError(AVFWaveError, ValueError):
    """A noise spectrum is malformed."""


##############################################################################
class MisalignedStepError(AVFWaveError, ValueError):
    """A step size is not a dyadic multiple of a path's finest step."""


##############################################################################
class LevelOutOfRangeError(AVFWaveError, ValueError):
    """A dyadic refinement level lies outside what a path provides."""


##############################################################################
class PathMemoryError(AVFWaveError):
    """Materialising a Brownian path would exceed the configured cap."""


##############################################################################
class PolynomialError(AVFWaveError, ValueError):
    """A drift polynomial does not have a strictly positive cubic term."""


##############################################################################
class UnsupportedNormError(AVFWaveError, ValueError):
    """A Lebesgue exponent that isn't supported was requested."""


##############################################################################
class EmptySampleError(AVFWaveError, ValueError):
    """A Monte Carlo statistic was asked for with no samples."""


##############################################################################
class DegenerateFitError(AVFWaveError, ValueError):
    """A slope fit was asked for with unusable data."""


##############################################################################
class ConfigError(AVFWaveError, ValueError):
    """An experiment configuration is invalid."""


##############################################################################
class SolverDivergenceError(AVFWaveError):
    """The fixed point iteration of the implicit substep did not converge."""

    def __init__(
        self,
        residual: float,
        iterations: int,
        *,
        step: Optional[int] = None,
        trajectory: Optional[int] = None,
    ) -> None:
        """Initialise the error.

        Args:
            residual: The last successive-iterate distance.
            iterations: The number of iterations performed.
            step (optional): The time step index the failure happened at.
            trajectory (optional): The trajectory the failure happened in.
        """
        self.residual = residual
        self.iterations = iterations
        self.step = step
        self.trajectory = trajectory
        super().__init__(self._describe())

    def _describe(self) -> str:
        """Build the message for the error.

        Returns:
            A description of where and how the iteration failed.
        """
        where = ""
        if self.trajectory is not None:
            where += f" in trajectory {self.trajectory}"
        if self.step is not None:
            where += f" at step {self.step}"
        return (
            f"Fixed point iteration failed to converge{where} after "
            f"{self.iterations} iterations (residual {self.residual:.3e}); "
            "the step size is probably too large for the current state"
        )

    def located(
        self, *, step: Optional[int] = None, trajectory: Optional[int] = None
    ) -> SolverDivergenceError:
        """Make a copy of the error with location information attached.

        Args:
            step (optional): The time step index.
            trajectory (optional): The trajectory id.

        Returns:
            A new error carrying the location.
        """
        return SolverDivergenceError(
            self.residual,
            self.iterations,
            step=self.step if step is None else step,
            trajectory=self.trajectory if trajectory is None else trajectory,
        )


### errors.py ends here
