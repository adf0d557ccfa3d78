"""Experiment configuration, loaded from TOML or from a run manifest."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Type, TypeVar, Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

##############################################################################
# Local imports.
from ..core.errors import ConfigError
from ..core.integrator import SchemeConfig, Solver

##############################################################################
InitialData = Union[float, Tuple[Tuple[float, ...], ...]]
"""A constant, or mode entries `(k, amplitude)` / `(k, l, amplitude)`."""

SectionT = TypeVar("SectionT")

SPECTRUM_FAMILIES = ("power1d", "power2d", "file", "zero")
"""The noise spectrum families a configuration can name."""


##############################################################################
@dataclass(frozen=True)
class ModelConfig:
    """The equation being solved."""

    dim: int = 2
    """The spatial dimension."""

    c0: float = 0.0
    """Constant coefficient of the drift."""

    c1: float = 0.0
    """Linear coefficient of the drift."""

    c2: float = 0.0
    """Quadratic coefficient of the drift."""

    c3: float = 1.0
    """Cubic coefficient of the drift."""

    u0: InitialData = 0.0
    """The initial displacement."""

    v0: InitialData = 1.0
    """The initial velocity."""

    T: float = 1.0
    """The time horizon."""


##############################################################################
@dataclass(frozen=True)
class NoiseConfig:
    """The driving noise."""

    family: str = "power2d"
    """One of `power1d`, `power2d`, `file` or `zero`."""

    p: float = 3.0
    """The decay exponent of the power families."""

    path: Optional[str] = None
    """The spectrum file for the `file` family."""

    beta: Optional[float] = None
    """The noise regularity tag, recorded in the manifest."""

    level: Optional[int] = None
    """The finest dyadic level; defaults to the finest step the study needs."""

    max_path_mb: float = 512.0
    """Cap on the memory a materialised Brownian path may take."""


##############################################################################
@dataclass(frozen=True)
class SchemeSection:
    """The discretisation settings."""

    h: float = 2.0**-6
    """The time step of single-resolution studies."""

    h_list: Tuple[float, ...] = (2.0**-2, 2.0**-3, 2.0**-4, 2.0**-5, 2.0**-6)
    """The step sizes of the temporal convergence study."""

    h_ref: float = 2.0**-9
    """The reference step of the temporal convergence study."""

    N: int = 16
    """The truncation of single-resolution studies."""

    N_list: Tuple[int, ...] = (8, 16, 32)
    """The truncations of the spatial convergence study."""

    N_ref: int = 64
    """The reference truncation of the spatial convergence study."""

    spatial_h: float = 2.0**-8
    """The time step of the spatial convergence study."""

    solver: str = Solver.ITERATION1.value
    """The fixed point iteration to use."""

    tol: float = 1e-12
    """The fixed point stopping tolerance."""

    max_iter: int = 100
    """The fixed point iteration cap."""

    epsilon: Optional[float] = None
    """The taming parameter of iteration2; `h^{1/4}` when not given."""

    moment: int = 1
    """The `p` in the `(E‖e‖^{2p})^{1/(2p)}` error statistic."""


##############################################################################
@dataclass(frozen=True)
class MonteCarloConfig:
    """The Monte Carlo settings."""

    trajectories: int = 100
    """The number of trajectories."""

    seed: int = 20210601
    """The base seed; trajectory `i` uses the stream keyed `(seed, i)`."""

    workers: int = 1
    """The number of worker processes."""


##############################################################################
@dataclass(frozen=True)
class OutputConfig:
    """Where and when results are written."""

    directory: str = "runs"
    """The directory study output goes under."""

    sample_times: Tuple[float, ...] = ()
    """Times to record; every step (energy) or the quarter points otherwise."""

    c_list: Tuple[float, ...] = (0.5, 1.0)
    """The exponent scales of the exponential moment study."""


##############################################################################
@dataclass(frozen=True)
class ExperimentConfig:
    """A complete, resolved experiment configuration."""

    model: ModelConfig = field(default_factory=ModelConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    scheme: SchemeSection = field(default_factory=SchemeSection)
    mc: MonteCarloConfig = field(default_factory=MonteCarloConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> ExperimentConfig:
        """Build a configuration from nested dictionaries.

        Args:
            data: One dictionary per section.

        Returns:
            The validated configuration.

        Raises:
            ConfigError: If a section or key is unknown or a value invalid.
        """
        sections = {item.name: item for item in fields(cls)}
        if unknown := set(data) - set(sections):
            raise ConfigError(f"Unknown configuration sections: {', '.join(sorted(unknown))}")
        built = {
            name: _build_section(_SECTION_TYPES[name], data.get(name, {}), name)
            for name in sections
        }
        config = cls(**built)
        config.validate()
        return config

    @classmethod
    def load(cls, path: Path) -> ExperimentConfig:
        """Load a configuration from a TOML file or a run manifest.

        Args:
            path: The file to load.

        Returns:
            The validated configuration.
        """
        path = Path(path)
        try:
            if path.suffix.lower() == ".json":
                manifest = json.loads(path.read_text())
                if "config" not in manifest:
                    raise ConfigError(f"{path} is not a run manifest")
                return cls.from_dict(manifest["config"])
            with path.open("rb") as source:
                return cls.from_dict(tomllib.load(source))
        except (OSError, json.JSONDecodeError, tomllib.TOMLDecodeError) as error:
            raise ConfigError(f"Can't read {path}: {error}") from None

    def to_dict(self) -> Dict[str, Any]:
        """Turn the configuration into plain JSON-friendly data.

        Returns:
            Nested dictionaries of lists and scalars.
        """
        return _plain(asdict(self))

    def with_overrides(
        self,
        *,
        directory: Optional[str] = None,
        seed: Optional[int] = None,
        trajectories: Optional[int] = None,
        workers: Optional[int] = None,
    ) -> ExperimentConfig:
        """Apply command line overrides.

        Args:
            directory (optional): Output directory.
            seed (optional): Base seed.
            trajectories (optional): Number of trajectories.
            workers (optional): Number of worker processes.

        Returns:
            The overridden, revalidated configuration.
        """
        mc = self.mc
        if seed is not None:
            mc = replace(mc, seed=seed)
        if trajectories is not None:
            mc = replace(mc, trajectories=trajectories)
        if workers is not None:
            mc = replace(mc, workers=workers)
        output = self.output if directory is None else replace(self.output, directory=directory)
        config = replace(self, mc=mc, output=output)
        config.validate()
        return config

    def validate(self) -> None:
        """Check the cross-field invariants of the configuration.

        Raises:
            ConfigError: If any of them fail.
        """
        model, noise, scheme, mc = self.model, self.noise, self.scheme, self.mc
        if model.dim not in (1, 2):
            raise ConfigError(f"model.dim must be 1 or 2, not {model.dim}")
        if not model.T > 0:
            raise ConfigError("model.T must be positive")
        if noise.family not in SPECTRUM_FAMILIES:
            raise ConfigError(f"noise.family must be one of {', '.join(SPECTRUM_FAMILIES)}")
        if noise.family == "file" and not noise.path:
            raise ConfigError("noise.path is needed for the file family")
        if noise.family in ("power1d", "power2d") and noise.family[-2] != str(model.dim):
            raise ConfigError(f"noise.family {noise.family} doesn't match model.dim")
        try:
            Solver(scheme.solver)
        except ValueError:
            raise ConfigError(f"Unknown solver {scheme.solver!r}") from None
        if scheme.moment not in (1, 2):
            raise ConfigError("scheme.moment must be 1 or 2")
        if not scheme.tol > 0 or scheme.max_iter < 1:
            raise ConfigError("scheme.tol must be positive and scheme.max_iter at least 1")
        for h in (scheme.h, scheme.h_ref, scheme.spatial_h, *scheme.h_list):
            dyadic_steps(model.T, h)
        for h in scheme.h_list:
            ratio = h / scheme.h_ref
            if ratio < 1 or not _is_power_of_two(ratio):
                raise ConfigError(f"h = {h} is not a dyadic multiple of h_ref = {scheme.h_ref}")
        if scheme.N < 1 or scheme.N_ref < 1 or any(N < 1 for N in scheme.N_list):
            raise ConfigError("Truncations must be at least 1")
        if any(N > scheme.N_ref for N in scheme.N_list):
            raise ConfigError("Every entry of scheme.N_list must be at most scheme.N_ref")
        if mc.trajectories < 1 or mc.workers < 1:
            raise ConfigError("mc.trajectories and mc.workers must be at least 1")
        if any(not 0 <= t <= model.T for t in self.output.sample_times):
            raise ConfigError("output.sample_times must lie in [0, T]")
        if any(c < 0 for c in self.output.c_list):
            raise ConfigError("output.c_list entries must not be negative")

    def scheme_config(self, h: float, N: int) -> SchemeConfig:
        """Make the integrator configuration for one resolution.

        Args:
            h: The time step.
            N: The truncation.

        Returns:
            The scheme configuration.
        """
        return SchemeConfig(
            h=h,
            N=N,
            T=self.model.T,
            solver=Solver(self.scheme.solver),
            tol=self.scheme.tol,
            max_iter=self.scheme.max_iter,
            epsilon=self.scheme.epsilon,
        )


##############################################################################
_SECTION_TYPES: Dict[str, Type[Any]] = {
    "model": ModelConfig,
    "noise": NoiseConfig,
    "scheme": SchemeSection,
    "mc": MonteCarloConfig,
    "output": OutputConfig,
}


##############################################################################
def _build_section(kind: Type[SectionT], values: Any, name: str) -> SectionT:
    """Build one section of the configuration.

    Args:
        kind: The dataclass of the section.
        values: The raw values.
        name: The section name, for error messages.

    Returns:
        The section.
    """
    if not isinstance(values, dict):
        raise ConfigError(f"[{name}] must be a table")
    known = {item.name for item in fields(kind)}  # type: ignore[arg-type]
    if unknown := set(values) - known:
        raise ConfigError(f"Unknown keys in [{name}]: {', '.join(sorted(unknown))}")
    try:
        return kind(**{key: _frozen(value) for key, value in values.items()})
    except TypeError as error:
        raise ConfigError(f"[{name}]: {error}") from None


##############################################################################
def _frozen(value: Any) -> Any:
    """Turn lists into tuples, recursively.

    Args:
        value: The raw value.

    Returns:
        The value with every list made a tuple.
    """
    if isinstance(value, (list, tuple)):
        return tuple(_frozen(item) for item in value)
    return value


##############################################################################
def _plain(value: Any) -> Any:
    """Turn tuples into lists, recursively.

    Args:
        value: The value.

    Returns:
        The value with every tuple made a list.
    """
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


##############################################################################
def _is_power_of_two(value: float) -> bool:
    """Is a (nominally integral) ratio a power of two?

    Args:
        value: The ratio.

    Returns:
        `True` if it is within rounding of `2**k` for some `k ≥ 0`.
    """
    whole = int(round(value))
    return whole >= 1 and abs(value - whole) <= 1e-9 * value and not whole & (whole - 1)


##############################################################################
def dyadic_steps(T: float, h: float) -> int:
    """Check that a step divides the horizon dyadically.

    Args:
        T: The horizon.
        h: The step size.

    Returns:
        The level `ℓ` with `h = T/2**ℓ`.

    Raises:
        ConfigError: If `T/h` isn't a power of two.
    """
    if not h > 0 or not _is_power_of_two(T / h):
        raise ConfigError(f"h = {h} doesn't split T = {T} into a power of two steps")
    return int(round(math.log2(T / h)))


##############################################################################
def sample_steps(times: Sequence[float], T: float, h: float) -> Tuple[float, ...]:
    """Resolve sample times, defaulting to every step.

    Args:
        times: The configured times, possibly empty.
        T: The horizon.
        h: The time step.

    Returns:
        The times to record.
    """
    if times:
        return tuple(times)
    return tuple(m * h for m in range(int(round(T / h)) + 1))


##############################################################################
def quarter_times(times: Sequence[float], T: float) -> Tuple[float, ...]:
    """Resolve sample times, defaulting to the quarter points of the horizon.

    Args:
        times: The configured times, possibly empty.
        T: The horizon.

    Returns:
        The times to record.
    """
    return tuple(times) if times else (T / 4, T / 2, 3 * T / 4, T)


### config.py ends here
