"""The Monte Carlo studies: energy law, convergence orders, exponential moments.

Every study runs its trajectories through the same bounded worker pool.
Trajectory `i` draws its noise from the stream keyed `(seed, i)` and the
per-trajectory results are combined in trajectory order, so the output
doesn't depend on how many workers there were or how the work was shared.
"""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, TypeVar

##############################################################################
# NumPy imports.
import numpy as np
from numpy.typing import NDArray

##############################################################################
# SciPy imports.
from scipy.stats import linregress

##############################################################################
# Local imports.
from ..core.errors import ConfigError, DegenerateFitError, PathMemoryError
from ..core.integrator import integrate
from ..core.noise import NoiseSpectrum, PathGenerator, trace_truncated
from ..core.nonlinearity import CubicPolynomial, Potential
from ..core.observables import energy_V1, exp_moment, lp_norm, theorem_error
from ..core.spectral import (
    PhaseState,
    SpectralField,
    constant_projection,
    project,
)
from .config import ExperimentConfig, InitialData, dyadic_steps, quarter_times, sample_steps
from .output import RunManifest, write_csv

##############################################################################
log = logging.getLogger(__name__)

Progress = Callable[[], None]
"""Called once for every finished trajectory."""

OutcomeT = TypeVar("OutcomeT")


##############################################################################
@dataclass(frozen=True)
class SlopeFit:
    """An ordinary least squares line."""

    slope: float
    """The fitted slope."""

    intercept: float
    """The fitted intercept."""

    stderr: float
    """The standard error of the slope."""

    def interval(self, z: float = 1.96) -> Tuple[float, float]:
        """A normal-approximation confidence interval for the slope.

        Args:
            z (optional): The number of standard errors either side.

        Returns:
            The lower and upper ends of the interval.
        """
        return (self.slope - z * self.stderr, self.slope + z * self.stderr)


##############################################################################
def _fit(xs: NDArray[np.float64], ys: NDArray[np.float64]) -> SlopeFit:
    """Fit a straight line.

    Args:
        xs: The abscissae.
        ys: The ordinates.

    Returns:
        The fit.
    """
    if xs.size < 2:
        raise DegenerateFitError("A line needs at least two points")
    if not np.all(np.isfinite(xs)) or not np.all(np.isfinite(ys)):
        raise DegenerateFitError("Can't fit non-finite data")
    if np.ptp(xs) == 0:
        raise DegenerateFitError("Can't fit a line through points sharing one abscissa")
    result = linregress(xs, ys)
    stderr = 0.0 if xs.size == 2 or not np.isfinite(result.stderr) else float(result.stderr)
    return SlopeFit(float(result.slope), float(result.intercept), stderr)


##############################################################################
def fit_slope(points: Sequence[Tuple[float, float]]) -> SlopeFit:
    """Fit a power law by least squares on log-log data.

    Args:
        points: `(x, y)` pairs with both values positive.

    Returns:
        The slope, intercept and slope standard error of `log y` against
        `log x`.

    Raises:
        DegenerateFitError: With fewer than two points, non-positive values
            or a single distinct `x`.
    """
    data = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if np.any(data <= 0):
        raise DegenerateFitError("Log-log fits need positive values")
    return _fit(np.log(data[:, 0]), np.log(data[:, 1]))


##############################################################################
def fit_line(xs: Sequence[float], ys: Sequence[float]) -> SlopeFit:
    """Fit a straight line to untransformed data.

    Args:
        xs: The abscissae.
        ys: The ordinates.

    Returns:
        The fit.
    """
    return _fit(np.asarray(xs, dtype=np.float64), np.asarray(ys, dtype=np.float64))


##############################################################################
@dataclass(frozen=True)
class ModelSetup:
    """The resolved model of a configuration."""

    poly: CubicPolynomial
    """The drift."""

    potential: Potential
    """The potential with its energy constant."""

    dim: int
    """The spatial dimension."""

    u0: InitialData
    """The initial displacement as configured."""

    v0: InitialData
    """The initial velocity as configured."""

    def initial_state(self, N: int) -> PhaseState:
        """Project the initial data onto a truncation.

        Args:
            N: The truncation.

        Returns:
            `(P_N u0, P_N v0)`.
        """
        return PhaseState(
            initial_field(self.u0, N, self.dim), initial_field(self.v0, N, self.dim)
        )


##############################################################################
def initial_field(data: InitialData, N: int, dim: int) -> SpectralField:
    """Project configured initial data.

    Args:
        data: A constant, or mode entries.
        N: The truncation.
        dim: The spatial dimension.

    Returns:
        The projected field; modes beyond `N` are dropped.
    """
    if isinstance(data, (int, float)):
        return constant_projection(float(data), N, dim)
    widest = max([N, *(int(k) for entry in data for k in entry[:-1])])
    modes = [
        (tuple(int(k) for k in entry[:-1]), float(entry[-1])) for entry in data
    ]
    return project(SpectralField.from_modes(widest, dim, modes), N)


##############################################################################
def model_setup(config: ExperimentConfig) -> ModelSetup:
    """Resolve the model section of a configuration.

    Args:
        config: The configuration.

    Returns:
        The drift, potential and initial data.
    """
    model = config.model
    poly = CubicPolynomial(model.c0, model.c1, model.c2, model.c3)
    return ModelSetup(poly, Potential.canonical(poly), model.dim, model.u0, model.v0)


##############################################################################
def build_spectrum(config: ExperimentConfig, N: int) -> NoiseSpectrum:
    """Build the noise spectrum of a configuration.

    Args:
        config: The configuration.
        N: The truncation to lay the spectrum out at.

    Returns:
        The spectrum.
    """
    noise, dim = config.noise, config.model.dim
    if noise.family == "power1d":
        return NoiseSpectrum.power1d(noise.p, N, noise.beta)
    if noise.family == "power2d":
        return NoiseSpectrum.power2d(noise.p, N, noise.beta)
    if noise.family == "file":
        spectrum = NoiseSpectrum.from_file(Path(str(noise.path)), N, noise.beta)
        if spectrum.dim != dim:
            raise ConfigError(f"The spectrum file is {spectrum.dim}D but the model is {dim}D")
        return spectrum
    return NoiseSpectrum.zero(dim, N)


##############################################################################
def make_generator(
    config: ExperimentConfig, trajectory: int, spectrum: NoiseSpectrum, finest_h: float
) -> PathGenerator:
    """Make the Brownian path of one trajectory.

    Args:
        config: The configuration.
        trajectory: The trajectory id.
        spectrum: The noise spectrum.
        finest_h: The finest step the study will ask for.

    Returns:
        The path generator.
    """
    level = dyadic_steps(config.model.T, finest_h)
    if config.noise.level is not None:
        if config.noise.level < level:
            raise ConfigError(
                f"noise.level {config.noise.level} is coarser than the step {finest_h}"
            )
        level = config.noise.level
    return PathGenerator(
        seed=config.mc.seed,
        trajectory=trajectory,
        spectrum=spectrum,
        level=level,
        T=config.model.T,
        max_path_bytes=int(config.noise.max_path_mb * 1024 * 1024),
    )


##############################################################################
@dataclass(frozen=True)
class StudyResult:
    """What a study produced."""

    directory: Path
    """The run directory."""

    csv_path: Path
    """The CSV table."""

    manifest: RunManifest
    """The run manifest."""

    rows: List[Tuple[float, ...]]
    """The rows written to the CSV."""


##############################################################################
class _Outcome(NamedTuple):
    """The per-trajectory result handed back to the reducing process."""

    values: NDArray[np.float64]
    iterations: int
    steps: int
    max_iterations: int


##############################################################################
def _run_trajectories(
    task: Callable[[int], OutcomeT],
    config: ExperimentConfig,
    progress: Optional[Progress] = None,
) -> List[OutcomeT]:
    """Run a task for every trajectory id, in a worker pool if asked to.

    Args:
        task: The per-trajectory task.
        config: The configuration.
        progress (optional): Told about every finished trajectory.

    Returns:
        The outcomes, in trajectory id order.
    """
    ids = range(config.mc.trajectories)
    outcomes: List[OutcomeT] = []
    log.info(
        "Running %d trajectories on %d worker(s)", len(ids), config.mc.workers
    )
    if config.mc.workers == 1:
        for trajectory in ids:
            outcomes.append(task(trajectory))
            if progress is not None:
                progress()
        return outcomes
    with ProcessPoolExecutor(max_workers=config.mc.workers) as pool:
        for outcome in pool.map(task, ids):
            outcomes.append(outcome)
            if progress is not None:
                progress()
    return outcomes


##############################################################################
def _iteration_stats(outcomes: Sequence[_Outcome]) -> Dict[str, float]:
    """Summarise the fixed point iteration counts of a study.

    Args:
        outcomes: The per-trajectory outcomes.

    Returns:
        Mean and maximum iterations per step.
    """
    steps = sum(outcome.steps for outcome in outcomes)
    return {
        "mean_iterations": sum(outcome.iterations for outcome in outcomes) / max(steps, 1),
        "max_iterations": max((outcome.max_iterations for outcome in outcomes), default=0),
    }


##############################################################################
def _mean_and_stderr(
    samples: NDArray[np.float64],
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """The sample mean and its standard error along the trajectory axis.

    Args:
        samples: Samples stacked in trajectory order along axis 0.

    Returns:
        The means and their standard errors.
    """
    n = samples.shape[0]
    mean = samples.mean(axis=0)
    if n < 2:
        return mean, np.zeros_like(mean)
    return mean, samples.std(axis=0, ddof=1) / math.sqrt(n)


##############################################################################
def moment_error(
    errors: NDArray[np.float64], moment: int = 1
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """The `(E‖e‖^{2p})^{1/(2p)}` error statistic with a delta-method stderr.

    Args:
        errors: Per-trajectory errors stacked along axis 0.
        moment (optional): The `p` of the statistic.

    Returns:
        The statistic and its standard error.
    """
    power = 2 * moment
    mean, stderr = _mean_and_stderr(errors**power)
    statistic = mean ** (1.0 / power)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(mean > 0, statistic / (power * mean), 0.0)
    return statistic, stderr * scale


##############################################################################
def _outcome_of(values: NDArray[np.float64], iterations: Sequence[int]) -> _Outcome:
    return _Outcome(values, int(sum(iterations)), len(iterations), max(iterations, default=0))


##############################################################################
def _energy_task(config: ExperimentConfig, trajectory: int) -> _Outcome:
    """Integrate one trajectory and record its energy.

    Args:
        config: The configuration.
        trajectory: The trajectory id.

    Returns:
        The energy at every sample time.
    """
    setup = model_setup(config)
    N, h = config.scheme.N, config.scheme.h
    times = sample_steps(config.output.sample_times, config.model.T, h)
    record = integrate(
        setup.initial_state(N),
        setup.poly,
        config.scheme_config(h, N),
        make_generator(config, trajectory, build_spectrum(config, N), h),
        sample_times=times,
    )
    energies = np.array([energy_V1(state, setup.potential).V1 for state in record.states])
    return _outcome_of(energies, record.iterations)


##############################################################################
def energy_study(config: ExperimentConfig, progress: Optional[Progress] = None) -> StudyResult:
    """Compare the mean energy against the discrete energy evolution law.

    Args:
        config: The configuration.
        progress (optional): Told about every finished trajectory.

    Returns:
        The study result; the CSV has columns `t,mean_V1,stderr,theory`.
    """
    setup = model_setup(config)
    N, h, T = config.scheme.N, config.scheme.h, config.model.T
    config.scheme_config(h, N).check_guards(setup.dim)
    times = np.array(sorted(set(sample_steps(config.output.sample_times, T, h))))
    trace = trace_truncated(build_spectrum(config, N), N)
    initial = energy_V1(setup.initial_state(N), setup.potential).V1
    log.info("Energy study: V1(0) = %.6g, trace = %.6g", initial, trace)

    outcomes = _run_trajectories(partial(_energy_task, config), config, progress)
    mean, stderr = _mean_and_stderr(np.stack([outcome.values for outcome in outcomes]))
    theory = initial + 0.5 * trace * times
    fitted = fit_line(times, mean) if times.size >= 2 else SlopeFit(0.0, float(mean[0]), 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        deviation = np.where(stderr > 0, np.abs(mean - theory) / stderr, 0.0)

    rows = [tuple(row) for row in zip(times, mean, stderr, theory)]
    directory = Path(config.output.directory)
    csv_path = write_csv(directory / "energy.csv", ("t", "mean_V1", "stderr", "theory"), rows)
    derived: Dict[str, Any] = {
        "trace": trace,
        "theory_intercept": initial,
        "theory_slope": 0.5 * trace,
        "fitted_slope": fitted.slope,
        "fitted_intercept": fitted.intercept,
        "fitted_slope_stderr": fitted.stderr,
        "fitted_slope_interval": list(fitted.interval()),
        "max_standard_errors_from_theory": float(np.max(deviation)),
        "solver": config.scheme.solver,
        "epsilon": config.scheme_config(h, N).taming_epsilon,
        **_iteration_stats(outcomes),
    }
    log.info(
        "Energy study: fitted slope %.6g against theory %.6g", fitted.slope, 0.5 * trace
    )
    return _finish("energy-study", config, directory, csv_path, derived, rows)


##############################################################################
def _finish(
    study: str,
    config: ExperimentConfig,
    directory: Path,
    csv_path: Path,
    derived: Dict[str, Any],
    rows: List[Tuple[float, ...]],
) -> StudyResult:
    """Write the manifest and wrap up a study.

    Args:
        study: The study name.
        config: The configuration.
        directory: The run directory.
        csv_path: The CSV the study wrote.
        derived: The derived quantities.
        rows: The CSV rows.

    Returns:
        The study result.
    """
    manifest = RunManifest(
        study=study,
        config=config.to_dict(),
        derived=derived,
        outputs={"csv": csv_path.name},
    )
    manifest.write(directory)
    return StudyResult(directory, csv_path, manifest, rows)


##############################################################################
def _spatial_task(config: ExperimentConfig, trajectory: int) -> _Outcome:
    """Run every truncation of the spatial study on one shared path.

    Args:
        config: The configuration.
        trajectory: The trajectory id.

    Returns:
        The errors against the reference, one row per truncation and one
        column per sample time.
    """
    setup = model_setup(config)
    scheme, T = config.scheme, config.model.T
    h, N_ref = scheme.spatial_h, scheme.N_ref
    times = quarter_times(config.output.sample_times, T)
    generator = make_generator(config, trajectory, build_spectrum(config, N_ref), h)
    try:
        generator.materialize()
    except PathMemoryError:
        log.debug("Trajectory %d: generating the path on demand", trajectory)
    reference = integrate(
        setup.initial_state(N_ref),
        setup.poly,
        config.scheme_config(h, N_ref),
        generator,
        sample_times=times,
    )
    errors = np.zeros((len(scheme.N_list), len(times)))
    iterations = list(reference.iterations)
    for row, N in enumerate(scheme.N_list):
        if N == N_ref:
            continue
        run = integrate(
            setup.initial_state(N),
            setup.poly,
            config.scheme_config(h, N),
            generator,
            sample_times=times,
        )
        iterations.extend(run.iterations)
        errors[row] = [
            theorem_error(coarse, fine)
            for coarse, fine in zip(run.states, reference.states)
        ]
    return _outcome_of(errors, iterations)


##############################################################################
def spatial_convergence(
    config: ExperimentConfig, progress: Optional[Progress] = None
) -> StudyResult:
    """Estimate the strong order of the spectral Galerkin truncation.

    The error for each `N` is the largest, over the sample times, of the
    Monte Carlo error statistic against the `N_ref` run on the same path.
    The reported order is the slope of `log error` against `log(1/N)`. The
    error bound `λ_N^{-β/2}` decays like `N^{-β}`, so the theory slope is
    the noise regularity `β` itself.

    Args:
        config: The configuration.
        progress (optional): Told about every finished trajectory.

    Returns:
        The study result; the CSV has columns `param,error,stderr`.
    """
    scheme = config.scheme
    for N in (*scheme.N_list, scheme.N_ref):
        config.scheme_config(scheme.spatial_h, N).check_guards(config.model.dim)
    outcomes = _run_trajectories(partial(_spatial_task, config), config, progress)
    statistic, stderr = moment_error(
        np.stack([outcome.values for outcome in outcomes]), scheme.moment
    )
    worst = np.argmax(statistic, axis=1)
    errors = statistic[np.arange(len(scheme.N_list)), worst]
    errors_stderr = stderr[np.arange(len(scheme.N_list)), worst]

    rows = [
        (float(N), float(error), float(se))
        for N, error, se in zip(scheme.N_list, errors, errors_stderr)
        if N != scheme.N_ref
    ]
    rows.append((float(scheme.N_ref), 0.0, 0.0))
    fitted = _order_fit([(1.0 / N, error) for N, error, _ in rows[:-1]])
    directory = Path(config.output.directory)
    csv_path = write_csv(directory / "spatial.csv", ("param", "error", "stderr"), rows)
    derived: Dict[str, Any] = {
        "N_ref": scheme.N_ref,
        "h": scheme.spatial_h,
        "moment": scheme.moment,
        "theory_slope": config.noise.beta,
        "beta": config.noise.beta,
        "strictly_decreasing": bool(np.all(np.diff([row[1] for row in sorted(rows[:-1])]) < 0)),
        "solver": config.scheme.solver,
        **_fit_summary(fitted),
        **_iteration_stats(outcomes),
    }
    return _finish("converge-space", config, directory, csv_path, derived, rows)


##############################################################################
def _order_fit(points: Sequence[Tuple[float, float]]) -> Optional[SlopeFit]:
    """Fit an order of convergence if there's enough usable data.

    Args:
        points: `(resolution, error)` pairs.

    Returns:
        The fit, or `None` if fewer than two points have positive errors.
    """
    usable = [(x, y) for x, y in points if y > 0]
    if len(usable) < 2:
        log.warning("Not enough positive errors to fit an order of convergence")
        return None
    fitted = fit_slope(usable)
    log.info("Fitted order %.4g ± %.2g", fitted.slope, fitted.stderr)
    return fitted


##############################################################################
def _fit_summary(fitted: Optional[SlopeFit]) -> Dict[str, Any]:
    """Describe a fit for the manifest.

    Args:
        fitted: The fit, if there is one.

    Returns:
        The fitted slope, its stderr and interval.
    """
    if fitted is None:
        return {"fitted_slope": None, "fitted_slope_stderr": None}
    return {
        "fitted_slope": fitted.slope,
        "fitted_intercept": fitted.intercept,
        "fitted_slope_stderr": fitted.stderr,
        "fitted_slope_interval": list(fitted.interval()),
    }


##############################################################################
def _temporal_task(config: ExperimentConfig, trajectory: int) -> _Outcome:
    """Run every step size of the temporal study on one shared path.

    Args:
        config: The configuration.
        trajectory: The trajectory id.

    Returns:
        The error at the horizon against the reference, per step size.
    """
    setup = model_setup(config)
    scheme, T = config.scheme, config.model.T
    N = scheme.N
    generator = make_generator(config, trajectory, build_spectrum(config, N), scheme.h_ref)
    generator.materialize()
    initial = setup.initial_state(N)
    reference = integrate(
        initial, setup.poly, config.scheme_config(scheme.h_ref, N), generator, sample_times=[T]
    )
    errors = np.zeros(len(scheme.h_list))
    iterations = list(reference.iterations)
    for row, h in enumerate(scheme.h_list):
        if math.isclose(h, scheme.h_ref):
            continue
        run = integrate(initial, setup.poly, config.scheme_config(h, N), generator, sample_times=[T])
        iterations.extend(run.iterations)
        errors[row] = theorem_error(run.final, reference.final)
    return _outcome_of(errors, iterations)


##############################################################################
def temporal_convergence(
    config: ExperimentConfig, progress: Optional[Progress] = None
) -> StudyResult:
    """Estimate the strong order in time on shared dyadic Brownian paths.

    Args:
        config: The configuration.
        progress (optional): Told about every finished trajectory.

    Returns:
        The study result; the CSV has columns `param,error,stderr`.
    """
    scheme = config.scheme
    for h in (*scheme.h_list, scheme.h_ref):
        config.scheme_config(h, scheme.N).check_guards(config.model.dim)
    outcomes = _run_trajectories(partial(_temporal_task, config), config, progress)
    errors, stderr = moment_error(
        np.stack([outcome.values for outcome in outcomes]), scheme.moment
    )
    rows = [
        (float(h), float(error), float(se))
        for h, error, se in zip(scheme.h_list, errors, stderr)
        if not math.isclose(h, scheme.h_ref)
    ]
    rows.append((float(scheme.h_ref), 0.0, 0.0))
    fitted = _order_fit([(h, error) for h, error, _ in rows[:-1]])
    ordered = sorted(rows[:-1])
    beta = config.noise.beta
    directory = Path(config.output.directory)
    csv_path = write_csv(directory / "temporal.csv", ("param", "error", "stderr"), rows)
    derived: Dict[str, Any] = {
        "N": scheme.N,
        "h_ref": scheme.h_ref,
        "moment": scheme.moment,
        "beta": beta,
        "theory_slope": None if beta is None else min(beta, 2.0) / 2,
        "strictly_decreasing": bool(np.all(np.diff([row[1] for row in ordered]) > 0)),
        "solver": config.scheme.solver,
        **_fit_summary(fitted),
        **_iteration_stats(outcomes),
    }
    return _finish("converge-time", config, directory, csv_path, derived, rows)


##############################################################################
def _moment_task(config: ExperimentConfig, trajectory: int) -> _Outcome:
    """Integrate one trajectory and record `‖u‖_{L⁶}` at every step.

    Args:
        config: The configuration.
        trajectory: The trajectory id.

    Returns:
        The L⁶ norms of the displacement at steps `0..M`.
    """
    setup = model_setup(config)
    N, h, T = config.scheme.N, config.scheme.h, config.model.T
    norms: List[float] = []
    record = integrate(
        setup.initial_state(N),
        setup.poly,
        config.scheme_config(h, N),
        make_generator(config, trajectory, build_spectrum(config, N), h),
        observers=[lambda _step, _t, state: norms.append(lp_norm(state.u, 6))],
        sample_times=[T],
    )
    return _outcome_of(np.array(norms), record.iterations)


##############################################################################
def exp_moment_study(
    config: ExperimentConfig,
    c_list: Optional[Sequence[float]] = None,
    progress: Optional[Progress] = None,
) -> StudyResult:
    """Estimate `E exp(c·h·Σᵢ‖uᵢ‖²_{L⁶})` for several `c`.

    Args:
        config: The configuration.
        c_list (optional): The exponent scales; the configured list if not
            given.
        progress (optional): Told about every finished trajectory.

    Returns:
        The study result; the CSV has columns `c,estimate,stderr` for the
        full horizon, the manifest adds estimates at the quarter horizons.
    """
    c_values = tuple(config.output.c_list if c_list is None else c_list)
    N, h, T = config.scheme.N, config.scheme.h, config.model.T
    config.scheme_config(h, N).check_guards(config.model.dim)
    outcomes = _run_trajectories(partial(_moment_task, config), config, progress)
    norms = np.stack([outcome.values for outcome in outcomes])

    rows = []
    horizons: Dict[str, Dict[str, List[float]]] = {}
    for c in c_values:
        estimate = exp_moment(norms, c, h)
        rows.append((float(c), estimate.estimate, estimate.stderr))
        by_horizon = horizons.setdefault(f"{c:g}", {"t": [], "estimate": [], "log_estimate": []})
        for t in quarter_times((), T):
            partial_estimate = exp_moment(norms[:, : int(round(t / h)) + 1], c, h)
            by_horizon["t"].append(t)
            by_horizon["estimate"].append(partial_estimate.estimate)
            by_horizon["log_estimate"].append(partial_estimate.log_estimate)
    directory = Path(config.output.directory)
    csv_path = write_csv(directory / "exp_moment.csv", ("c", "estimate", "stderr"), rows)
    derived = {"by_horizon": horizons, **_iteration_stats(outcomes)}
    return _finish("exp-moment", config, directory, csv_path, derived, rows)


##############################################################################
def simulate(config: ExperimentConfig, trajectory: int = 0) -> StudyResult:
    """Run a single trajectory and tabulate its energy and norms.

    Args:
        config: The configuration.
        trajectory (optional): The trajectory id to run.

    Returns:
        The study result; the CSV has columns
        `t,V1,kinetic,elastic,potential,l6_norm`.
    """
    setup = model_setup(config)
    N, h, T = config.scheme.N, config.scheme.h, config.model.T
    scheme = config.scheme_config(h, N)
    scheme.check_guards(setup.dim)
    record = integrate(
        setup.initial_state(N),
        setup.poly,
        scheme,
        make_generator(config, trajectory, build_spectrum(config, N), h),
        sample_times=sample_steps(config.output.sample_times, T, h),
    )
    rows = []
    for t, state in zip(record.times, record.states):
        energy = energy_V1(state, setup.potential, t)
        rows.append(
            (t, energy.V1, energy.kinetic, energy.elastic, energy.potential, lp_norm(state.u, 6))
        )
    directory = Path(config.output.directory)
    csv_path = write_csv(
        directory / "simulate.csv",
        ("t", "V1", "kinetic", "elastic", "potential", "l6_norm"),
        rows,
    )
    derived = {
        "trajectory": trajectory,
        "tamed_steps": record.tamed_steps,
        **_iteration_stats([_outcome_of(np.zeros(0), record.iterations)]),
    }
    return _finish("simulate", config, directory, csv_path, derived, rows)


### studies.py ends here
