"""Tests for the Monte Carlo studies."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import csv
import json
import math
from pathlib import Path
from typing import Any, Dict, List

##############################################################################
# NumPy imports.
import numpy as np

##############################################################################
# Pytest imports.
import pytest

##############################################################################
# Local imports.
from avfwave.core.errors import ConfigError, DegenerateFitError, PathMemoryError
from avfwave.core.noise import NoiseSpectrum, trace_truncated
from avfwave.core.spectral import constant_projection
from avfwave.harness.config import ExperimentConfig
from avfwave.harness.output import MANIFEST_NAME, RunManifest, format_number
from avfwave.harness.studies import (
    build_spectrum,
    energy_study,
    exp_moment_study,
    fit_line,
    fit_slope,
    initial_field,
    make_generator,
    moment_error,
    simulate,
    spatial_convergence,
    temporal_convergence,
)


##############################################################################
def small_config(tmp_path: Path, **sections: Dict[str, Any]) -> ExperimentConfig:
    """A 1D configuration small enough to run in a moment."""
    data: Dict[str, Dict[str, Any]] = {
        "model": {"dim": 1},
        "noise": {"family": "power1d", "p": 2.0, "beta": 1.0},
        "scheme": {
            "h": 2.0**-4,
            "h_list": [0.25, 0.125],
            "h_ref": 2.0**-5,
            "N": 4,
            "N_list": [2, 4],
            "N_ref": 8,
            "spatial_h": 2.0**-4,
        },
        "mc": {"trajectories": 3, "seed": 11},
        "output": {"directory": str(tmp_path / "run")},
    }
    for name, values in sections.items():
        data[name] = {**data.get(name, {}), **values}
    return ExperimentConfig.from_dict(data)


##############################################################################
def read_rows(path: Path) -> List[List[str]]:
    """Read a CSV back in."""
    with path.open(newline="") as source:
        return list(csv.reader(source))


##############################################################################
def test_fit_slope_of_exact_power_laws() -> None:
    """Exact power laws give their exponent with no error."""
    identity = fit_slope([(x, x) for x in (1.0, 2.0, 4.0, 8.0)])
    assert identity.slope == pytest.approx(1.0)
    assert identity.stderr == pytest.approx(0.0, abs=1e-12)
    square = fit_slope([(x, 3 * x**2) for x in (0.5, 1.0, 2.0)])
    assert square.slope == pytest.approx(2.0)
    assert square.intercept == pytest.approx(math.log(3))


##############################################################################
def test_fit_slope_of_noisy_data(rng: np.random.Generator) -> None:
    """A noisy power law is recovered within its tolerance."""
    xs = 2.0 ** -np.arange(2, 8)
    ys = xs**1.5 * (1 + 0.01 * rng.standard_normal(xs.size))
    fitted = fit_slope(list(zip(xs, ys)))
    assert fitted.slope == pytest.approx(1.5, abs=0.1)
    low, high = fitted.interval()
    assert low <= fitted.slope <= high


##############################################################################
@pytest.mark.parametrize(
    "points",
    [[], [(1.0, 1.0)], [(1.0, 1.0), (2.0, 0.0)], [(-1.0, 1.0), (2.0, 1.0)], [(2.0, 1.0), (2.0, 3.0)]],
)
def test_fit_slope_refuses_degenerate_data(points) -> None:
    """Too few, non-positive or single-abscissa data can't be fitted."""
    with pytest.raises(DegenerateFitError):
        fit_slope(points)


##############################################################################
def test_fit_line() -> None:
    """Linear fits work on untransformed data."""
    fitted = fit_line([0.0, 1.0, 2.0], [1.0, 3.0, 5.0])
    assert (fitted.slope, fitted.intercept) == (pytest.approx(2.0), pytest.approx(1.0))


##############################################################################
def test_moment_error() -> None:
    """The error statistic is the root mean square by default."""
    errors = np.array([[3.0], [4.0]])
    statistic, stderr = moment_error(errors)
    assert statistic[0] == pytest.approx(math.sqrt(12.5))
    assert stderr[0] > 0
    quartic, _ = moment_error(errors, 2)
    assert quartic[0] == pytest.approx(((81 + 256) / 2) ** 0.25)
    zero, zero_stderr = moment_error(np.zeros((3, 2)))
    assert not np.any(zero) and not np.any(zero_stderr)


##############################################################################
def test_initial_fields() -> None:
    """Initial data is a projected constant or a list of modes."""
    assert initial_field(1.0, 4, 2) == constant_projection(1.0, 4, 2)
    field = initial_field(((1, 0.5), (6, 2.0)), 4, 1)
    assert field.N == 4
    assert np.array_equal(field.coeffs, [0.5, 0.0, 0.0, 0.0])


##############################################################################
def test_spectrum_families(tmp_path: Path) -> None:
    """Every configured family builds a spectrum of the right shape."""
    assert build_spectrum(small_config(tmp_path), 4).eta.shape == (4,)
    zero = small_config(tmp_path, noise={"family": "zero"})
    assert not np.any(build_spectrum(zero, 4).eta)
    (source := tmp_path / "eta.txt").write_text("1 1 0.5\n2 2 0.25\n")
    from_file = small_config(tmp_path, model={"dim": 2}, noise={"family": "file", "path": str(source)})
    assert build_spectrum(from_file, 3).eta.shape == (3, 3)
    mismatched = small_config(tmp_path, noise={"family": "file", "path": str(source)})
    with pytest.raises(ConfigError):
        build_spectrum(mismatched, 3)


##############################################################################
def test_generator_level(tmp_path: Path) -> None:
    """The path resolution defaults to the finest step asked for."""
    config = small_config(tmp_path)
    spectrum = NoiseSpectrum.power1d(2, 4)
    assert make_generator(config, 0, spectrum, 2.0**-5).level == 5
    finer = small_config(tmp_path, noise={"level": 8})
    assert make_generator(finer, 0, spectrum, 2.0**-5).level == 8
    coarser = small_config(tmp_path, noise={"level": 2})
    with pytest.raises(ConfigError):
        make_generator(coarser, 0, spectrum, 2.0**-5)


##############################################################################
def test_simulate(tmp_path: Path) -> None:
    """A single trajectory is tabulated at every step."""
    result = simulate(small_config(tmp_path))
    rows = read_rows(result.csv_path)
    assert rows[0] == ["t", "V1", "kinetic", "elastic", "potential", "l6_norm"]
    assert len(rows) == 1 + 17
    assert float(rows[1][0]) == 0.0 and float(rows[-1][0]) == 1.0
    assert (result.directory / MANIFEST_NAME).is_file()
    assert result.manifest.study == "simulate"


##############################################################################
def test_energy_study_without_noise_conserves(tmp_path: Path) -> None:
    """With no noise the mean energy is flat."""
    result = energy_study(small_config(tmp_path, noise={"family": "zero"}))
    derived = result.manifest.derived
    assert derived["trace"] == 0.0
    assert abs(derived["fitted_slope"]) < 1e-8
    rows = read_rows(result.csv_path)
    assert rows[0] == ["t", "mean_V1", "stderr", "theory"]
    for _, mean, stderr, theory in rows[1:]:
        assert float(mean) == pytest.approx(float(theory), abs=1e-9)
        assert float(stderr) == pytest.approx(0.0, abs=1e-9)


##############################################################################
def test_energy_study_theory_line(tmp_path: Path) -> None:
    """The theory column grows by half the truncated trace."""
    config = small_config(tmp_path, output={"sample_times": [0.0, 0.5, 1.0]})
    result = energy_study(config)
    trace = trace_truncated(NoiseSpectrum.power1d(2.0, 4), 4)
    derived = result.manifest.derived
    assert derived["trace"] == pytest.approx(trace)
    assert derived["theory_slope"] == pytest.approx(trace / 2)
    assert derived["mean_iterations"] >= 1
    theory = [float(row[3]) for row in read_rows(result.csv_path)[1:]]
    assert theory[2] - theory[0] == pytest.approx(trace / 2)
    assert len(theory) == 3


##############################################################################
def test_studies_are_reproducible_across_workers(tmp_path: Path) -> None:
    """Worker count doesn't change a single byte of the output."""
    serial = energy_study(small_config(tmp_path / "serial"))
    parallel = energy_study(small_config(tmp_path / "parallel", mc={"workers": 2}))
    assert serial.csv_path.read_bytes() == parallel.csv_path.read_bytes()


##############################################################################
def test_energy_standard_error_shrinks_with_trajectories(tmp_path: Path) -> None:
    """Doubling the trajectories cuts the standard error by about `1/√2`."""

    def final_stderr(trajectories: int, where: str) -> float:
        config = small_config(
            tmp_path / where,
            mc={"trajectories": trajectories},
            output={"sample_times": [1.0]},
        )
        return float(read_rows(energy_study(config).csv_path)[-1][2])

    ratio = final_stderr(400, "more") / final_stderr(200, "fewer")
    assert ratio == pytest.approx(1 / math.sqrt(2), rel=0.2)


##############################################################################
def test_rerun_from_manifest(tmp_path: Path) -> None:
    """A manifest alone reproduces its study's CSV."""
    first = spatial_convergence(small_config(tmp_path))
    before = first.csv_path.read_bytes()
    manifest = json.loads((first.directory / MANIFEST_NAME).read_text())
    again = spatial_convergence(ExperimentConfig.from_dict(manifest["config"]))
    assert again.csv_path.read_bytes() == before


##############################################################################
def test_spatial_convergence(tmp_path: Path) -> None:
    """Each truncation is compared with the reference, with an anchor row."""
    result = spatial_convergence(small_config(tmp_path, scheme={"N_list": [2, 4, 8]}))
    rows = read_rows(result.csv_path)
    assert rows[0] == ["param", "error", "stderr"]
    params = [float(row[0]) for row in rows[1:]]
    errors = [float(row[1]) for row in rows[1:]]
    assert params == [2.0, 4.0, 8.0]
    assert errors[-1] == 0.0
    assert all(error > 0 for error in errors[:-1])
    assert result.manifest.derived["fitted_slope"] is not None
    assert result.manifest.derived["theory_slope"] == pytest.approx(1.0)


##############################################################################
def test_temporal_convergence(tmp_path: Path) -> None:
    """Each step size is compared with the reference at the horizon."""
    result = temporal_convergence(small_config(tmp_path))
    rows = read_rows(result.csv_path)
    params = [float(row[0]) for row in rows[1:]]
    errors = [float(row[1]) for row in rows[1:]]
    assert params == [0.25, 0.125, 2.0**-5]
    assert errors[-1] == 0.0
    assert all(error > 0 for error in errors[:-1])
    assert result.manifest.derived["theory_slope"] == pytest.approx(0.5)


##############################################################################
def test_temporal_convergence_caps_path_memory(tmp_path: Path) -> None:
    """The materialised reference path honours the memory cap."""
    with pytest.raises(PathMemoryError) as error:
        temporal_convergence(small_config(tmp_path, noise={"max_path_mb": 1e-6}))
    assert "bytes" in str(error.value)


##############################################################################
def test_exp_moment_study(tmp_path: Path) -> None:
    """The estimates start at one and never fall as the horizon grows."""
    result = exp_moment_study(small_config(tmp_path), c_list=[0.0, 0.5])
    rows = read_rows(result.csv_path)
    assert rows[0] == ["c", "estimate", "stderr"]
    assert float(rows[1][1]) == 1.0
    by_horizon = result.manifest.derived["by_horizon"]["0.5"]
    assert by_horizon["t"] == [0.25, 0.5, 0.75, 1.0]
    assert by_horizon["estimate"] == sorted(by_horizon["estimate"])
    assert float(rows[2][1]) == pytest.approx(by_horizon["estimate"][-1])


##############################################################################
def test_progress_is_reported(tmp_path: Path) -> None:
    """The progress callback hears about every trajectory."""
    ticks: List[None] = []
    energy_study(small_config(tmp_path), progress=lambda: ticks.append(None))
    assert len(ticks) == 3


##############################################################################
def test_manifest_round_trip(tmp_path: Path) -> None:
    """Manifests read back what was written."""
    manifest = RunManifest("simulate", {"mc": {"seed": 1}}, derived={"x": 1.5})
    written = manifest.write(tmp_path)
    assert RunManifest.read(written) == manifest
    assert format_number(0.1) == "0.10000000000000001"


##############################################################################
# Full-size acceptance runs.
##############################################################################


##############################################################################
@pytest.mark.slow
def test_energy_law_at_full_size(tmp_path: Path) -> None:
    """The mean energy follows the evolution law over 500 trajectories."""
    config = ExperimentConfig.from_dict(
        {
            "scheme": {"N": 16, "h": 2.0**-6},
            "mc": {"trajectories": 500, "workers": 4},
            "output": {"directory": str(tmp_path), "sample_times": [m / 8 for m in range(9)]},
        }
    )
    result = energy_study(config)
    derived = result.manifest.derived
    assert derived["max_standard_errors_from_theory"] <= 3.0
    assert derived["fitted_slope"] == pytest.approx(derived["theory_slope"], rel=0.1)


##############################################################################
@pytest.mark.slow
def test_spatial_order_at_full_size(tmp_path: Path) -> None:
    """The spatial error decays like `1/N`."""
    config = ExperimentConfig.from_dict(
        {
            "scheme": {"N_list": [8, 16, 32], "N_ref": 64, "spatial_h": 2.0**-8},
            "mc": {"trajectories": 100, "workers": 4},
            "output": {"directory": str(tmp_path)},
        }
    )
    derived = spatial_convergence(config).manifest.derived
    assert 0.7 <= derived["fitted_slope"] <= 1.3
    assert derived["strictly_decreasing"]


##############################################################################
@pytest.mark.slow
def test_temporal_order_at_full_size(tmp_path: Path) -> None:
    """With a smoothed spectrum the temporal order is one."""
    config = ExperimentConfig.from_dict(
        {
            "noise": {"p": 5.0, "beta": 2.0},
            "scheme": {"N": 16},
            "mc": {"trajectories": 100, "workers": 4},
            "output": {"directory": str(tmp_path)},
        }
    )
    derived = temporal_convergence(config).manifest.derived
    assert 0.75 <= derived["fitted_slope"] <= 1.25


##############################################################################
@pytest.mark.slow
def test_temporal_order_with_the_rough_spectrum(tmp_path: Path) -> None:
    """With `η = 1/(k³ + l³)` the errors still fall, at a lower order."""
    config = ExperimentConfig.from_dict(
        {
            "noise": {"p": 3.0},
            "scheme": {"N": 16},
            "mc": {"trajectories": 100, "workers": 4},
            "output": {"directory": str(tmp_path)},
        }
    )
    derived = temporal_convergence(config).manifest.derived
    assert derived["strictly_decreasing"]
    assert derived["fitted_slope"] >= 0.4


##############################################################################
@pytest.mark.slow
def test_exp_moment_at_full_size(tmp_path: Path) -> None:
    """The exponential moment is finite and stable as trajectories double."""

    def run(trajectories: int, where: str) -> List[str]:
        config = ExperimentConfig.from_dict(
            {
                "scheme": {"N": 8, "h": 2.0**-5},
                "mc": {"trajectories": trajectories, "workers": 4},
                "output": {"directory": str(tmp_path / where), "c_list": [1.0]},
            }
        )
        result = exp_moment_study(config)
        estimates = result.manifest.derived["by_horizon"]["1"]["estimate"]
        assert estimates == sorted(estimates)
        return read_rows(result.csv_path)[1]

    _, small, small_stderr = run(200, "small")
    _, large, large_stderr = run(400, "large")
    assert math.isfinite(float(large))
    combined = math.hypot(float(small_stderr), float(large_stderr))
    assert abs(float(large) - float(small)) <= 3 * combined


### test_studies.py ends here
