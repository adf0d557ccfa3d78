"""Tests for the splitting AVF integrator."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import logging

##############################################################################
# NumPy imports.
import numpy as np

##############################################################################
# Pytest imports.
import pytest

##############################################################################
# Local imports.
from avfwave.core.errors import ShapeMismatchError, SolverDivergenceError
from avfwave.core.integrator import (
    CayleyFactor,
    SchemeConfig,
    Solver,
    avf_det_step,
    b_inverse,
    cayley_step,
    exact_group,
    integrate,
    stochastic_kick,
)
from avfwave.core.noise import NoiseSpectrum, PathGenerator
from avfwave.core.nonlinearity import CubicPolynomial, Potential
from avfwave.core.observables import energy_V1, theorem_error
from avfwave.core.spectral import (
    PhaseState,
    SpectralField,
    constant_projection,
    phase_norm,
    project,
)
from avfwave.harness.studies import fit_slope

##############################################################################
CUBIC = CubicPolynomial(c0=0.0, c1=0.0, c2=0.0, c3=1.0)
"""The drift of the reference model, `f(u) = u³`."""


##############################################################################
def reference_state(N: int, dim: int = 2) -> PhaseState:
    """The reference initial data `u₀ = 0`, `v₀ = 1`."""
    return PhaseState(SpectralField.zeros(N, dim), constant_projection(1.0, N, dim))


##############################################################################
def test_cayley_factor_has_unit_determinant() -> None:
    """Every per-mode block of the Cayley factor has determinant one."""
    factor = CayleyFactor.for_field(8, 2, 0.1)
    assert factor.matrix.shape == (8, 8, 2, 2)
    assert np.allclose(factor.determinant, 1.0, rtol=0, atol=1e-12)


##############################################################################
def test_cayley_step_agrees_with_the_factor(random_state) -> None:
    """The fused update is the per-mode matrix product."""
    state = random_state(6, 1)
    matrix = CayleyFactor.for_field(6, 1, 0.05).matrix
    stepped = cayley_step(state, 0.05)
    assert np.allclose(stepped.u.coeffs, matrix[:, 0, 0] * state.u.coeffs + matrix[:, 0, 1] * state.v.coeffs)
    assert np.allclose(stepped.v.coeffs, matrix[:, 1, 0] * state.u.coeffs + matrix[:, 1, 1] * state.v.coeffs)


##############################################################################
def test_cayley_step_is_an_isometry(rng: np.random.Generator, random_state) -> None:
    """The Cayley propagator preserves every ℍʳ norm."""
    for _ in range(100):
        dim = int(rng.integers(1, 3))
        N = int(rng.integers(1, 33))
        h = 2.0 ** -int(rng.integers(1, 9))
        state = random_state(N, dim)
        stepped = cayley_step(state, h)
        for r in (0, 1, 2):
            assert phase_norm(stepped, r) == pytest.approx(phase_norm(state, r), rel=1e-12)


##############################################################################
def test_cayley_step_is_second_order_locally() -> None:
    """For ℍ⁰-rough data the local error against the wave group is `O(h²)`."""
    N = 4096
    k = np.arange(1, N + 1, dtype=np.float64)
    rough = PhaseState(SpectralField(k**-2.5), SpectralField.zeros(N, 1))
    steps = [2.0**-level for level in range(4, 10)]
    errors = [
        phase_norm(
            PhaseState(
                exact_group(rough, h).u - cayley_step(rough, h).u,
                exact_group(rough, h).v - cayley_step(rough, h).v,
            ),
            0,
        )
        for h in steps
    ]
    assert fit_slope(list(zip(steps, errors))).slope == pytest.approx(2.0, abs=0.1)


##############################################################################
def test_b_inverse_is_first_order() -> None:
    """`𝔹⁻¹(h)` alone is only a first order approximation of the group."""
    smooth = PhaseState(SpectralField.from_modes(4, 1, [(1, 1.0)]), SpectralField.zeros(4, 1))
    steps = [2.0**-level for level in range(3, 9)]
    errors = []
    for h in steps:
        approximate, exact = b_inverse(smooth, h), exact_group(smooth, h)
        errors.append(phase_norm(PhaseState(approximate.u - exact.u, approximate.v - exact.v), 0))
    assert fit_slope(list(zip(steps, errors))).slope >= 1.0


##############################################################################
def test_exact_group_is_a_group(random_state) -> None:
    """`E(s)E(t) = E(s + t)`."""
    state = random_state(8, 2)
    twice = exact_group(exact_group(state, 0.1), 0.2)
    once = exact_group(state, 0.3)
    assert np.allclose(twice.u.coeffs, once.u.coeffs)
    assert np.allclose(twice.v.coeffs, once.v.coeffs)


##############################################################################
def test_zero_drift_is_the_cayley_step(random_state) -> None:
    """Without a drift the implicit substep is the linear propagator."""
    state = random_state(8, 2)
    config = SchemeConfig(h=2.0**-4, N=8)
    step = avf_det_step(state, CubicPolynomial.zero(), config)
    linear = cayley_step(state, config.h)
    assert step.iterations == 1
    assert np.allclose(step.u_next.coeffs, linear.u.coeffs, rtol=1e-13, atol=1e-14)
    assert np.allclose(step.v_bar.coeffs, linear.v.coeffs, rtol=1e-13, atol=1e-14)


##############################################################################
@pytest.mark.parametrize("dim", [1, 2])
def test_iteration1_contracts(random_state, dim: int) -> None:
    """Within the step size guard the iterate distances at least halve."""
    N, h = 8, 2.0**-6
    config = SchemeConfig(h=h, N=N)
    coupling, _ = config.guard_values(dim)
    assert coupling <= 0.1
    for _ in range(100):
        step = avf_det_step(random_state(N, dim, 0.5), CUBIC, config)
        distances = step.distances
        for earlier, later in zip(distances[1:], distances[2:]):
            if earlier > 1e-12:
                assert later <= 0.5 * earlier


##############################################################################
def test_fixed_point_is_unique(random_state) -> None:
    """Different starting iterates settle on the same solution."""
    config = SchemeConfig(h=2.0**-6, N=8)
    for dim in (1, 2):
        state = random_state(8, dim)
        default = avf_det_step(state, CUBIC, config)
        elsewhere = avf_det_step(state, CUBIC, config, initial=-3.0 * state.u)
        assert np.allclose(default.u_next.coeffs, elsewhere.u_next.coeffs, rtol=0, atol=1e-11)
        assert np.allclose(default.v_bar.coeffs, elsewhere.v_bar.coeffs, rtol=0, atol=1e-11)


##############################################################################
def test_iterations_agree_when_taming_never_fires(random_state) -> None:
    """iteration2 with a huge taming radius finds iteration1's fixed point."""
    tol = 1e-12
    for _ in range(20):
        state = random_state(8, 2)
        plain = avf_det_step(state, CUBIC, SchemeConfig(h=2.0**-4, N=8, tol=tol))
        tamed = avf_det_step(
            state,
            CUBIC,
            SchemeConfig(h=2.0**-4, N=8, tol=tol, solver=Solver.ITERATION2, epsilon=1e-8),
        )
        assert not tamed.tamed
        assert np.allclose(plain.u_next.coeffs, tamed.u_next.coeffs, rtol=0, atol=10 * tol)
        assert np.allclose(plain.v_bar.coeffs, tamed.v_bar.coeffs, rtol=0, atol=10 * tol)


##############################################################################
def test_taming_switches_the_drift_off(random_state) -> None:
    """Outside the taming ball iteration2 takes the linear step."""
    state = random_state(8, 1, 10.0)
    config = SchemeConfig(h=2.0**-4, N=8, solver="iteration2", epsilon=100.0)
    step = avf_det_step(state, CUBIC, config)
    assert step.tamed
    assert np.allclose(step.u_next.coeffs, cayley_step(state, config.h).u.coeffs)


##############################################################################
def test_deterministic_step_conserves_energy(random_state) -> None:
    """The implicit AVF substep conserves the discrete energy."""
    potential = Potential.canonical(CubicPolynomial(c1=-1.0, c2=0.5, c3=1.0))
    config = SchemeConfig(h=2.0**-5, N=8, tol=1e-13)
    state = random_state(8, 2)
    step = avf_det_step(state, potential.poly, config)
    after = energy_V1(PhaseState(step.u_next, step.v_bar), potential).V1
    assert after == pytest.approx(energy_V1(state, potential).V1, rel=1e-10)


##############################################################################
def test_divergence_is_reported(random_state) -> None:
    """Running out of iterations raises with the residual attached."""
    config = SchemeConfig(h=2.0**-2, N=8, max_iter=1)
    with pytest.raises(SolverDivergenceError) as error:
        avf_det_step(random_state(8, 1, 5.0), CUBIC, config)
    assert error.value.iterations == 1
    assert error.value.residual > config.tol


##############################################################################
def test_truncations_must_match(random_state) -> None:
    """The state and the scheme agree on the truncation."""
    with pytest.raises(ShapeMismatchError):
        avf_det_step(random_state(6, 1), CUBIC, SchemeConfig(h=0.25, N=8))


##############################################################################
def test_scheme_config_validation() -> None:
    """Bad scheme parameters are refused."""
    with pytest.raises(ValueError):
        SchemeConfig(h=0.3, N=8)
    with pytest.raises(ValueError):
        SchemeConfig(h=0.25, N=0)
    with pytest.raises(ValueError):
        SchemeConfig(h=0.25, N=8, tol=0)
    with pytest.raises(ValueError):
        SchemeConfig(h=0.25, N=8, solver="iteration3")
    assert SchemeConfig(h=2.0**-4, N=8).taming_epsilon == pytest.approx(0.5)


##############################################################################
def test_step_size_guards_warn(caplog: pytest.LogCaptureFixture) -> None:
    """Too large a step for the truncation is logged, not raised."""
    with caplog.at_level(logging.WARNING):
        failed = SchemeConfig(h=0.5, N=32).check_guards(2)
    assert len(failed) == 1
    assert "Step size guard" in caplog.text
    assert not SchemeConfig(h=2.0**-8, N=8).check_guards(1)


##############################################################################
def test_stochastic_kick_projects_the_increment() -> None:
    """The kick adds the increment's low modes to the velocity only."""
    u = SpectralField.from_modes(2, 1, [(1, 1.0)])
    v = SpectralField.zeros(2, 1)
    kicked = stochastic_kick(u, v, SpectralField(np.array([1.0, 2.0, 3.0])))
    assert kicked.u == u
    assert np.array_equal(kicked.v.coeffs, [1.0, 2.0])


##############################################################################
def test_stochastic_kick_energy_change(random_field) -> None:
    """The kick changes the energy by `⟨v̄, δW⟩ + ½‖P_N δW‖²` exactly."""
    potential = Potential.canonical(CubicPolynomial(c1=-1.0, c3=1.0))
    for _ in range(10):
        u, v_bar, increment = random_field(8, 2), random_field(8, 2), random_field(12, 2)
        kicked = stochastic_kick(u, v_bar, increment)
        projected = project(increment, 8)
        change = energy_V1(kicked, potential).V1 - energy_V1(PhaseState(u, v_bar), potential).V1
        expected = v_bar.inner(projected) + 0.5 * projected.inner(projected)
        assert change == pytest.approx(expected, abs=1e-12)


##############################################################################
def test_noise_free_reference_model_conserves_energy() -> None:
    """A thousand noise-free steps keep the energy to solver tolerance."""
    N, h = 16, 2.0**-6
    config = SchemeConfig(h=h, N=N, T=16.0, tol=1e-12)
    path = PathGenerator(seed=1, trajectory=0, spectrum=NoiseSpectrum.zero(2, N), level=10, T=16.0)
    potential = Potential.canonical(CUBIC)
    start = energy_V1(reference_state(N), potential).V1
    drift = []
    integrate(
        reference_state(N),
        CUBIC,
        config,
        path,
        observers=[lambda _step, _t, state: drift.append(energy_V1(state, potential).V1 - start)],
        sample_times=[config.T],
    )
    assert len(drift) == 1025
    assert max(abs(value) for value in drift) <= 1e-8


##############################################################################
def test_integrate_records_sample_times() -> None:
    """Only the asked-for times are kept, observers see every step."""
    N, h = 4, 0.125
    config = SchemeConfig(h=h, N=N)
    path = PathGenerator(seed=3, trajectory=2, spectrum=NoiseSpectrum.power2d(3, N), level=3)
    seen = []
    record = integrate(
        reference_state(N),
        CUBIC,
        config,
        path,
        observers=[lambda step, t, _state: seen.append((step, t))],
        sample_times=[0.0, 0.5, 1.0],
    )
    assert record.times == [0.0, 0.5, 1.0]
    assert len(record.states) == 3
    assert len(record.iterations) == 8
    assert seen[-1] == (8, 1.0)
    with pytest.raises(ValueError):
        integrate(reference_state(N), CUBIC, config, path, sample_times=[0.3])


##############################################################################
def test_integrate_is_reproducible() -> None:
    """Running the same path twice gives identical states."""
    N = 4
    config = SchemeConfig(h=0.125, N=N)

    def run() -> PhaseState:
        path = PathGenerator(seed=5, trajectory=1, spectrum=NoiseSpectrum.power2d(3, N), level=5)
        return integrate(reference_state(N), CUBIC, config, path, sample_times=[1.0]).final

    first, second = run(), run()
    assert first.u == second.u and first.v == second.v


##############################################################################
def test_integrate_checks_the_horizon() -> None:
    """The path and the scheme cover the same horizon."""
    path = PathGenerator(seed=1, trajectory=0, spectrum=NoiseSpectrum.zero(1, 4), level=3, T=2.0)
    with pytest.raises(ValueError):
        integrate(reference_state(4, 1), CUBIC, SchemeConfig(h=0.25, N=4), path)


##############################################################################
def test_integrate_locates_divergence() -> None:
    """A solver failure names the step and trajectory."""
    N = 4
    path = PathGenerator(seed=1, trajectory=9, spectrum=NoiseSpectrum.zero(1, N), level=2)
    start = PhaseState(SpectralField.zeros(N, 1), SpectralField(np.full(N, 50.0)))
    with pytest.raises(SolverDivergenceError) as error:
        integrate(start, CUBIC, SchemeConfig(h=0.25, N=N, max_iter=2), path)
    assert error.value.trajectory == 9
    assert error.value.step == 0


##############################################################################
def test_finer_steps_get_closer() -> None:
    """Halving the step on a shared path reduces the error at the horizon."""
    N = 8
    spectrum = NoiseSpectrum.power2d(5, N)
    path = PathGenerator(seed=11, trajectory=0, spectrum=spectrum, level=8)
    path.materialize()

    def final(h: float) -> PhaseState:
        return integrate(
            reference_state(N), CUBIC, SchemeConfig(h=h, N=N), path, sample_times=[1.0]
        ).final

    reference = final(2.0**-8)
    coarse, fine = theorem_error(final(2.0**-3), reference), theorem_error(final(2.0**-5), reference)
    assert fine < coarse


### test_integrator.py ends here
