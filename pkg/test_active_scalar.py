"""
Tests for the velocity law, the advection term and RK4 time stepping
"""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from dynamics.active_scalar import (
    advect_rhs,
    advection_terms,
    gradient_field,
    max_speed,
    velocity,
    velocity_field,
    velocity_from_stream,
)
from dynamics.integrator import adaptive_dt, integrate, step_rk4
from dynamics.model import ModelParams, SimState
from spectral.exceptions import DataError, GaugeError, ParameterError
from spectral.grid import (
    Grid2D,
    PhysicalField,
    SpectralField,
    apply_symbol,
    derivative_symbol,
    forward_transform,
    inverse_transform,
    l2_norm_spectral,
)
from verify.fields import random_field


@pytest.mark.parametrize('k', [1, 2, 5])
@pytest.mark.parametrize('beta', [1.1, 1.5, 1.9])
def test_single_mode_velocity(k, beta, grid32, mode_field):
    """θ = cos(kx₁) gives u = (0, k^{β−1} sin(kx₁))"""
    theta = forward_transform(mode_field(grid32, lambda x1, x2: np.cos(k * x1)))
    u1, u2 = velocity_field(theta, beta)
    x1, _ = grid32.coordinates
    assert np.max(np.abs(u1.values)) <= 1e-12
    assert np.max(np.abs(u2.values - k ** (beta - 1.0) * np.sin(k * x1))) <= 1e-12


def test_sqg_matches_riesz_transforms(grid64):
    """β = 1 gives u = (−R₂θ, R₁θ) with R_j the Riesz symbol −iξ_j/|ξ|"""
    theta = random_field(grid64, seed=21, k_max=12.0)
    k1, k2 = grid64.wavenumbers
    radius = np.sqrt(k1 ** 2 + k2 ** 2)
    radius[0, 0] = 1.0
    nyquist = (k1 == -32) | (k2 == -32)
    riesz1 = np.where(nyquist, 0.0, -1j * k1 / radius)
    riesz2 = np.where(nyquist, 0.0, -1j * k2 / radius)
    expected1 = np.real(np.fft.ifft2(-riesz2 * theta.coeffs)) * 64 ** 2
    expected2 = np.real(np.fft.ifft2(riesz1 * theta.coeffs)) * 64 ** 2
    u1, u2 = velocity_field(theta, 1.0)
    assert_allclose(u1.values, expected1, atol=1e-14)
    assert_allclose(u2.values, expected2, atol=1e-14)


def test_velocity_is_divergence_free(grid64):
    """div u vanishes on random fields"""
    theta = random_field(grid64, seed=22, gamma=2.0, k_max=20.0)
    for beta in (0.0, 1.0, 1.5, 2.0):
        u1, u2 = velocity(theta, beta)
        div = apply_symbol(u1, derivative_symbol(0)) + apply_symbol(u2, derivative_symbol(1))
        assert np.max(np.abs(inverse_transform(div).values)) <= 1e-13


def test_velocity_paths_agree(grid64):
    """−∇⊥(−Δ)^{−1+β/2}θ equals ∇⊥ψ with Δψ = Λ^β θ"""
    theta = random_field(grid64, seed=23, k_max=20.0)
    direct = velocity(theta, 1.5)
    via_stream = velocity_from_stream(theta, 1.5)
    for a, b in zip(direct, via_stream):
        assert_allclose(a.coeffs, b.coeffs, atol=1e-15)


def test_gauge_violation(grid32):
    """A nonzero mean is rejected by the velocity law"""
    coeffs = np.zeros((32, 32), dtype=complex)
    coeffs[0, 0] = 0.3
    with pytest.raises(GaugeError):
        velocity(SpectralField(grid32, coeffs), 1.5)


def test_advection_rhs_is_mean_zero_and_dealiased(grid32):
    """rhs has no mean and no modes beyond n/3"""
    theta = random_field(grid32, seed=24, k_max=10.0)
    rhs, tail = advection_terms(theta, 1.5)
    assert rhs.coeffs[0, 0] == 0
    assert np.all(rhs.coeffs[~grid32.dealias_mask] == 0)
    assert 0.0 <= tail <= 1.0
    inverse_transform(rhs)


def test_transport_conserves_l2_semidiscretely(grid64):
    """⟨u·∇θ, θ⟩ = 0 for the dealiased product"""
    theta = random_field(grid64, seed=25, k_max=12.0)
    rhs = advect_rhs(theta, 1.5)
    inner = np.real(np.sum(np.conj(theta.coeffs) * rhs.coeffs))
    scale = np.sqrt(np.sum(np.abs(theta.coeffs) ** 2) * np.sum(np.abs(rhs.coeffs) ** 2))
    assert abs(inner) <= 1e-13 * scale


def test_gradient_field(grid32, mode_field):
    """∇ cos(2x₁) = (−2 sin(2x₁), 0)"""
    theta = forward_transform(mode_field(grid32, lambda x1, x2: np.cos(2.0 * x1)))
    g1, g2 = gradient_field(theta)
    x1, _ = grid32.coordinates
    assert_allclose(g1.values, -2.0 * np.sin(2.0 * x1), atol=1e-13)
    assert np.max(np.abs(g2.values)) <= 1e-13


def test_model_params_validation():
    """β outside [0, 2] and a CFL above 1 are rejected"""
    with pytest.raises(ValidationError):
        ModelParams(beta=2.5)
    with pytest.raises(ValidationError):
        ModelParams(beta=1.5, cfl=1.5)
    assert ModelParams(beta=1.5).tail_threshold == 0.1


def test_state_gauge_and_symmetry(grid32):
    """SimState drops the mean and refuses asymmetric spectra"""
    theta = random_field(grid32, seed=26)
    coeffs = theta.coeffs.copy()
    coeffs[0, 0] = 0.25
    state = SimState(SpectralField(grid32, coeffs), 0.0, ModelParams(beta=1.5))
    assert state.theta.coeffs[0, 0] == 0
    coeffs[1, 2] += 0.1j
    with pytest.raises(DataError):
        SimState(SpectralField(grid32, coeffs), 0.0, ModelParams(beta=1.5))


def test_adaptive_dt(grid32):
    """dt = min(dt_max, cfl·h/‖u‖∞)"""
    theta = random_field(grid32, seed=27, k_max=8.0)
    params = ModelParams(beta=1.5, cfl=0.4, dt_max=1.0)
    state = SimState(theta, 0.0, params)
    assert adaptive_dt(state) == pytest.approx(0.4 * grid32.spacing / max_speed(theta, 1.5))
    capped = SimState(theta, 0.0, ModelParams(beta=1.5, cfl=0.4, dt_max=1e-4))
    assert adaptive_dt(capped) == 1e-4


def test_step_rejects_non_positive_dt(grid32):
    state = SimState(random_field(grid32, seed=28), 0.0, ModelParams(beta=1.5))
    with pytest.raises(ParameterError):
        step_rk4(state, 0.0)


def test_steady_shear_after_100_steps(grid64, mode_field):
    """x₁-only profiles are exact steady states"""
    x_only = forward_transform(
        mode_field(grid64, lambda x1, x2: np.cos(3.0 * x1) + 0.5 * np.sin(5.0 * x1) - 0.2 * np.cos(7.0 * x1))
    )
    state = SimState(x_only, 0.0, ModelParams(beta=1.5))
    initial = inverse_transform(state.theta).values
    for _ in range(100):
        state = step_rk4(state, 0.01)
    assert np.max(np.abs(inverse_transform(state.theta).values - initial)) <= 1e-13
    assert state.step == 100
    assert state.t == pytest.approx(1.0)


def test_integrate_lands_on_t_end(grid32):
    """The last step is clipped so the run ends exactly at t_end"""
    state = SimState(random_field(grid32, seed=29, k_max=4.0), 0.0, ModelParams(beta=1.5, dt_max=0.03))
    last = None
    for last, dt in integrate(state, 0.1):
        assert dt > 0
    assert last.t == pytest.approx(0.1, abs=1e-14)


def test_integrate_respects_step_budget(grid32):
    """max_steps stops the run early"""
    state = SimState(random_field(grid32, seed=30, k_max=4.0), 0.0, ModelParams(beta=1.5, dt_max=0.001))
    steps = list(integrate(state, 1.0, max_steps=5))
    assert len(steps) == 5


def test_lambda_scaling_of_one_step(grid32):
    """One step of 2θ with dt/2 is twice one step of θ with dt"""
    theta = random_field(grid32, seed=31, k_max=6.0)
    params = ModelParams(beta=1.5, dt_max=math.inf)
    base = step_rk4(SimState(theta, 0.0, params), 0.02)
    scaled = step_rk4(SimState(theta * 2.0, 0.0, params), 0.01)
    assert_allclose(scaled.theta.coeffs, 2.0 * base.theta.coeffs, rtol=1e-13, atol=1e-16)


@pytest.mark.parametrize('lam', [2.0, 4.0])
def test_lambda_scaling_of_a_run(lam, grid32):
    """Integrating λθ₀ to T/λ gives λ times θ₀ integrated to T"""
    theta = random_field(grid32, seed=35, k_max=6.0)
    params = ModelParams(beta=1.5, dt_max=math.inf)
    t_end = 0.5

    def run_to(initial, t):
        state = SimState(initial, 0.0, params)
        for state, _ in integrate(state, t):
            pass
        return state

    base = run_to(theta, t_end)
    scaled = run_to(theta * lam, t_end / lam)
    assert scaled.step == base.step
    assert scaled.t == pytest.approx(base.t / lam, rel=1e-14)
    scale = np.max(np.abs(base.theta.coeffs))
    assert_allclose(scaled.theta.coeffs, lam * base.theta.coeffs, rtol=0, atol=1e-12 * lam * scale)


def test_rk4_fourth_order(grid32):
    """Errors against a dt/8 reference shrink by about 16 when dt is halved"""
    theta = random_field(grid32, seed=32, k_max=4.0)
    params = ModelParams(beta=1.5, dt_max=math.inf)
    t_end = 0.32
    dt = 0.02

    def solve(step):
        state = SimState(theta, 0.0, params)
        for _ in range(int(round(t_end / step))):
            state = step_rk4(state, step)
        return state.theta

    reference = solve(dt / 8.0)
    ratio = l2_norm_spectral(solve(dt) - reference) / l2_norm_spectral(solve(dt / 2.0) - reference)
    assert 14.0 <= ratio <= 18.0


def test_l2_conservation_short_run(grid64):
    """L² drifts by less than 1e-6 and the mean stays exactly zero"""
    theta = random_field(grid64, seed=33, gamma=3.0, k_max=8.0)
    state = SimState(theta, 0.0, ModelParams(beta=1.5))
    initial = l2_norm_spectral(state.theta)
    for state, _ in integrate(state, 0.25):
        assert state.theta.coeffs[0, 0] == 0
    assert abs(l2_norm_spectral(state.theta) - initial) <= 1e-6 * initial


@pytest.mark.slow
def test_l2_conservation_256():
    """β = 1.5 random-spectrum data at n = 256 conserves L² over T = 1"""
    grid = Grid2D(256)
    theta = random_field(grid, seed=34, gamma=3.0, k_max=8.0)
    state = SimState(theta, 0.0, ModelParams(beta=1.5))
    initial = l2_norm_spectral(state.theta)
    for state, _ in integrate(state, 1.0):
        assert state.theta.coeffs[0, 0] == 0
    assert state.t == pytest.approx(1.0)
    assert abs(l2_norm_spectral(state.theta) - initial) <= 1e-6 * initial
    assert float(np.mean(inverse_transform(state.theta).values)) == pytest.approx(0.0, abs=1e-15)


def test_physical_field_products(grid32):
    """PhysicalField arithmetic used by the transport products"""
    a = PhysicalField(grid32, np.full((32, 32), 2.0))
    b = PhysicalField(grid32, np.full((32, 32), 3.0))
    assert np.all((a * b).values == 6.0)
    assert np.all((a + b - a).values == 3.0)


def test_euler_anchor(grid32):
    """β = 0 gives the 2-D Euler Biot-Savart law û = −iξ⊥|ξ|^{−2}θ̂"""
    theta = random_field(grid32, seed=35, k_max=10.0)
    k1, k2 = grid32.wavenumbers
    r2 = k1 ** 2 + k2 ** 2
    r2[0, 0] = 1.0
    u1, u2 = velocity(theta, 0.0)
    assert_allclose(u1.coeffs, 1j * k2 / r2 * theta.coeffs, atol=1e-16)
    assert_allclose(u2.coeffs, -1j * k1 / r2 * theta.coeffs, atol=1e-16)


def test_velocity_is_linear(grid32):
    a = random_field(grid32, seed=36, k_max=8.0)
    b = random_field(grid32, seed=37, k_max=8.0)
    combined = velocity(a * 3.0 + b, 1.5)
    for c, ua, ub in zip(combined, velocity(a, 1.5), velocity(b, 1.5)):
        assert_allclose(c.coeffs, 3.0 * ua.coeffs + ub.coeffs, atol=1e-15)


def test_adaptive_dt_formula_cases(grid32):
    """θ = 0 gives dt_max; doubling θ halves dt and doubling n at least halves it"""
    params = ModelParams(beta=1.5, cfl=0.5, dt_max=1.0)
    assert adaptive_dt(SimState(SpectralField.zeros(grid32), 0.0, params)) == 1.0
    theta = random_field(grid32, seed=38, k_max=6.0)
    base = adaptive_dt(SimState(theta, 0.0, params))
    assert adaptive_dt(SimState(theta * 2.0, 0.0, params)) == pytest.approx(base / 2.0, rel=1e-12)
    finer = random_field(Grid2D(64), seed=38, k_max=6.0)
    assert adaptive_dt(SimState(finer, 0.0, params)) <= base / 2.0 * (1.0 + 1e-12)
