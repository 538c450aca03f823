"""
Tests for the commutator, embedding, Bernstein, growth and scaling checks
"""
import math

import numpy as np
import pytest

from dynamics.active_scalar import velocity
from spectral.exceptions import ParameterError
from spectral.function_spaces import PairSampler
from spectral.grid import Grid2D, SpectralField, forward_transform
from spectral.littlewood_paley import block_kernel, max_block
from verify import (
    VerifyReport,
    VerifySuiteConfig,
    bernstein_block_ratios,
    bernstein_check,
    bernstein_suite,
    block_energy_check,
    cancellation_check,
    commutator_residual,
    commutator_suite,
    doubling_time,
    embedding_check,
    embedding_suite,
    envelope_dominates,
    gronwall_envelope,
    growth_fit,
    lemma1_rhs,
    random_field,
    scaling_experiment,
    single_mode_block_bounds,
)


def small_suite(**overrides):
    settings = dict(seeds=[0], n_list=[32], beta_list=[1.5], k_max=6.0, pair_budget=4096, M=2, M_list=[1, 2, 4])
    settings.update(overrides)
    return VerifySuiteConfig(**settings)


def single_mode(grid, k):
    """cos(kx₁) built directly in spectral space"""
    coeffs = np.zeros((grid.n, grid.n), dtype=complex)
    coeffs[k, 0] = coeffs[-k, 0] = 0.5
    return SpectralField(grid, coeffs)


# Commutator


def test_commutator_of_zero_field(grid32, family):
    """The residual of θ = 0 is 0 in every block"""
    zero = SpectralField.zeros(grid32)
    for j in range(-1, max_block(grid32, family) + 1):
        assert commutator_residual(zero, 1.5, j, 2.0, family) == 0.0


def test_commutator_is_quadratic(grid32, family, smooth_theta):
    """Doubling θ multiplies the residual by four"""
    for j in range(-1, 4):
        base = commutator_residual(smooth_theta, 1.5, j, 2.0, family)
        assert commutator_residual(smooth_theta * 2.0, 1.5, j, 2.0, family) == pytest.approx(4.0 * base, rel=1e-12)


def test_commutator_rejects_block_index(grid32, smooth_theta):
    with pytest.raises(ParameterError):
        commutator_residual(smooth_theta, 1.5, -2, 2.0)


def test_commutator_matches_convolution_oracle(grid32, family, direct_convolution, mode_field):
    """θ = cos x₁ + sin 2x₂ with Δⱼ applied as explicit kernel convolutions"""
    beta = 1.5
    x1, x2 = grid32.coordinates
    theta = forward_transform(mode_field(grid32, lambda a, b: np.cos(a) + np.sin(2.0 * b)))
    u1 = 2.0 ** (beta - 1.0) * np.cos(2.0 * x2)
    u2 = np.sin(x1)
    grad1 = -np.sin(x1)
    grad2 = 2.0 * np.cos(2.0 * x2)
    h = grid32.spacing
    for j in range(-1, max_block(grid32, family) + 1):
        kernel = block_kernel(grid32, j, family)
        low = sum((block_kernel(grid32, k, family) for k in range(-1, j - 1)), np.zeros((32, 32)))
        localized = (
            direct_convolution(low, u1) * direct_convolution(kernel, grad1)
            + direct_convolution(low, u2) * direct_convolution(kernel, grad2)
        )
        full = direct_convolution(kernel, u1 * grad1 + u2 * grad2)
        expected = math.sqrt(h * h * np.sum((localized - full) ** 2))
        assert commutator_residual(theta, beta, j, 2.0, family) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_lemma1_rhs_single_block(grid32, family):
    """cos 6x₁ sits in block 2 only"""
    theta = single_mode(grid32, 6)
    value = lemma1_rhs(theta, 1.0, 0, 2.0, 2.0, 4, family)
    assert value == pytest.approx(0.25 * math.sqrt(3.0) * math.pi * math.sqrt(2.0), rel=1e-12)
    assert lemma1_rhs(theta, 1.0, 4, 2.0, 2.0, 1, family) == 0.0
    assert lemma1_rhs(theta, 3.0, 0, 2.0, 2.0, 4, family) == pytest.approx(3.0 * value, rel=1e-15)


def test_lemma1_rhs_rejects_bad_arguments(smooth_theta):
    with pytest.raises(ParameterError):
        lemma1_rhs(smooth_theta, -1.0, 0, 2.0, 2.0, 4)
    with pytest.raises(ParameterError):
        lemma1_rhs(smooth_theta, 1.0, 0, 2.0, 2.0, -1)


def test_empty_commutator_suite():
    """No cases, max ratio 0"""
    report = commutator_suite(small_suite(seeds=[]))
    assert report.records == []
    assert report.max_ratio == 0.0


def test_commutator_suite_shift_sensitivity(family):
    """Larger cutoff shifts add terms to the bound, so ratios do not increase"""
    report = commutator_suite(small_suite(), family)
    assert report.records
    assert all(record['M'] == 2 for record in report.records)
    assert report.fitted['C'] == (report.max_ratio, 0.0)
    by_block = {}
    for record in report.sensitivity:
        by_block.setdefault(record['j'], {})[record['M']] = record['ratio']
    for ratios in by_block.values():
        shifts = sorted(ratios)
        for small, large in zip(shifts, shifts[1:]):
            assert ratios[large] <= ratios[small] * (1.0 + 1e-12)


def test_commutator_suite_amplitude_invariance(family):
    """Both sides are quadratic in the amplitude"""
    base = commutator_suite(small_suite(), family).max_ratio
    scaled = commutator_suite(small_suite(amplitude=2.0), family).max_ratio
    assert scaled == pytest.approx(base, rel=1e-9)


def test_commutator_suite_marks_empty_blocks_degenerate(family):
    """Blocks above the field's band have a zero bound and a vanishing residual"""
    report = commutator_suite(small_suite(M_list=[1]), family)
    assert any(record['j'] == max_block(Grid2D(32), family) for record in report.degenerate)
    assert all(record['ratio'] == 0.0 for record in report.degenerate)


def test_cancellation_of_transport(grid64, family):
    """∫ S_{j−1}u·∇Δⱼθ Δⱼθ vanishes for the divergence-free low-pass velocity"""
    theta = random_field(grid64, seed=40, k_max=6.0)
    for j in range(-1, max_block(grid64, family) + 1):
        assert cancellation_check(theta, 1.5, j, family).relative <= 1e-12


def test_block_energy_bounded_by_commutator(grid64, family):
    """d/dt‖Δⱼθ‖₂ never exceeds the commutator residual"""
    theta = random_field(grid64, seed=41, k_max=6.0)
    for j in range(-1, max_block(grid64, family) + 1):
        check = block_energy_check(theta, 1.5, j, family)
        if check.residual > 0:
            assert check.ratio <= 1.0 + 1e-9


# Embedding and Bernstein


def test_embedding_of_zero_field(grid32):
    """Both norms vanish and the ratio is 0"""
    check = embedding_check(SpectralField.zeros(grid32), 2.0, 1.0, sampler=PairSampler(0, 4096))
    assert check == (0.0, 0.0, 0.0)


def test_embedding_ratio_is_scale_invariant(grid32, family, smooth_theta):
    """LL and Besov norms are both homogeneous of degree one"""
    sampler = PairSampler(seed=2, n_pairs=4096)
    u = velocity(smooth_theta, 1.5)
    base = embedding_check(u, 2.0, 1.0, family, sampler)
    scaled = embedding_check([c * 4.0 for c in u], 2.0, 1.0, family, sampler)
    assert base.ratio > 0
    assert scaled.ratio == pytest.approx(base.ratio, rel=1e-12)


def test_embedding_of_single_mode(grid32, family):
    """cos x₁ has finite positive ratio"""
    check = embedding_check(single_mode(grid32, 1), 2.0, 1.0, family, PairSampler(seed=0, n_pairs=4096))
    assert 0.0 < check.ratio < math.inf


def test_embedding_suite(family):
    report = embedding_suite(small_suite(), family)
    assert len(report.records) == 1
    assert report.max_ratio > 0
    assert 'max ratio' in report.summary()


def test_bernstein_of_zero_field(grid32, family):
    assert bernstein_check(SpectralField.zeros(grid32), 1.5, family).ratio == 0.0


@pytest.mark.parametrize('beta', [1.25, 1.5, 1.75])
def test_bernstein_single_mode_blocks(beta, grid32, family):
    """cos 5x₁ touches blocks 1 and 2 with ratio (5/2^j)^{β−1} inside the annulus bounds"""
    ratios = bernstein_block_ratios(single_mode(grid32, 5), beta, family)
    low, high = single_mode_block_bounds(beta)
    assert [j for j, _ in ratios] == [1, 2]
    for j, ratio in ratios:
        assert ratio == pytest.approx((5.0 / 2.0 ** j) ** (beta - 1.0), rel=1e-12)
        assert low <= ratio <= high


def test_bernstein_suite_block_extremes(family):
    """Per-block ratios of random fields stay inside the annulus bounds"""
    report = bernstein_suite(small_suite(), family)
    low, high = single_mode_block_bounds(1.5)
    (record,) = report.records
    assert low * (1.0 - 1e-12) <= record['min_block_ratio'] <= record['max_block_ratio'] <= high * (1.0 + 1e-12)


# Growth


def riccati_series(c=0.7, points=20):
    t = np.linspace(0.0, 0.7, points)
    return list(zip(t, 1.0 / (1.0 - c * t)))


def test_growth_fit_recovers_riccati_constant():
    """N = 1/(1 − 0.7t) solves N′ = 0.7N²"""
    fit = growth_fit(riccati_series())
    assert fit.c_fit == pytest.approx(0.7, rel=0.02)
    assert fit.residual < 0.02


def test_growth_fit_of_steady_series():
    """Constant or decaying norms give C = 0"""
    assert growth_fit([(0.0, 2.0), (1.0, 2.0), (2.0, 2.0)]).c_fit == 0.0
    assert growth_fit([(0.0, 3.0), (1.0, 2.0), (2.0, 1.0), (3.0, 0.5)]).c_fit == 0.0


@pytest.mark.parametrize('series', [
    [(0.0, 1.0), (1.0, 2.0)],
    [(0.0, 1.0), (1.0, 2.0), (1.0, 3.0)],
    [(0.0, 1.0, 2.0), (1.0, 2.0, 3.0), (2.0, 3.0, 4.0)],
])
def test_growth_fit_rejects_bad_series(series):
    with pytest.raises(ParameterError):
        growth_fit(series)


def test_gronwall_envelope_dominates():
    """The envelope with the fitted C bounds the sampled norm"""
    series = riccati_series()
    fit = growth_fit(series)
    envelope = gronwall_envelope(series, fit.c_fit)
    assert envelope[0] == 1.0
    assert envelope_dominates(series, fit.c_fit)
    assert not envelope_dominates(series, 0.0)


# Scaling


def test_doubling_time_interpolates():
    assert doubling_time([(0.0, 1.0), (1.0, 1.5), (2.0, 2.5)]) == pytest.approx(1.5)
    assert doubling_time([(0.0, 1.0), (1.0, 1.5)]) is None
    assert doubling_time([]) is None


def test_scaling_flags_zero_data(grid32, family):
    """Zero initial data never doubles"""
    report = scaling_experiment(SpectralField.zeros(grid32), 1.5, [1.0, 2.0], fam=family)
    assert report.records == []
    assert [record['reason'] for record in report.flagged] == ['zero initial data'] * 2
    assert report.fitted == {}


@pytest.mark.parametrize('lambdas', [[1.0], [1.0, 0.0], [-1.0, 2.0]])
def test_scaling_rejects_lambdas(lambdas, smooth_theta):
    with pytest.raises(ParameterError):
        scaling_experiment(smooth_theta, 1.5, lambdas)


@pytest.mark.slow
def test_scaling_products_agree(family):
    """λ·t_double is the same for λ = 1, 2, 4, 8 at n = 128 with the default tail threshold"""
    theta = random_field(Grid2D(128), seed=3, gamma=3.0, k_max=8.0)
    report = scaling_experiment(theta, 1.5, [1.0, 2.0, 4.0, 8.0], t_max=40.0, fam=family)
    assert report.flagged == []
    assert len(report.records) == 4
    products = [record['product'] for record in report.records]
    assert max(products) <= 1.02 * min(products)
    assert report.fitted['lambda_t_double'][1] <= 0.02
    slope, _ = report.fitted['loglog_slope']
    assert slope == pytest.approx(-1.0, abs=0.02)
    assert report.fitted['existence_C'][0] > 0
    assert report.fitted['growth_C'].c_fit >= 0


@pytest.mark.slow
def test_gronwall_envelope_dominates_real_runs(family):
    """The envelope with the fitted C bounds the measured Besov series of every doubling run"""
    theta = random_field(Grid2D(128), seed=3, gamma=3.0, k_max=8.0)
    report = scaling_experiment(theta, 1.5, [1.0, 2.0], t_max=40.0, fam=family)
    assert report.records
    assert all(record['envelope_ok'] for record in report.records)


def test_report_frame_and_summary():
    """Records, sensitivity and flags share one table tagged by kind"""
    report = VerifyReport(suite='demo')
    report.records.append({'n': 32, 'j': 0, 'ratio': 0.5})
    report.flagged.append({'n': 32, 'reason': 'x'})
    report.fitted['C'] = (0.5, 0.0)
    frame = report.to_frame()
    assert list(frame['kind']) == ['case', 'flagged']
    text = report.summary()
    assert 'max ratio at n=32: 0.5' in text
    assert 'fitted C: 0.5' in text


def test_lemma1_rhs_without_log_weight(grid32, family):
    """q′ = inf drops the (j′ + 1) weight"""
    theta = single_mode(grid32, 6)
    value = lemma1_rhs(theta, 1.0, 0, 2.0, math.inf, 4, family)
    assert value == pytest.approx(0.25 * math.pi * math.sqrt(2.0), rel=1e-12)
    assert lemma1_rhs(SpectralField.zeros(grid32), 1.0, 0, 2.0, 2.0, 4, family) == 0.0


def test_growth_fit_is_scale_invariant():
    """λN over t/λ has the same N′/N² as N over t"""
    series = riccati_series()
    scaled = [(t / 4.0, 4.0 * n) for t, n in series]
    assert growth_fit(scaled).c_fit == pytest.approx(growth_fit(series).c_fit, rel=1e-12)


@pytest.mark.slow
def test_commutator_constant_is_resolution_stable(family):
    """Max ratios at n = 64 and n = 128 agree within a factor of 2"""
    cfg = VerifySuiteConfig(
        seeds=[0, 1, 2, 3, 4], n_list=[64, 128], beta_list=[1.25, 1.5, 1.75],
        p=2.0, q=1.0, M=4, M_list=[4], pair_budget=16384,
    )
    report = commutator_suite(cfg, family)
    assert len({(r['seed'], r['n'], r['beta']) for r in report.records}) >= 30
    assert all(math.isfinite(ratio) and ratio >= 0 for ratio in report.ratios)
    per_n = report.group_max('n')
    assert 0.5 <= per_n[128] / per_n[64] <= 2.0


def resolution_suite():
    return VerifySuiteConfig(
        seeds=[0, 1, 2, 3, 4], n_list=[64, 128], beta_list=[1.25, 1.5, 1.75], pair_budget=16384,
    )


@pytest.mark.slow
@pytest.mark.parametrize('suite', [embedding_suite, bernstein_suite])
def test_ratio_suites_are_resolution_stable(suite, family):
    """Max embedding and Bernstein ratios at n = 128 stay within a factor of 2 of n = 64"""
    report = suite(resolution_suite(), family)
    assert len(report.records) == 30
    assert all(math.isfinite(ratio) and ratio > 0 for ratio in report.ratios)
    per_n = report.group_max('n')
    assert 0.5 <= per_n[128] / per_n[64] <= 2.0


def test_small_cutoff_shift_is_flagged(family):
    """M = 0 in the sensitivity list can leave a block with no bound; the row is flagged, not fatal"""
    report = commutator_suite(small_suite(M=4, M_list=[0, 4]), family)
    assert report.records
    assert all(record['M'] == 4 for record in report.records)
    assert report.flagged
    for record in report.flagged:
        assert record['M'] == 0
        assert record['rhs'] == 0.0 and record['lhs'] > 0.0
        assert record['ratio'] == math.inf
        assert record['reason'].startswith('violation')
    shifted = [record for record in report.sensitivity if record['M'] == 0]
    assert any(record['ratio'] == math.inf for record in shifted)
    assert math.isfinite(report.max_ratio)
    assert set(report.to_frame()['kind']) >= {'case', 'sensitivity', 'flagged'}
