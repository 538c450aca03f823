"""
Existence-time scaling: doubling time of the B^{1+β}₂,₁ norm under θ₀ → λθ₀
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from dynamics.integrator import integrate
from dynamics.model import ModelParams, SimState
from spectral.exceptions import BlowUpError, ParameterError
from spectral.function_spaces import BesovParams, besov_norm
from spectral.grid import SpectralField
from spectral.littlewood_paley import DyadicFamily, default_family

from .growth import MIN_SERIES_POINTS, envelope_dominates, growth_fit
from .models import VerifyReport

logger = logging.getLogger(__name__)

DOUBLING_FACTOR = 2.0


def critical_norm(theta: SpectralField, beta: float, fam: DyadicFamily) -> float:
    """‖θ‖_{B^{1+β}₂,₁}"""
    return besov_norm(theta, BesovParams(s=1.0 + beta, p=2.0, q=1.0), fam).total


def doubling_time(series: Sequence[Tuple[float, float]], factor: float = DOUBLING_FACTOR) -> Optional[float]:
    """First time N reaches factor·N(0), linearly interpolated between samples; None if never"""
    if not series:
        return None
    target = factor * series[0][1]
    if target <= 0:
        return None
    for (t0, n0), (t1, n1) in zip(series, series[1:]):
        if n1 >= target:
            return t0 + (target - n0) / (n1 - n0) * (t1 - t0)
    return None


def _evolve_case(
    theta0: SpectralField,
    lam: float,
    params: ModelParams,
    t_max: float,
    max_steps: Optional[int],
    fam: DyadicFamily,
) -> Tuple[dict, List[Tuple[float, float]]]:
    state = SimState(theta0 * lam, 0.0, params)
    n_start = critical_norm(state.theta, params.beta, fam)
    record = {'lambda': lam, 'n0': n_start, 't_double': math.nan, 'product': math.nan, 'steps': 0}
    series = [(0.0, n_start)]
    if n_start == 0.0:
        return dict(record, reason='zero initial data'), series

    target = DOUBLING_FACTOR * n_start
    try:
        for state, _ in integrate(state, t_max / lam, max_steps):
            series.append((state.t, critical_norm(state.theta, params.beta, fam)))
            record['steps'] = state.step
            if series[-1][1] >= target:
                t_double = doubling_time(series)
                return dict(record, t_double=t_double, product=lam * t_double), series
            if state.resolution_exhausted:
                return dict(record, reason=f'resolution exhausted at t = {state.t:.6g}'), series
    except BlowUpError as e:
        return dict(record, reason=f'blow-up: {e}'), series
    return dict(record, reason=f'no doubling before t = {state.t:.6g}'), series


def scaling_experiment(
    theta0: SpectralField,
    beta: float,
    lambdas: Sequence[float],
    cfl: float = 0.5,
    t_max: float = 10.0,
    max_steps: Optional[int] = None,
    tail_threshold: float = 0.1,
    fam: Optional[DyadicFamily] = None,
) -> VerifyReport:
    """
    Doubling times of λθ₀ for every λ

    Runs use dt_max = ∞ so the step sequence of λθ₀ is the step sequence of θ₀
    divided by λ; for powers of two the products λ·t_double agree bit-for-bit.

    Args:
        theta0: Mean-zero initial spectrum
        beta: Velocity-law order
        lambdas: Positive amplitude factors, at least two
        cfl: CFL number
        t_max: Time budget of the λ = 1 run (scaled by 1/λ for the others)
        max_steps: Optional step cap per run
        tail_threshold: Resolution exhaustion threshold
        fam: Dyadic family (default family when omitted)

    Returns:
        VerifyReport with one record per reached doubling, flagged cases, and
        fitted 'lambda_t_double', 'loglog_slope', 'existence_C' and 'growth_C'
    """
    if len(lambdas) < 2:
        raise ParameterError(f"scaling needs at least two lambdas, got {len(lambdas)}")
    if any(not lam > 0 for lam in lambdas):
        raise ParameterError(f"lambdas must be positive, got {list(lambdas)}")
    fam = fam or default_family()
    params = ModelParams(beta=beta, cfl=cfl, dt_max=math.inf, tail_threshold=tail_threshold)
    report = VerifyReport(suite='scaling')

    growth_fits = []
    for lam in sorted(lambdas):
        record, series = _evolve_case(theta0, float(lam), params, t_max, max_steps, fam)
        if 'reason' in record:
            logger.warning(f"Scaling case lambda = {lam:g} flagged: {record['reason']}")
            report.flagged.append(record)
            continue
        if len(series) >= MIN_SERIES_POINTS:
            fit = growth_fit(series)
            record['c_fit'] = fit.c_fit
            record['envelope_ok'] = envelope_dominates(series, fit.c_fit)
            growth_fits.append(fit)
        # T > 1/(C·N0) with the doubling time standing in for T
        record['existence_c'] = 1.0 / (record['t_double'] * record['n0'])
        record['ratio'] = record['product']
        logger.info(
            f"lambda = {lam:g}: t_double = {record['t_double']:.9g}, "
            f"lambda*t_double = {record['product']:.9g} after {record['steps']} steps"
        )
        report.records.append(record)

    if report.records:
        products = np.array([r['product'] for r in report.records])
        mean = float(np.mean(products))
        report.fitted['lambda_t_double'] = (mean, float(np.max(np.abs(products - mean))) / mean)
        report.fitted['existence_C'] = (max(r['existence_c'] for r in report.records), 0.0)
    if len(report.records) >= 2:
        log_lam = np.log([r['lambda'] for r in report.records])
        log_t = np.log([r['t_double'] for r in report.records])
        slope, intercept = np.polyfit(log_lam, log_t, 1)
        residual = float(np.sqrt(np.mean((log_t - (slope * log_lam + intercept)) ** 2)))
        report.fitted['loglog_slope'] = (float(slope), residual)
    if growth_fits:
        report.fitted['growth_C'] = max(growth_fits, key=lambda fit: fit.c_fit)
    return report
