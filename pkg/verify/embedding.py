"""
Embedding LL_{1/q′} ⊂ B^{1+2/p}_{p,q} and the Bernstein step ‖u‖_{B²₂,₁} ≲ ‖θ‖_{B^{1+β}₂,₁}
"""
import logging
import math
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from dynamics.active_scalar import velocity
from spectral.exceptions import InconsistencyError
from spectral.function_spaces import (
    BesovParams,
    PairSampler,
    besov_norm,
    block_lp_norm,
    conjugate_exponent,
    log_lipschitz_norm,
)
from spectral.grid import Grid2D, SpectralField, inverse_transform
from spectral.littlewood_paley import DyadicFamily, default_family, max_block

from .commutator import run_cases
from .fields import random_field
from .models import VerifyReport, VerifySuiteConfig

logger = logging.getLogger(__name__)

SpectralScalarOrVector = Union[SpectralField, Sequence[SpectralField]]


class EmbeddingCheck(NamedTuple):
    ll_norm: float
    besov_norm: float
    ratio: float


class BernsteinCheck(NamedTuple):
    u_norm: float
    theta_norm: float
    ratio: float


def embedding_check(
    f: SpectralScalarOrVector,
    p: float,
    q: float,
    fam: Optional[DyadicFamily] = None,
    sampler: Optional[PairSampler] = None,
) -> EmbeddingCheck:
    """
    Sampled ‖f‖_{LL_{1/q′}} against ‖f‖_{B^{1+s}_{p,q}} with s = 2/p

    Args:
        f: Spectral field or sequence of components
        p: Integrability exponent
        q: Summability exponent
        fam: Dyadic family (default family when omitted)
        sampler: Pair sampler for the log-Lipschitz supremum

    Returns:
        (ll_norm, besov_norm, ratio), ratio 0 when both norms vanish

    Raises:
        InconsistencyError: if the Besov norm vanishes but the LL norm does not
    """
    fam = fam or default_family()
    comps = [f] if isinstance(f, SpectralField) else list(f)
    s = 0.0 if math.isinf(p) else 2.0 / p
    q_prime = conjugate_exponent(q)
    alpha = 0.0 if math.isinf(q_prime) else 1.0 / q_prime
    physical = [inverse_transform(c) for c in comps]
    ll = log_lipschitz_norm(physical if len(physical) > 1 else physical[0], alpha, sampler)
    besov = besov_norm(comps if len(comps) > 1 else comps[0], BesovParams(s=1.0 + s, p=p, q=q), fam).total
    if besov == 0.0:
        if ll > 0.0:
            raise InconsistencyError(f"LL norm {ll:.3e} is nonzero but the Besov norm vanishes")
        return EmbeddingCheck(ll, besov, 0.0)
    return EmbeddingCheck(ll, besov, ll / besov)


def bernstein_check(
    theta: SpectralField,
    beta: float,
    fam: Optional[DyadicFamily] = None,
) -> BernsteinCheck:
    """(‖u‖_{B²₂,₁}, ‖θ‖_{B^{1+β}₂,₁}, ratio) with u = velocity(θ, β)"""
    fam = fam or default_family()
    u = velocity(theta, beta)
    u_norm = besov_norm(u, BesovParams(s=2.0, p=2.0, q=1.0), fam).total
    theta_norm = besov_norm(theta, BesovParams(s=1.0 + beta, p=2.0, q=1.0), fam).total
    return BernsteinCheck(u_norm, theta_norm, u_norm / theta_norm if theta_norm > 0 else 0.0)


def bernstein_block_ratios(
    theta: SpectralField,
    beta: float,
    fam: Optional[DyadicFamily] = None,
) -> List[Tuple[int, float]]:
    """
    Per-block ratios 2^{2j}‖Δⱼu‖₂ / 2^{j(1+β)}‖Δⱼθ‖₂

    Blocks where Δⱼθ vanishes are skipped.
    """
    fam = fam or default_family()
    u = velocity(theta, beta)
    ratios = []
    for j in range(-1, max_block(theta.grid, fam) + 1):
        theta_block = block_lp_norm(theta, j, 2.0, fam)
        if theta_block == 0.0:
            continue
        u_block = block_lp_norm(u, j, 2.0, fam)
        ratios.append((j, 2.0 ** (j * (1.0 - beta)) * u_block / theta_block))
    return ratios


def _case_field(case, cfg: VerifySuiteConfig) -> SpectralField:
    seed, n, _ = case
    return random_field(Grid2D(n), seed, gamma=cfg.gamma, k_max=cfg.k_max, amplitude=cfg.amplitude)


def _embedding_case(case, cfg: VerifySuiteConfig, fam: DyadicFamily):
    seed, n, beta = case
    theta = _case_field(case, cfg)
    check = embedding_check(velocity(theta, beta), cfg.p, cfg.q, fam, PairSampler(seed, cfg.pair_budget))
    return {
        'seed': seed, 'n': n, 'beta': beta,
        'lhs': check.ll_norm, 'rhs': check.besov_norm, 'ratio': check.ratio,
    }


def _bernstein_case(case, cfg: VerifySuiteConfig, fam: DyadicFamily):
    seed, n, beta = case
    theta = _case_field(case, cfg)
    check = bernstein_check(theta, beta, fam)
    blocks = bernstein_block_ratios(theta, beta, fam)
    return {
        'seed': seed, 'n': n, 'beta': beta,
        'lhs': check.u_norm, 'rhs': check.theta_norm, 'ratio': check.ratio,
        'max_block_ratio': max((ratio for _, ratio in blocks), default=0.0),
        'min_block_ratio': min((ratio for _, ratio in blocks), default=0.0),
    }


def _ratio_suite(name: str, case_function, cfg: VerifySuiteConfig, fam: Optional[DyadicFamily]) -> VerifyReport:
    fam = fam or default_family()
    cases = [(seed, n, beta) for seed in cfg.seeds for n in cfg.n_list for beta in cfg.beta_list]
    logger.info(f"{name.capitalize()} suite: {len(cases)} cases")
    report = VerifyReport(suite=name)
    for record in run_cases(case_function, cases, cfg, fam):
        if record['rhs'] == 0.0:
            report.degenerate.append(record)
        else:
            report.records.append(record)
    report.records.sort(key=lambda r: (r['seed'], r['n'], r['beta']))
    report.fitted['C'] = (report.max_ratio, 0.0)
    logger.info(f"{name.capitalize()} suite done: max ratio {report.max_ratio:.6g}")
    return report


def embedding_suite(cfg: VerifySuiteConfig, fam: Optional[DyadicFamily] = None) -> VerifyReport:
    """‖u‖_{LL_{1/q′}} / ‖u‖_{B^{1+2/p}_{p,q}} over the suite's random fields"""
    return _ratio_suite('embedding', _embedding_case, cfg, fam)


def bernstein_suite(cfg: VerifySuiteConfig, fam: Optional[DyadicFamily] = None) -> VerifyReport:
    """‖u‖_{B²₂,₁} / ‖θ‖_{B^{1+β}₂,₁} over the suite's random fields, with per-block extremes"""
    return _ratio_suite('bernstein', _bernstein_case, cfg, fam)


def single_mode_block_bounds(beta: float) -> Tuple[float, float]:
    """Annulus bounds ((3/4)^{β−1}, (8/3)^{β−1}) of the single-mode per-block ratio"""
    return float(np.power(0.75, beta - 1.0)), float(np.power(8.0 / 3.0, beta - 1.0))
