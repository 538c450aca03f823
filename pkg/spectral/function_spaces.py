"""
Function-space norms: L^p, Besov B^s_{p,q} and log-Lipschitz LL_α
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .config import DOMAIN_LENGTH
from .exceptions import ParameterError
from .grid import PhysicalField, SpectralField, inverse_transform
from .littlewood_paley import DyadicFamily, default_family, delta_j, max_block
from .validators import check_exponent, parse_exponent

logger = logging.getLogger(__name__)

ScalarOrVector = Union[PhysicalField, Sequence[PhysicalField]]
SpectralScalarOrVector = Union[SpectralField, Sequence[SpectralField]]

# Pairs are drawn in chunks seeded by (seed, chunk index)
PAIR_CHUNK = 4096


class BesovParams(BaseModel):
    """Smoothness s, integrability p and summability q of B^s_{p,q}"""
    model_config = ConfigDict(frozen=True)

    s: float = Field(..., description="Smoothness index")
    p: float = Field(2.0, description="Integrability exponent in [1, inf]")
    q: float = Field(1.0, description="Summability exponent in [1, inf]")

    @field_validator('p', 'q', mode='before')
    @classmethod
    def _inf_strings(cls, value):
        return parse_exponent(value)

    @field_validator('s')
    @classmethod
    def _finite_s(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("s must be finite")
        return value

    @field_validator('p', 'q')
    @classmethod
    def _exponent_range(cls, value: float) -> float:
        return check_exponent(value)

    @property
    def q_conjugate(self) -> float:
        return conjugate_exponent(self.q)


@dataclass
class NormReport:
    """Besov norm with its per-block terms (j, 2^{js}‖Δⱼf‖_{L^p})"""

    total: float
    per_block: List[Tuple[int, float]]
    params: BesovParams

    def recompute_total(self) -> float:
        return sequence_norm([value for _, value in self.per_block], self.params.q)


@dataclass(frozen=True)
class PairSampler:
    """
    Seeded sampler of point pairs for the log-Lipschitz supremum

    Attributes:
        seed: generator seed
        n_pairs: number of random pairs
        include_neighbours: also use every nearest-neighbour grid pair
    """

    seed: int = 0
    n_pairs: int = 65536
    include_neighbours: bool = True

    def offsets(self, n: int) -> np.ndarray:
        """
        Random anchor indices and integer offsets, shape (K, 4): (a₁, a₂, d₁, d₂)

        Separations are log-uniform in [h, 1] with uniform directions, rounded
        to grid offsets; pairs that round to zero or leave the unit ball are kept
        out by the caller.
        """
        h = 2.0 * math.pi / n
        chunks = []
        remaining = self.n_pairs
        index = 0
        while remaining > 0:
            rng = np.random.default_rng([self.seed, index])
            anchors = rng.integers(0, n, size=(PAIR_CHUNK, 2))
            log_r = rng.uniform(math.log(h), 0.0, size=PAIR_CHUNK)
            angle = rng.uniform(0.0, 2.0 * math.pi, size=PAIR_CHUNK)
            r = np.exp(log_r) / h
            d = np.rint(np.stack([r * np.cos(angle), r * np.sin(angle)], axis=1)).astype(np.int64)
            take = min(remaining, PAIR_CHUNK)
            chunks.append(np.concatenate([anchors, d], axis=1)[:take])
            remaining -= take
            index += 1
        if not chunks:
            return np.zeros((0, 4), dtype=np.int64)
        return np.concatenate(chunks, axis=0)


def _components(f: ScalarOrVector) -> List[PhysicalField]:
    if isinstance(f, PhysicalField):
        return [f]
    return list(f)


def _magnitude(f: ScalarOrVector) -> np.ndarray:
    comps = _components(f)
    if len(comps) == 1:
        return np.abs(comps[0].values)
    return np.sqrt(sum(c.values ** 2 for c in comps))


def lp_norm(f: ScalarOrVector, p: float) -> float:
    """
    Grid quadrature of (∫|f|^p)^{1/p}; p = inf gives the grid max

    Args:
        f: Scalar field or sequence of components (pointwise Euclidean magnitude)
        p: Exponent in [1, inf]
    """
    if math.isnan(p) or p < 1:
        raise ParameterError(f"p must lie in [1, inf], got {p}")
    magnitude = _magnitude(f)
    if math.isinf(p):
        return float(np.max(magnitude))
    h = DOMAIN_LENGTH / magnitude.shape[0]
    return float((h * h * np.sum(magnitude ** p)) ** (1.0 / p))


def sequence_norm(values: Sequence[float], q: float) -> float:
    """ℓ^q norm of a finite sequence (max for q = inf)"""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0.0
    if math.isinf(q):
        return float(np.max(np.abs(values)))
    return float(np.sum(np.abs(values) ** q) ** (1.0 / q))


def conjugate_exponent(q: float) -> float:
    """q′ with 1/q + 1/q′ = 1"""
    if math.isnan(q) or q < 1:
        raise ParameterError(f"q must lie in [1, inf], got {q}")
    if q == 1:
        return math.inf
    if math.isinf(q):
        return 1.0
    return q / (q - 1.0)


def block_lp_norm(f: SpectralScalarOrVector, j: int, p: float, fam: DyadicFamily) -> float:
    """‖Δⱼf‖_{L^p}; Plancherel for p = 2"""
    comps = [f] if isinstance(f, SpectralField) else list(f)
    blocks = [delta_j(c, j, fam) for c in comps]
    if p == 2:
        energy = sum(float(np.sum(np.abs(b.coeffs) ** 2)) for b in blocks)
        return DOMAIN_LENGTH * math.sqrt(energy)
    physical = [inverse_transform(b) for b in blocks]
    return lp_norm(physical if len(physical) > 1 else physical[0], p)


def besov_norm(f: SpectralScalarOrVector, prm: BesovParams, fam: DyadicFamily = None) -> NormReport:
    """
    B^s_{p,q} norm over the resolved blocks j = −1..j_max

    Args:
        f: Spectral field, or sequence of components for vector fields
        prm: Besov parameters
        fam: Dyadic family (default family when omitted)

    Returns:
        NormReport with per-block weighted norms and their ℓ^q total
    """
    fam = fam or default_family()
    grid = f.grid if isinstance(f, SpectralField) else f[0].grid
    per_block = []
    for j in range(-1, max_block(grid, fam) + 1):
        per_block.append((j, 2.0 ** (j * prm.s) * block_lp_norm(f, j, prm.p, fam)))
    total = sequence_norm([value for _, value in per_block], prm.q)
    return NormReport(total=total, per_block=per_block, params=prm)


def _torus_distance(d1: np.ndarray, d2: np.ndarray, n: int) -> np.ndarray:
    """Min-image distance of integer grid offsets"""
    h = DOMAIN_LENGTH / n
    d1 = np.mod(d1 + n // 2, n) - n // 2
    d2 = np.mod(d2 + n // 2, n) - n // 2
    return h * np.hypot(d1, d2)


def log_lipschitz_norm(f: ScalarOrVector, alpha: float, sampler: PairSampler = None) -> float:
    """
    Sampled ‖f‖_{LL_α} = ‖f‖_∞ + sup |f(x) − f(y)| / (|x − y|(1 − log₂|x − y|)^α)

    The supremum runs over sampled grid pairs with 0 < |x − y| ≤ 1 and is a
    lower bound of the continuum supremum.
    """
    if math.isnan(alpha) or not 0.0 <= alpha <= 1.0:
        raise ParameterError(f"alpha must lie in [0, 1], got {alpha}")
    sampler = sampler or PairSampler()
    comps = _components(f)
    n = comps[0].grid.n
    stack = np.stack([c.values for c in comps])
    sup_norm = float(np.max(_magnitude(f)))

    pairs = sampler.offsets(n)
    if sampler.include_neighbours:
        a1, a2 = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
        a1, a2 = a1.ravel(), a2.ravel()
        ones, zeros = np.ones_like(a1), np.zeros_like(a1)
        neighbours = np.concatenate([
            np.stack([a1, a2, ones, zeros], axis=1),
            np.stack([a1, a2, zeros, ones], axis=1),
        ])
        pairs = np.concatenate([pairs, neighbours], axis=0)

    distance = _torus_distance(pairs[:, 2], pairs[:, 3], n)
    keep = (distance > 0.0) & (distance <= 1.0)
    pairs, distance = pairs[keep], distance[keep]
    if len(pairs) == 0:
        return sup_norm

    x1, x2 = pairs[:, 0], pairs[:, 1]
    y1, y2 = np.mod(x1 + pairs[:, 2], n), np.mod(x2 + pairs[:, 3], n)
    diff = stack[:, x1, x2] - stack[:, y1, y2]
    numerator = np.sqrt(np.sum(diff ** 2, axis=0))
    weight = distance * (1.0 - np.log2(distance)) ** alpha
    quotient = float(np.max(numerator / weight))
    logger.debug(f"LL_{alpha:g} sampled over {len(pairs)} pairs, sup quotient {quotient:.6e}")
    return sup_norm + quotient
