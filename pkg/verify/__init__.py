"""
Verify package: numerical checks of the commutator, embedding, Bernstein, growth and scaling estimates
"""
from .models import VerifySuiteConfig, VerifyReport
from .fields import random_field
from .commutator import (
    CancellationCheck,
    BlockEnergyCheck,
    commutator_residual,
    lemma1_rhs,
    commutator_suite,
    cancellation_check,
    block_energy_check
)
from .embedding import (
    EmbeddingCheck,
    BernsteinCheck,
    embedding_check,
    bernstein_check,
    bernstein_block_ratios,
    embedding_suite,
    bernstein_suite,
    single_mode_block_bounds
)
from .growth import GrowthFit, growth_fit, gronwall_envelope, envelope_dominates
from .scaling import critical_norm, doubling_time, scaling_experiment

__all__ = [
    'VerifySuiteConfig',
    'VerifyReport',
    'random_field',
    'CancellationCheck',
    'BlockEnergyCheck',
    'commutator_residual',
    'lemma1_rhs',
    'commutator_suite',
    'cancellation_check',
    'block_energy_check',
    'EmbeddingCheck',
    'BernsteinCheck',
    'embedding_check',
    'bernstein_check',
    'bernstein_block_ratios',
    'embedding_suite',
    'bernstein_suite',
    'single_mode_block_bounds',
    'GrowthFit',
    'growth_fit',
    'gronwall_envelope',
    'envelope_dominates',
    'critical_norm',
    'doubling_time',
    'scaling_experiment'
]
