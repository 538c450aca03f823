"""
Spectral package: periodic grid, Fourier transforms, Littlewood-Paley blocks and norms
"""
from .grid import (
    Grid2D,
    PhysicalField,
    SpectralField,
    Symbol,
    forward_transform,
    inverse_transform,
    apply_symbol,
    dealias,
    conjugate_asymmetry,
    identity_symbol,
    derivative_symbol,
    fractional_laplacian_symbol,
    perp_gradient_symbol,
    l2_norm_spectral
)
from .littlewood_paley import (
    DyadicFamily,
    build_family,
    default_family,
    delta_j,
    s_j,
    max_block,
    block_kernel
)
from .function_spaces import (
    BesovParams,
    NormReport,
    PairSampler,
    lp_norm,
    besov_norm,
    block_lp_norm,
    sequence_norm,
    conjugate_exponent,
    log_lipschitz_norm
)
from .exceptions import (
    LPScalarError,
    ConfigurationError,
    ParameterError,
    DataError,
    GaugeError,
    InconsistencyError,
    BlowUpError
)

__all__ = [
    'Grid2D',
    'PhysicalField',
    'SpectralField',
    'Symbol',
    'forward_transform',
    'inverse_transform',
    'apply_symbol',
    'dealias',
    'conjugate_asymmetry',
    'identity_symbol',
    'derivative_symbol',
    'fractional_laplacian_symbol',
    'perp_gradient_symbol',
    'l2_norm_spectral',
    'DyadicFamily',
    'build_family',
    'default_family',
    'delta_j',
    's_j',
    'max_block',
    'block_kernel',
    'BesovParams',
    'NormReport',
    'PairSampler',
    'lp_norm',
    'besov_norm',
    'block_lp_norm',
    'sequence_norm',
    'conjugate_exponent',
    'log_lipschitz_norm',
    'LPScalarError',
    'ConfigurationError',
    'ParameterError',
    'DataError',
    'GaugeError',
    'InconsistencyError',
    'BlowUpError'
]
