"""
Range checks shared by the pydantic models (BesovParams, ModelParams, VerifySuiteConfig, RunConfig)

Each check returns the value unchanged or raises ValueError, so models call
them from their field validators and pydantic reports the field name.
"""
import math
from typing import List, Optional

MIN_RUN_GRID = 16


def parse_exponent(value):
    """'inf', 'infinity' and '∞' become math.inf; anything else passes through"""
    if isinstance(value, str) and value.strip().lower() in ('inf', 'infinity', '∞'):
        return math.inf
    return value


def check_exponent(value: float) -> float:
    if math.isnan(value) or value < 1:
        raise ValueError(f"exponent must lie in [1, inf], got {value}")
    return value


def check_beta(value: float) -> float:
    if math.isnan(value) or not 0.0 <= value <= 2.0:
        raise ValueError(f"beta must lie in [0, 2], got {value}")
    return value


def check_cfl(value: float) -> float:
    if math.isnan(value) or not 0.0 < value <= 1.0:
        raise ValueError(f"cfl must lie in (0, 1], got {value}")
    return value


def check_positive(value: float) -> float:
    if math.isnan(value) or value <= 0.0:
        raise ValueError(f"must be positive, got {value}")
    return value


def check_non_negative(value: int, name: str) -> int:
    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")
    return value


def check_at_least_one(value: Optional[int], name: str) -> Optional[int]:
    if value is not None and value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return value


def check_grid_size(n: int, minimum: int = MIN_RUN_GRID) -> int:
    if n < minimum or n & (n - 1):
        raise ValueError(f"must be a power of two >= {minimum}, got {n}")
    return n


def check_each(values: List, check, *args) -> List:
    return [check(value, *args) for value in values]
