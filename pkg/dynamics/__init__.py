"""
Dynamics package: velocity law, advection and time integration of the active scalar equation
"""
from .model import ModelParams, SimState
from .active_scalar import (
    biot_savart_symbol,
    stream_symbol,
    velocity,
    velocity_field,
    velocity_from_stream,
    stream_function,
    max_speed,
    gradient_field,
    transport_product,
    advection_terms,
    advect_rhs
)
from .integrator import adaptive_dt, step_rk4, integrate

__all__ = [
    'ModelParams',
    'SimState',
    'biot_savart_symbol',
    'stream_symbol',
    'velocity',
    'velocity_field',
    'velocity_from_stream',
    'stream_function',
    'max_speed',
    'gradient_field',
    'transport_product',
    'advection_terms',
    'advect_rhs',
    'adaptive_dt',
    'step_rk4',
    'integrate'
]
