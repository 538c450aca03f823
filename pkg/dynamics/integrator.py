"""
Time integration of the active scalar equation
Classical RK4 on the dealiased semi-discrete system with CFL-adaptive steps
"""
import logging
import time
from typing import Iterator, Optional, Tuple

import numpy as np

from spectral.exceptions import BlowUpError, ParameterError

from .active_scalar import advect_rhs, advection_terms, max_speed
from .model import SimState

logger = logging.getLogger(__name__)

SPEED_FLOOR = 1e-14


def adaptive_dt(state: SimState) -> float:
    """dt = min(dt_max, cfl·h / max(‖u‖_∞, ε))"""
    speed = max_speed(state.theta, state.params.beta)
    return min(state.params.dt_max, state.params.cfl * state.grid.spacing / max(speed, SPEED_FLOOR))


def step_rk4(state: SimState, dt: float) -> SimState:
    """
    Advance one classical Runge-Kutta step

    Args:
        state: Current state
        dt: Step size (> 0)

    Returns:
        New state at t + dt, mean-zero

    Raises:
        BlowUpError: if the new spectrum is not finite
    """
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got {dt}")
    beta = state.params.beta
    theta = state.theta
    k1, tail_fraction = advection_terms(theta, beta)
    k2 = advect_rhs(theta + k1 * (dt / 2.0), beta)
    k3 = advect_rhs(theta + k2 * (dt / 2.0), beta)
    k4 = advect_rhs(theta + k3 * dt, beta)
    coeffs = theta.coeffs + (dt / 6.0) * (k1.coeffs + 2.0 * k2.coeffs + 2.0 * k3.coeffs + k4.coeffs)
    if not np.all(np.isfinite(coeffs)):
        raise BlowUpError(f"non-finite state after step {state.step + 1} at t = {state.t + dt:.6g}")
    coeffs[0, 0] = 0.0
    return state.evolve(type(theta)(theta.grid, coeffs), dt, tail_fraction)


def integrate(
    state: SimState,
    t_end: float,
    max_steps: Optional[int] = None,
) -> Iterator[Tuple[SimState, float]]:
    """
    Yield (state, dt) after every step until t_end

    The last step is clipped to land on t_end. Integration stops after a step
    whose tail fraction exceeds the resolution threshold; the offending state
    is still yielded so callers can record it.
    """
    slack = 1e-12 * max(1.0, abs(t_end))
    steps = 0
    while state.t < t_end - slack:
        if max_steps is not None and steps >= max_steps:
            logger.warning(f"Step budget {max_steps} exhausted at t = {state.t:.6g}")
            return
        dt = min(adaptive_dt(state), t_end - state.t)
        start_time = time.perf_counter()
        state = step_rk4(state, dt)
        steps += 1
        logger.debug(
            f"Step {state.step}: t = {state.t:.6g}, dt = {dt:.3e}, "
            f"tail = {state.tail_fraction:.3e} ({time.perf_counter() - start_time:.3f}s)"
        )
        yield state, dt
        if state.resolution_exhausted:
            logger.warning(
                f"Resolution exhausted at t = {state.t:.6g}: tail fraction "
                f"{state.tail_fraction:.3e} > {state.params.tail_threshold:g}"
            )
            return
