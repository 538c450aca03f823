"""
Model parameters and simulation state for the active scalar equation
"""
from dataclasses import dataclass, replace

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from spectral.config import SYMMETRY_TOLERANCE
from spectral.exceptions import DataError
from spectral.grid import SpectralField, conjugate_asymmetry
from spectral.validators import check_beta, check_cfl, check_positive


class ModelParams(BaseModel):
    """Parameters of ∂ₜθ + u·∇θ = 0 with u = −∇⊥(−Δ)^{−1+β/2}θ"""
    model_config = ConfigDict(frozen=True)

    beta: float = Field(..., description="Velocity-law order; (1, 2) is the critical range, 0 is Euler, 1 is SQG")
    cfl: float = Field(0.5, description="CFL number in (0, 1]")
    dt_max: float = Field(0.01, description="Upper bound on the time step")
    tail_threshold: float = Field(0.1, description="Product tail fraction that flags resolution exhaustion")

    @field_validator('beta')
    @classmethod
    def _beta_range(cls, value: float) -> float:
        return check_beta(value)

    @field_validator('cfl')
    @classmethod
    def _cfl_range(cls, value: float) -> float:
        return check_cfl(value)

    @field_validator('dt_max', 'tail_threshold')
    @classmethod
    def _positive(cls, value: float) -> float:
        return check_positive(value)


@dataclass(frozen=True, eq=False)
class SimState:
    """
    θ(·, t) as a mean-zero spectrum

    Attributes:
        theta: spectral field, coeffs(0, 0) = 0
        t: simulated time
        params: model parameters
        step: number of completed RK4 steps
        tail_fraction: product tail fraction measured on the last step
    """

    theta: SpectralField
    t: float
    params: ModelParams
    step: int = 0
    tail_fraction: float = 0.0

    def __post_init__(self):
        if self.t < 0:
            raise DataError(f"time must be non-negative, got {self.t}")
        coeffs = self.theta.coeffs
        scale = float(np.max(np.abs(coeffs))) if coeffs.size else 0.0
        if conjugate_asymmetry(self.theta) > SYMMETRY_TOLERANCE * max(scale, 1e-300):
            raise DataError("theta is not conjugate-symmetric")
        if coeffs[0, 0] != 0:
            gauged = coeffs.copy()
            gauged[0, 0] = 0.0
            object.__setattr__(self, 'theta', SpectralField(self.theta.grid, gauged))

    @property
    def grid(self):
        return self.theta.grid

    @property
    def resolution_exhausted(self) -> bool:
        return self.tail_fraction > self.params.tail_threshold

    def evolve(self, theta: SpectralField, dt: float, tail_fraction: float) -> 'SimState':
        return replace(self, theta=theta, t=self.t + dt, step=self.step + 1, tail_fraction=tail_fraction)

    def scaled(self, factor: float) -> 'SimState':
        return replace(self, theta=self.theta * factor)
