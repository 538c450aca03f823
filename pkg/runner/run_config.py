"""
Run configuration
JSON documents validated into RunConfig; every range is checked before any solver starts
"""
import json
import logging
import math
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, ValidationInfo, field_validator, model_validator

from dynamics.model import ModelParams
from spectral.exceptions import ConfigurationError
from spectral.function_spaces import BesovParams
from spectral.validators import (
    check_at_least_one,
    check_beta,
    check_cfl,
    check_each,
    check_exponent,
    check_grid_size,
    check_non_negative,
    check_positive,
    parse_exponent,
)
from verify.models import VerifySuiteConfig

from .config import LPSCALAR_OUTPUT_DIR

logger = logging.getLogger(__name__)

MODES = ('simulate', 'norms', 'verify-commutator', 'verify-embedding', 'verify-bernstein', 'scaling')
INITIAL_KINDS = ('random-spectrum', 'gaussian-bumps', 'shear')

Mode = Literal['simulate', 'norms', 'verify-commutator', 'verify-embedding', 'verify-bernstein', 'scaling']


class InitialSpec(BaseModel):
    """Initial data block; only the parameters of the chosen kind are used"""
    model_config = ConfigDict(frozen=True, extra='forbid')

    kind: str = Field('random-spectrum', description="random-spectrum | gaussian-bumps | shear")
    seed: int = Field(0, description="Generator seed")
    amplitude: float = Field(1.0, description="RMS amplitude (random-spectrum) or peak amplitude")
    gamma: float = Field(3.0, description="Spectral decay |θ̂| ∝ |ξ|^-gamma (random-spectrum)")
    k_min: float = Field(1.0, description="Lowest radius of the random spectrum")
    k_max: float = Field(8.0, description="Highest radius of the random spectrum")
    width: float = Field(0.5, description="Standard deviation of the Gaussian bumps")
    centre: Optional[Tuple[float, float]] = Field(None, description="Positive bump centre; seeded when omitted")
    wavenumber: int = Field(3, description="Shear profile cos(k x1)")

    @field_validator('kind')
    @classmethod
    def _known_kind(cls, value: str) -> str:
        if value not in INITIAL_KINDS:
            raise ValueError(f"unknown initial kind {value!r}, expected one of {', '.join(INITIAL_KINDS)}")
        return value

    @field_validator('width')
    @classmethod
    def _positive_width(cls, value: float) -> float:
        return check_positive(value)

    @field_validator('wavenumber')
    @classmethod
    def _positive_wavenumber(cls, value: int) -> int:
        return check_at_least_one(value, 'wavenumber')

    @field_validator('k_min', 'k_max')
    @classmethod
    def _non_negative_radius(cls, value: float, info: ValidationInfo) -> float:
        if math.isnan(value):
            raise ValueError(f"{info.field_name} must be a number")
        return check_non_negative(value, info.field_name)


class RunConfig(BaseModel):
    """Validated run configuration; unknown keys are rejected"""
    model_config = ConfigDict(frozen=True, extra='forbid')

    mode: Mode = Field('simulate', description="Run mode")
    n: int = Field(128, description="Grid size (power of two >= 16)")
    beta: float = Field(1.5, description="Velocity-law order in [0, 2]")
    t_end: float = Field(1.0, description="Final simulated time")
    cfl: float = Field(0.5, description="CFL number in (0, 1]")
    dt_max: float = Field(0.01, description="Upper bound on the time step")
    save_every: int = Field(10, description="Steps between snapshots and time-series rows")
    max_steps: Optional[int] = Field(None, description="Optional cap on RK4 steps")
    tail_threshold: float = Field(0.1, description="Tail fraction that flags resolution exhaustion")
    initial: InitialSpec = Field(default_factory=InitialSpec)

    # Norm parameters (norms mode); s defaults to 1 + beta
    s: Optional[float] = Field(None, description="Besov smoothness")
    p: float = Field(2.0, description="Integrability exponent")
    q: float = Field(1.0, description="Summability exponent")

    # Verify suites
    seeds: List[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4])
    n_list: List[int] = Field(default_factory=lambda: [64, 128])
    beta_list: List[float] = Field(default_factory=lambda: [1.25, 1.5, 1.75])
    M: int = Field(4, description="Cutoff shift of the commutator sum")
    M_list: List[int] = Field(default_factory=lambda: [2, 4, 8])
    pair_budget: int = Field(65536, description="Random pairs for log-Lipschitz norms")
    gamma: float = Field(3.0, description="Power-law decay of the suite's random fields")
    k_max: float = Field(10.0, description="Spectral radius of the suite's random fields")
    amplitude: float = Field(1.0, description="RMS amplitude of the suite's random fields")

    # Scaling experiment
    lambdas: List[float] = Field(default_factory=lambda: [1.0, 2.0, 4.0, 8.0])
    t_max: float = Field(10.0, description="Time budget of the lambda = 1 run")

    snapshot: Optional[str] = Field(None, description="Snapshot to analyse in norms mode")
    output_dir: str = Field(LPSCALAR_OUTPUT_DIR, description="Directory for all artifacts")
    write_parquet: bool = Field(False, description="Mirror every CSV table to Parquet")

    @field_validator('n')
    @classmethod
    def _grid_size(cls, value: int) -> int:
        return check_grid_size(value)

    @field_validator('n_list')
    @classmethod
    def _grid_sizes(cls, value: List[int]) -> List[int]:
        return check_each(value, check_grid_size)

    @field_validator('beta')
    @classmethod
    def _beta_range(cls, value: float) -> float:
        return check_beta(value)

    @field_validator('beta_list')
    @classmethod
    def _beta_list_range(cls, value: List[float]) -> List[float]:
        return check_each(value, check_beta)

    @field_validator('cfl')
    @classmethod
    def _cfl_range(cls, value: float) -> float:
        return check_cfl(value)

    @field_validator('t_end', 'dt_max', 'tail_threshold', 't_max')
    @classmethod
    def _positive(cls, value: float) -> float:
        return check_positive(value)

    @field_validator('save_every', 'max_steps')
    @classmethod
    def _step_counts(cls, value: Optional[int], info: ValidationInfo) -> Optional[int]:
        return check_at_least_one(value, info.field_name)

    @field_validator('p', 'q', mode='before')
    @classmethod
    def _inf_strings(cls, value):
        return parse_exponent(value)

    @field_validator('p', 'q')
    @classmethod
    def _exponent_range(cls, value: float) -> float:
        return check_exponent(value)

    @field_validator('M', 'pair_budget')
    @classmethod
    def _non_negative(cls, value: int, info: ValidationInfo) -> int:
        return check_non_negative(value, info.field_name)

    @field_validator('M_list')
    @classmethod
    def _non_negative_shifts(cls, value: List[int]) -> List[int]:
        return check_each(value, check_non_negative, 'M')

    @field_validator('lambdas')
    @classmethod
    def _lambdas(cls, value: List[float]) -> List[float]:
        if len(value) < 2:
            raise ValueError("at least two lambdas are required")
        return check_each(value, check_positive)

    @model_validator(mode='after')
    def _band_limits(self) -> 'RunConfig':
        if self.initial.kind == 'random-spectrum' and math.floor(self.initial.k_max) >= self.n / 3.0:
            raise ValueError(f"initial.k_max = {self.initial.k_max:g} must stay below n/3 = {self.n / 3.0:.4g}")
        if self.initial.kind == 'shear' and self.initial.wavenumber >= self.n / 3.0:
            raise ValueError(f"initial.wavenumber = {self.initial.wavenumber} must stay below n/3")
        if self.mode.startswith('verify') and self.n_list and math.floor(self.k_max) >= min(self.n_list) / 3.0:
            raise ValueError(f"k_max = {self.k_max:g} must stay below min(n_list)/3")
        return self

    def model_params(self) -> ModelParams:
        return ModelParams(beta=self.beta, cfl=self.cfl, dt_max=self.dt_max, tail_threshold=self.tail_threshold)

    def besov_params(self) -> BesovParams:
        return BesovParams(s=1.0 + self.beta if self.s is None else self.s, p=self.p, q=self.q)

    def suite_config(self) -> VerifySuiteConfig:
        return VerifySuiteConfig(
            seeds=self.seeds,
            n_list=self.n_list,
            beta_list=self.beta_list,
            p=self.p,
            q=self.q,
            M=self.M,
            M_list=self.M_list,
            pair_budget=self.pair_budget,
            gamma=self.gamma,
            k_max=self.k_max,
            amplitude=self.amplitude,
        )


def _format_errors(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        key = '.'.join(str(part) for part in item['loc']) or 'config'
        lines.append(f"{key}: {item['msg']}")
    return "\n".join(lines)


def parse_override(text: str) -> Tuple[str, Any]:
    """'key=value' with the value JSON-decoded when possible"""
    if '=' not in text:
        raise ConfigurationError(f"override {text!r} is not of the form key=value")
    key, raw = text.split('=', 1)
    key = key.strip()
    if not key:
        raise ConfigurationError(f"override {text!r} has an empty key")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def apply_overrides(data: Dict[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """Merge overrides into a raw config dict; 'initial.key' addresses the initial block"""
    merged = dict(data)
    for key, value in overrides.items():
        if key.startswith('initial.'):
            initial = dict(merged.get('initial') or {})
            initial[key.split('.', 1)[1]] = value
            merged['initial'] = initial
        elif '.' in key:
            raise ConfigurationError(f"{key}: only the initial block can be addressed with a dotted key")
        else:
            merged[key] = value
    return merged


def build_config(data: Mapping[str, Any], overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """
    Validate a raw config mapping

    Raises:
        ConfigurationError: one line per offending key
    """
    if not isinstance(data, Mapping):
        raise ConfigurationError("configuration must be a JSON object")
    merged = apply_overrides(dict(data), overrides or {})
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        raise ConfigurationError(f"invalid configuration:\n{_format_errors(e)}") from e


def load_config(path: Optional[str], overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """
    Read and validate a JSON run configuration

    Args:
        path: JSON file; None starts from the defaults
        overrides: key -> value pairs applied after the file is parsed

    Returns:
        RunConfig with defaults filled
    """
    data: Dict[str, Any] = {}
    if path is not None:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except FileNotFoundError as e:
            raise ConfigurationError(f"configuration file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from e
    config = build_config(data, overrides)
    logger.debug(f"Configuration loaded: mode={config.mode}, n={config.n}, beta={config.beta:g}")
    return config
