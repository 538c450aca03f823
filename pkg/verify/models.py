"""
Suite configuration and report types for the inequality verifier
"""
import statistics
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from spectral.validators import check_beta, check_each, check_exponent, check_grid_size, check_non_negative, parse_exponent


class VerifySuiteConfig(BaseModel):
    """Randomized case grid shared by the commutator, embedding and Bernstein suites"""
    model_config = ConfigDict(frozen=True)

    seeds: List[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4], description="Generator seeds")
    n_list: List[int] = Field(default_factory=lambda: [64, 128], description="Grid sizes")
    beta_list: List[float] = Field(default_factory=lambda: [1.25, 1.5, 1.75], description="Velocity-law orders")
    p: float = Field(2.0, description="Integrability exponent of the commutator bound")
    q: float = Field(1.0, description="Summability exponent; the bound uses its conjugate")
    M: int = Field(4, description="Cutoff shift of the commutator sum")
    M_list: List[int] = Field(default_factory=lambda: [2, 4, 8], description="Shifts reported for sensitivity")
    pair_budget: int = Field(65536, description="Random pairs for the log-Lipschitz supremum")
    gamma: float = Field(3.0, description="Power-law decay of the random test spectra")
    k_max: float = Field(10.0, description="Spectral radius of the random test fields")
    amplitude: float = Field(1.0, description="RMS amplitude of the random test fields")

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

    @field_validator('n_list')
    @classmethod
    def _powers_of_two(cls, value: List[int]) -> List[int]:
        return check_each(value, check_grid_size)

    @field_validator('beta_list')
    @classmethod
    def _beta_range(cls, value: List[float]) -> List[float]:
        return check_each(value, check_beta)


@dataclass
class VerifyReport:
    """
    Ratio study outcome

    Attributes:
        suite: suite name
        records: per-case dicts carrying inputs plus 'lhs', 'rhs', 'ratio'
        degenerate: cases with a zero right-hand side (left side asserted zero)
        flagged: cases excluded from the fit, with a 'reason'
        fitted: name -> (value, residual) for fitted constants
        sensitivity: extra records (other cutoff shifts), not part of the aggregates
    """

    suite: str
    records: List[Dict[str, Any]] = field(default_factory=list)
    degenerate: List[Dict[str, Any]] = field(default_factory=list)
    flagged: List[Dict[str, Any]] = field(default_factory=list)
    fitted: Dict[str, Tuple[float, float]] = field(default_factory=dict)
    sensitivity: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ratios(self) -> List[float]:
        return [record['ratio'] for record in self.records]

    @property
    def max_ratio(self) -> float:
        return max(self.ratios, default=0.0)

    @property
    def median_ratio(self) -> float:
        return statistics.median(self.ratios) if self.records else 0.0

    def group_max(self, key: str, records: List[Dict[str, Any]] = None) -> Dict[Any, float]:
        """Max ratio per value of key (e.g. 'n' or 'j')"""
        grouped: Dict[Any, float] = {}
        for record in self.records if records is None else records:
            value = record[key]
            grouped[value] = max(grouped.get(value, 0.0), record['ratio'])
        return dict(sorted(grouped.items()))

    def to_frame(self) -> pd.DataFrame:
        rows = (
            [dict(record, kind='case') for record in self.records]
            + [dict(record, kind='sensitivity') for record in self.sensitivity]
            + [dict(record, kind='degenerate') for record in self.degenerate]
            + [dict(record, kind='flagged') for record in self.flagged]
        )
        return pd.DataFrame(rows)

    def summary(self) -> str:
        lines = [
            f"suite: {self.suite}",
            f"cases: {len(self.records)} (degenerate {len(self.degenerate)}, flagged {len(self.flagged)})",
            f"max ratio: {self.max_ratio:.17g}",
            f"median ratio: {self.median_ratio:.17g}",
        ]
        if self.records and 'n' in self.records[0]:
            for n, value in self.group_max('n').items():
                lines.append(f"max ratio at n={n}: {value:.17g}")
        if self.sensitivity:
            for m, value in self.group_max('M', self.sensitivity).items():
                lines.append(f"max ratio at M={m}: {value:.17g}")
        for name, (value, residual) in sorted(self.fitted.items()):
            lines.append(f"fitted {name}: {value:.17g} (residual {residual:.3e})")
        return "\n".join(lines) + "\n"
