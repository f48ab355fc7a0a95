"""Experiment configuration schema"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.core.errors import ConfigError
from src.core.channel import CorrelationSpec


class CorrelationConfig(BaseModel):
    """One side (transmit or receive) of one hop; complex explicit matrices split into matrix and matrix_imag"""
    model_config = ConfigDict(extra='forbid')

    kind: Literal['identity', 'exponential', 'explicit'] = 'identity'
    r: float = Field(0.0, ge=0.0, lt=1.0)
    matrix: Optional[List[List[float]]] = None
    matrix_imag: Optional[List[List[float]]] = None

    @model_validator(mode='after')
    def check_matrix(self):
        if self.kind == 'explicit' and self.matrix is None:
            raise ValueError("explicit correlation requires 'matrix'")
        if self.kind != 'explicit' and (self.matrix is not None or self.matrix_imag is not None):
            raise ValueError(f"'matrix' is only valid for explicit correlation, not {self.kind}")
        if self.matrix_imag is not None and np.shape(self.matrix_imag) != np.shape(self.matrix):
            raise ValueError(f"'matrix_imag' has shape {np.shape(self.matrix_imag)}, "
                             f"'matrix' has shape {np.shape(self.matrix)}")
        return self

    def to_spec(self) -> CorrelationSpec:
        if self.kind == 'exponential':
            return CorrelationSpec.exponential(self.r)
        if self.kind == 'explicit':
            matrix = np.asarray(self.matrix, dtype=complex)
            if self.matrix_imag is not None:
                matrix = matrix + 1j * np.asarray(self.matrix_imag, dtype=float)
            return CorrelationSpec.explicit(matrix)
        return CorrelationSpec.identity()


CorrelationField = Union[CorrelationConfig, List[CorrelationConfig]]


class ExperimentConfig(BaseModel):
    """
    One experiment: network, precoder scheme, SNR grid and Monte Carlo settings.

    Either `antennas` (replicated over hops + 1 levels) or `dims` is given.
    SNR is in dB; η = 10^(snr_db/10).
    """
    model_config = ConfigDict(extra='forbid')

    hops: int = Field(..., ge=1)
    antennas: Optional[int] = Field(None, ge=1)
    dims: Optional[List[int]] = None
    transmit_correlation: CorrelationField = Field(default_factory=CorrelationConfig)
    receive_correlation: CorrelationField = Field(default_factory=CorrelationConfig)
    precoder: Literal['equal_power', 'optimal_directions', 'random_unitary', 'amplify_forward'] = 'equal_power'
    allocation: Optional[List[List[float]]] = None
    budgets: Optional[List[float]] = None
    snr_db: List[float] = Field(..., min_length=1)
    trials: int = Field(1, ge=1)
    master_seed: int = Field(42, ge=0, le=2 ** 64 - 1)
    output: Optional[str] = None
    format: Literal['csv', 'json'] = 'csv'

    @field_validator('snr_db')
    @classmethod
    def check_snr_grid(cls, values: List[float]) -> List[float]:
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("snr_db must be strictly increasing")
        return values

    @field_validator('dims')
    @classmethod
    def check_dims(cls, values: Optional[List[int]]) -> Optional[List[int]]:
        if values is not None and any(k < 1 for k in values):
            raise ValueError("antenna counts must be positive")
        return values

    @field_validator('budgets')
    @classmethod
    def check_budgets(cls, values: Optional[List[float]]) -> Optional[List[float]]:
        if values is not None and any(not p > 0 for p in values):
            raise ValueError("power budgets must be positive")
        return values

    @model_validator(mode='after')
    def check_consistency(self):
        if (self.antennas is None) == (self.dims is None):
            raise ValueError("give exactly one of 'antennas' or 'dims'")
        levels = self.hops + 1
        if self.dims is not None and len(self.dims) != levels:
            raise ValueError(f"'dims' needs {levels} entries for {self.hops} hops, got {len(self.dims)}")
        for name in ('transmit_correlation', 'receive_correlation'):
            value = getattr(self, name)
            if isinstance(value, list) and len(value) != self.hops:
                raise ValueError(f"'{name}' needs one entry per hop ({self.hops}), got {len(value)}")
        if self.budgets is not None and len(self.budgets) != self.hops:
            raise ValueError(f"'budgets' needs {self.hops} entries, got {len(self.budgets)}")
        if self.allocation is not None:
            if self.precoder not in ('optimal_directions', 'amplify_forward'):
                raise ValueError(f"'allocation' is not used by the {self.precoder} scheme")
            dims = self.dimensions()
            if len(self.allocation) != self.hops:
                raise ValueError(f"'allocation' needs {self.hops} levels, got {len(self.allocation)}")
            for i, level in enumerate(self.allocation):
                if len(level) != dims[i]:
                    raise ValueError(f"'allocation' level {i} needs {dims[i]} entries, got {len(level)}")
        return self

    def dimensions(self) -> Tuple[int, ...]:
        if self.dims is not None:
            return tuple(self.dims)
        return (self.antennas,) * (self.hops + 1)

    def correlation_specs(self, side: str) -> List[CorrelationSpec]:
        value = getattr(self, f"{side}_correlation")
        configs = value if isinstance(value, list) else [value] * self.hops
        return [c.to_spec() for c in configs]

    def to_yaml(self) -> str:
        return yaml.safe_dump({'experiment': self.model_dump(mode='json')}, sort_keys=False)


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = '.'.join(str(p) for p in item['loc']) or '<root>'
        parts.append(f"{location}: {item['msg']}")
    return '; '.join(parts)


def parse_config(data: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    if not isinstance(data, dict) or 'experiment' not in data:
        raise ConfigError("Config must have a top-level 'experiment' section")
    unknown = set(data) - {'experiment'}
    if unknown:
        raise ConfigError(f"Unknown top-level keys: {', '.join(sorted(unknown))}")
    section = dict(data['experiment'] or {})
    section.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return ExperimentConfig.model_validate(section)
    except ValidationError as e:
        raise ConfigError(f"Invalid experiment config: {_describe(e)}") from e


def load_config(config_path: str, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Read and validate an experiment YAML file; OSError propagates for missing files"""
    with open(Path(config_path), 'r') as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"Cannot parse {config_path}: {e}") from e
    return parse_config(data, overrides)


__all__ = ['CorrelationConfig', 'ExperimentConfig', 'parse_config', 'load_config']
