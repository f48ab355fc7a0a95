"""Config-driven experiment runner and result serialization"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from src.core.errors import ConfigError
from src.core.channel import NetworkModel, PRECODER_STREAM, derive_rng, make_network_model
from src.core.precoding import PowerAllocation, PrecoderSet, Scheme, build_precoder_set, verify_power
from src.core.montecarlo import McConfig, SweepResult, run_asymptotic, run_sweep, snr_db_to_eta
from src.core.montecarlo.sweep import CSV_COLUMNS
from .config_schema import ExperimentConfig

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SIGNIFICANT_DIGITS = 12


def build_network_model(config: ExperimentConfig) -> NetworkModel:
    return make_network_model(
        config.dimensions(),
        eta=snr_db_to_eta(config.snr_db[0]),
        transmit=config.correlation_specs('transmit'),
        receive=config.correlation_specs('receive'),
        budgets=config.budgets
    )


def build_precoders(config: ExperimentConfig, model: NetworkModel) -> PrecoderSet:
    alloc = PowerAllocation(levels=tuple(config.allocation)) if config.allocation else None
    rng = derive_rng(config.master_seed, 0, 0, stream=PRECODER_STREAM)
    return build_precoder_set(model, config.precoder, alloc=alloc, rng=rng)


def mc_config(config: ExperimentConfig) -> McConfig:
    return McConfig.from_snr_db(config.snr_db, trials=config.trials, master_seed=config.master_seed)


def run_experiment(config: ExperimentConfig, monte_carlo: bool = True,
                   output: Optional[str] = None, fmt: Optional[str] = None) -> SweepResult:
    """Build model and precoders, sweep the SNR grid, and write the result if a path is set"""
    model = build_network_model(config)
    precoders = build_precoders(config, model)
    logger.info("Running %s: dims=%s scheme=%s trials=%d",
                'sweep' if monte_carlo else 'asymptotic', model.dims, config.precoder, config.trials)

    runner = run_sweep if monte_carlo else run_asymptotic
    result = runner(model, precoders, mc_config(config))

    path = output or config.output
    if path:
        write_result(result, config, path, fmt or config.format)
    return result


def _round(value: Any) -> Any:
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    return value


def serialize_csv(result: SweepResult) -> str:
    frame = result.to_frame()[CSV_COLUMNS]
    return frame.to_csv(index=False, float_format=f'%.{SIGNIFICANT_DIGITS}g', lineterminator='\n')


def serialize_json(result: SweepResult, config: ExperimentConfig) -> str:
    records = []
    for record in result.to_frame().to_dict(orient='records'):
        records.append({key: _round(value) for key, value in record.items()})
    payload = {
        'schema_version': SCHEMA_VERSION,
        'config': config.model_dump(mode='json'),
        'records': records
    }
    return json.dumps(payload, indent=2) + '\n'


def write_result(result: SweepResult, config: ExperimentConfig, path: str, fmt: str = 'csv') -> Path:
    if fmt == 'csv':
        text = serialize_csv(result)
    elif fmt == 'json':
        text = serialize_json(result, config)
    else:
        raise ConfigError(f"Unknown output format '{fmt}'")
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)
    logger.info("Wrote %d records to %s", len(result.records), target)
    return target


def _complex_matrix(matrix: np.ndarray) -> Dict[str, list]:
    return {
        'real': [[_round(float(x)) for x in row] for row in np.real(matrix)],
        'imag': [[_round(float(x)) for x in row] for row in np.imag(matrix)]
    }


def emit_precoders(config: ExperimentConfig, output: Optional[str] = None) -> Dict[str, Any]:
    """Per-level singular vectors, diagonal magnitudes and power slacks of the optimal-direction precoders"""
    if config.precoder != Scheme.OPTIMAL_DIRECTIONS:
        raise ConfigError(
            f"'precoders' needs precoder: {Scheme.OPTIMAL_DIRECTIONS.value}, config has '{config.precoder}'"
        )
    model = build_network_model(config)
    precoders = build_precoders(config, model)
    power = verify_power(model, precoders)

    levels = []
    for i in range(precoders.levels):
        levels.append({
            'level': i,
            'left_singular_vectors': _complex_matrix(precoders.left_factors[i]),
            'diagonal': [_round(float(d)) for d in precoders.diagonals[i]],
            'right_singular_vectors': _complex_matrix(precoders.right_factors[i])
        })

    report = {
        'schema_version': SCHEMA_VERSION,
        'config': config.model_dump(mode='json'),
        'levels': levels,
        'power': {key: [_round(v) for v in values] if isinstance(values, list) else values
                  for key, values in power.to_dict().items()}
    }

    path = output or config.output
    if path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(report, indent=2) + '\n')
    return report


__all__ = [
    'build_network_model',
    'build_precoders',
    'mc_config',
    'run_experiment',
    'serialize_csv',
    'serialize_json',
    'write_result',
    'emit_precoders'
]
