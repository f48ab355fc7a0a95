"""Experiment configuration, runner and command-line interface"""

from .config_schema import CorrelationConfig, ExperimentConfig, load_config, parse_config
from .experiment import (
    build_network_model,
    build_precoders,
    run_experiment,
    serialize_csv,
    serialize_json,
    write_result,
    emit_precoders
)


__all__ = [
    'CorrelationConfig',
    'ExperimentConfig',
    'load_config',
    'parse_config',
    'build_network_model',
    'build_precoders',
    'run_experiment',
    'serialize_csv',
    'serialize_json',
    'write_result',
    'emit_precoders'
]
