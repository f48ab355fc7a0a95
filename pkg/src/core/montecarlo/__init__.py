"""Monte Carlo simulation of finite-size relay chains"""

from .simulator import (
    build_end_to_end,
    build_end_to_end_direct,
    end_to_end_mi,
    instantaneous_mi,
    empirical_gram_spectrum,
    empirical_mi,
    empirical_mi_derivative,
    compare_precoders
)
from .sweep import McConfig, SweepRecord, SweepResult, run_sweep, run_asymptotic, snr_db_to_eta


__all__ = [
    'build_end_to_end',
    'build_end_to_end_direct',
    'end_to_end_mi',
    'instantaneous_mi',
    'empirical_gram_spectrum',
    'empirical_mi',
    'empirical_mi_derivative',
    'compare_precoders',
    'McConfig',
    'SweepRecord',
    'SweepResult',
    'run_sweep',
    'run_asymptotic',
    'snr_db_to_eta'
]
