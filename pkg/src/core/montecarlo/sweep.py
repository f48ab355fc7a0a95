"""SNR sweeps comparing the asymptotic formula with Monte Carlo averages"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from src.core.errors import ConvergenceError, InputError
from src.core.channel.network import NetworkModel
from src.core.channel.sampling import sample_thetas
from src.core.precoding import assemble_m_chain
from src.core.asymptotic import asymptotic_input, asymptotic_mi, mi_derivative, solve_fixed_point
from .simulator import build_end_to_end, gram_eigenvalues, mi_from_eigenvalues

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['snr_db', 'eta', 'mi_asymptotic_bits', 'mi_mc_mean', 'mi_mc_std', 'trials']


def snr_db_to_eta(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


def eta_to_snr_db(eta: float) -> float:
    return 10.0 * math.log10(eta)


@dataclass(frozen=True)
class McConfig:
    trials: int
    master_seed: int
    eta_grid: tuple
    snr_db_grid: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, 'eta_grid', tuple(float(e) for e in self.eta_grid))
        if self.trials < 1:
            raise InputError(f"trials must be >= 1, got {self.trials}")
        if not self.eta_grid:
            raise InputError("η grid is empty")
        if any(not e > 0 for e in self.eta_grid):
            raise InputError(f"η values must be positive, got {self.eta_grid}")
        if any(b <= a for a, b in zip(self.eta_grid, self.eta_grid[1:])):
            raise InputError("η grid must be strictly increasing")
        if self.snr_db_grid is None:
            object.__setattr__(self, 'snr_db_grid', tuple(eta_to_snr_db(e) for e in self.eta_grid))
        else:
            object.__setattr__(self, 'snr_db_grid', tuple(float(s) for s in self.snr_db_grid))
        if len(self.snr_db_grid) != len(self.eta_grid):
            raise InputError("SNR and η grids differ in length")

    @classmethod
    def from_snr_db(cls, snr_db: Sequence[float], trials: int = 1, master_seed: int = 42) -> "McConfig":
        snr_db = tuple(float(s) for s in snr_db)
        return cls(
            trials=trials,
            master_seed=master_seed,
            eta_grid=tuple(snr_db_to_eta(s) for s in snr_db),
            snr_db_grid=snr_db
        )


@dataclass
class SweepRecord:
    eta: float
    snr_db: float
    mi_asymptotic: float
    mi_mc_mean: float
    mi_mc_std: float
    trials: int
    mi_derivative: float = float('nan')
    error: Optional[str] = None

    @property
    def relative_deviation(self) -> float:
        return abs(self.mi_mc_mean - self.mi_asymptotic) / self.mi_asymptotic


@dataclass
class SweepResult:
    records: List[SweepRecord] = field(default_factory=list)
    mi_mc_samples: Optional[np.ndarray] = None

    @property
    def failed(self) -> List[SweepRecord]:
        return [r for r in self.records if r.error is not None]

    def to_frame(self) -> pd.DataFrame:
        """One row per η, columns in emission order"""
        frame = pd.DataFrame([asdict(r) for r in self.records])
        frame = frame.rename(columns={'mi_asymptotic': 'mi_asymptotic_bits'})
        return frame[CSV_COLUMNS + ['mi_derivative', 'error']]


def _monte_carlo(model: NetworkModel, precoders, config: McConfig) -> np.ndarray:
    """trials × len(η grid) matrix of instantaneous MI; each G drawn once per trial"""
    chain = assemble_m_chain(model, precoders)
    samples = np.empty((config.trials, len(config.eta_grid)))
    k_in = model.dims[0]
    for trial in range(config.trials):
        thetas = sample_thetas(model, config.master_seed, trial)
        eigenvalues = gram_eigenvalues(build_end_to_end(model, precoders, thetas, chain))
        for j, eta in enumerate(config.eta_grid):
            samples[trial, j] = mi_from_eigenvalues(eigenvalues, eta, k_in)
    return samples


def run_sweep(model: NetworkModel, precoders, config: McConfig, monte_carlo: bool = True) -> SweepResult:
    """
    Asymptotic MI at every η plus Monte Carlo mean/std over `config.trials` draws.

    Solver failures at one η are recorded on that record and the sweep goes on.
    """
    base = asymptotic_input(model, precoders)

    if monte_carlo:
        samples = _monte_carlo(model, precoders, config)
        per_eta = np.ascontiguousarray(samples.T)
        means = per_eta.mean(axis=1)
        stds = per_eta.std(axis=1, ddof=0)
        trials = config.trials
    else:
        samples = None
        means = stds = np.full(len(config.eta_grid), np.nan)
        trials = 0

    records = []
    for j, eta in enumerate(config.eta_grid):
        record = SweepRecord(
            eta=eta,
            snr_db=config.snr_db_grid[j],
            mi_asymptotic=float('nan'),
            mi_mc_mean=float(means[j]),
            mi_mc_std=float(stds[j]),
            trials=trials
        )
        inp = base.with_eta(eta)
        try:
            solution = solve_fixed_point(inp)
            record.mi_asymptotic = asymptotic_mi(inp, solution)
            record.mi_derivative = mi_derivative(inp, solution)
        except ConvergenceError as e:
            record.error = str(e)
            logger.warning("η=%.6g (%.2f dB): solver failed: %s", eta, record.snr_db, e)
        else:
            logger.info("η=%.6g (%.2f dB): asymptotic %.6f, MC %.6f ± %.6f",
                        eta, record.snr_db, record.mi_asymptotic, record.mi_mc_mean, record.mi_mc_std)
        records.append(record)

    return SweepResult(records=records, mi_mc_samples=samples)


def run_asymptotic(model: NetworkModel, precoders, config: McConfig) -> SweepResult:
    """Formula only; Monte Carlo columns are NaN and trials is 0"""
    return run_sweep(model, precoders, config, monte_carlo=False)


__all__ = [
    'McConfig',
    'SweepRecord',
    'SweepResult',
    'run_sweep',
    'run_asymptotic',
    'snr_db_to_eta',
    'eta_to_snr_db',
    'CSV_COLUMNS'
]
