"""Test SNR sweeps"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent))

import math

import numpy as np
import pytest

from src.core.errors import ConvergenceError, InputError
from src.core.channel import make_network_model
from src.core.precoding import equal_power_precoders
from src.core.asymptotic import symmetric_chain_mi
from src.core.montecarlo import McConfig, run_asymptotic, run_sweep, snr_db_to_eta
from src.core.montecarlo import sweep
from src.core.montecarlo.sweep import CSV_COLUMNS


def _setup(antennas: int, hops: int):
    model = make_network_model((antennas,) * (hops + 1))
    return model, equal_power_precoders(model)


def test_snr_conversion():
    """Test dB conversion"""
    assert snr_db_to_eta(10.0) == pytest.approx(10.0)
    assert snr_db_to_eta(0.0) == 1.0
    config = McConfig.from_snr_db([-5, 0, 5])
    assert config.snr_db_grid == (-5.0, 0.0, 5.0)
    assert config.eta_grid[1] == 1.0


def test_config_validation():
    """Test invalid trial counts and η grids raise InputError"""
    with pytest.raises(InputError):
        McConfig(trials=0, master_seed=1, eta_grid=(1.0,))
    with pytest.raises(InputError):
        McConfig(trials=1, master_seed=1, eta_grid=())
    with pytest.raises(InputError):
        McConfig(trials=1, master_seed=1, eta_grid=(1.0, -2.0))
    with pytest.raises(InputError):
        McConfig(trials=1, master_seed=1, eta_grid=(0.0,))
    with pytest.raises(InputError):
        McConfig(trials=1, master_seed=1, eta_grid=(2.0, 1.0))
    with pytest.raises(InputError):
        McConfig(trials=1, master_seed=1, eta_grid=(1.0, 2.0), snr_db_grid=(0.0,))


def test_sweep_is_deterministic():
    """Test sweep determinism"""
    model, precoders = _setup(8, 2)
    config = McConfig.from_snr_db([0, 10], trials=5, master_seed=42)
    first = run_sweep(model, precoders, config)
    second = run_sweep(model, precoders, config)
    np.testing.assert_array_equal(first.mi_mc_samples, second.mi_mc_samples)
    assert first.to_frame().equals(second.to_frame())

    other = run_sweep(model, precoders, McConfig.from_snr_db([0, 10], trials=5, master_seed=43))
    assert not np.array_equal(first.mi_mc_samples, other.mi_mc_samples)


def test_large_system_matches_asymptote():
    """Test K=100 sweep against asymptote"""
    model, precoders = _setup(100, 1)
    result = run_sweep(model, precoders, McConfig.from_snr_db([-5, 0, 5, 10, 15, 20], trials=4))
    for record in result.records:
        assert record.error is None
        assert record.relative_deviation < 0.02
        assert record.mi_asymptotic == pytest.approx(symmetric_chain_mi(record.eta, 1), abs=1e-6)


def test_small_system_is_close():
    """Test K=10 sweep against asymptote"""
    model, precoders = _setup(10, 2)
    result = run_sweep(model, precoders, McConfig.from_snr_db([0, 10, 20], trials=20))
    assert all(record.relative_deviation < 0.10 for record in result.records)


def test_spread_shrinks_with_dimension():
    """Test spread shrinks with dimension"""
    config = McConfig.from_snr_db([10], trials=50, master_seed=7)
    small = run_sweep(*_setup(4, 1), config).records[0]
    large = run_sweep(*_setup(32, 1), config).records[0]
    assert large.mi_mc_std < small.mi_mc_std
    assert small.trials == large.trials == 50


def test_frame_layout():
    """Test result frame layout"""
    model, precoders = _setup(6, 1)
    frame = run_sweep(model, precoders, McConfig.from_snr_db([0, 5], trials=3)).to_frame()
    assert list(frame.columns) == CSV_COLUMNS + ['mi_derivative', 'error']
    assert list(frame['snr_db']) == [0.0, 5.0]
    assert list(frame['trials']) == [3, 3]


def test_asymptotic_only():
    """Test asymptotic-only sweep"""
    model, precoders = _setup(6, 2)
    result = run_asymptotic(model, precoders, McConfig.from_snr_db([0, 10]))
    assert result.mi_mc_samples is None
    for record in result.records:
        assert record.trials == 0
        assert math.isnan(record.mi_mc_mean)
        assert record.mi_asymptotic == pytest.approx(symmetric_chain_mi(record.eta, 2), abs=1e-6)
        assert record.mi_derivative > 0


def test_failure_is_recorded_per_point(monkeypatch):
    """Test per-point failure is recorded"""
    model, precoders = _setup(6, 1)
    real_solver = sweep.solve_fixed_point

    def flaky(inp, strict=True):
        if inp.eta > 5:
            raise ConvergenceError("no bracket", diagnostics={'eta': inp.eta})
        return real_solver(inp, strict)

    monkeypatch.setattr(sweep, 'solve_fixed_point', flaky)
    result = run_sweep(model, precoders, McConfig.from_snr_db([0, 10], trials=2))
    good, bad = result.records
    assert good.error is None and not math.isnan(good.mi_asymptotic)
    assert "no bracket" in bad.error
    assert math.isnan(bad.mi_asymptotic)
    assert not math.isnan(bad.mi_mc_mean)
    assert result.failed == [bad]


if __name__ == "__main__":
    test_snr_conversion()
    test_config_validation()
    test_sweep_is_deterministic()
    print("\nAll sweep tests passed!")
