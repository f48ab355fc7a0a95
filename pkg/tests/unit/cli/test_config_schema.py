"""Test experiment config validation"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent))

import numpy as np
import pytest
import yaml

from src.core.errors import ConfigError, InputError
from src.core.channel import CorrelationKind, make_correlation
from src.cli.config_schema import load_config, parse_config

PROJECT_ROOT = Path(__file__).parent.parent.parent.parent


def _base(**changes):
    section = {'hops': 2, 'antennas': 8, 'snr_db': [0, 10]}
    section.update(changes)
    return {'experiment': section}


def test_defaults():
    """Test config defaults"""
    config = parse_config(_base())
    assert config.dimensions() == (8, 8, 8)
    assert config.precoder == 'equal_power'
    assert config.trials == 1
    assert config.master_seed == 42
    assert config.format == 'csv'
    assert [s.kind for s in config.correlation_specs('transmit')] == [CorrelationKind.IDENTITY] * 2


def test_unknown_key_is_named():
    """Test unknown key is named in the error"""
    with pytest.raises(ConfigError) as info:
        parse_config(_base(antenas=8))
    assert "antenas" in str(info.value)


def test_missing_key_is_named():
    """Test missing key is named in the error"""
    data = _base()
    del data['experiment']['snr_db']
    with pytest.raises(ConfigError) as info:
        parse_config(data)
    assert "snr_db" in str(info.value)


def test_top_level_section_required():
    """Test experiment section is required"""
    with pytest.raises(ConfigError):
        parse_config({'hops': 1})
    with pytest.raises(ConfigError):
        parse_config({'experiment': {'hops': 1, 'antennas': 4, 'snr_db': [0]}, 'extra': {}})


def test_antennas_and_dims_exclusive():
    """Test antennas and dims are exclusive"""
    with pytest.raises(ConfigError):
        parse_config(_base(dims=[8, 8, 8]))
    data = _base(dims=[4, 6, 4])
    del data['experiment']['antennas']
    assert parse_config(data).dimensions() == (4, 6, 4)
    data['experiment']['dims'] = [4, 6]
    with pytest.raises(ConfigError):
        parse_config(data)


def test_allocation_only_for_directional_schemes():
    """Test allocation scheme check"""
    allocation = [[1.0] * 8, [1.0] * 8]
    with pytest.raises(ConfigError) as info:
        parse_config(_base(allocation=allocation))
    assert "allocation" in str(info.value)
    config = parse_config(_base(allocation=allocation, precoder='optimal_directions'))
    assert len(config.allocation) == 2
    with pytest.raises(ConfigError):
        parse_config(_base(allocation=[[1.0] * 7, [1.0] * 8], precoder='optimal_directions'))


def test_grid_and_correlation_checks():
    """Test grid and correlation checks"""
    with pytest.raises(ConfigError):
        parse_config(_base(snr_db=[10, 0]))
    with pytest.raises(ConfigError):
        parse_config(_base(trials=0))
    with pytest.raises(ConfigError):
        parse_config(_base(transmit_correlation={'kind': 'exponential', 'r': 1.5}))
    with pytest.raises(ConfigError):
        parse_config(_base(transmit_correlation={'kind': 'explicit'}))
    with pytest.raises(ConfigError):
        parse_config(_base(receive_correlation=[{'kind': 'identity'}]))


def test_per_hop_correlation():
    """Test per-hop correlation list"""
    config = parse_config(_base(receive_correlation=[{'kind': 'identity'}, {'kind': 'exponential', 'r': 0.5}]))
    kinds = [s.kind for s in config.correlation_specs('receive')]
    assert kinds == [CorrelationKind.IDENTITY, CorrelationKind.EXPONENTIAL]


def test_complex_explicit_correlation():
    """Test complex Hermitian correlation from real and imaginary parts"""
    real = [[1.0, 0.3], [0.3, 1.0]]
    imag = [[0.0, 0.4], [-0.4, 0.0]]
    config = parse_config(_base(hops=1, antennas=2, transmit_correlation={
        'kind': 'explicit', 'matrix': real, 'matrix_imag': imag
    }))
    C = make_correlation(config.correlation_specs('transmit')[0], 2)
    np.testing.assert_allclose(C, np.array(real) + 1j * np.array(imag))
    np.testing.assert_allclose(np.linalg.eigvalsh(C), [0.5, 1.5], atol=1e-12)

    with pytest.raises(ConfigError):
        parse_config(_base(transmit_correlation={'kind': 'explicit', 'matrix': real, 'matrix_imag': [[0.0]]}))
    with pytest.raises(ConfigError):
        parse_config(_base(transmit_correlation={'kind': 'identity', 'matrix_imag': imag}))

    skew = parse_config(_base(hops=1, antennas=2, transmit_correlation={
        'kind': 'explicit', 'matrix': real, 'matrix_imag': [[0.0, 0.4], [0.4, 0.0]]
    }))
    with pytest.raises(InputError):
        make_correlation(skew.correlation_specs('transmit')[0], 2)


def test_overrides_skip_none():
    """Test None overrides are skipped"""
    config = parse_config(_base(), overrides={'master_seed': 7, 'output': None})
    assert config.master_seed == 7
    assert config.output is None


def test_yaml_round_trip():
    """Test YAML round trip"""
    config = parse_config(_base(precoder='optimal_directions', transmit_correlation={'kind': 'exponential', 'r': 0.7}))
    again = parse_config(yaml.safe_load(config.to_yaml()))
    assert again == config


def test_shipped_configs_load():
    """Test shipped configs load"""
    paths = [PROJECT_ROOT / "config" / "experiment_config.yaml"]
    paths += sorted((PROJECT_ROOT / "config" / "experiments").glob("*.yaml"))
    for path in paths:
        config = load_config(str(path))
        assert config.hops >= 1
    print(f"✅ {len(paths)} shipped configs")


def test_missing_file():
    """Test missing config file"""
    with pytest.raises(OSError):
        load_config(str(PROJECT_ROOT / "config" / "does_not_exist.yaml"))


if __name__ == "__main__":
    test_defaults()
    test_unknown_key_is_named()
    test_shipped_configs_load()
    print("\nAll config schema tests passed!")
