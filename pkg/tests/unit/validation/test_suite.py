"""Test the numerical validation suite"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent))

import pytest

from src.core.errors import ConfigError
from src.core.spectra import upsilon_inverse
from src.core.validation import LEVELS, CheckResult, ValidationReport, ValidationSuite, run_validation_suite

CONFIG_PATH = str(Path(__file__).parent.parent.parent.parent / "config" / "validation_config.yaml")


def _broken_s_transform(dist, z):
    return ((z - 1.0) / z) * upsilon_inverse(dist, z)


@pytest.mark.slow
def test_quick_level_passes():
    """Test quick validation level"""
    report = run_validation_suite("quick", config_path=CONFIG_PATH)
    for check in report.checks:
        print(check.summary())
    assert report.passed, report.failed
    assert len(report.checks) == 7
    assert report['wishart_s_transform'].details['shrinking']
    assert report['gram_upsilon_identity'].details['shrinking']


def test_rectangular_flip_is_exact():
    """Test rectangular flip relation"""
    suite = ValidationSuite(config_path=CONFIG_PATH)
    settings = suite.config['levels']['quick']['rectangular_flip']
    result = suite._rectangular_flip(settings, 0)
    assert result.passed
    assert result.residual < 1e-8


def test_broken_transform_is_caught():
    """Test broken transform is caught"""
    suite = ValidationSuite(config_path=CONFIG_PATH, s_transform=_broken_s_transform)
    settings = suite.config['levels']['quick']['rectangular_flip']
    result = suite._rectangular_flip(settings, 0)
    assert not result.passed
    assert result.residual > 1e-3


def test_classical_reduction():
    """Test classical reduction check"""
    suite = ValidationSuite(config_path=CONFIG_PATH)
    settings = suite.config['levels']['quick']['classical_mimo_reduction']
    result = suite._classical_mimo_reduction(settings, 6)
    assert result.passed
    assert result.details['integral_error'] < 1e-4


def test_unknown_level():
    """Test unknown level"""
    with pytest.raises(ConfigError):
        ValidationSuite(config_path=CONFIG_PATH).run("exhaustive")
    assert LEVELS == ("quick", "full")


def test_report_serialization():
    """Test report serialization"""
    report = ValidationReport(level="quick", checks=[
        CheckResult("a", True, 1e-9, 1e-8),
        CheckResult("b", False, 0.5, 0.05, {"dim": 10})
    ])
    assert not report.passed
    assert report.failed == ["b"]
    assert report["b"].details == {"dim": 10}
    data = report.to_dict()
    assert data["level"] == "quick"
    assert [c["name"] for c in data["checks"]] == ["a", "b"]
    assert report["a"].summary().startswith("PASS a")
    with pytest.raises(KeyError):
        report["c"]


if __name__ == "__main__":
    test_rectangular_flip_is_exact()
    test_broken_transform_is_caught()
    print("\nAll validation tests passed!")
