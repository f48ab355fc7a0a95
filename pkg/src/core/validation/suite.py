"""Numerical checks of the transform identities and the asymptotic formula"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List

import numpy as np
import yaml

from src.core.errors import ConfigError
from src.core.spectra import SpectralDistribution, from_gram_spectrum, s_transform, marchenko_pastur
from src.core.channel import derive_rng, make_network_model, sample_thetas, uniform_dims
from src.core.precoding import equal_power_precoders
from src.core.asymptotic import (
    AsymptoticInput,
    asymptotic_input,
    asymptotic_mi,
    gram_s_transform_composition,
    gram_upsilon_identity_residual,
    mi_derivative,
    symmetric_chain_mi
)
from src.core.montecarlo import build_end_to_end, empirical_gram_spectrum, empirical_mi_derivative

logger = logging.getLogger(__name__)

LEVELS = ("quick", "full")


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    threshold: float
    details: Dict = field(default_factory=dict)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: residual {self.residual:.3e} (threshold {self.threshold:.1e})"


@dataclass
class ValidationReport:
    level: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self) -> Dict:
        return {
            'level': self.level,
            'passed': self.passed,
            'checks': [
                {
                    'name': c.name,
                    'passed': c.passed,
                    'residual': c.residual,
                    'threshold': c.threshold,
                    'details': c.details
                }
                for c in self.checks
            ]
        }


def _gaussian(rng: np.random.Generator, rows: int, cols: int, variance: float) -> np.ndarray:
    scale = math.sqrt(variance / 2.0)
    return scale * (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols)))


def _rms(values) -> float:
    return float(np.sqrt(np.mean(np.square(values))))


class ValidationSuite:
    """
    Run transform-identity checks at the dimensions configured for a level

    Checks:
    - rectangular_flip: exact S-transform relation between AAᴴ and AᴴA
    - wishart_s_transform: S of BBᴴ approaches 1/(1+ζz), error shrinking in dimension
    - asymptotic_freeness: S of ΘT₁ΘᴴT₂ factors as S_{ΘT₁Θᴴ}·S_{T₂}
    - gram_s_composition: chain composition vs empirical S of GGᴴ
    - gram_upsilon_identity: Υ identity residual, shrinking in dimension
    - mi_derivative: closed-form derivative vs finite difference and empirical Υ
    - classical_mimo_reduction: single hop vs closed form and Marchenko–Pastur integral
    """

    def __init__(
        self,
        config_path: str = "config/validation_config.yaml",
        s_transform: Callable[[SpectralDistribution, float], float] = s_transform
    ):
        with open(config_path, 'r') as f:
            config = yaml.safe_load(f)

        self.config = config['validation']
        self.seed = int(self.config.get('seed', 0))
        self.s_transform = s_transform

        self.checks = {
            'rectangular_flip': self._rectangular_flip,
            'wishart_s_transform': self._wishart_s_transform,
            'asymptotic_freeness': self._asymptotic_freeness,
            'gram_s_composition': self._gram_s_composition,
            'gram_upsilon_identity': self._gram_upsilon_identity,
            'mi_derivative': self._mi_derivative,
            'classical_mimo_reduction': self._classical_mimo_reduction
        }

    def run(self, level: str = "quick") -> ValidationReport:
        if level not in LEVELS:
            raise ConfigError(f"Unknown validation level '{level}', expected one of {LEVELS}")
        settings = self.config['levels'][level]

        report = ValidationReport(level=level)
        for index, (name, check) in enumerate(self.checks.items()):
            if name not in settings:
                continue
            result = check(settings[name], index)
            logger.info(result.summary())
            report.checks.append(result)
        return report

    def _rng(self, check: int, draw: int, stream: int = 0) -> np.random.Generator:
        return derive_rng(self.seed, draw, check, stream=stream)

    def _rectangular_flip(self, cfg: Dict, index: int) -> CheckResult:
        rows, cols = cfg['rows'], cfg['cols']
        ratio = cols / rows
        worst = 0.0
        for draw in range(cfg.get('draws', 1)):
            A = _gaussian(self._rng(index, draw), rows, cols, 1.0 / cols)
            outer = from_gram_spectrum(A.conj().T)
            inner = from_gram_spectrum(A)
            for z in cfg['z']:
                lhs = self.s_transform(outer, z)
                rhs = (z + 1.0) / (z + ratio) * self.s_transform(inner, z / ratio)
                worst = max(worst, abs(lhs - rhs))
        return CheckResult('rectangular_flip', worst < cfg['threshold'], worst, cfg['threshold'],
                           {'rows': rows, 'cols': cols})

    def _wishart_s_transform(self, cfg: Dict, index: int) -> CheckResult:
        z = cfg['z']
        errors = []
        for rows, cols in cfg['dims']:
            ratio = rows / cols
            expected = 1.0 / (1.0 + ratio * z)
            deviations = []
            for draw in range(cfg['draws']):
                rng = self._rng(index, draw, stream=rows)
                B = _gaussian(rng, rows, cols, 1.0 / cols)
                deviations.append(self.s_transform(from_gram_spectrum(B.conj().T), z) - expected)
            errors.append(_rms(deviations))
        shrinking = all(b < a for a, b in zip(errors, errors[1:]))
        passed = shrinking and errors[-1] < cfg['threshold']
        return CheckResult('wishart_s_transform', passed, errors[-1], cfg['threshold'],
                           {'dims': cfg['dims'], 'rms_errors': errors, 'shrinking': shrinking})

    def _asymptotic_freeness(self, cfg: Dict, index: int) -> CheckResult:
        dim, z = cfg['dim'], cfg['z']
        t1 = np.linspace(0.5, 1.5, dim)
        t2 = np.linspace(1.0, 2.0, dim)
        theta = _gaussian(self._rng(index, 0), dim, dim, 1.0 / dim)

        # ΘT₁ΘᴴT₂ shares its spectrum with the Hermitian T₂^{1/2}ΘT₁ΘᴴT₂^{1/2}.
        half = np.sqrt(t1)[:, None] * theta.conj().T
        product = from_gram_spectrum(half * np.sqrt(t2)[None, :])
        left = from_gram_spectrum(half)
        right = SpectralDistribution.from_atoms(t2)

        expected = self.s_transform(left, z) * self.s_transform(right, z)
        relative = abs(self.s_transform(product, z) / expected - 1.0)
        return CheckResult('asymptotic_freeness', relative < cfg['threshold'], relative, cfg['threshold'],
                           {'dim': dim, 'z': z})

    def _chain_spectrum(self, antennas: int, hops: int, draw: int, index: int):
        model = make_network_model(uniform_dims(antennas, hops))
        precoders = equal_power_precoders(model)
        G = build_end_to_end(model, precoders, sample_thetas(model, self.seed + index, draw))
        return asymptotic_input(model, precoders), empirical_gram_spectrum(G)

    def _gram_s_composition(self, cfg: Dict, index: int) -> CheckResult:
        hops = cfg['hops']
        spectra = []
        for draw in range(cfg.get('draws', 1)):
            inp, gg = self._chain_spectrum(cfg['dim'], hops, draw, index)
            spectra.append(gg)

        worst, values = 0.0, {}
        for z in cfg['z']:
            predicted = gram_s_transform_composition(inp, z)
            empirical = float(np.mean([self.s_transform(gg, z) for gg in spectra]))
            values[z] = (predicted, empirical)
            worst = max(worst, abs(empirical / predicted - 1.0))
        return CheckResult('gram_s_composition', worst < cfg['threshold'], worst, cfg['threshold'],
                           {'dim': cfg['dim'], 'hops': hops, 'values': values})

    def _gram_upsilon_identity(self, cfg: Dict, index: int) -> CheckResult:
        s = cfg['s']
        rms = []
        for dim in cfg['dims']:
            residuals = []
            for draw in range(cfg['draws']):
                inp, gg = self._chain_spectrum(dim, cfg['hops'], draw, index)
                residuals.append(gram_upsilon_identity_residual(inp, gg, s))
            rms.append(_rms(residuals))
        shrinking = all(b < a for a, b in zip(rms, rms[1:]))
        passed = shrinking and rms[-1] < cfg['threshold']
        return CheckResult('gram_upsilon_identity', passed, rms[-1], cfg['threshold'],
                           {'dims': cfg['dims'], 'rms_residuals': rms, 'shrinking': shrinking})

    def _mi_derivative(self, cfg: Dict, index: int) -> CheckResult:
        step = cfg['step']
        inp, gg = self._chain_spectrum(cfg['dim'], cfg['hops'], 0, index)
        fd_worst, empirical_worst = 0.0, 0.0
        for eta in cfg['etas']:
            at = inp.with_eta(eta)
            derivative = mi_derivative(at)
            central = (asymptotic_mi(inp.with_eta(eta + step)) - asymptotic_mi(inp.with_eta(eta - step))) / (2 * step)
            fd_worst = max(fd_worst, abs(central / derivative - 1.0))
            empirical = empirical_mi_derivative(gg, eta, inp.rho[0])
            empirical_worst = max(empirical_worst, abs(empirical / derivative - 1.0))
        passed = fd_worst < cfg['fd_threshold'] and empirical_worst < cfg['threshold']
        return CheckResult('mi_derivative', passed, empirical_worst, cfg['threshold'],
                           {'finite_difference_error': fd_worst, 'etas': cfg['etas']})

    def _classical_mimo_reduction(self, cfg: Dict, index: int) -> CheckResult:
        closed_worst, integral_worst = 0.0, 0.0
        for eta in cfg['etas']:
            value = asymptotic_mi(AsymptoticInput.unit_chain(1, eta))
            closed_worst = max(closed_worst, abs(value - symmetric_chain_mi(eta, 1)))
            integral_worst = max(integral_worst, abs(value - marchenko_pastur.mutual_information(eta, 1.0)))
        passed = closed_worst < cfg['threshold'] and integral_worst < cfg['integral_threshold']
        return CheckResult('classical_mimo_reduction', passed, closed_worst, cfg['threshold'],
                           {'integral_error': integral_worst, 'etas': cfg['etas']})


def run_validation_suite(level: str = "quick", config_path: str = "config/validation_config.yaml") -> ValidationReport:
    return ValidationSuite(config_path=config_path).run(level)


__all__ = ['ValidationSuite', 'ValidationReport', 'CheckResult', 'LEVELS', 'run_validation_suite']
