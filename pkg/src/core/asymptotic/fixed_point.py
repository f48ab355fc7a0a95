"""
Positive solution of the N+1 coupled fixed-point equations

    ∏_j h_j = ρ_i E{ h_i^N Λ_i / (ρ_{i+1} + η h_i^N Λ_i) },   i = 0..N

With u_i = h_i^N each right-hand side f_i(u_i) is strictly increasing in u_i
with range (0, ρ_i·positive_mass_i/η). The solver therefore reduces the system
to one outer unknown P = ∏h_j: for a candidate P every u_i(P) = f_i⁻¹(P) is a
monotone scalar root, and the outer equation

    g(P) = (1/N) Σ_i log u_i(P) − log P = 0

is solved on (ε, P_max). g → −∞ as P → 0 and g → +∞ as P → P_max, so the
bracket excludes the trivial all-zero root by construction.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Sequence, Tuple
import numpy as np
from scipy.optimize import brentq

from src.core.errors import ConvergenceError, InputError
from src.core.spectra import SpectralDistribution

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10
MAX_ITERATIONS = 300
EPSILON_START = 1e-14
EPSILON_FLOOR = 1e-300
P_MAX_MARGIN = 1e-12
SCAN_POINTS = 48
LOG_U_MIN = math.log(1e-300)
LOG_U_MAX = math.log(1e300)


@dataclass(frozen=True, eq=False)
class AsymptoticInput:
    """Spectra of M_iᴴM_i (i = 0..N), ratios ρ_0..ρ_{N+1} and SNR η"""
    m_spectra: Tuple[SpectralDistribution, ...]
    rho: Tuple[float, ...]
    eta: float

    def __post_init__(self):
        object.__setattr__(self, 'm_spectra', tuple(self.m_spectra))
        object.__setattr__(self, 'rho', tuple(float(r) for r in self.rho))
        if len(self.m_spectra) < 2:
            raise InputError("Need at least two spectra (one hop)")
        if len(self.rho) != len(self.m_spectra) + 1:
            raise InputError(
                f"Expected {len(self.m_spectra) + 1} ratios ρ_0..ρ_{{N+1}}, got {len(self.rho)}"
            )
        if any(not r > 0 for r in self.rho):
            raise InputError(f"Ratios must be positive, got {self.rho}")
        if self.rho[-1] != 1.0:
            raise InputError(f"ρ_{{N+1}} must be 1, got {self.rho[-1]}")
        if not self.eta > 0:
            raise InputError(f"SNR η must be positive, got {self.eta}")

    @property
    def hops(self) -> int:
        return len(self.m_spectra) - 1

    def with_eta(self, eta: float) -> "AsymptoticInput":
        return replace(self, eta=float(eta))

    @classmethod
    def unit_chain(cls, hops: int, eta: float) -> "AsymptoticInput":
        """Identity correlations, equal dimensions and unit power per antenna"""
        unit = SpectralDistribution.atom(1.0)
        return cls(m_spectra=(unit,) * (hops + 1), rho=(1.0,) * (hops + 2), eta=eta)


@dataclass
class FixedPointSolution:
    h: np.ndarray
    product: float
    residuals: List[float]
    iterations: int
    converged: bool
    diagnostics: Dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    @property
    def u(self) -> np.ndarray:
        """h_i^N"""
        return self.h ** (len(self.h) - 1)


def _rhs(dist: SpectralDistribution, rho_i: float, rho_next: float, eta: float, log_u: float) -> float:
    """f_i(u) = ρ_i Σ w λ/(ρ_{i+1}/u + ηλ), stable for large u"""
    inv_u = math.exp(-log_u)
    lam = dist.eigenvalues
    return rho_i * float(np.dot(dist.weights, lam / (rho_next * inv_u + eta * lam)))


class _Equations:
    """Bookkeeping for the per-equation monotone inversions"""

    def __init__(self, inp: AsymptoticInput):
        self.inp = inp
        self.hops = inp.hops
        self.ceilings = [
            inp.rho[i] * dist.positive_mass / inp.eta for i, dist in enumerate(inp.m_spectra)
        ]
        self.slopes = [
            inp.rho[i] * dist.mean / inp.rho[i + 1] for i, dist in enumerate(inp.m_spectra)
        ]

    def f(self, i: int, log_u: float) -> float:
        inp = self.inp
        return _rhs(inp.m_spectra[i], inp.rho[i], inp.rho[i + 1], inp.eta, log_u)

    def log_u(self, i: int, P: float) -> float:
        """log f_i⁻¹(P), bracketed from the small-u slope f_i(u) ≈ ρ_i E[Λ] u / ρ_{i+1}"""
        if not P < self.ceilings[i]:
            raise ConvergenceError(
                f"Equation {i}: P={P:.6e} is not below sup f_{i} = {self.ceilings[i]:.6e}",
                diagnostics={'equation': i, 'P': P}
            )
        guess = math.log(P / self.slopes[i])
        guess = min(max(guess, LOG_U_MIN + 1.0), LOG_U_MAX - 1.0)

        def gap(t: float) -> float:
            return self.f(i, t) - P

        step = 1.0
        low = guess - step
        while gap(low) >= 0:
            step *= 2.0
            low = guess - step
            if low < LOG_U_MIN:
                raise ConvergenceError(f"Equation {i}: cannot bracket u below P={P:.3e}",
                                       diagnostics={'equation': i, 'P': P})
        step = 1.0
        high = guess + step
        while gap(high) <= 0:
            step *= 2.0
            high = guess + step
            if high > LOG_U_MAX:
                raise ConvergenceError(f"Equation {i}: cannot bracket u above P={P:.3e}",
                                       diagnostics={'equation': i, 'P': P})

        return brentq(gap, low, high, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=MAX_ITERATIONS)

    def outer(self, log_P: float) -> float:
        P = math.exp(log_P)
        total = sum(self.log_u(i, P) for i in range(self.hops + 1))
        return total / self.hops - log_P


def _sign_changes(values: Sequence[float]) -> List[int]:
    signs = np.sign(values)
    return [k for k in range(len(signs) - 1) if signs[k] < 0 <= signs[k + 1] or signs[k] > 0 >= signs[k + 1]]


def solve_fixed_point(inp: AsymptoticInput, strict: bool = True) -> FixedPointSolution:
    """
    Strictly positive solution h_0..h_N.

    Raises ConvergenceError when no sign change of the outer function is
    found or, with `strict`, when the residual certificate fails. Several
    sign changes are reported in `diagnostics['sign_changes']` and the root
    with the smallest product is returned.
    """
    for i, dist in enumerate(inp.m_spectra):
        if not dist.positive_mass > 0:
            raise InputError(f"Spectrum of M_{i}ᴴM_{i} has no positive mass")

    eq = _Equations(inp)
    hops = inp.hops
    P_max = min(eq.ceilings) * (1.0 - P_MAX_MARGIN)
    log_high = math.log(P_max)

    epsilon = min(EPSILON_START, P_max * 1e-3)
    g_low = eq.outer(math.log(epsilon))
    while g_low >= 0 and epsilon > EPSILON_FLOOR:
        epsilon = max(epsilon * 1e-16, EPSILON_FLOOR)
        g_low = eq.outer(math.log(epsilon))
    g_high = eq.outer(log_high)
    if not (g_low < 0 < g_high):
        logger.warning("No sign change of the outer function on (%.3e, %.3e)", epsilon, P_max)
        raise ConvergenceError(
            f"No positive solution bracketed on ({epsilon:.3e}, {P_max:.6e})",
            diagnostics={'epsilon': epsilon, 'P_max': P_max, 'g_low': g_low, 'g_high': g_high}
        )

    grid = np.linspace(math.log(epsilon), log_high, SCAN_POINTS)
    values = [g_low] + [eq.outer(x) for x in grid[1:-1]] + [g_high]
    changes = _sign_changes(values)
    diagnostics = {'epsilon': epsilon, 'P_max': P_max, 'sign_changes': len(changes)}
    if len(changes) > 1:
        logger.warning("Outer function changes sign %d times; returning the smallest root", len(changes))
    k = changes[0]

    if values[k + 1] == 0.0:
        log_P, iterations = float(grid[k + 1]), 0
    else:
        log_P, info = brentq(eq.outer, grid[k], grid[k + 1], xtol=1e-14,
                             maxiter=MAX_ITERATIONS, full_output=True, disp=False)
        iterations = int(info.iterations)
        if not info.converged:
            raise ConvergenceError(
                f"Outer root search stopped after {iterations} iterations",
                diagnostics=diagnostics
            )

    P = math.exp(log_P)
    log_u = np.array([eq.log_u(i, P) for i in range(hops + 1)])
    h = np.exp(log_u / hops)
    product = float(np.prod(h))
    residuals = [abs(product - eq.f(i, log_u[i])) for i in range(hops + 1)]
    tolerance = RESIDUAL_TOLERANCE * max(1.0, product)
    converged = max(residuals) <= tolerance

    logger.debug("Fixed point: iterations=%d product=%.6e max_residual=%.3e",
                 iterations, product, max(residuals))

    if not converged:
        logger.warning("Fixed-point certificate failed: max residual %.3e > %.3e", max(residuals), tolerance)
        if strict:
            raise ConvergenceError(
                f"Residual certificate failed (max {max(residuals):.3e} > {tolerance:.3e})",
                residuals=residuals,
                diagnostics=diagnostics
            )

    return FixedPointSolution(
        h=h,
        product=product,
        residuals=residuals,
        iterations=iterations,
        converged=converged,
        diagnostics=diagnostics
    )


__all__ = ['AsymptoticInput', 'FixedPointSolution', 'solve_fixed_point', 'RESIDUAL_TOLERANCE']
