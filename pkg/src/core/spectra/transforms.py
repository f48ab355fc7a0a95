"""Υ, Υ⁻¹ and S-transforms evaluated on atomic spectral measures.

Υ(s) = ∫ sλ/(1−sλ) dF(λ) increases strictly from −positive_mass (s → −∞)
to 0 (s → 0⁻), so its inverse on (−positive_mass, 0) is found by a
bracketed root search in t = log(−s).
"""

import math

import numpy as np
from scipy.optimize import brentq

from src.core.errors import ConvergenceError, DomainError
from .distribution import SpectralDistribution


INVERSE_RESIDUAL_TOLERANCE = 1e-12
MAX_ITERATIONS = 200
LOG_S_MIN = math.log(1e-300)
LOG_S_MAX = math.log(1e300)


def upsilon(dist: SpectralDistribution, s: float) -> float:
    """Υ(s) = Σ_k w_k sλ_k/(1−sλ_k) for s < 0"""
    if not s < 0:
        raise DomainError(f"Υ is evaluated on the negative axis, got s={s}", argument=s, upper=0.0)
    products = s * dist.eigenvalues
    return float(np.dot(dist.weights, products / (1.0 - products)))


def _upsilon_on_log_axis(dist: SpectralDistribution, t: float) -> float:
    return upsilon(dist, -math.exp(t))


def upsilon_inverse(dist: SpectralDistribution, z: float) -> float:
    """Unique s < 0 with Υ(s) = z, for z in (−positive_mass, 0)"""
    lower = -dist.positive_mass
    if not (lower < z < 0):
        raise DomainError(
            f"Υ⁻¹ argument {z} outside ({lower}, 0)",
            argument=z, lower=lower, upper=0.0
        )

    positive_mean = dist.mean / dist.positive_mass
    # Small-|s| expansion Υ(s) ≈ s·E[λ] seeds the bracket.
    t_guess = math.log(-z / (dist.positive_mass * positive_mean))
    t_guess = min(max(t_guess, LOG_S_MIN + 1.0), LOG_S_MAX - 1.0)

    def gap(t: float) -> float:
        return _upsilon_on_log_axis(dist, t) - z

    # gap(t) decreases in t: positive for small |s|, negative for large |s|.
    step = 1.0
    t_low = t_guess - step
    while gap(t_low) <= 0:
        step *= 2.0
        t_low = t_guess - step
        if t_low < LOG_S_MIN:
            raise DomainError(f"Υ⁻¹({z}) is below the smallest representable |s|", argument=z)

    step = 1.0
    t_high = t_guess + step
    while gap(t_high) >= 0:
        step *= 2.0
        t_high = t_guess + step
        if t_high > LOG_S_MAX:
            raise DomainError(
                f"Υ⁻¹({z}) is unreachable: z too close to −positive_mass={lower}",
                argument=z, lower=lower, upper=0.0
            )

    try:
        t_root = brentq(gap, t_low, t_high, xtol=1e-15, maxiter=MAX_ITERATIONS)
    except RuntimeError as exc:
        raise ConvergenceError(
            f"Υ⁻¹({z}) root search failed: {exc}",
            diagnostics={'z': z, 'bracket': (t_low, t_high)}
        ) from exc
    s = -math.exp(t_root)

    residual = abs(upsilon(dist, s) - z)
    if residual > INVERSE_RESIDUAL_TOLERANCE:
        raise ConvergenceError(
            f"Υ⁻¹({z}) residual {residual:.3e} above {INVERSE_RESIDUAL_TOLERANCE}",
            residuals=[residual],
            diagnostics={'z': z, 's': s}
        )
    return s


def s_transform(dist: SpectralDistribution, z: float) -> float:
    """S(z) = ((z+1)/z)·Υ⁻¹(z)"""
    return ((z + 1.0) / z) * upsilon_inverse(dist, z)


__all__ = ['upsilon', 'upsilon_inverse', 's_transform']
