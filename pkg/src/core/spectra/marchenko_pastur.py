"""Marchenko–Pastur reference law used as an analytic oracle.

The law with ratio ζ = m/n describes BBᴴ for an m×n matrix B with iid
entries of variance 1/n. For ζ > 1 it carries an atom of mass 1 − 1/ζ at 0.
"""

import math
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import quad

from src.core.errors import InputError
from .distribution import SpectralDistribution


def support(ratio: float) -> Tuple[float, float]:
    if not ratio > 0:
        raise InputError(f"Marchenko–Pastur ratio must be positive, got {ratio}")
    root = math.sqrt(ratio)
    return (1.0 - root) ** 2, (1.0 + root) ** 2


def density(x: np.ndarray, ratio: float = 1.0) -> np.ndarray:
    """Density of the absolutely continuous part"""
    a, b = support(ratio)
    x = np.asarray(x, dtype=float)
    inside = (x > a) & (x < b)
    values = np.zeros_like(x)
    xi = x[inside]
    values[inside] = np.sqrt((b - xi) * (xi - a)) / (2.0 * math.pi * ratio * xi)
    return values


def _integrate(func: Callable[[float], float], ratio: float, upper: float = None) -> float:
    """∫ func dF over the continuous part, with the square-root edges as quad weights"""
    a, b = support(ratio)
    truncated = upper is not None and upper < b
    if truncated and upper <= a:
        return 0.0
    scale = 2.0 * math.pi * ratio

    if a == 0.0:
        # ζ = 1: density = (4−x)^{1/2} x^{−1/2} / (2π)
        if truncated:
            result, _ = quad(lambda x: func(x) * math.sqrt(b - x) / scale, a, upper,
                             weight='alg', wvar=(-0.5, 0.0))
        else:
            result, _ = quad(lambda x: func(x) / scale, a, b, weight='alg', wvar=(-0.5, 0.5))
        return result

    if truncated:
        result, _ = quad(lambda x: func(x) * math.sqrt(b - x) / (scale * x), a, upper,
                         weight='alg', wvar=(0.5, 0.0))
    else:
        result, _ = quad(lambda x: func(x) / (scale * x), a, b, weight='alg', wvar=(0.5, 0.5))
    return result


def zero_mass(ratio: float) -> float:
    return max(0.0, 1.0 - 1.0 / ratio)


def cdf(x: float, ratio: float = 1.0) -> float:
    if x < 0:
        return 0.0
    return zero_mass(ratio) + _integrate(lambda _: 1.0, ratio, upper=x)


def mean(ratio: float = 1.0) -> float:
    return _integrate(lambda x: x, ratio)


def mutual_information(eta: float, ratio: float = 1.0) -> float:
    """∫ log₂(1 + ηλ) dF_MP(λ) in bits"""
    return _integrate(lambda x: math.log2(1.0 + eta * x), ratio)


def kolmogorov_distance(dist: SpectralDistribution, ratio: float = 1.0) -> float:
    """sup_x |F_dist(x) − F_MP(x)| evaluated on both sides of every atom"""
    reference = np.array([cdf(x, ratio) for x in dist.eigenvalues])
    upper = np.cumsum(dist.weights)
    lower = upper - dist.weights
    return float(max(np.max(np.abs(upper - reference)), np.max(np.abs(lower - reference))))


__all__ = ['support', 'density', 'cdf', 'mean', 'zero_mass', 'mutual_information', 'kolmogorov_distance']
