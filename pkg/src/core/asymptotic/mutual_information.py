"""Asymptotic mutual information per transmit dimension and its SNR derivative"""

import math
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from src.core.errors import InputError
from src.core.channel.network import NetworkModel
from src.core.precoding import assemble_m_chain
from .fixed_point import AsymptoticInput, FixedPointSolution, solve_fixed_point

LOG2_E = 1.0 / math.log(2.0)


def asymptotic_input(model: NetworkModel, precoders) -> AsymptoticInput:
    """Spectra of M_iᴴM_i at the model's dimensions, with the model's ρ and η"""
    chain = assemble_m_chain(model, precoders)
    return AsymptoticInput(m_spectra=tuple(chain.spectra()), rho=model.rho, eta=model.eta)


def asymptotic_mi(inp: AsymptoticInput, solution: Optional[FixedPointSolution] = None) -> float:
    """
    (1/ρ_0) Σ_i ρ_i E{log₂(1 + η h_i^N Λ_i / ρ_{i+1})} − N (log₂e/ρ_0) η ∏h_i

    in bits per transmit dimension. The integration constant vanishes at
    η → 0, which this expression satisfies.
    """
    solution = solution or solve_fixed_point(inp)
    eta, rho, hops = inp.eta, inp.rho, inp.hops
    u = solution.u

    total = 0.0
    for i, dist in enumerate(inp.m_spectra):
        gain = eta * u[i] / rho[i + 1]
        total += rho[i] * dist.integrate(lambda lam: np.log1p(gain * lam)) * LOG2_E
    return (total - hops * LOG2_E * eta * solution.product) / rho[0]


def mi_derivative(inp: AsymptoticInput, solution: Optional[FixedPointSolution] = None) -> float:
    """dI/dη = ∏h_i / (ρ_0 ln 2)"""
    solution = solution or solve_fixed_point(inp)
    return solution.product * LOG2_E / inp.rho[0]


def symmetric_chain_h(eta: float, hops: int) -> float:
    """Root in (0, 1) of h(1 + ηh^N) = 1"""
    if not eta > 0:
        raise InputError(f"SNR η must be positive, got {eta}")
    if hops < 1:
        raise InputError(f"Need at least one hop, got {hops}")
    return brentq(lambda h: h * (1.0 + eta * h ** hops) - 1.0, 0.0, 1.0, xtol=1e-16, rtol=4 * np.finfo(float).eps)


def symmetric_chain_mi(eta: float, hops: int) -> float:
    """−(N+1) log₂h − N(1−h) log₂e for identity correlations, equal dimensions, unit power"""
    h = symmetric_chain_h(eta, hops)
    return -(hops + 1) * math.log2(h) - hops * (1.0 - h) * LOG2_E


__all__ = [
    'asymptotic_input',
    'asymptotic_mi',
    'mi_derivative',
    'symmetric_chain_h',
    'symmetric_chain_mi',
    'LOG2_E'
]
