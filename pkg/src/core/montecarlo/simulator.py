"""Finite-size end-to-end channel realizations and instantaneous mutual information"""

import math
from typing import Dict, Mapping, Optional, Sequence
import numpy as np

from src.core.errors import InputError
from src.core.spectra import SpectralDistribution, from_gram_spectrum, upsilon
from src.core.channel.network import NetworkModel
from src.core.channel.sampling import correlate, sample_theta, sample_thetas
from src.core.precoding import MChain, assemble_m_chain, validate_precoders

LOG2_E = 1.0 / math.log(2.0)


def _check_thetas(model: NetworkModel, thetas: Sequence[np.ndarray]) -> None:
    if len(thetas) != model.hops:
        raise InputError(f"Expected {model.hops} channel cores, got {len(thetas)}")
    for i, theta in enumerate(thetas, start=1):
        expected = (model.dims[i], model.dims[i - 1])
        if np.shape(theta) != expected:
            raise InputError(f"Θ_{i} has shape {np.shape(theta)}, expected {expected}")


def build_end_to_end(model: NetworkModel, precoders, thetas: Sequence[np.ndarray],
                     chain: Optional[MChain] = None) -> np.ndarray:
    """G_N = M_N Θ_N M_{N−1} … M_1 Θ_1 M_0, a k_N×k_0 matrix"""
    _check_thetas(model, thetas)
    chain = chain or assemble_m_chain(model, precoders)
    G = chain[0]
    for i, theta in enumerate(thetas, start=1):
        G = chain[i] @ (theta @ G)
    return G


def build_end_to_end_direct(model: NetworkModel, precoders, thetas: Sequence[np.ndarray]) -> np.ndarray:
    """G_N = H_N P_{N−1} H_{N−1} … H_1 P_0 with H_i = C_r^{1/2} Θ_i C_t^{1/2}"""
    _check_thetas(model, thetas)
    validate_precoders(model, precoders)
    matrices = getattr(precoders, 'matrices', precoders)
    G = matrices[0]
    for i, (stage, theta) in enumerate(zip(model.stages, thetas), start=1):
        G = correlate(stage, theta) @ G
        if i < model.hops:
            G = matrices[i] @ G
    return G


def gram_eigenvalues(G: np.ndarray) -> np.ndarray:
    """Eigenvalues of GGᴴ with negative round-off clamped at 0"""
    G = np.atleast_2d(G)
    return np.clip(np.linalg.eigvalsh(G @ G.conj().T), 0.0, None)


def mi_from_eigenvalues(eigenvalues: np.ndarray, eta: float, k_in: int) -> float:
    """(1/k_0) Σ log₂(1 + ηλ)"""
    return float(np.sum(np.log1p(eta * eigenvalues))) * LOG2_E / k_in


def end_to_end_mi(G: np.ndarray, eta: float) -> float:
    """(1/k_0) log₂det(I + η GGᴴ)"""
    G = np.atleast_2d(G)
    return mi_from_eigenvalues(gram_eigenvalues(G), eta, G.shape[1])


def instantaneous_mi(model: NetworkModel, precoders, rng: np.random.Generator,
                     chain: Optional[MChain] = None) -> float:
    """One fresh draw of Θ_1..Θ_N, then (1/k_0) log₂det(I + η GGᴴ)"""
    thetas = [sample_theta(stage, rng) for stage in model.stages]
    return end_to_end_mi(build_end_to_end(model, precoders, thetas, chain), model.eta)


def empirical_gram_spectrum(G: np.ndarray) -> SpectralDistribution:
    """Uniform measure on the k_N eigenvalues of GGᴴ"""
    return from_gram_spectrum(np.atleast_2d(G).conj().T)


def empirical_mi(gg_spectrum: SpectralDistribution, eta: float, rho0: float) -> float:
    """(1/ρ_0) ∫ log₂(1 + ηλ) dF_{GGᴴ}(λ)"""
    return gg_spectrum.integrate(lambda lam: np.log1p(eta * lam)) * LOG2_E / rho0


def empirical_mi_derivative(gg_spectrum: SpectralDistribution, eta: float, rho0: float) -> float:
    """−Υ_{GGᴴ}(−η) / (ρ_0 η ln 2)"""
    return -upsilon(gg_spectrum, -eta) * LOG2_E / (rho0 * eta)


def compare_precoders(model: NetworkModel, candidates: Mapping[str, object], eta: float,
                      draws: int, seed: int) -> Dict[str, float]:
    """
    Average instantaneous MI of each candidate over the same Θ draws.

    Sharing draws across candidates removes channel noise from the ranking.
    """
    if draws < 1:
        raise InputError(f"Need at least one draw, got {draws}")
    chains = {name: assemble_m_chain(model, precoders) for name, precoders in candidates.items()}
    totals = {name: np.zeros(draws) for name in candidates}
    for draw in range(draws):
        thetas = sample_thetas(model, seed, draw)
        for name, precoders in candidates.items():
            G = build_end_to_end(model, precoders, thetas, chains[name])
            totals[name][draw] = end_to_end_mi(G, eta)
    return {name: float(np.mean(values)) for name, values in totals.items()}


__all__ = [
    'build_end_to_end',
    'build_end_to_end_direct',
    'gram_eigenvalues',
    'mi_from_eigenvalues',
    'end_to_end_mi',
    'instantaneous_mi',
    'empirical_gram_spectrum',
    'empirical_mi',
    'empirical_mi_derivative',
    'compare_precoders'
]
