"""Discrete spectral measures built from finite Hermitian matrices."""

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional
import numpy as np

from src.core.errors import InputError, EvaluationError

# Round-off below this (relative to the largest eigenvalue) is clamped to 0.
NEGATIVE_EIGENVALUE_TOLERANCE = 1e-10
WEIGHT_SUM_TOLERANCE = 1e-9
MERGE_RTOL = 1e-12


def _as_sequence(values):
    return values if isinstance(values, np.ndarray) else list(values)


@dataclass(frozen=True, eq=False)
class SpectralDistribution:
    """
    Probability measure on finitely many nonnegative eigenvalues.

    Atoms are sorted ascending, duplicates merged and weights sum to one.
    Build instances with `from_atoms` or `from_gram_spectrum`; the raw
    constructor assumes already-normalized arrays.
    """
    eigenvalues: np.ndarray
    weights: np.ndarray
    positive_mass: float = field(init=False)

    def __post_init__(self):
        eigenvalues = np.array(self.eigenvalues, dtype=float)
        weights = np.array(self.weights, dtype=float)
        eigenvalues.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, 'eigenvalues', eigenvalues)
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'positive_mass', float(weights[eigenvalues > 0].sum()))

    @classmethod
    def from_atoms(
        cls,
        eigenvalues: Iterable[float],
        weights: Optional[Iterable[float]] = None
    ) -> "SpectralDistribution":
        """Normalize raw atoms: clamp round-off, sort, merge duplicates."""
        values = np.asarray(_as_sequence(eigenvalues), dtype=float).ravel()
        if values.size == 0:
            raise InputError("Spectral distribution needs at least one atom")
        if not np.all(np.isfinite(values)):
            raise InputError("Eigenvalues must be finite")

        if weights is None:
            masses = np.full(values.size, 1.0 / values.size)
        else:
            masses = np.asarray(_as_sequence(weights), dtype=float).ravel()
            if masses.shape != values.shape:
                raise InputError(
                    f"Got {values.size} eigenvalues but {masses.size} weights"
                )
            if not np.all(np.isfinite(masses)) or np.any(masses < 0):
                raise InputError("Weights must be finite and nonnegative")
            total = masses.sum()
            if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
                raise InputError(f"Weights sum to {total}, expected 1")
            masses = masses / total

        scale = max(1.0, float(np.max(np.abs(values))))
        if np.any(values < -NEGATIVE_EIGENVALUE_TOLERANCE * scale):
            raise InputError(
                f"Negative eigenvalue {values.min():.3e} is not round-off"
            )
        values = np.where(values < 0, 0.0, values)

        keep = masses > 0
        values, masses = values[keep], masses[keep]

        order = np.argsort(values, kind='stable')
        values, masses = values[order], masses[order]

        merged_values = [values[0]]
        merged_masses = [masses[0]]
        for value, mass in zip(values[1:], masses[1:]):
            anchor = merged_values[-1]
            if value - anchor <= MERGE_RTOL * max(abs(anchor), abs(value)):
                total = merged_masses[-1] + mass
                merged_values[-1] = (anchor * merged_masses[-1] + value * mass) / total
                merged_masses[-1] = total
            else:
                merged_values.append(value)
                merged_masses.append(mass)

        masses = np.asarray(merged_masses)
        return cls(eigenvalues=np.asarray(merged_values), weights=masses / masses.sum())

    @classmethod
    def atom(cls, eigenvalue: float, weight: float = 1.0) -> "SpectralDistribution":
        """Point mass (weight must be 1 for a standalone distribution)"""
        return cls.from_atoms([eigenvalue], [weight])

    @property
    def size(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def mean(self) -> float:
        return float(np.dot(self.weights, self.eigenvalues))

    def scaled(self, factor: float) -> "SpectralDistribution":
        """Distribution of c·λ for c > 0"""
        if not factor > 0:
            raise InputError(f"Scale factor must be positive, got {factor}")
        return SpectralDistribution(eigenvalues=self.eigenvalues * factor, weights=self.weights)

    def integrate(self, func: Callable[[np.ndarray], np.ndarray]) -> float:
        """Vectorized expectation; `func` receives the whole eigenvalue array."""
        values = np.asarray(func(self.eigenvalues), dtype=float)
        if not np.all(np.isfinite(values)):
            raise EvaluationError("Integrand is not finite on every atom")
        return float(np.dot(self.weights, values))

    def cdf(self, x: float) -> float:
        """Right-continuous distribution function"""
        return float(self.weights[self.eigenvalues <= x].sum())

    def atoms(self):
        return list(zip(self.eigenvalues.tolist(), self.weights.tolist()))


def from_gram_spectrum(matrix: np.ndarray) -> SpectralDistribution:
    """
    Empirical spectral distribution of AᴴA for an m×n matrix A.

    Returns the uniform measure on the n eigenvalues of AᴴA. Eigenvalues
    within numerical-rank tolerance of zero are set to exactly zero so that
    rank-deficient grams carry their true zero mass.
    """
    A = np.atleast_2d(np.asarray(matrix))
    if A.ndim != 2:
        raise InputError(f"Expected a matrix, got array of shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError("Matrix has non-finite entries")

    gram = A.conj().T @ A
    eigenvalues = np.linalg.eigvalsh(gram)

    largest = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    rank_tol = max(A.shape) * np.finfo(float).eps * largest
    eigenvalues = np.where(np.abs(eigenvalues) <= rank_tol, 0.0, eigenvalues)

    return SpectralDistribution.from_atoms(eigenvalues)


def expect(dist: SpectralDistribution, func: Callable[[float], float]) -> float:
    """Σ_k w_k f(λ_k) with `func` applied atom by atom"""
    total = 0.0
    for eigenvalue, weight in zip(dist.eigenvalues, dist.weights):
        value = func(float(eigenvalue))
        if not np.isfinite(value):
            raise EvaluationError(f"Integrand is {value} at eigenvalue {eigenvalue}")
        total += weight * value
    return float(total)


__all__ = ['SpectralDistribution', 'from_gram_spectrum', 'expect']
