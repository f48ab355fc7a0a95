"""Correlation matrices and their Hermitian factorizations"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple
import numpy as np

from src.core.errors import InputError

HERMITIAN_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10


class CorrelationKind(str, Enum):
    IDENTITY = "identity"
    EXPONENTIAL = "exponential"
    EXPLICIT = "explicit"


@dataclass(frozen=True, eq=False)
class CorrelationSpec:
    """How to generate C_t or C_r for one side of one hop"""
    kind: CorrelationKind = CorrelationKind.IDENTITY
    r: float = 0.0
    matrix: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', CorrelationKind(self.kind))
        if self.kind == CorrelationKind.EXPONENTIAL and not (0.0 <= self.r < 1.0):
            raise InputError(f"Exponential correlation needs r in [0, 1), got {self.r}")
        if self.kind == CorrelationKind.EXPLICIT and self.matrix is None:
            raise InputError("Explicit correlation requires a matrix")

    @classmethod
    def identity(cls) -> "CorrelationSpec":
        return cls(kind=CorrelationKind.IDENTITY)

    @classmethod
    def exponential(cls, r: float) -> "CorrelationSpec":
        return cls(kind=CorrelationKind.EXPONENTIAL, r=r)

    @classmethod
    def explicit(cls, matrix) -> "CorrelationSpec":
        return cls(kind=CorrelationKind.EXPLICIT, matrix=np.asarray(matrix, dtype=complex))


def make_correlation(spec: CorrelationSpec, dim: int) -> np.ndarray:
    """Hermitian PSD dim×dim correlation matrix"""
    if dim < 1:
        raise InputError(f"Correlation dimension must be >= 1, got {dim}")

    if spec.kind == CorrelationKind.IDENTITY:
        return np.eye(dim, dtype=complex)

    if spec.kind == CorrelationKind.EXPONENTIAL:
        index = np.arange(dim)
        exponents = np.abs(index[:, None] - index[None, :])
        return np.power(spec.r, exponents).astype(complex)

    matrix = np.asarray(spec.matrix, dtype=complex)
    if matrix.shape != (dim, dim):
        raise InputError(f"Explicit correlation has shape {matrix.shape}, expected {(dim, dim)}")
    check_hermitian_psd(matrix)
    return matrix


def check_hermitian_psd(matrix: np.ndarray) -> None:
    if not np.all(np.isfinite(matrix)):
        raise InputError("Correlation matrix has non-finite entries")
    asymmetry = np.max(np.abs(matrix - matrix.conj().T))
    if asymmetry > HERMITIAN_TOLERANCE:
        raise InputError(f"Matrix is not Hermitian (max asymmetry {asymmetry:.3e})")
    smallest = np.linalg.eigvalsh(matrix).min()
    if smallest < -PSD_TOLERANCE:
        raise InputError(f"Matrix is not PSD (smallest eigenvalue {smallest:.3e})")


def is_identity(matrix: np.ndarray) -> bool:
    return matrix.shape[0] == matrix.shape[1] and np.array_equal(matrix, np.eye(matrix.shape[0]))


def normalize_phases(vectors: np.ndarray) -> np.ndarray:
    """Scale each column so its largest-magnitude entry is real positive"""
    vectors = np.array(vectors, dtype=complex)
    pivots = np.argmax(np.abs(vectors), axis=0)
    pivot_values = vectors[pivots, np.arange(vectors.shape[1])]
    return vectors * (np.abs(pivot_values) / pivot_values)[None, :]


def decreasing_eigh(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition C = U diag(λ) Uᴴ with λ non-increasing.

    Ties keep their original index order, and diagonal matrices are
    decomposed on the canonical basis, so identity correlations give U = I.
    Eigenvectors are phase-normalized.
    """
    matrix = np.asarray(matrix, dtype=complex)
    dim = matrix.shape[0]
    if np.array_equal(matrix, np.diag(np.diag(matrix))):
        eigenvalues = np.real(np.diag(matrix)).copy()
        vectors = np.eye(dim, dtype=complex)
    else:
        eigenvalues, vectors = np.linalg.eigh(matrix)

    if np.any(eigenvalues < -PSD_TOLERANCE):
        raise InputError(f"Matrix is not PSD (smallest eigenvalue {eigenvalues.min():.3e})")
    eigenvalues = np.clip(eigenvalues, 0.0, None)

    order = np.argsort(-eigenvalues, kind='stable')
    return eigenvalues[order], normalize_phases(vectors[:, order])


def hermitian_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Principal PSD square root via eigendecomposition with clamping at 0"""
    if is_identity(matrix):
        return np.eye(matrix.shape[0], dtype=complex)
    eigenvalues, vectors = decreasing_eigh(matrix)
    return (vectors * np.sqrt(eigenvalues)[None, :]) @ vectors.conj().T


__all__ = [
    'CorrelationKind',
    'CorrelationSpec',
    'make_correlation',
    'check_hermitian_psd',
    'decreasing_eigh',
    'hermitian_sqrt',
    'normalize_phases',
    'is_identity'
]
