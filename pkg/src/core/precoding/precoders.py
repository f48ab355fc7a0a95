"""Precoder constructors for the relay chain.

Every scheme first picks a direction matrix D_i per level and then scales it
by a single scalar so that the per-node power constraint tr(E{x_i x_iᴴ}) ≤ 𝒫_i
holds with equality. Levels are processed in order because the power
reaching node i depends on every upstream precoder.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union
import numpy as np

from src.core.errors import ConstructionError, InputError
from src.core.channel.network import NetworkModel
from src.core.channel.covariance import check_precoder_shapes, propagate, received_covariance

logger = logging.getLogger(__name__)

POWER_TOLERANCE = 1e-9


class Scheme(str, Enum):
    EQUAL_POWER = "equal_power"
    OPTIMAL_DIRECTIONS = "optimal_directions"
    RANDOM_UNITARY = "random_unitary"
    AMPLIFY_FORWARD = "amplify_forward"


@dataclass(frozen=True, eq=False)
class PrecoderSet:
    """
    P_0..P_{N−1}, with P_i of size k_i×k_i.

    Schemes built from a factorization P_i = L_i·diag(d_i)·R_iᴴ keep the
    factors so they can be reported; `scales` holds the per-level rescale
    factor c_i applied to the direction matrix.
    """
    matrices: Tuple[np.ndarray, ...]
    scheme: Union[Scheme, str]
    scales: Tuple[float, ...] = ()
    left_factors: Optional[Tuple[np.ndarray, ...]] = None
    diagonals: Optional[Tuple[np.ndarray, ...]] = None
    right_factors: Optional[Tuple[np.ndarray, ...]] = None

    @property
    def levels(self) -> int:
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.matrices[index]


@dataclass(frozen=True, eq=False)
class PowerAllocation:
    """Nonnegative diagonal magnitudes Λ_{P_0}..Λ_{P_{N−1}}"""
    levels: Tuple[np.ndarray, ...]

    def __post_init__(self):
        levels = tuple(np.asarray(level, dtype=float).ravel() for level in self.levels)
        for i, level in enumerate(levels):
            if not np.all(np.isfinite(level)) or np.any(level < 0):
                raise InputError(f"Allocation level {i} must be finite and nonnegative")
        object.__setattr__(self, 'levels', levels)

    @classmethod
    def uniform(cls, model: NetworkModel) -> "PowerAllocation":
        return cls(levels=tuple(np.ones(k) for k in model.dims[:-1]))

    def check(self, model: NetworkModel) -> None:
        if len(self.levels) != model.hops:
            raise InputError(f"Allocation has {len(self.levels)} levels, model has {model.hops}")
        for i, level in enumerate(self.levels):
            if level.size != model.dims[i]:
                raise InputError(f"Allocation level {i} has length {level.size}, expected {model.dims[i]}")


@dataclass
class PowerReport:
    """Per-level tr(Q_i), budget 𝒫_i and slack tr(Q_i) − 𝒫_i"""
    traces: List[float]
    budgets: List[float]
    slacks: List[float] = field(default_factory=list)
    violations: List[bool] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return not any(self.violations)

    @property
    def max_abs_slack(self) -> float:
        return max(abs(s) for s in self.slacks)

    def to_dict(self) -> dict:
        return {
            'traces': self.traces,
            'budgets': self.budgets,
            'slacks': self.slacks,
            'violations': self.violations,
            'feasible': self.feasible
        }


def validate_precoders(model: NetworkModel, precoders) -> None:
    matrices = getattr(precoders, 'matrices', precoders)
    check_precoder_shapes(model, matrices)
    for i, matrix in enumerate(matrices):
        if not np.all(np.isfinite(matrix)):
            raise InputError(f"P_{i} has non-finite entries")


def rescale_to_budgets(model: NetworkModel, directions: Sequence[np.ndarray]) -> Tuple[List[np.ndarray], List[float]]:
    """
    Scale each D_i by c_i = √(𝒫_i / tr(D_i R_i D_iᴴ)), level by level.

    R_0 = I and R_i follows from the already-scaled upstream levels.
    """
    check_precoder_shapes(model, directions)
    matrices, scales = [], []
    incoming = np.eye(model.dims[0], dtype=complex)
    transmit = None
    for i, direction in enumerate(directions):
        direction = np.asarray(direction, dtype=complex)
        if i > 0:
            incoming = received_covariance(model.stages[i - 1], transmit)
        power = float(np.real(np.trace(direction @ incoming @ direction.conj().T)))
        if not power > 0:
            raise ConstructionError(
                f"Level {i} receives or transmits zero power (tr = {power:.3e}); cannot meet 𝒫_{i}"
            )
        scale = float(np.sqrt(model.budgets[i] / power))
        precoder = scale * direction
        transmit = precoder @ incoming @ precoder.conj().T
        matrices.append(precoder)
        scales.append(scale)
    return matrices, scales


def equal_power_precoders(model: NetworkModel) -> PrecoderSet:
    """P_i = √a_i·I meeting every power constraint with equality"""
    directions = [np.eye(k, dtype=complex) for k in model.dims[:-1]]
    matrices, scales = rescale_to_budgets(model, directions)
    return PrecoderSet(matrices=tuple(matrices), scheme=Scheme.EQUAL_POWER, scales=tuple(scales))


def optimal_direction_precoders(model: NetworkModel, alloc: Optional[PowerAllocation] = None) -> PrecoderSet:
    """
    P_0 = U_{t,1} Λ_{P_0} and P_i = U_{t,i+1} Λ_{P_i} U_{r,i}ᴴ.

    Allocations are paired with eigenvalues in decreasing order: each level's
    magnitudes are sorted non-increasing before use. Λ_{P_i} is then scaled
    uniformly to meet the power constraint.
    """
    alloc = alloc or PowerAllocation.uniform(model)
    alloc.check(model)

    lefts, diagonals, rights, directions = [], [], [], []
    for i, level in enumerate(alloc.levels):
        if not np.any(level > 0):
            raise ConstructionError(f"Allocation level {i} is all zero")
        magnitudes = np.sort(level)[::-1]
        left = model.stages[i].U_t
        right = np.eye(model.dims[0], dtype=complex) if i == 0 else model.stages[i - 1].U_r
        lefts.append(left)
        rights.append(right)
        diagonals.append(magnitudes)
        directions.append((left * magnitudes[None, :]) @ right.conj().T)

    matrices, scales = rescale_to_budgets(model, directions)
    logger.debug("Optimal-direction scales: %s", scales)
    return PrecoderSet(
        matrices=tuple(matrices),
        scheme=Scheme.OPTIMAL_DIRECTIONS,
        scales=tuple(scales),
        left_factors=tuple(lefts),
        diagonals=tuple(scale * d for scale, d in zip(scales, diagonals)),
        right_factors=tuple(rights)
    )


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from QR of a complex Gaussian matrix, R's diagonal phases folded into Q"""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def random_unitary_precoders(model: NetworkModel, rng: np.random.Generator) -> PrecoderSet:
    """P_i = √a_i·V_i with V_i Haar-distributed"""
    unitaries = [haar_unitary(k, rng) for k in model.dims[:-1]]
    matrices, scales = rescale_to_budgets(model, unitaries)
    return PrecoderSet(matrices=tuple(matrices), scheme=Scheme.RANDOM_UNITARY, scales=tuple(scales))


def amplify_forward_precoders(model: NetworkModel, gains: Optional[Sequence[Sequence[complex]]] = None) -> PrecoderSet:
    """Diagonal relay gains P_i = c_i·diag(g_i); default g_i = 1"""
    if gains is None:
        gains = [np.ones(k) for k in model.dims[:-1]]
    if len(gains) != model.hops:
        raise InputError(f"Expected {model.hops} gain vectors, got {len(gains)}")

    directions = []
    for i, g in enumerate(gains):
        g = np.asarray(g, dtype=complex).ravel()
        if g.size != model.dims[i]:
            raise InputError(f"Gain vector {i} has length {g.size}, expected {model.dims[i]}")
        if not np.all(np.isfinite(g)):
            raise InputError(f"Gain vector {i} has non-finite entries")
        if not np.any(g != 0):
            raise ConstructionError(f"Gain vector {i} is all zero")
        directions.append(np.diag(g))

    matrices, scales = rescale_to_budgets(model, directions)
    return PrecoderSet(matrices=tuple(matrices), scheme=Scheme.AMPLIFY_FORWARD, scales=tuple(scales))


def build_precoder_set(model: NetworkModel, scheme: Union[Scheme, str], alloc: Optional[PowerAllocation] = None,
                       rng: Optional[np.random.Generator] = None) -> PrecoderSet:
    try:
        scheme = Scheme(scheme)
    except ValueError:
        raise InputError(f"Unknown precoder scheme: {scheme}") from None

    if scheme == Scheme.EQUAL_POWER:
        return equal_power_precoders(model)
    if scheme == Scheme.OPTIMAL_DIRECTIONS:
        return optimal_direction_precoders(model, alloc)
    if scheme == Scheme.RANDOM_UNITARY:
        if rng is None:
            raise InputError("random_unitary precoders need a random generator")
        return random_unitary_precoders(model, rng)
    if scheme == Scheme.AMPLIFY_FORWARD:
        gains = None if alloc is None else alloc.levels
        return amplify_forward_precoders(model, gains)
    raise InputError(f"Unknown precoder scheme: {scheme}")


def verify_power(model: NetworkModel, precoders) -> PowerReport:
    """tr(Q_i) − 𝒫_i per level, flagged when above POWER_TOLERANCE"""
    matrices = getattr(precoders, 'matrices', precoders)
    transmit, _ = propagate(model, matrices)
    traces = [float(np.real(np.trace(Q))) for Q in transmit]
    budgets = list(model.budgets)
    slacks = [t - p for t, p in zip(traces, budgets)]
    return PowerReport(
        traces=traces,
        budgets=budgets,
        slacks=slacks,
        violations=[s > POWER_TOLERANCE for s in slacks]
    )


__all__ = [
    'Scheme',
    'PrecoderSet',
    'PowerAllocation',
    'PowerReport',
    'validate_precoders',
    'rescale_to_budgets',
    'equal_power_precoders',
    'optimal_direction_precoders',
    'random_unitary_precoders',
    'amplify_forward_precoders',
    'haar_unitary',
    'build_precoder_set',
    'verify_power'
]
