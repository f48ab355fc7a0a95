"""Exact propagation of transmit covariances through the relay chain.

Expectations run over the source symbols and the iid cores Θ_i, using
E{Θ A Θᴴ} = (tr A / k_i) I for entries of variance 1/k_i.
"""

from typing import List, Sequence, Tuple
import numpy as np

from src.core.errors import InputError
from .network import ChannelStage, NetworkModel


def received_covariance(stage: ChannelStage, transmit_covariance: np.ndarray) -> np.ndarray:
    """R_i = (tr(C_{t,i} Q_{i−1}) / k_i) · C_{r,i}"""
    power = np.real(np.trace(stage.C_t @ transmit_covariance)) / stage.k_out
    return power * stage.C_r


def check_precoder_shapes(model: NetworkModel, matrices: Sequence[np.ndarray]) -> None:
    if len(matrices) != model.hops:
        raise InputError(f"Expected {model.hops} precoders, got {len(matrices)}")
    for i, matrix in enumerate(matrices):
        k = model.dims[i]
        if np.shape(matrix) != (k, k):
            raise InputError(f"P_{i} has shape {np.shape(matrix)}, expected {(k, k)}")


def propagate(model: NetworkModel, matrices: Sequence[np.ndarray]) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """(Q_0..Q_{N−1}, R_0..R_{N−1}) with R_0 = E{y_0 y_0ᴴ} = I"""
    check_precoder_shapes(model, matrices)
    transmit, received = [], []
    incoming = np.eye(model.dims[0], dtype=complex)
    for i, P in enumerate(matrices):
        if i > 0:
            incoming = received_covariance(model.stages[i - 1], transmit[-1])
        Q = P @ incoming @ P.conj().T
        received.append(incoming)
        transmit.append(0.5 * (Q + Q.conj().T))
    return transmit, received


def propagate_covariance(model: NetworkModel, precoders) -> List[np.ndarray]:
    """Q_i = E{x_i x_iᴴ} for i = 0..N−1"""
    matrices = getattr(precoders, 'matrices', precoders)
    transmit, _ = propagate(model, matrices)
    return transmit


__all__ = ['received_covariance', 'propagate', 'propagate_covariance', 'check_precoder_shapes']
