"""Kronecker-correlated multi-hop channel model"""

from .correlation import (
    CorrelationKind,
    CorrelationSpec,
    make_correlation,
    decreasing_eigh,
    hermitian_sqrt
)
from .network import ChannelStage, NetworkModel, make_network_model, uniform_dims
from .sampling import derive_rng, sample_theta, sample_channel, sample_thetas, PRECODER_STREAM
from .covariance import received_covariance, propagate_covariance


__all__ = [
    'CorrelationKind',
    'CorrelationSpec',
    'make_correlation',
    'decreasing_eigh',
    'hermitian_sqrt',
    'ChannelStage',
    'NetworkModel',
    'make_network_model',
    'uniform_dims',
    'derive_rng',
    'sample_theta',
    'sample_channel',
    'sample_thetas',
    'PRECODER_STREAM',
    'received_covariance',
    'propagate_covariance'
]
