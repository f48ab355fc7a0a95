"""Precoder construction and the M-chain feeding the asymptotic formula"""

from .precoders import (
    Scheme,
    PrecoderSet,
    PowerAllocation,
    PowerReport,
    validate_precoders,
    equal_power_precoders,
    optimal_direction_precoders,
    random_unitary_precoders,
    amplify_forward_precoders,
    haar_unitary,
    build_precoder_set,
    verify_power
)
from .m_chain import MChain, assemble_m_chain


__all__ = [
    'Scheme',
    'PrecoderSet',
    'PowerAllocation',
    'PowerReport',
    'validate_precoders',
    'equal_power_precoders',
    'optimal_direction_precoders',
    'random_unitary_precoders',
    'amplify_forward_precoders',
    'haar_unitary',
    'build_precoder_set',
    'verify_power',
    'MChain',
    'assemble_m_chain'
]
