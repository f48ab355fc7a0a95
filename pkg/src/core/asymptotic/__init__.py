"""Asymptotic mutual information from the free-probability fixed-point system"""

from .fixed_point import AsymptoticInput, FixedPointSolution, solve_fixed_point
from .mutual_information import (
    asymptotic_input,
    asymptotic_mi,
    mi_derivative,
    symmetric_chain_h,
    symmetric_chain_mi
)
from .transform_identities import gram_s_transform_composition, gram_upsilon_identity_residual


__all__ = [
    'AsymptoticInput',
    'FixedPointSolution',
    'solve_fixed_point',
    'asymptotic_input',
    'asymptotic_mi',
    'mi_derivative',
    'symmetric_chain_h',
    'symmetric_chain_mi',
    'gram_s_transform_composition',
    'gram_upsilon_identity_residual'
]
