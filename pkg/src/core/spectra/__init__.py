"""Spectral measures and free-probability transforms"""

from .distribution import SpectralDistribution, from_gram_spectrum, expect
from .transforms import upsilon, upsilon_inverse, s_transform
from . import marchenko_pastur


__all__ = [
    'SpectralDistribution',
    'from_gram_spectrum',
    'expect',
    'upsilon',
    'upsilon_inverse',
    's_transform',
    'marchenko_pastur'
]
