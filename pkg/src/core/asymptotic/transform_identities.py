"""S- and Υ-transform identities relating G_NG_Nᴴ to the M-chain spectra"""

from typing import Callable

from src.core.errors import DomainError, InputError
from src.core.spectra import SpectralDistribution, s_transform, upsilon, upsilon_inverse
from .fixed_point import AsymptoticInput

STransform = Callable[[SpectralDistribution, float], float]


def _factor(label: str, func, *args) -> float:
    try:
        return func(*args)
    except DomainError as exc:
        raise DomainError(
            str(exc), argument=exc.argument, lower=exc.lower, upper=exc.upper, factor=label
        ) from exc


def gram_s_transform_composition(inp: AsymptoticInput, z: float,
                                 transform: STransform = s_transform) -> float:
    """
    S_{GGᴴ}(z) = S_{M_NᴴM_N}(z) · Π_{i=1..N} ρ_i/(z+ρ_{i−1}) · S_{M_{i−1}ᴴM_{i−1}}(z/ρ_{i−1})
    """
    spectra, rho, hops = inp.m_spectra, inp.rho, inp.hops
    value = _factor(f"S_M{hops}", transform, spectra[hops], z)
    for i in range(1, hops + 1):
        value *= rho[i] / (z + rho[i - 1])
        value *= _factor(f"S_M{i - 1}", transform, spectra[i - 1], z / rho[i - 1])
    return value


def gram_upsilon_identity_residual(inp: AsymptoticInput, gg_spectrum: SpectralDistribution, s: float) -> float:
    """
    |s·Υ_{GGᴴ}(s)^N − Π_{i=0..N} ρ_{i+1} Υ⁻¹_{M_iᴴM_i}(Υ_{GGᴴ}(s)/ρ_i)|
    """
    if not gg_spectrum.positive_mass > 0:
        raise InputError("Spectrum of GGᴴ has no positive mass; Υ vanishes identically")
    hops, rho = inp.hops, inp.rho
    y = _factor("Y_GG", upsilon, gg_spectrum, s)

    lhs = s * y ** hops
    rhs = 1.0
    for i, dist in enumerate(inp.m_spectra):
        rhs *= rho[i + 1] * _factor(f"Y_inv_M{i}", upsilon_inverse, dist, y / rho[i])
    return abs(lhs - rhs)


__all__ = ['gram_s_transform_composition', 'gram_upsilon_identity_residual', 'STransform']
