"""Test S-transform composition and the Υ identity for the end-to-end Gram matrix"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent))

import numpy as np
import pytest

from src.core.errors import DomainError, InputError
from src.core.spectra import SpectralDistribution, upsilon_inverse
from src.core.channel import make_network_model, sample_thetas
from src.core.precoding import equal_power_precoders
from src.core.asymptotic import (
    AsymptoticInput,
    asymptotic_input,
    gram_s_transform_composition,
    gram_upsilon_identity_residual
)
from src.core.montecarlo import build_end_to_end, empirical_gram_spectrum


def test_unit_chain_composition():
    """Test S-transform composition on unit chains"""
    assert gram_s_transform_composition(AsymptoticInput.unit_chain(1, 1.0), -0.5) == pytest.approx(2.0, rel=1e-10)
    assert gram_s_transform_composition(AsymptoticInput.unit_chain(2, 1.0), -0.5) == pytest.approx(4.0, rel=1e-10)


def test_injected_transform_is_used():
    """Test injected S-transform is called per factor"""
    calls = []

    def transform(dist, z):
        calls.append(z)
        return 1.0

    gram_s_transform_composition(AsymptoticInput.unit_chain(2, 1.0), -0.5, transform=transform)
    assert len(calls) == 3


def test_domain_error_names_factor():
    """Test domain error names the failing factor"""
    with pytest.raises(DomainError) as info:
        gram_s_transform_composition(AsymptoticInput.unit_chain(1, 1.0), -1.5)
    assert info.value.factor == "S_M1"
    assert "S_M1" in str(info.value)


def test_identity_rejects_massless_gram_spectrum():
    """Test massless Gram spectrum is rejected"""
    inp = AsymptoticInput.unit_chain(1, 1.0)
    with pytest.raises(InputError):
        gram_upsilon_identity_residual(inp, SpectralDistribution.atom(0.0), -1.0)


def test_identity_exact_for_matching_spectrum():
    """Test identity residual for matching spectrum"""
    # an atom at 1 has Υ⁻¹(z) = z/(1+z)
    inp = AsymptoticInput.unit_chain(1, 1.0)
    gg = SpectralDistribution.atom(1.0)
    y = -0.3
    s = upsilon_inverse(gg, y)
    residual = gram_upsilon_identity_residual(inp, gg, s)
    expected = abs(s * y - (y / (1 + y)) ** 2)
    assert residual == pytest.approx(expected, abs=1e-12)


def test_identity_holds_for_large_sample():
    """Test identity residual on a K=400 draw"""
    model = make_network_model((400, 400))
    precoders = equal_power_precoders(model)
    G = build_end_to_end(model, precoders, sample_thetas(model, 11, 0))
    gg = empirical_gram_spectrum(G)
    inp = asymptotic_input(model, precoders)
    for s in (-0.5, -1.0, -2.0):
        assert gram_upsilon_identity_residual(inp, gg, s) < 0.02
    print("✅ Υ identity at K=400")


if __name__ == "__main__":
    test_unit_chain_composition()
    test_domain_error_names_factor()
    print("\nAll transform identity tests passed!")
