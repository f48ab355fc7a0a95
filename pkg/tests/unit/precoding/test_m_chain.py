"""Test M-chain assembly"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent))

import numpy as np
import pytest
from scipy.linalg import sqrtm

from src.core.errors import InputError
from src.core.channel import CorrelationSpec, make_network_model
from src.core.precoding import assemble_m_chain, equal_power_precoders


def test_identity_chain():
    """Test identity chain"""
    model = make_network_model((4, 4, 4))
    chain = assemble_m_chain(model, equal_power_precoders(model))
    assert chain.hops == 2
    for M in chain.matrices:
        np.testing.assert_allclose(M, np.eye(4), atol=1e-14)


def test_single_hop_hand_case():
    """Test single hop by hand"""
    spec = CorrelationSpec.exponential(0.5)
    model = make_network_model((3, 3), transmit=spec, receive=spec)
    rng = np.random.default_rng(1)
    P0 = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    chain = assemble_m_chain(model, [P0])

    root = sqrtm(np.array([[1, .5, .25], [.5, 1, .5], [.25, .5, 1]]))
    np.testing.assert_allclose(chain[0], root @ P0, atol=1e-12)
    np.testing.assert_allclose(chain[1], root, atol=1e-12)


def test_scaled_identity_spectra():
    """Test scaled identity spectra"""
    model = make_network_model((4, 4, 4), budgets=[8.0, 4.0])
    spectra = assemble_m_chain(model, equal_power_precoders(model)).spectra()
    # a_0 = 8/4 = 2, R_1 = 2I so a_1 = 4/8 = 0.5, M_2 = I
    for dist, expected in zip(spectra, (2.0, 0.5, 1.0)):
        assert dist.size == 1
        assert dist.eigenvalues[0] == pytest.approx(expected, rel=1e-12)


def test_dimension_mismatch():
    """Test dimension mismatch"""
    model = make_network_model((4, 4))
    with pytest.raises(InputError):
        assemble_m_chain(model, [np.eye(3)])


if __name__ == "__main__":
    test_identity_chain()
    test_single_hop_hand_case()
    print("\nAll M-chain tests passed!")
