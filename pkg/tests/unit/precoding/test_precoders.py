"""Test precoder constructors and power verification"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent))

import numpy as np
import pytest

from src.core.errors import ConstructionError, InputError
from src.core.channel import CorrelationSpec, make_network_model
from src.core.precoding import (
    PowerAllocation,
    PrecoderSet,
    Scheme,
    amplify_forward_precoders,
    build_precoder_set,
    equal_power_precoders,
    haar_unitary,
    optimal_direction_precoders,
    random_unitary_precoders,
    verify_power
)


def _correlated(r=0.7, dims=(8, 8, 8)):
    spec = CorrelationSpec.exponential(r)
    return make_network_model(dims, transmit=spec, receive=spec)


def test_equal_power_single_hop_is_identity():
    """Test equal power single hop"""
    precoders = equal_power_precoders(make_network_model((6, 6)))
    np.testing.assert_allclose(precoders[0], np.eye(6), atol=1e-15)


def test_equal_power_two_hop_identity():
    """Test equal power two hops"""
    precoders = equal_power_precoders(make_network_model((5, 5, 5)))
    np.testing.assert_allclose(precoders[1], np.eye(5), atol=1e-14)


def test_equal_power_meets_budgets():
    """Test equal power budgets"""
    model = _correlated()
    report = verify_power(model, equal_power_precoders(model))
    assert report.max_abs_slack <= 1e-9
    assert report.feasible


def test_equal_power_gram_is_scalar():
    """Test equal power Gram is scalar"""
    model = make_network_model((4, 6, 3), budgets=[2.0, 9.0])
    for P in equal_power_precoders(model):
        gram = P.conj().T @ P
        np.testing.assert_allclose(gram, gram[0, 0] * np.eye(len(gram)), atol=1e-12)


def test_zero_upstream_power():
    """Test zero upstream power"""
    model = make_network_model(
        (3, 3, 3),
        transmit=[CorrelationSpec.explicit(np.zeros((3, 3))), CorrelationSpec.identity()]
    )
    with pytest.raises(ConstructionError):
        equal_power_precoders(model)


def test_optimal_identity_equals_equal_power():
    """Test optimal directions with identity correlation"""
    model = make_network_model((4, 4, 4))
    optimal = optimal_direction_precoders(model, PowerAllocation.uniform(model))
    equal = equal_power_precoders(model)
    for a, b in zip(optimal, equal):
        np.testing.assert_array_equal(a, b)


def test_optimal_columns_are_transmit_eigenvectors():
    """Test optimal columns are transmit eigenvectors"""
    model = _correlated(0.5, dims=(5, 5))
    precoders = optimal_direction_precoders(model)
    C = model.stages[0].C_t
    eigenvalues, vectors = np.linalg.eigh(C)
    order = np.argsort(eigenvalues)[::-1]
    P0 = precoders[0]
    for j, k in enumerate(order):
        column = P0[:, j] / np.linalg.norm(P0[:, j])
        assert abs(np.vdot(vectors[:, k], column)) == pytest.approx(1.0, abs=1e-10)


def test_optimal_gram_is_diagonal_in_receive_basis():
    """Test optimal Gram in receive basis"""
    model = _correlated()
    precoders = optimal_direction_precoders(model)
    gram0 = precoders[0].conj().T @ precoders[0]
    np.testing.assert_allclose(gram0, np.diag(np.diag(gram0)), atol=1e-12)

    U_r = model.stages[0].U_r
    rotated = U_r.conj().T @ precoders[1].conj().T @ precoders[1] @ U_r
    np.testing.assert_allclose(rotated, np.diag(np.diag(rotated)), atol=1e-12)


def test_optimal_meets_budgets():
    """Test optimal direction budgets"""
    model = _correlated()
    alloc = PowerAllocation(levels=(np.linspace(1, 2, 8), np.linspace(0.5, 3, 8)))
    precoders = optimal_direction_precoders(model, alloc)
    assert verify_power(model, precoders).max_abs_slack <= 1e-9
    for diagonal in precoders.diagonals:
        assert np.all(np.diff(diagonal) <= 0)


def test_optimal_rejects_zero_allocation():
    """Test zero allocation is rejected"""
    model = make_network_model((3, 3, 3))
    with pytest.raises(ConstructionError):
        optimal_direction_precoders(model, PowerAllocation(levels=(np.ones(3), np.zeros(3))))
    with pytest.raises(InputError):
        optimal_direction_precoders(model, PowerAllocation(levels=(np.ones(3),)))


def test_random_unitary():
    """Test random unitary precoders"""
    model = _correlated()
    precoders = random_unitary_precoders(model, np.random.default_rng(4))
    for P, scale in zip(precoders, precoders.scales):
        V = P / scale
        np.testing.assert_allclose(V.conj().T @ V, np.eye(8), atol=1e-10)
    assert verify_power(model, precoders).max_abs_slack <= 1e-9


def test_haar_first_entry_moment():
    """Test Haar entry moment"""
    rng = np.random.default_rng(8)
    values = [abs(haar_unitary(8, rng)[0, 0]) ** 2 for _ in range(10_000)]
    assert np.mean(values) == pytest.approx(1 / 8, rel=0.05)


def test_amplify_forward_is_diagonal():
    """Test amplify-and-forward is diagonal"""
    model = make_network_model((4, 6, 4))
    precoders = amplify_forward_precoders(model, [[1, 2, 3, 4], np.ones(6)])
    for P in precoders:
        np.testing.assert_array_equal(P, np.diag(np.diag(P)))
    assert verify_power(model, precoders).max_abs_slack <= 1e-9
    with pytest.raises(ConstructionError):
        amplify_forward_precoders(model, [np.zeros(4), np.ones(6)])


def test_verify_power_quadratic_scaling():
    """Test power slack scales quadratically"""
    model = make_network_model((4, 4, 4))
    tight = equal_power_precoders(model)
    doubled = PrecoderSet(matrices=(2 * tight[0], tight[1]), scheme='manual')
    report = verify_power(model, doubled)
    assert report.slacks[0] == pytest.approx(3 * model.budgets[0])
    assert report.violations[0]
    assert not report.feasible


def test_build_precoder_set_dispatch():
    """Test scheme dispatch"""
    model = make_network_model((3, 3))
    precoders = build_precoder_set(model, 'equal_power')
    assert precoders.scheme is Scheme.EQUAL_POWER
    assert precoders.scheme == 'equal_power'
    assert build_precoder_set(model, Scheme.AMPLIFY_FORWARD).scheme is Scheme.AMPLIFY_FORWARD
    assert [s.value for s in Scheme] == ['equal_power', 'optimal_directions', 'random_unitary', 'amplify_forward']
    with pytest.raises(InputError):
        build_precoder_set(model, 'random_unitary')
    with pytest.raises(InputError):
        build_precoder_set(model, 'water_filling')


if __name__ == "__main__":
    test_equal_power_single_hop_is_identity()
    test_optimal_identity_equals_equal_power()
    test_verify_power_quadratic_scaling()
    print("\nAll precoder tests passed!")
