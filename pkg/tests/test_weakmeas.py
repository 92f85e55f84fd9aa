import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hawktele.qla import PAULI_X, DensityMatrix, StateVector, ket
from hawktele.weakmeas import (
    MeasurementStrength,
    apply_selective,
    apply_selective_density,
    post_weak_failure,
    post_weak_operator,
    pre_weak_failure,
    pre_weak_operator,
)

from conftest import random_density, random_state

strengths = st.floats(0, 1)


def test_pre_operator_values():
    np.testing.assert_array_equal(pre_weak_operator(0.0), np.eye(2))
    np.testing.assert_array_equal(pre_weak_operator(1.0), np.diag([0, 1]))
    np.testing.assert_allclose(pre_weak_operator(0.36), np.diag([0.8, 1]), atol=1e-15)


def test_post_operator_identity_at_zero():
    np.testing.assert_array_equal(post_weak_operator(0.0), np.eye(2))


@pytest.mark.parametrize("bad", [-0.1, 1.5, float("nan")])
def test_strength_out_of_range(bad):
    with pytest.raises(ValueError):
        pre_weak_operator(bad)
    with pytest.raises(ValueError):
        post_weak_operator(bad)


def test_strength_from_complement():
    s = MeasurementStrength.from_complement(0.25)
    assert s.value == 0.75 and s.complement == 0.25
    with pytest.raises(ValueError):
        MeasurementStrength.from_complement(1.2)


@given(strengths)
def test_completeness(p):
    m0, m1 = pre_weak_operator(p), pre_weak_failure(p)
    big0, big1 = post_weak_operator(p), post_weak_failure(p)
    np.testing.assert_allclose(m0.conj().T @ m0 + m1.conj().T @ m1, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(big0.conj().T @ big0 + big1.conj().T @ big1, np.eye(2), atol=1e-15)


@given(strengths)
def test_post_is_flipped_pre(q):
    np.testing.assert_allclose(
        post_weak_operator(q), PAULI_X @ pre_weak_operator(q) @ PAULI_X, atol=1e-15
    )


@given(st.integers(0, 2**32 - 1), st.floats(0, 0.999))
def test_reversal_recovers_state(seed, p):
    rho = DensityMatrix(("a",), random_density(np.random.default_rng(seed), 1))
    mid, _ = apply_selective_density(pre_weak_operator(p), rho)
    out, _ = apply_selective_density(post_weak_operator(p), mid)
    np.testing.assert_allclose(out.entries, (1 - p) * rho.entries, atol=1e-12)
    np.testing.assert_allclose(out.normalized().entries, rho.entries, atol=1e-12)


def test_sequential_channel_entries():
    rho = np.array([[0.6, 0.2 - 0.1j], [0.2 + 0.1j, 0.4]])
    p, q = 0.3, 0.7
    mid, _ = apply_selective_density(pre_weak_operator(p), DensityMatrix(("a",), rho))
    out, _ = apply_selective_density(post_weak_operator(q), mid)
    c = math.sqrt((1 - p) * (1 - q))
    expected = [[(1 - p) * rho[0, 0], c * rho[0, 1]], [c * rho[1, 0], (1 - q) * rho[1, 1]]]
    np.testing.assert_allclose(out.entries, expected, atol=1e-15)


@pytest.mark.parametrize("p", [0.0, 0.2, 0.9, 1.0])
def test_selective_on_basis_states(p):
    _, prob0 = apply_selective(pre_weak_operator(p), "a", StateVector.basis("a", [0]))
    _, prob1 = apply_selective(pre_weak_operator(p), "a", StateVector.basis("a", [1]))
    assert prob0 == pytest.approx(1 - p, abs=1e-15)
    assert prob1 == 1.0


def test_selective_on_teleportation_input():
    alpha, beta = math.cos(0.7), 1j * math.sin(0.7)
    s = ket(["in", "A", "B"], np.kron([alpha, beta], [1, 0, 0, 1]) / math.sqrt(2))
    out, prob = apply_selective(pre_weak_operator(0.5), "B", s)
    assert prob == pytest.approx(0.75, abs=1e-15)
    assert out.norm_weight == pytest.approx(0.75, abs=1e-15)


def test_selective_rejects_invalid_element():
    with pytest.raises(ValueError, match="norm"):
        apply_selective(np.diag([1.5, 1.0]), "a", StateVector.basis("a", [0]))
    with pytest.raises(ValueError):
        apply_selective(np.eye(4), "a", StateVector.basis("a", [0]))


@given(st.integers(0, 2**32 - 1), strengths, strengths)
def test_success_probability_bounds(seed, p, q):
    s = ket(["a", "b"], random_state(np.random.default_rng(seed), 2))
    for op, mode in ((pre_weak_operator(p), "a"), (post_weak_operator(q), "b")):
        _, prob = apply_selective(op, mode, s)
        assert -1e-15 <= prob <= 1 + 1e-12


def test_success_one_only_on_untouched_support():
    _, prob = apply_selective(pre_weak_operator(0.4), "a", ket("a", [0.6, 0.8]))
    assert prob < 1
    _, prob = apply_selective(pre_weak_operator(0.4), "a", ket("a", [0, 1]))
    assert prob == 1
