import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hawktele.horizon import (
    HawkingMode,
    kruskal_embed,
    mode_coefficients,
    temperature_from_mass,
)
from hawktele.qla import ModeError, StateVector, ket, partial_trace

from conftest import random_state


def test_zero_temperature_limit():
    assert mode_coefficients(0.0) == (1.0, 0.0)
    assert mode_coefficients(1e-7) == (1.0, 0.0)


def test_high_temperature_limit():
    z, e = mode_coefficients(1e9)
    assert z == pytest.approx(1 / math.sqrt(2), abs=1e-9)
    assert e == pytest.approx(1 / math.sqrt(2), abs=1e-9)


def test_fermi_factors_at_ten():
    z, e = mode_coefficients(10.0)
    z2 = 1 / (math.exp(-0.1) + 1)
    e2 = 1 / (math.exp(0.1) + 1)
    assert z * z == pytest.approx(z2, abs=1e-15)
    assert e * e == pytest.approx(e2, abs=1e-15)
    assert z2 + e2 == pytest.approx(1.0, abs=1e-15)


def test_small_ratio_does_not_overflow():
    z, e = mode_coefficients(1e-4)
    assert z == 1.0 and 0.0 <= e < 1e-300


@pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf")])
def test_invalid_ratio(bad):
    with pytest.raises(ValueError):
        mode_coefficients(bad)


@given(st.floats(0, 1e6))
def test_coefficients_on_unit_circle(t):
    z, e = mode_coefficients(t)
    assert abs(z * z + e * e - 1) <= 1e-14
    assert 1 / math.sqrt(2) - 1e-15 <= z <= 1.0
    assert 0.0 <= e <= 1 / math.sqrt(2) + 1e-15


def test_eta_monotone_in_temperature():
    etas = [mode_coefficients(t)[1] for t in np.linspace(0, 50, 400)]
    assert all(b >= a for a, b in zip(etas, etas[1:]))


def test_temperature_from_mass():
    assert temperature_from_mass(1 / (8 * math.pi)) == pytest.approx(1.0, abs=1e-15)
    assert temperature_from_mass(1e12) < 1e-12
    assert temperature_from_mass(1.0) == pytest.approx(0.039788735772973836, abs=1e-15)
    with pytest.raises(ValueError):
        temperature_from_mass(0.0)
    with pytest.raises(ValueError):
        temperature_from_mass(-2.0)


def test_mode_from_mass():
    mode = HawkingMode.from_mass(1 / (8 * math.pi), frequency=0.1)
    assert mode.temperature_ratio == pytest.approx(10.0)
    assert mode.zeta == mode_coefficients(mode.temperature_ratio)[0]


def test_embed_vacuum_at_zero_temperature():
    out = kruskal_embed(StateVector.basis("B", [0]), 0.0)
    assert out.mode_labels == ("I", "II")
    np.testing.assert_array_equal(out.amplitudes, [1, 0, 0, 0])


@pytest.mark.parametrize("t", [0.0, 0.3, 10.0, 1e5])
def test_embed_excited_state(t):
    out = kruskal_embed(StateVector.basis("B", [1]), t)
    np.testing.assert_array_equal(out.amplitudes, [0, 0, 1, 0])


def test_embed_teleportation_state():
    # theta = 0, p = 0: (1/sqrt2)|0>_in (|0_A 0_B> + |1_A 1_B>) becomes
    # (1/sqrt2)(zeta|0000> + eta|0011> + |0110>) over (in, A, I, II)
    mode = HawkingMode.from_ratio(10.0)
    s = ket(["in", "A", "B"], np.array([1, 0, 0, 1, 0, 0, 0, 0]) / math.sqrt(2))
    out = kruskal_embed(s, mode)
    assert out.mode_labels == ("in", "A", "I", "II")
    expected = np.zeros(16, dtype=complex)
    expected[0b0000] = mode.zeta
    expected[0b0011] = mode.eta
    expected[0b0110] = 1.0
    np.testing.assert_allclose(out.amplitudes, expected / math.sqrt(2), atol=1e-15)


def test_embed_missing_mode():
    with pytest.raises(ModeError):
        kruskal_embed(StateVector.basis("A", [0]), 1.0)


@given(st.integers(0, 2**32 - 1), st.floats(0, 100))
def test_embed_is_isometry(seed, t):
    rng = np.random.default_rng(seed)
    s = ket(["in", "B", "A"], 0.8 * random_state(rng, 3))
    out = kruskal_embed(s, t)
    assert abs(out.norm_weight - s.norm_weight) <= 1e-12


@pytest.mark.parametrize("t", [0.0, 0.5, 2.0, 10.0])
def test_region_one_thermal_occupation(t):
    mode = HawkingMode.from_ratio(t)
    rho = kruskal_embed(StateVector.basis("B", [0]), mode).density_matrix()
    red = partial_trace(rho, "I")
    np.testing.assert_allclose(red.entries, np.diag([mode.zeta2, mode.eta2]), atol=1e-15)
