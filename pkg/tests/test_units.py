import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qdimer.errors import DomainError, InvalidInputError
from qdimer.units import (CM1_TO_RADPS, KB_CM1_PER_K, NATURAL, PHYSICAL, coth_thermal,
                          unit_system, wavenumber_to_angular_frequency)

finite = st.floats(-1e6, 1e6, allow_nan=False)


def test_constants_from_first_principles():
    c_cm_per_ps = 299792458.0 * 100 / 1e12
    assert CM1_TO_RADPS == pytest.approx(2 * math.pi * c_cm_per_ps, rel=1e-9)
    k, h, c = 1.380649e-23, 6.62607015e-34, 2.99792458e10
    assert KB_CM1_PER_K == pytest.approx(k / (h * c), rel=1e-9)


def test_conversion_examples():
    assert wavenumber_to_angular_frequency(0.0) == 0.0
    assert wavenumber_to_angular_frequency(1.0) == pytest.approx(0.1883651567, rel=1e-12)
    assert wavenumber_to_angular_frequency(250.0) == pytest.approx(47.0912892, rel=1e-9)
    assert wavenumber_to_angular_frequency(3.0, NATURAL) == 3.0


def test_unit_system_lookup():
    assert unit_system("physical") is PHYSICAL
    assert unit_system(NATURAL) is NATURAL
    with pytest.raises(InvalidInputError):
        unit_system("imperial")


def test_conversion_rejects_non_finite():
    with pytest.raises(InvalidInputError):
        wavenumber_to_angular_frequency(float("nan"))
    with pytest.raises(InvalidInputError):
        wavenumber_to_angular_frequency([1.0, float("inf")])


@given(finite, finite)
def test_conversion_linear(a, E):
    lhs = wavenumber_to_angular_frequency(a * E)
    rhs = a * wavenumber_to_angular_frequency(E)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)


def test_coth_examples():
    assert coth_thermal(50.0, 0.0) == 1.0
    T = 123.0
    assert coth_thermal(2 * KB_CM1_PER_K * T, T) == pytest.approx(1.3130352855, rel=1e-10)
    assert coth_thermal(50.0, 300.0) == pytest.approx(2 * KB_CM1_PER_K * 300 / 50, rel=5e-3)
    assert coth_thermal(50.0, 300.0) == pytest.approx(1 / math.tanh(50 / (2 * KB_CM1_PER_K * 300)), rel=1e-14)


def test_coth_domain():
    with pytest.raises(DomainError):
        coth_thermal(0.0, 10.0)
    with pytest.raises(DomainError):
        coth_thermal(10.0, -1.0)


pos = st.floats(1e-3, 1e4)


@given(pos, pos, pos)
def test_coth_monotone(w, dw, T):
    w2 = w + dw
    a, b = coth_thermal(w, T), coth_thermal(w2, T)
    assert a >= b
    if w2 / (2 * KB_CM1_PER_K * T) < 15:
        assert a > b


@given(pos, pos, pos)
def test_coth_increasing_in_T(w, T, dT):
    a, b = coth_thermal(w, T), coth_thermal(w, T + dT)
    assert b >= a
    if w / (2 * KB_CM1_PER_K * T) < 15 and dT > 1e-6 * T:
        assert b > a


@given(pos, st.floats(0, 1e4))
def test_coth_at_least_one(w, T):
    assert coth_thermal(w, T) >= 1.0


def test_coth_large_argument_branch_continuous():
    T = 10.0
    x = np.array([19.999, 20.0, 20.001])
    vals = [coth_thermal(2 * KB_CM1_PER_K * T * xi, T) for xi in x]
    assert np.allclose(vals, 1 / np.tanh(x), rtol=1e-15)
