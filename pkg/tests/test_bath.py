import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import simpson_fc_exponent
from qdimer.bath import fc_exponent, fc_exponent_with_error, fc_factor, renormalized_coupling, spectral_density
from qdimer.errors import DomainError, InvalidInputError
from qdimer.params import BathParams
from qdimer.units import KB_CM1_PER_K
from qdimer.quadrature import integrate

# Simpson-oracle value of the exponent for the default bath at T = 0
# (lambda_b = 200, omega0 = 50, omega_min = 0.05, omega_max = 5e4)
PHI_DEFAULT_T0 = 17.5904543729
# V = 250, omega_min = 45 (figure presets), T = 77 K; Simpson oracle
VR_PRESET_77 = 42.9086596


def test_spectral_density_examples():
    b = BathParams(200, 50)
    assert spectral_density(0.0, b) == 0.0
    assert spectral_density(50.0, b) == pytest.approx(200 / math.pi, rel=1e-12)
    w = np.linspace(1, 200, 19901)
    assert w[np.argmax(spectral_density(w, b))] == pytest.approx(50.0)
    with pytest.raises(DomainError):
        spectral_density(-1.0, b)


def test_reorganization_sum_rule():
    b = BathParams(200, 50)
    r = integrate(lambda w: spectral_density(w, b) / w, 0.0, math.inf, rtol=1e-12)
    assert r.value == pytest.approx(200.0, rel=1e-6)


def test_zero_reorganization():
    for T in (0, 77, 300):
        assert fc_exponent(BathParams(0.0, 50, T=T)) == 0.0
        assert renormalized_coupling(250, BathParams(0.0, 50, T=T)) == 250


@pytest.mark.parametrize("T", [0.0, 77.0, 300.0])
def test_against_simpson_oracle(T):
    b = BathParams(200, 50, 0.05, 5e4, T)
    ref = simpson_fc_exponent(200, 50, 0.05, 5e4, T)
    assert fc_exponent(b) == pytest.approx(ref, rel=5e-7)


def test_golden_numbers():
    assert fc_exponent(BathParams()) == pytest.approx(PHI_DEFAULT_T0, rel=1e-9)
    vr = renormalized_coupling(250, BathParams(200, 50, omega_min=45, T=77))
    assert vr == pytest.approx(VR_PRESET_77, rel=1e-5)
    ref = 250 * math.exp(-simpson_fc_exponent(200, 50, 45, 5e4, 77))
    assert vr == pytest.approx(ref, rel=1e-8)


def test_default_bath_renormalized_coupling_at_77K():
    # the integrand grows like 1/omega^2 below omega0, so with the default
    # infrared cutoff the exponent is several thousand and V_r underflows
    r = fc_factor(250, BathParams(T=77))
    ref = simpson_fc_exponent(200, 50, 0.05, 5e4, 77)
    assert r.phi == pytest.approx(ref, rel=1e-8)
    assert r.vr == 0.0
    assert r.log_vr == pytest.approx(math.log(250) - ref, rel=1e-10)


def test_monotone_in_temperature_default_bath():
    p0, p77, p300 = (fc_exponent(BathParams(T=T)) for T in (0, 77, 300))
    assert p300 > p77 > p0


def test_tolerance_stability():
    for T in (0, 77, 300):
        b = BathParams(150, 50, omega_min=20, T=T)
        a, c = fc_exponent(b, tol=1e-8), fc_exponent(b, tol=1e-6)
        assert a == pytest.approx(c, rel=1e-5)


def test_error_estimate_and_bad_tol():
    phi, err = fc_exponent_with_error(BathParams(T=10))
    assert 0 <= err <= 1e-8 * phi
    with pytest.raises(InvalidInputError):
        fc_exponent(BathParams(), tol=0.0)
    with pytest.raises(InvalidInputError):
        fc_factor(0.0, BathParams())


temps = st.floats(0.0, 400.0)
lams = st.floats(1.0, 400.0)
wmins = st.floats(0.05, 45.0)


@given(temps, st.floats(0.5, 100.0), lams, wmins)
@settings(max_examples=40, deadline=None)
def test_exponent_increasing_in_T(T, dT, lam, wmin):
    # below this the thermal change exp(-omega_min/kT) is under one ulp of coth
    assume(wmin / (KB_CM1_PER_K * (T + dT)) < 30)
    b = BathParams(lam, 50, omega_min=wmin, T=T)
    assert fc_exponent(b.at(T + dT)) > fc_exponent(b)


@given(temps, lams, st.floats(0.5, 100.0), wmins)
@settings(max_examples=40, deadline=None)
def test_exponent_increasing_in_lambda(T, lam, dl, wmin):
    a = fc_exponent(BathParams(lam, 50, omega_min=wmin, T=T))
    b = fc_exponent(BathParams(lam + dl, 50, omega_min=wmin, T=T))
    assert b > a


@given(temps, lams, wmins, st.floats(0.01, 4.0))
@settings(max_examples=40, deadline=None)
def test_exponent_decreasing_in_omega_min(T, lam, wmin, dw):
    a = fc_exponent(BathParams(lam, 50, omega_min=wmin, T=T))
    b = fc_exponent(BathParams(lam, 50, omega_min=wmin + dw, T=T))
    assert b < a


@given(st.floats(0.1, 1000.0), st.just(0.0) | st.floats(1e-6, 400.0), st.floats(0.0, 400.0), wmins)
@settings(max_examples=40, deadline=None)
def test_renormalized_coupling_bounds(V, lam, T, wmin):
    vr = renormalized_coupling(V, BathParams(lam, 50, omega_min=wmin, T=T))
    assert vr <= V
    if lam == 0:
        assert vr == V
    else:
        assert vr < V


@given(st.floats(0.0, 300.0), st.floats(1.0, 100.0))
@settings(max_examples=30, deadline=None)
def test_renormalized_coupling_decreasing_in_T(T, dT):
    assume(45 / (KB_CM1_PER_K * (T + dT)) < 30)
    b = BathParams(200, 50, omega_min=45, T=T)
    assert renormalized_coupling(250, b.at(T + dT)) < renormalized_coupling(250, b)
