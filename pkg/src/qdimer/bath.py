"""Drude bath: spectral density, Franck-Condon exponent, renormalized coupling."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInputError
from .params import BathParams
from .quadrature import integrate
from .units import PHYSICAL, UnitSystem


@dataclass(frozen=True)
class FcResult:
    phi: float
    abs_err_estimate: float
    vr: float
    log_vr: float


def spectral_density(omega, bath: BathParams):
    """J(w) = (2/pi) lambda_b w0 w / (w^2 + w0^2), in cm^-1."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise DomainError("spectral density is defined for omega >= 0")
    j = (2.0 / math.pi) * bath.lambda_b * bath.omega0 * w / (w * w + bath.omega0 ** 2)
    return float(j) if j.ndim == 0 else j


def _log_integrand(bath: BathParams, units: UnitSystem):
    # J(w)/w^2 coth(w/2kT) dw with w = e^u, so dw = w du
    pref = (2.0 / math.pi) * bath.lambda_b * bath.omega0
    w0sq = bath.omega0 ** 2
    two_kT = 2.0 * units.kB_cm1_per_K * bath.T

    def g(u):
        w = np.exp(u)
        val = pref / (w * w + w0sq)
        if two_kT > 0:
            with np.errstate(over="ignore"):
                val = val / np.tanh(w / two_kT)
        return val

    return g


def fc_exponent_with_error(bath: BathParams, tol: float = 1e-10,
                           units: UnitSystem = PHYSICAL) -> tuple[float, float]:
    """Franck-Condon exponent and its absolute error estimate.

    Integrates over ln(omega) between the infrared and ultraviolet cutoffs,
    with a breakpoint at omega0 where the integrand turns over.
    """
    if not 0 < tol <= 1e-2:
        raise InvalidInputError([("tol", "relative tolerance must lie in (0, 1e-2]")])
    if bath.lambda_b == 0:
        return 0.0, 0.0
    res = integrate(_log_integrand(bath, units), math.log(bath.omega_min),
                    math.log(bath.omega_max), rtol=tol,
                    breakpoints=(math.log(bath.omega0),))
    return res.value, res.abs_err


def fc_exponent(bath: BathParams, tol: float = 1e-10, units: UnitSystem = PHYSICAL) -> float:
    return fc_exponent_with_error(bath, tol, units)[0]


def fc_factor(V: float, bath: BathParams, tol: float = 1e-10,
              units: UnitSystem = PHYSICAL) -> FcResult:
    """Renormalization of a bare coupling ``V`` by the bath at ``bath.T``.

    ``vr`` underflows to 0.0 once phi exceeds ~745 (strong coupling, high T,
    small infrared cutoff); ``log_vr`` stays exact.
    """
    if not V > 0:
        raise InvalidInputError([("V", "bare coupling must be positive")])
    phi, err = fc_exponent_with_error(bath, tol, units)
    return FcResult(phi, err, V * math.exp(-phi), math.log(V) - phi)


def renormalized_coupling(V: float, bath: BathParams, tol: float = 1e-10,
                          units: UnitSystem = PHYSICAL) -> float:
    return fc_factor(V, bath, tol, units).vr
