"""Physical constants and the three conversions the dynamics needs.

Energies are in cm^-1, times in ps and temperatures in K. The natural-unit
system sets both constants to one, so energies, rates, inverse times and
temperatures all share a single scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInputError

# 2*pi*c with c = 0.0299792458 cm/ps, and k_B/(h c); 10 significant digits.
CM1_TO_RADPS = 0.1883651567
KB_CM1_PER_K = 0.6950348004


@dataclass(frozen=True)
class UnitSystem:
    name: str
    conv_cm1_to_radps: float
    kB_cm1_per_K: float


PHYSICAL = UnitSystem("physical", CM1_TO_RADPS, KB_CM1_PER_K)
NATURAL = UnitSystem("natural", 1.0, 1.0)

_SYSTEMS = {"physical": PHYSICAL, "natural": NATURAL}


def unit_system(name: str | UnitSystem) -> UnitSystem:
    if isinstance(name, UnitSystem):
        return name
    try:
        return _SYSTEMS[name]
    except KeyError:
        raise InvalidInputError([("units", f"unknown unit system {name!r}")]) from None


def wavenumber_to_angular_frequency(E, units: UnitSystem = PHYSICAL):
    """Energy in cm^-1 to angular frequency in rad/ps."""
    arr = np.asarray(E, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError([("E", "energy must be finite")])
    out = arr * units.conv_cm1_to_radps
    return float(out) if out.ndim == 0 else out


def coth_thermal(omega: float, T: float, units: UnitSystem = PHYSICAL) -> float:
    """coth(omega / (2 kB T)); exactly 1 at T = 0."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega!r}")
    if T < 0:
        raise DomainError(f"temperature must be non-negative, got {T!r}")
    if T == 0:
        return 1.0
    x = omega / (2.0 * units.kB_cm1_per_K * T)
    if x > 20.0:
        return 1.0 + 2.0 * math.exp(-2.0 * x)
    return 1.0 / math.tanh(x)
