"""Parameter bundles for the dimer and its phonon bath."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InvalidInputError


@dataclass(frozen=True)
class DimerParams:
    """Two-site exciton model, all energies in cm^-1 (or natural units).

    ``V`` is the coupling the dynamics actually sees: the bare coupling in
    natural-unit runs, the renormalized V_r once a bath has been applied.
    ``gamma_l`` and ``gamma_m`` are total site decay rates.
    """

    V: float
    E_l: float = 0.0
    E_m: float = 0.0
    gamma_l: float = 0.0
    gamma_m: float = 0.0

    def __post_init__(self):
        bad = []
        for name in ("V", "E_l", "E_m", "gamma_l", "gamma_m"):
            if not math.isfinite(getattr(self, name)):
                bad.append((name, "must be finite"))
        # V may underflow to exactly zero after bath renormalization
        if self.V < 0:
            bad.append(("V", "coupling must be non-negative"))
        if self.gamma_l < 0:
            bad.append(("gamma_l", "decay rate must be non-negative"))
        if self.gamma_m < 0:
            bad.append(("gamma_m", "decay rate must be non-negative"))
        if bad:
            raise InvalidInputError(bad)

    @property
    def gamma_star(self) -> float:
        return 0.5 * (self.gamma_m - self.gamma_l)

    @property
    def gamma_bar(self) -> float:
        return 0.5 * (self.gamma_m + self.gamma_l)

    @property
    def degenerate(self) -> bool:
        return self.E_l == self.E_m

    def with_coupling(self, V: float) -> "DimerParams":
        return replace(self, V=V)

    def swapped(self) -> "DimerParams":
        """Relabel the sites l <-> m."""
        return replace(self, E_l=self.E_m, E_m=self.E_l,
                       gamma_l=self.gamma_m, gamma_m=self.gamma_l)


@dataclass(frozen=True)
class BathParams:
    """Overdamped Brownian-oscillator bath.

    ``omega_min`` and ``omega_max`` bound the Franck-Condon integral; they
    default to 1e-3 and 1e3 times ``omega0``.
    """

    lambda_b: float = 200.0
    omega0: float = 50.0
    omega_min: float | None = None
    omega_max: float | None = None
    T: float = 0.0

    def __post_init__(self):
        if self.omega_min is None:
            object.__setattr__(self, "omega_min", 1e-3 * self.omega0)
        if self.omega_max is None:
            object.__setattr__(self, "omega_max", 1e3 * self.omega0)
        bad = bath_violations(self)
        if bad:
            raise InvalidInputError(bad)

    def at(self, T: float) -> "BathParams":
        return replace(self, T=T)


def bath_violations(bath: BathParams) -> list[tuple[str, str]]:
    bad = []
    for name in ("lambda_b", "omega0", "omega_min", "omega_max", "T"):
        if not math.isfinite(getattr(bath, name)):
            bad.append((name, "must be finite"))
    if bad:
        return bad
    if bath.lambda_b < 0:
        bad.append(("lambda_b", "reorganization energy must be non-negative"))
    if not bath.omega0 > 0:
        bad.append(("omega0", "bath cutoff must be positive"))
    if not bath.omega_min > 0:
        bad.append(("omega_min", "infrared cutoff must be positive; the Franck-Condon integral diverges at 0"))
    elif not bath.omega_min < bath.omega0:
        bad.append(("omega_min", "infrared cutoff must lie below omega0"))
    if not bath.omega_max > bath.omega0:
        bad.append(("omega_max", "ultraviolet truncation must lie above omega0"))
    if bath.T < 0:
        bad.append(("T", "temperature must be non-negative"))
    return bad


@dataclass(frozen=True)
class ValidatedParams:
    dimer: DimerParams
    bath: BathParams
    gamma_star: float
    gamma_bar: float


def validate(dimer: DimerParams, bath: BathParams) -> ValidatedParams:
    """Check a dimer/bath pair where ``dimer.V`` is the bare coupling.

    Every violated constraint is reported, not just the first.
    """
    bad = []
    if not dimer.V > 0:
        bad.append(("V", "bare coupling must be positive"))
    bad.extend(bath_violations(bath))
    if bad:
        raise InvalidInputError(bad)
    return ValidatedParams(dimer, bath, dimer.gamma_star, dimer.gamma_bar)
