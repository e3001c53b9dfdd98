"""Time evolution of the dissipative dimer under its effective Hamiltonian.

The effective Hamiltonian is the complex-symmetric matrix

    H_eff = [[E_l - i gamma_l/2, V], [V, E_m - i gamma_m/2]]

and amplitudes evolve as c(t) = exp(-i H_eff tau) c(0) with tau = t * conv
(conv converts cm^-1 to rad/ps, or is 1 in natural units). The exciton starts
on site l unless stated otherwise.

Sign convention: with gamma* = (gamma_m - gamma_l)/2 the surviving amplitude
on the degenerate dimer is

    c_l = exp(-gamma_bar tau/2) [cos(Omega tau/2) + (gamma*/Omega) sin(Omega tau/2)]

so the more strongly damped site empties first. The stepped oracle settles
this sign; the textbook form with a minus sign corresponds to the opposite
labelling gamma* = (gamma_l - gamma_m)/2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DefectiveBasisError, InvalidInputError, StepSizeError, WrongOperationError
from .params import DimerParams
from .units import PHYSICAL, UnitSystem

TOL_EP = 1e-9
# step size of the oracle, as a fraction of one radian of the fastest phase
_ORACLE_H_RHO = 2e-3
_HALVING_TOL = 1e-6


class Regime(enum.Enum):
    COHERENT = "coherent"
    INCOHERENT = "incoherent"
    EXCEPTIONAL_POINT = "exceptional_point"


@dataclass(frozen=True)
class DerivedRates:
    gamma_star: float
    gamma_bar: float
    Omega: float
    regime: Regime
    cos_theta: complex
    sin_theta: complex


@dataclass(frozen=True)
class AmplitudePair:
    c_l: np.ndarray | complex
    c_m: np.ndarray | complex

    @property
    def P_l(self):
        return np.abs(self.c_l) ** 2

    @property
    def P_m(self):
        return np.abs(self.c_m) ** 2

    @property
    def norm(self):
        return self.P_l + self.P_m


@dataclass(frozen=True)
class PopulationTrace:
    times: np.ndarray
    P_ll: np.ndarray
    P_lm: np.ndarray

    @property
    def delta_P(self) -> np.ndarray:
        return self.P_ll - self.P_lm


@dataclass(frozen=True)
class StateAmplitudes:
    """Coefficients on (|l>, |m>) of the symmetric/antisymmetric states and their adjoints.

    Each field has shape ``t.shape + (2,)``.
    """

    chi_s: np.ndarray
    chi_a: np.ndarray
    chi_s_adj: np.ndarray
    chi_a_adj: np.ndarray


def effective_hamiltonian(p: DimerParams) -> np.ndarray:
    return np.array([[p.E_l - 0.5j * p.gamma_l, p.V],
                     [p.V, p.E_m - 0.5j * p.gamma_m]], dtype=complex)


def classify_regime(p: DimerParams, tol_ep: float = TOL_EP) -> Regime:
    two_v = 2.0 * p.V
    g = abs(p.gamma_star)
    if abs(two_v - g) <= tol_ep * two_v:
        return Regime.EXCEPTIONAL_POINT
    return Regime.COHERENT if two_v > g else Regime.INCOHERENT


def derived_rates(p: DimerParams, tol_ep: float = TOL_EP) -> DerivedRates:
    regime = classify_regime(p, tol_ep)
    s = 4.0 * p.V ** 2 - p.gamma_star ** 2
    if regime is Regime.EXCEPTIONAL_POINT or s == 0:
        cos_t = sin_t = complex("nan")
    else:
        omega_c = np.sqrt(complex(s))
        cos_t = 1j * p.gamma_star / omega_c
        sin_t = 2.0 * p.V / omega_c
    return DerivedRates(p.gamma_star, p.gamma_bar, math.sqrt(abs(s)), regime,
                        complex(cos_t), complex(sin_t))


def _check_times(t):
    tau = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(tau)) or np.any(tau < 0):
        raise InvalidInputError([("t", "times must be finite and non-negative")])
    return tau


def _out(x):
    return x.item() if np.ndim(x) == 0 else x


def _even_odd_series(x, n_terms=20):
    """Return sum (-x)^k/(2k)! and sum (-x)^k/(2k+1)!, Horner form."""
    c = np.ones_like(x)
    s = np.ones_like(x)
    for k in range(n_terms, 0, -1):
        c = 1.0 - x * c / ((2 * k - 1) * (2 * k))
        s = 1.0 - x * s / ((2 * k) * (2 * k + 1))
    return c, s


def populations_degenerate(p: DimerParams, t, tol_ep: float = TOL_EP,
                           units: UnitSystem = PHYSICAL):
    """Closed-form (P_ll, P_lm) for equal site energies.

    Coherent parameters use trigonometric functions of Omega t/2, incoherent
    ones hyperbolic functions of |Omega| t/2 and the exceptional point the
    algebraic limit. Near the boundary (|Omega^2 tau^2/4| < 1) the amplitudes
    are summed as power series in Omega^2, which is exact on both sides and
    reduces term-by-term to the exceptional-point formula at Omega = 0.
    """
    if not p.degenerate:
        raise WrongOperationError("unequal site energies: use propagate_general")
    tau_in = _check_times(t) * units.conv_cm1_to_radps
    tau = np.atleast_1d(tau_in)
    gs, gb, V = p.gamma_star, p.gamma_bar, p.V
    s = 4.0 * V * V - gs * gs
    x = s * tau * tau / 4.0
    cl = np.empty_like(tau)
    cm = np.empty_like(tau)

    near = np.abs(x) < 1.0
    if classify_regime(p, tol_ep) is Regime.EXCEPTIONAL_POINT:
        near |= s == 0
    if np.any(near):
        tn = tau[near]
        c_ser, s_ser = _even_odd_series(x[near])
        env = np.exp(-0.5 * gb * tn)
        S = 0.5 * tn * s_ser
        cl[near] = env * (c_ser + gs * S)
        cm[near] = env * 2.0 * V * S
    far = ~near
    if np.any(far):
        tf = tau[far]
        if s > 0:
            om = math.sqrt(s)
            env = np.exp(-0.5 * gb * tf)
            half = 0.5 * om * tf
            cl[far] = env * (np.cos(half) + gs / om * np.sin(half))
            cm[far] = env * (2.0 * V / om) * np.sin(half)
        else:
            kap = math.sqrt(-s)
            slow = np.exp(0.5 * (kap - gb) * tf)
            fast = np.exp(-0.5 * (kap + gb) * tf)
            cl[far] = 0.5 * ((1.0 + gs / kap) * slow + (1.0 - gs / kap) * fast)
            cm[far] = (V / kap) * slow * -np.expm1(-kap * tf)
    shape = np.shape(tau_in)
    return _out((cl * cl).reshape(shape)), _out((cm * cm).reshape(shape))


def propagate_general(p: DimerParams, t, c0=(1.0, 0.0), units: UnitSystem = PHYSICAL) -> AmplitudePair:
    """Apply exp(-i H_eff t conv) to ``c0`` for any site energies and regime.

    Uses the two-eigenvalue (Sylvester) form a +- delta of the 2x2 matrix.
    For small |delta tau| cos and sin(delta tau)/delta are summed as series in
    delta^2, whose leading terms are the Jordan-block propagator
    exp(-i a tau) (1 - i N tau) valid exactly at the exceptional point.
    """
    tau_in = _check_times(t) * units.conv_cm1_to_radps
    tau = np.atleast_1d(tau_in)
    c0 = np.asarray(c0, dtype=complex)
    h11 = p.E_l - 0.5j * p.gamma_l
    h22 = p.E_m - 0.5j * p.gamma_m
    a = 0.5 * (h11 + h22)
    d = 0.5 * (h11 - h22)
    V = p.V
    delta2 = d * d + V * V
    delta = np.sqrt(delta2)
    # N = H - a I = [[d, V], [V, -d]]
    n0 = d * c0[0] + V * c0[1]
    n1 = V * c0[0] - d * c0[1]

    cl = np.empty(tau.shape, dtype=complex)
    cm = np.empty(tau.shape, dtype=complex)
    x = delta2 * tau * tau
    small = np.abs(x) < 0.25
    mid = ~small & (abs(delta.imag) * tau <= 300.0)
    far = ~small & ~mid
    if np.any(small | mid):
        sel = small | mid
        ts = tau[sel]
        cos_d = np.empty(ts.shape, dtype=complex)
        sinc = np.empty(ts.shape, dtype=complex)
        sm = small[sel]
        if np.any(sm):
            c_ser, s_ser = _even_odd_series(x[small].astype(complex))
            cos_d[sm] = c_ser
            sinc[sm] = ts[sm] * s_ser
        if np.any(~sm):
            arg = delta * ts[~sm]
            cos_d[~sm] = np.cos(arg)
            sinc[~sm] = np.sin(arg) / delta
        ph = np.exp(-1j * a * ts)
        cl[sel] = ph * (cos_d * c0[0] - 1j * sinc * n0)
        cm[sel] = ph * (cos_d * c0[1] - 1j * sinc * n1)
    if np.any(far):
        tf = tau[far]
        e_plus = np.exp(-1j * (a + delta) * tf)
        e_minus = np.exp(-1j * (a - delta) * tf)
        cl[far] = 0.5 * (e_plus * (c0[0] + n0 / delta) + e_minus * (c0[0] - n0 / delta))
        cm[far] = 0.5 * (e_plus * (c0[1] + n1 / delta) + e_minus * (c0[1] - n1 / delta))
    shape = np.shape(tau_in)
    return AmplitudePair(_out(cl.reshape(shape)), _out(cm.reshape(shape)))


def population_trace(p: DimerParams, times, units: UnitSystem = PHYSICAL) -> PopulationTrace:
    times = np.asarray(times, dtype=float)
    amp = propagate_general(p, times, units=units)
    return PopulationTrace(times, np.abs(amp.c_l) ** 2, np.abs(amp.c_m) ** 2)


def eigenvalues(p: DimerParams) -> tuple[complex, complex]:
    """Eigenvalues (E_plus, E_minus) of H_eff, E_plus first by real then imaginary part."""
    h11 = p.E_l - 0.5j * p.gamma_l
    h22 = p.E_m - 0.5j * p.gamma_m
    a = 0.5 * (h11 + h22)
    d = 0.5 * (h11 - h22)
    delta = complex(np.sqrt(d * d + p.V * p.V))
    e1, e2 = a + delta, a - delta
    if (e2.real, e2.imag) > (e1.real, e1.imag):
        e1, e2 = e2, e1
    return e1, e2


def rabi_frequency(p: DimerParams) -> complex:
    """Complex Rabi frequency E_plus - E_minus (cm^-1)."""
    e1, e2 = eigenvalues(p)
    return e1 - e2


def eigenbasis(p: DimerParams, tol_ep: float = TOL_EP) -> tuple[np.ndarray, np.ndarray]:
    """Right eigenvectors and their biorthogonal adjoints, as columns.

    H_eff is complex symmetric, so the left eigenvectors are the transposed
    right ones; the adjoint kets returned here are their complex conjugates,
    normalized so that ``adj.conj().T @ right`` is the identity. At an
    exceptional point the single eigenvector is self-orthogonal and
    DefectiveBasisError is raised.
    """
    e_plus, e_minus = eigenvalues(p)
    H = effective_hamiltonian(p)
    if classify_regime(p, tol_ep) is Regime.EXCEPTIONAL_POINT and p.degenerate:
        raise DefectiveBasisError("eigenvectors coalesce at the exceptional point")
    cols = []
    for lam in (e_plus, e_minus):
        # rows of H - lam I are parallel; use the larger one for the null vector
        r0 = np.array([H[0, 0] - lam, H[0, 1]])
        r1 = np.array([H[1, 0], H[1, 1] - lam])
        row = r0 if np.abs(r0).sum() >= np.abs(r1).sum() else r1
        v = np.array([-row[1], row[0]])
        if np.abs(v).sum() == 0:
            v = np.array([1.0, 0.0], dtype=complex) if lam == e_plus else np.array([0.0, 1.0], dtype=complex)
        cols.append(v / np.linalg.norm(v))
    right = np.column_stack(cols)
    c_norms = np.einsum("ik,ik->k", right, right)
    if np.any(np.abs(c_norms) < 1e-12):
        raise DefectiveBasisError("self-orthogonal eigenvector: basis is defective")
    adj = right.conj() / c_norms.conj()
    return right, adj


def state_amplitudes(p: DimerParams, t, tol_ep: float = TOL_EP,
                     units: UnitSystem = PHYSICAL) -> StateAmplitudes:
    """Symmetric/antisymmetric dimer states and their adjoints at equal site energies.

    With cos(theta) = i gamma*/Omega and sin(theta) = 2V/Omega:

        chi_s     = e^{-gb tau/2} (cos - i cos(theta) sin,  i sin(theta) sin)
        chi_a     = e^{-gb tau/2} (cos - i cos(theta) sin, -i sin(theta) sin)
        chi_s_adj = e^{-gb tau/2} (cos + i cos(theta) sin, -i sin(theta) sin)
        chi_a_adj = e^{-gb tau/2} (cos + i cos(theta) sin,  i sin(theta) sin)

    where cos/sin take Omega tau/2. Omega is imaginary in the incoherent regime.
    """
    if not p.degenerate:
        raise WrongOperationError("state amplitudes are defined for equal site energies")
    if classify_regime(p, tol_ep) is Regime.EXCEPTIONAL_POINT:
        raise DefectiveBasisError("Omega = 0: the symmetric and antisymmetric states coalesce")
    tau = _check_times(t) * units.conv_cm1_to_radps
    omega = np.sqrt(complex(4.0 * p.V ** 2 - p.gamma_star ** 2))
    cos_t = 1j * p.gamma_star / omega
    sin_t = 2.0 * p.V / omega
    env = np.exp(-0.5 * p.gamma_bar * tau)
    c = np.cos(0.5 * omega * tau)
    s = np.sin(0.5 * omega * tau)
    minus = env * (c - 1j * cos_t * s)
    plus = env * (c + 1j * cos_t * s)
    off = env * 1j * sin_t * s
    return StateAmplitudes(np.stack([minus, off], axis=-1),
                           np.stack([minus, -off], axis=-1),
                           np.stack([plus, -off], axis=-1),
                           np.stack([plus, off], axis=-1))


def overlap(bra, ket):
    """<bra|ket> with the conjugating inner product, over the last axis."""
    return np.sum(np.conj(bra) * ket, axis=-1)


def _oracle_setup(p: DimerParams, tau: float, n_steps):
    shift = 0.5 * (p.E_l + p.E_m)
    H = effective_hamiltonian(p) - shift * np.eye(2)
    if n_steps is None:
        rho = float(np.linalg.norm(H))
        n_steps = max(1, math.ceil(tau * rho / _ORACLE_H_RHO))
    elif n_steps < 1:
        raise InvalidInputError([("n_steps", "must be at least 1")])
    return H, shift, int(n_steps)


def propagate_oracle_batch(params, times, c0=(1.0, 0.0), n_steps=None,
                           units: UnitSystem = PHYSICAL, check: bool = True) -> np.ndarray:
    """Classical RK4 integration of i dc/dtau = H_eff c for many systems at once.

    Each system k is integrated to ``times[k]`` with a fixed step; the step
    count defaults to one making h * ||H||_F = 2e-3. The mean real site
    energy is removed and restored as an exact phase. With ``check`` each
    system is also run at half the step, and StepSizeError is raised when the
    two answers differ by more than 1e-6 relative. Returns an (n, 2) array.
    """
    params = list(params)
    times = np.broadcast_to(np.asarray(times, dtype=float), (len(params),))
    _check_times(times)
    if np.ndim(n_steps) == 0:
        n_steps = [n_steps] * len(params)
    c0 = np.asarray(c0, dtype=complex)
    Hs, shifts, ns, taus = [], [], [], []
    for p, t, n in zip(params, times, n_steps):
        tau = float(t) * units.conv_cm1_to_radps
        H, shift, n = _oracle_setup(p, tau, n)
        Hs.append(H)
        shifts.append(shift)
        ns.append(n)
        taus.append(tau)
    Hs = np.array(Hs).reshape(-1, 2, 2)
    ns = np.array(ns, dtype=np.int64)
    taus = np.array(taus)
    k = len(params)
    start = np.broadcast_to(c0, (k, 2))
    if check:
        out = kernels.rk4_batch(np.concatenate([Hs, Hs]), np.concatenate([taus / ns, taus / (2 * ns)]),
                                np.concatenate([ns, 2 * ns]), np.concatenate([start, start]))
        coarse, fine = out[:k], out[k:]
        scale = np.linalg.norm(fine, axis=1)
        diff = np.linalg.norm(coarse - fine, axis=1)
        bad = diff > _HALVING_TOL * np.where(scale > 0, scale, 1.0)
        if np.any(bad):
            i = int(np.flatnonzero(bad)[0])
            raise StepSizeError(f"system {i}: halving the step changed the result by "
                                f"{diff[i] / scale[i]:.3g} relative with {ns[i]} steps")
    else:
        coarse = kernels.rk4_batch(Hs, taus / ns, ns, start)
    phase = np.exp(-1j * np.array(shifts) * taus)
    return coarse * phase[:, None]


def propagate_oracle(p: DimerParams, t: float, n_steps=None, c0=(1.0, 0.0),
                     units: UnitSystem = PHYSICAL, check: bool = True) -> AmplitudePair:
    out = propagate_oracle_batch([p], [t], c0=c0, n_steps=n_steps, units=units, check=check)
    return AmplitudePair(complex(out[0, 0]), complex(out[0, 1]))
