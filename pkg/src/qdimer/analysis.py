"""Observables derived from the dynamics and the bath.

critical_temperature  temperature where the renormalized coupling meets the
                      exceptional-point condition 2 V_r(T) = delta_gamma / 2
passage_time          first maximizer of the normalized transfer probability
coherence_time        decay of the Rabi oscillations of the population difference
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bath import fc_exponent
from .dynamics import Regime, TOL_EP, classify_regime, propagate_general, rabi_frequency
from .errors import InvalidInputError, NotApplicableError, RootAboveBracket, RootBelowBracket
from .params import BathParams, DimerParams
from .solvers import bracketed_root, golden_section_min
from .units import PHYSICAL, UnitSystem

T_BRACKET = (1.0, 1000.0)


@dataclass(frozen=True)
class CriticalTemperatureResult:
    T_c: float
    residual: float
    rel_residual: float
    bracket: tuple[float, float]
    iterations: int


@dataclass(frozen=True)
class PassageTimeResult:
    tau_p: float | None
    p_m_at_tau: float
    search_window: tuple[float, float]
    boundary: bool = False


def _expm1_safe(x):
    return math.expm1(x) if x < 709.0 else math.inf


def temperature_for_exponent(phi_target: float, bath: BathParams, T_lo: float = T_BRACKET[0],
                             T_hi: float = T_BRACKET[1], tol: float = 1e-10,
                             quad_tol: float = 1e-12, units: UnitSystem = PHYSICAL,
                             scale: float = 1.0) -> CriticalTemperatureResult:
    """Temperature at which the Franck-Condon exponent equals ``phi_target``.

    The exponent grows strictly with T, so the root is unique. ``scale``
    converts the log-space mismatch into the reported residual,
    ``scale * expm1(phi_target - phi(T))``.
    """
    if not 0 <= T_lo < T_hi:
        raise InvalidInputError([("T_lo", "need 0 <= T_lo < T_hi")])

    def mismatch(T):
        return fc_exponent(bath.at(T), quad_tol, units) - phi_target

    f_lo, f_hi = mismatch(T_lo), mismatch(T_hi)
    r_lo = scale * _expm1_safe(-f_lo)
    r_hi = scale * _expm1_safe(-f_hi)
    if f_lo > 0:
        raise RootBelowBracket("already incoherent at bracket start", r_lo, r_hi)
    if f_hi < 0:
        raise RootAboveBracket("no exceptional point in bracket", r_lo, r_hi)
    root = bracketed_root(mismatch, T_lo, T_hi, ftol=tol, xtol=1e-9, f_lo=f_lo, f_hi=f_hi)
    return CriticalTemperatureResult(root.x, scale * math.expm1(-root.fx),
                                     math.expm1(-root.fx), root.bracket, root.iterations)


def critical_temperature(delta_gamma: float, V: float, bath: BathParams,
                         T_lo: float = T_BRACKET[0], T_hi: float = T_BRACKET[1],
                         tol: float = 1e-10, quad_tol: float = 1e-12,
                         units: UnitSystem = PHYSICAL) -> CriticalTemperatureResult:
    """Solve 2 V_r(T) = delta_gamma / 2 for T in [T_lo, T_hi].

    Solved in log form, phi(T) = ln(4 V / delta_gamma), because V_r(T)
    underflows for strong coupling. ``residual`` is 2 V_r(T_c) - delta_gamma/2
    in cm^-1 and ``rel_residual`` the same divided by delta_gamma/2, which is
    at most ``tol`` (up to the quadrature error) on return.
    """
    if not delta_gamma > 0:
        raise InvalidInputError([("delta_gamma", "must be positive; V_r(T) > 0 leaves no root at zero")])
    if not V > 0:
        raise InvalidInputError([("V", "bare coupling must be positive")])
    target = math.log(4.0 * V / delta_gamma)
    return temperature_for_exponent(target, bath, T_lo, T_hi, tol, quad_tol, units,
                                    scale=0.5 * delta_gamma)


def _site_l_fraction(p: DimerParams, t, units: UnitSystem):
    """P_ll / (P_ll + P_lm), computed without underflow of the common envelope."""
    amp = propagate_general(p, t, units=units)
    al = np.abs(amp.c_l)
    am = np.abs(amp.c_m)
    big = np.maximum(al, am)
    with np.errstate(invalid="ignore", divide="ignore"):
        rl = al / big
        rm = am / big
        return rl * rl / (rl * rl + rm * rm)


def passage_time(p: DimerParams, t_max: float, grid_n: int = 512, rtol: float = 1e-8,
                 units: UnitSystem = PHYSICAL) -> PassageTimeResult:
    """First local maximizer of p_m(t) = P_lm / (P_ll + P_lm) on (0, t_max].

    A grid scan locates the first interior maximum, and golden-section search
    refines it to ``rtol``. The search minimizes 1 - p_m = P_ll/(P_ll+P_lm)
    computed directly, which stays resolvable where p_m is flat near 1. When
    p_m has no interior maximum the result carries ``boundary=True`` and no
    passage time.
    """
    if not t_max > 0:
        raise InvalidInputError([("t_max", "must be positive")])
    if grid_n < 64:
        raise InvalidInputError([("grid_n", "need at least 64 grid points")])
    t = np.linspace(0.0, t_max, grid_n + 1)
    q = _site_l_fraction(p, t, units)
    dec = q[1:-1] < q[:-2]
    nondec = q[1:-1] <= q[2:]
    hits = np.flatnonzero(dec & nondec)
    if hits.size == 0:
        return PassageTimeResult(None, float(1.0 - q[-1]), (0.0, t_max), boundary=True)
    i = int(hits[0]) + 1
    x, fx, _ = golden_section_min(lambda s: float(_site_l_fraction(p, s, units)),
                                  t[i - 1], t[i + 1], rtol=rtol)
    return PassageTimeResult(float(x), float(1.0 - fx), (0.0, t_max))


def _sliding_extrema(x: np.ndarray, w: int):
    """Max and min of x[i : i + w] for each i, truncated at the end of x."""
    n = x.size
    w = max(1, min(w, n))
    nb = -(-n // w)
    pad = nb * w - n
    hi = np.concatenate([x, np.full(pad, -np.inf)]).reshape(nb, w)
    lo = np.concatenate([x, np.full(pad, np.inf)]).reshape(nb, w)
    pre_max = np.maximum.accumulate(hi, axis=1).ravel()
    pre_min = np.minimum.accumulate(lo, axis=1).ravel()
    suf_max = np.maximum.accumulate(hi[:, ::-1], axis=1)[:, ::-1].ravel()
    suf_min = np.minimum.accumulate(lo[:, ::-1], axis=1)[:, ::-1].ravel()
    wmax = suf_max[:n].copy()
    wmin = suf_min[:n].copy()
    full = n - w + 1
    if full > 0:
        end = np.arange(full) + w - 1
        wmax[:full] = np.maximum(suf_max[:full], pre_max[end])
        wmin[:full] = np.minimum(suf_min[:full], pre_min[end])
    tail_max = np.maximum.accumulate(x[::-1])[::-1]
    tail_min = np.minimum.accumulate(x[::-1])[::-1]
    wmax[max(full, 0):] = tail_max[max(full, 0):]
    wmin[max(full, 0):] = tail_min[max(full, 0):]
    return wmax, wmin


def coherence_time(p: DimerParams, t_max: float, threshold: float = 0.05,
                   tol_ep: float = TOL_EP, units: UnitSystem = PHYSICAL,
                   samples_per_period: int = 200) -> float:
    """Earliest time after which the peak-to-peak swing of delta_P over one
    Rabi period stays below ``threshold``.

    Returns ``t_max`` when the swing never drops below the threshold inside
    the window. Only defined in the coherent regime.
    """
    if not 0 < threshold < 1:
        raise InvalidInputError([("threshold", "must lie in (0, 1)")])
    if not t_max > 0:
        raise InvalidInputError([("t_max", "must be positive")])
    if classify_regime(p, tol_ep) is not Regime.COHERENT:
        raise NotApplicableError("coherence time is only defined in the coherent regime")
    rate = rabi_frequency(p).real * units.conv_cm1_to_radps
    period = 2.0 * math.pi / rate
    n = int(min(2_000_000, max(1000, math.ceil(t_max / period * samples_per_period)))) + 1
    t = np.linspace(0.0, t_max, n)
    amp = propagate_general(p, t, units=units)
    dp = np.abs(amp.c_l) ** 2 - np.abs(amp.c_m) ** 2
    w = int(round(period / (t[1] - t[0]))) + 1
    wmax, wmin = _sliding_extrema(dp, w)
    # only windows lying fully inside [0, t_max] count
    full = max(1, n - w + 1)
    above = np.flatnonzero((wmax - wmin)[:full] >= threshold)
    if above.size == 0:
        return 0.0
    last = int(above[-1])
    if last >= full - 1:
        return float(t_max)
    return float(t[last + 1])
