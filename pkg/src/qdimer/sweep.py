"""Parameter sweeps over one or two axes."""
from __future__ import annotations

import datetime as _dt
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import __version__
from .analysis import critical_temperature, passage_time
from .bath import renormalized_coupling
from .config import Axis, SweepSpec
from .dynamics import propagate_general
from .errors import NoRootError
from .params import BathParams, DimerParams
from .units import unit_system


@dataclass
class SweepGrid:
    """Sweep result. ``values`` has one dimension per axis (x slowest);
    cells where the observable is not applicable are flagged in ``na``
    and hold NaN in ``values``."""

    axes: list[Axis]
    coords: list[np.ndarray]
    observable: str
    values: np.ndarray
    na: np.ndarray
    metadata: dict = field(default_factory=dict)

    def rows(self):
        """Yield (coordinates..., value or None) in row-major order."""
        for idx in np.ndindex(*self.values.shape):
            coords = tuple(float(c[i]) for c, i in zip(self.coords, idx))
            yield coords + (None if self.na[idx] else float(self.values[idx]),)


@lru_cache(maxsize=4096)
def _cached_vr(V, bath: BathParams, tol, units_name):
    return renormalized_coupling(V, bath, tol, unit_system(units_name))


def _thread_count(threads):
    if threads is None:
        env = os.environ.get("QDIMER_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def _setup(spec: SweepSpec, point: dict[str, float]):
    f = dict(spec.fixed)
    f.update(point)
    gamma_m = f["gamma_m"]
    gamma_l = gamma_m + f["delta_gamma"] if "delta_gamma" in f else f["gamma_l"]
    bath = BathParams(f["lambda_b"], f["omega0"], f["omega_min"], f["omega_max"], f["T"])
    return f, gamma_l, gamma_m, bath


def _populations(spec: SweepSpec, point: dict[str, float], t):
    f, gamma_l, gamma_m, bath = _setup(spec, point)
    V = _cached_vr(f["V"], bath, f["tol"], spec.units_mode) if spec.renormalize else f["V"]
    dimer = DimerParams(V, f["E_l"], f["E_m"], gamma_l, gamma_m)
    amp = propagate_general(dimer, t, units=unit_system(spec.units_mode))
    P_ll, P_lm = amp.P_l, amp.P_m
    return {"P_ll": P_ll, "P_lm": P_lm, "delta_P": P_ll - P_lm}[spec.observable]


def cell_value(spec: SweepSpec, point: dict[str, float]) -> float | None:
    """Observable at one parameter point; None when not applicable."""
    f, gamma_l, gamma_m, bath = _setup(spec, point)
    units = unit_system(spec.units_mode)
    obs = spec.observable
    try:
        if obs == "T_c":
            if f["delta_gamma"] <= 0:
                return None
            res = critical_temperature(f["delta_gamma"], f["V"], bath, f["T_lo"], f["T_hi"],
                                       tol=f["tol"], units=units)
            return res.T_c
        V = _cached_vr(f["V"], bath, f["tol"], spec.units_mode) if spec.renormalize else f["V"]
        if obs == "V_r":
            return V
        if obs == "tau_p":
            dimer = DimerParams(V, f["E_l"], f["E_m"], gamma_l, gamma_m)
            return passage_time(dimer, f["t_max"], int(f["grid_n"]), units=units).tau_p
        return float(_populations(spec, point, f["t"]))
    except NoRootError:
        return None


def _clean(v):
    return float(v) if v is not None and np.isfinite(v) else None


def run_sweep(spec: SweepSpec, threads: int | None = None) -> SweepGrid:
    """Evaluate the observable on every grid point.

    Rows (first-axis values) are spread over a thread pool; the result is
    assembled in index order so output does not depend on scheduling.
    """
    coords = [ax.values() for ax in spec.axes]
    shape = tuple(len(c) for c in coords)
    names = spec.axis_names

    # population observables along a trailing time axis are evaluated as one
    # vector, both in trace mode and per grid row, so the two agree exactly
    time_last = names[-1] == "t" and spec.observable in ("P_ll", "P_lm", "delta_P")

    def row(i):
        if time_last and len(coords) == 1:
            return [_clean(v) for v in _populations(spec, {}, coords[0])] if i == 0 else []
        if time_last:
            vals = _populations(spec, {names[0]: float(coords[0][i])}, coords[1])
            return [_clean(v) for v in vals]
        rest = [()] if len(coords) == 1 else [(float(v),) for v in coords[1]]
        return [_clean(cell_value(spec, dict(zip(names, (float(coords[0][i]),) + tail))))
                for tail in rest]

    n_rows = 1 if time_last and len(coords) == 1 else shape[0]
    n_threads = min(_thread_count(threads), n_rows)
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(row, range(n_rows)))
    else:
        results = [row(i) for i in range(n_rows)]

    flat = [v for r in results for v in r]
    na = np.array([v is None for v in flat]).reshape(shape)
    values = np.array([np.nan if v is None else v for v in flat], dtype=float).reshape(shape)
    meta = {
        "version": __version__,
        "units": spec.units_mode,
        "config": spec.resolved(),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    return SweepGrid(list(spec.axes), coords, spec.observable, values, na, meta)


def single_value(spec: SweepSpec) -> float | None:
    """Observable at the fixed parameters only (no axes)."""
    return cell_value(spec, {})


__all__ = ["SweepGrid", "run_sweep", "cell_value", "single_value"]
