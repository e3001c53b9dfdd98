"""key = value sweep configurations and the shipped figure presets."""
from __future__ import annotations

import difflib
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import ConfigError

AXIS_NAMES = ("t", "V", "T", "delta_gamma", "gamma_l", "gamma_m", "E_l", "E_m",
              "lambda_b", "omega_min")
NONNEGATIVE_AXES = ("t", "V", "T", "delta_gamma", "gamma_l", "gamma_m", "lambda_b", "omega_min")
OBSERVABLES = ("P_ll", "P_lm", "delta_P", "tau_p", "T_c", "V_r")
MODES = ("trace", "grid")
UNITS = ("physical", "natural")
SPACINGS = ("linear", "log")

# fixed parameters and their defaults; None means "no default"
FIXED_DEFAULTS: dict[str, float | None] = {
    "V": 250.0,
    "E_l": 0.0,
    "E_m": 0.0,
    "gamma_l": 0.0,
    "gamma_m": 0.0,
    "delta_gamma": None,
    "lambda_b": 200.0,
    "omega0": 50.0,
    "omega_min": None,
    "omega_max": None,
    "T": 0.0,
    "t": None,
    "t_max": 10.0,
    "grid_n": 512,
    "tol": 1e-10,
    "tol_ep": 1e-9,
    "T_lo": 1.0,
    "T_hi": 1000.0,
}
INT_KEYS = {"grid_n"}
BOOL_KEYS = {"renormalize"}
AXIS_KEYS = ("name", "lo", "hi", "n", "spacing")
TOP_KEYS = {"mode", "observable", "units", "renormalize"}


def _all_keys():
    keys = set(TOP_KEYS) | set(FIXED_DEFAULTS)
    for ax in ("x", "y"):
        keys |= {f"{ax}.{k}" for k in AXIS_KEYS}
    return keys


KNOWN_KEYS = frozenset(_all_keys())


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    n: int
    spacing: str = "linear"

    def values(self) -> np.ndarray:
        if self.n == 1:
            return np.array([self.lo])
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.n)
        return np.linspace(self.lo, self.hi, self.n)


@dataclass
class SweepSpec:
    mode: str
    axes: list[Axis]
    observable: str
    fixed: dict[str, float]
    units_mode: str
    renormalize: bool
    explicit: set[str] = field(default_factory=set)

    @property
    def axis_names(self) -> list[str]:
        return [a.name for a in self.axes]

    def resolved(self) -> dict[str, str]:
        """Every setting, defaults included, as canonical strings."""
        out = {"mode": self.mode, "observable": self.observable, "units": self.units_mode,
               "renormalize": "true" if self.renormalize else "false"}
        for key, ax in zip(("x", "y"), self.axes):
            out[f"{key}.name"] = ax.name
            out[f"{key}.lo"] = format_number(ax.lo)
            out[f"{key}.hi"] = format_number(ax.hi)
            out[f"{key}.n"] = str(ax.n)
            out[f"{key}.spacing"] = ax.spacing
        for k, v in self.fixed.items():
            if k not in self.axis_names:
                out[k] = str(int(v)) if k in INT_KEYS else format_number(v)
        return dict(sorted(out.items()))


def format_number(x: float) -> str:
    return format(float(x), ".12g")


def _parse_float(key, raw, line):
    try:
        val = float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}", line) from None
    if not math.isfinite(val):
        raise ConfigError(f"{key}: value must be finite", line)
    return val


def _parse_int(key, raw, line):
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}", line) from None


def _parse_choice(key, raw, choices, line):
    if raw not in choices:
        raise ConfigError(f"{key}: {raw!r} is not one of {', '.join(choices)}", line)
    return raw


def _parse_bool(key, raw, line):
    low = raw.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected true or false, got {raw!r}", line)


def read_assignments(text: str) -> dict[str, tuple[str, int]]:
    """Split a document into {key: (raw value, line number)}."""
    seen: dict[str, tuple[str, int]] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno,
                              "one assignment per line; '#' starts a comment")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ConfigError("empty key or value", lineno)
        if key not in KNOWN_KEYS:
            close = difflib.get_close_matches(key, sorted(KNOWN_KEYS), n=1)
            raise ConfigError(f"unknown key {key!r}", lineno,
                              f"did you mean {close[0]!r}?" if close else None)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (first set on line {seen[key][1]})", lineno,
                              f"remove line {seen[key][1]} or line {lineno}")
        seen[key] = (value, lineno)
    return seen


def _axis(prefix, items):
    def get(k):
        return items.get(f"{prefix}.{k}")

    name = get("name")
    if name is None:
        stray = [k for k in AXIS_KEYS if get(k) is not None]
        if stray:
            raise ConfigError(f"{prefix}.{stray[0]} given without {prefix}.name", get(stray[0])[1])
        return None
    axis_name = _parse_choice(f"{prefix}.name", name[0], AXIS_NAMES, name[1])
    missing = [k for k in ("lo", "hi", "n") if get(k) is None]
    if missing:
        raise ConfigError(f"axis {prefix} needs {prefix}.{missing[0]}", name[1])
    lo = _parse_float(f"{prefix}.lo", *get("lo"))
    hi = _parse_float(f"{prefix}.hi", *get("hi"))
    n = _parse_int(f"{prefix}.n", *get("n"))
    spacing = "linear"
    if get("spacing") is not None:
        spacing = _parse_choice(f"{prefix}.spacing", get("spacing")[0], SPACINGS, get("spacing")[1])
    if n == 1:
        if lo > hi:
            raise ConfigError(f"axis {prefix}: lo must not exceed hi", get("lo")[1])
    else:
        if n < 2:
            raise ConfigError(f"axis {prefix}: n must be at least 2", get("n")[1],
                              "use n = 1 only for a single-point axis")
        if not lo < hi:
            raise ConfigError(f"axis {prefix}: lo must be below hi", get("lo")[1])
    if spacing == "log" and lo <= 0:
        raise ConfigError(f"axis {prefix}: log spacing needs lo > 0", get("lo")[1])
    if axis_name in NONNEGATIVE_AXES and lo < 0:
        raise ConfigError(f"axis {prefix}: {axis_name} must be non-negative", get("lo")[1])
    return Axis(axis_name, lo, hi, n, spacing)


def parse_config(text: str, overrides: dict[str, str] | None = None,
                 require_axes: bool = True) -> SweepSpec:
    """Parse a configuration document into a validated SweepSpec.

    ``overrides`` replace (or add) assignments after parsing, as the CLI
    flags do; they report line 0. With ``require_axes`` false a document
    without axes describes a single point.
    """
    items = read_assignments(text)
    for k, v in (overrides or {}).items():
        if k not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {k!r}", 0)
        items[k] = (str(v), 0)

    def choice(key, choices, default):
        if key in items:
            return _parse_choice(key, items[key][0], choices, items[key][1])
        return default

    mode = choice("mode", MODES, "trace")
    observable = choice("observable", OBSERVABLES, "delta_P")
    units_mode = choice("units", UNITS, "physical")
    if "renormalize" in items:
        renormalize = _parse_bool("renormalize", *items["renormalize"])
    else:
        renormalize = units_mode == "physical"

    axes = [a for a in (_axis("x", items), _axis("y", items)) if a]
    first_line = min((ln for _, ln in items.values()), default=1)
    if not axes and not require_axes:
        pass
    elif mode == "trace" and (len(axes) != 1 or "y.name" in items):
        raise ConfigError("trace mode takes exactly one axis, x", first_line,
                          "set x.name/x.lo/x.hi/x.n and no y.* keys")
    if mode == "grid" and len(axes) != 2:
        raise ConfigError("grid mode takes two axes, x and y", first_line)
    if len(axes) == 2 and axes[0].name == axes[1].name:
        raise ConfigError(f"both axes sweep {axes[0].name!r}", items["y.name"][1])

    fixed: dict[str, float] = {}
    explicit = set()
    for key, default in FIXED_DEFAULTS.items():
        if key in items:
            raw, line = items[key]
            fixed[key] = _parse_int(key, raw, line) if key in INT_KEYS else _parse_float(key, raw, line)
            explicit.add(key)
        elif default is not None:
            fixed[key] = default
    if "omega0" in fixed and "omega_min" not in fixed:
        fixed["omega_min"] = 1e-3 * fixed["omega0"]
    if "omega_max" not in fixed:
        fixed["omega_max"] = 1e3 * fixed["omega0"]

    spec = SweepSpec(mode, axes, observable, fixed, units_mode, renormalize, explicit)
    _check_spec(spec, items)
    return spec


def _line_of(items, key):
    return items[key][1] if key in items else None


def _check_spec(spec: SweepSpec, items) -> None:
    names = spec.axis_names
    f = spec.fixed
    for name in names:
        if name in spec.explicit:
            raise ConfigError(f"{name!r} is both swept and fixed", _line_of(items, name),
                              f"drop the '{name} = ...' line")
    has_dg = "delta_gamma" in names or "delta_gamma" in f
    if has_dg and ("gamma_l" in spec.explicit or "gamma_l" in names):
        raise ConfigError("delta_gamma sets gamma_l = gamma_m + delta_gamma; gamma_l cannot also be set",
                          _line_of(items, "gamma_l"))
    obs = spec.observable
    if obs in ("P_ll", "P_lm", "delta_P") and "t" not in names and "t" not in f:
        raise ConfigError(f"observable {obs} needs a time: sweep t or set t", None,
                          "add 't = <time>' or an axis named t")
    if obs not in ("P_ll", "P_lm", "delta_P") and "t" in names:
        raise ConfigError(f"observable {obs} does not depend on t; t cannot be swept", _line_of(items, "x.name"))
    if obs == "T_c":
        if not has_dg:
            raise ConfigError("observable T_c needs delta_gamma (fixed or swept)", None)
        if "T" in names:
            raise ConfigError("T is the unknown of T_c and cannot be swept", _line_of(items, "x.name"))
    if obs in ("T_c", "V_r") and not spec.renormalize:
        raise ConfigError(f"observable {obs} needs renormalize = true", _line_of(items, "renormalize"))
    if obs == "tau_p":
        if f["t_max"] <= 0:
            raise ConfigError("t_max must be positive", _line_of(items, "t_max"))
        if f["grid_n"] < 64:
            raise ConfigError("grid_n must be at least 64", _line_of(items, "grid_n"))
    checks = [
        ("V", f["V"] > 0 or "V" in names, "bare coupling must be positive"),
        ("gamma_l", f["gamma_l"] >= 0, "decay rate must be non-negative"),
        ("gamma_m", f["gamma_m"] >= 0, "decay rate must be non-negative"),
        ("lambda_b", f["lambda_b"] >= 0, "reorganization energy must be non-negative"),
        ("omega0", f["omega0"] > 0, "bath cutoff must be positive"),
        ("omega_min", 0 < f["omega_min"] < f["omega0"], "infrared cutoff must lie in (0, omega0)"),
        ("omega_max", f["omega_max"] > f["omega0"], "ultraviolet truncation must exceed omega0"),
        ("T", f["T"] >= 0, "temperature must be non-negative"),
        ("tol", 0 < f["tol"] <= 1e-2, "tolerance must lie in (0, 1e-2]"),
        ("tol_ep", f["tol_ep"] >= 0, "tolerance must be non-negative"),
        ("T_lo", 0 <= f["T_lo"] < f["T_hi"], "need 0 <= T_lo < T_hi"),
    ]
    if "delta_gamma" in f:
        checks.append(("delta_gamma", f["delta_gamma"] >= 0, "must be non-negative"))
    if "t" in f:
        checks.append(("t", f["t"] >= 0, "time must be non-negative"))
    for key, ok, msg in checks:
        if not ok:
            raise ConfigError(f"{key}: {msg}", _line_of(items, key))
    for ax in spec.axes:
        if ax.name == "V" and ax.lo <= 0:
            raise ConfigError("axis V must stay positive", None)
        if ax.name == "omega_min" and not (0 < ax.lo and ax.hi < f["omega0"]):
            raise ConfigError("axis omega_min must stay inside (0, omega0)", None)


PRESETS = ("fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig2c",
           "fig3a", "fig3b", "fig3c", "fig4", "fig5")


def preset_text(name: str) -> str:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}", None, f"choose from {', '.join(PRESETS)}")
    return resources.files("qdimer").joinpath("presets", f"{name}.cfg").read_text(encoding="utf-8")


def load_preset(name: str, overrides=None, require_axes: bool = True) -> SweepSpec:
    return parse_config(preset_text(name), overrides, require_axes)
