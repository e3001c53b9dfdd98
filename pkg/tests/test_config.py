import pytest

from qdimer.config import PRESETS, load_preset, parse_config, preset_text, read_assignments
from qdimer.errors import ConfigError

MINIMAL = """\
# fig2a fixed parameters, one time trace
mode = trace
observable = delta_P
V = 250
gamma_l = 2.5
gamma_m = 2.5   # equal damping
T = 77
x.name = t
x.lo = 0
x.hi = 1
x.n = 11
"""


def test_minimal_trace_accepted_with_defaults():
    spec = parse_config(MINIMAL)
    r = spec.resolved()
    assert r["lambda_b"] == "200" and r["omega0"] == "50"
    assert r["omega_min"] == "0.05" and r["omega_max"] == "50000"
    assert r["renormalize"] == "true" and r["units"] == "physical"
    assert r["x.spacing"] == "linear"
    assert list(r) == sorted(r)
    assert spec.axes[0].values()[-1] == 1.0


def test_duplicate_key_names_both_lines():
    with pytest.raises(ConfigError) as exc:
        read_assignments("V = 1\n# c\nV = 2\n")
    assert exc.value.line == 3
    assert "line 1" in str(exc.value) and "line 3" in str(exc.value)


@pytest.mark.parametrize("lo,hi", [("1", "1"), ("2", "1")])
def test_axis_lo_not_below_hi(lo, hi):
    text = MINIMAL.replace("x.lo = 0", f"x.lo = {lo}").replace("x.hi = 1", f"x.hi = {hi}")
    with pytest.raises(ConfigError, match="lo must be below hi"):
        parse_config(text)


def test_unknown_key_has_hint_and_line():
    with pytest.raises(ConfigError) as exc:
        parse_config(MINIMAL + "gama_l = 3\n")
    assert exc.value.line == 12
    assert "gamma_l" in exc.value.hint


@pytest.mark.parametrize("text,needle", [
    ("V 250\n", "key = value"),
    ("x.name = t\nx.lo = 0\nx.hi = 1\nx.n = 1.5\n", "integer"),
    ("units = imperial\nx.name = t\nx.lo = 0\nx.hi = 1\nx.n = 3\n", "units"),
    ("x.name = t\nx.lo = 0\nx.hi = 1\nx.n = 3\nV = nan\n", "finite"),
    ("x.name = t\nx.lo = 0\nx.hi = 1\nx.n = 3\nV = 0\n", "V"),
    ("x.name = t\nx.lo = 0\nx.hi = 1\n", "x.n"),
    ("mode = grid\nx.name = t\nx.lo = 0\nx.hi = 1\nx.n = 3\n", "two axes"),
    ("x.name = V\nx.lo = 1\nx.hi = 2\nx.n = 3\nV = 4\n", "swept and fixed"),
    ("delta_gamma = 5\ngamma_l = 1\nx.name = t\nx.lo = 0\nx.hi = 1\nx.n = 3\n", "gamma_l"),
    ("observable = tau_p\nx.name = t\nx.lo = 0\nx.hi = 1\nx.n = 3\n", "does not depend on t"),
    ("observable = T_c\nx.name = V\nx.lo = 1\nx.hi = 2\nx.n = 3\n", "delta_gamma"),
    ("observable = T_c\ndelta_gamma = 3\nx.name = T\nx.lo = 1\nx.hi = 2\nx.n = 3\n", "unknown of T_c"),
    ("x.name = V\nx.lo = 1\nx.hi = 2\nx.n = 3\n", "needs a time"),
    ("x.name = t\nx.lo = 0\nx.hi = 1\nx.n = 3\nx.spacing = log\n", "log spacing"),
    ("x.name = t\nx.lo = 0\nx.hi = 1\nx.n = 3\nomega_min = 60\n", "omega_min"),
])
def test_rejections(text, needle):
    with pytest.raises(ConfigError, match=needle):
        parse_config(text)


def test_comments_and_blank_lines():
    items = read_assignments("\n  # only a comment\nV = 3 # trailing\n\n")
    assert items == {"V": ("3", 3)}


def test_overrides():
    spec = parse_config(MINIMAL, {"units": "natural", "tol": "1e-8"})
    assert spec.units_mode == "natural" and spec.fixed["tol"] == 1e-8
    assert spec.renormalize is False


def test_single_point_axis():
    spec = parse_config(MINIMAL.replace("x.n = 11", "x.n = 1").replace("x.hi = 1", "x.hi = 0"))
    assert list(spec.axes[0].values()) == [0.0]


def test_log_axis():
    spec = parse_config("x.name = t\nx.lo = 0.01\nx.hi = 1\nx.n = 3\nx.spacing = log\n")
    assert spec.axes[0].values() == pytest.approx([0.01, 0.1, 1.0])


@pytest.mark.parametrize("name", PRESETS)
def test_presets_parse(name):
    spec = load_preset(name)
    assert preset_text(name).startswith("#")
    assert spec.mode in ("trace", "grid")


def test_preset_contents():
    f1c = load_preset("fig1c")
    assert f1c.fixed["gamma_l"] == 0.2 and f1c.fixed["V"] == 3 and f1c.units_mode == "natural"
    f2a = load_preset("fig2a")
    assert f2a.fixed["lambda_b"] == 200 and f2a.fixed["gamma_l"] == 2.5 == f2a.fixed["gamma_m"]
    assert load_preset("fig3b").fixed["lambda_b"] == 150
    assert load_preset("fig4").observable == "T_c"
    assert load_preset("fig5").observable == "tau_p"
    with pytest.raises(ConfigError):
        load_preset("fig9")
