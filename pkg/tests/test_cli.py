import math
import subprocess
import sys

import pytest

from qdimer.cli import main
from oracles import CONV

TRACE = """\
observable = P_lm
V = 120
renormalize = false
x.name = t
x.lo = 0
x.hi = 0.2
x.n = 5
"""


@pytest.fixture
def cfg(tmp_path):
    def make(text, name="c.cfg"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


def test_trace_to_stdout(cfg, capsys):
    assert main(["trace", "--config", cfg(TRACE)]) == 0
    out = capsys.readouterr().out
    rows = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert rows[0] == "t,P_lm" and len(rows) == 6
    t, v = map(float, rows[-1].split(","))
    assert v == pytest.approx(math.sin(120 * 0.2 * CONV) ** 2, rel=1e-11)


def test_trace_files(cfg, tmp_path):
    out, svg = tmp_path / "o.csv", tmp_path / "o.svg"
    assert main(["trace", "--config", cfg(TRACE), "--out", str(out), "--svg", str(svg)]) == 0
    assert out.read_text().count("\n") > 6
    assert svg.read_text().startswith("<svg")


def test_units_and_tol_flags(cfg, capsys):
    assert main(["trace", "--config", cfg(TRACE), "--units", "natural", "--tol", "1e-8"]) == 0
    out = capsys.readouterr().out
    assert "# config: units = natural" in out and "# config: tol = 1e-08" in out
    assert "# units: natural" in out


def test_grid_preset_with_override(capsys):
    assert main(["grid", "--preset", "fig1b", "--set", "x.n=2", "--set", "y.n=3"]) == 0
    rows = [ln for ln in capsys.readouterr().out.splitlines() if not ln.startswith("#")]
    assert rows[0] == "V,t,delta_P" and len(rows) == 7


def test_ep_temp_single_point(cfg, capsys):
    text = "V = 250\nomega_min = 45\ndelta_gamma = 50\n"
    assert main(["ep-temp", "--config", cfg(text)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("T_c = 146.") and out.rstrip().endswith("K")


def test_ep_temp_no_root(cfg, capsys):
    assert main(["ep-temp", "--config", cfg("V = 250\ndelta_gamma = 50\n")]) == 3
    assert "no critical temperature" in capsys.readouterr().err


def test_passage_single_point(cfg, capsys):
    text = "V = 250\nrenormalize = false\nt_max = 1\n"
    assert main(["passage", "--config", cfg(text)]) == 0
    val = float(capsys.readouterr().out.split("=")[1].split()[0])
    assert val == pytest.approx(math.pi / (2 * 250 * CONV), rel=1e-8)


def test_passage_boundary_exit(cfg):
    text = "V = 1\ngamma_m = 200\nrenormalize = false\nt_max = 0.5\n"
    assert main(["passage", "--config", cfg(text)]) == 3


def test_validate_config(cfg, capsys):
    assert main(["validate-config", "--config", cfg(TRACE)]) == 0
    out = capsys.readouterr().out
    assert "lambda_b = 200" in out and "x.name = t" in out


def test_config_error_exit(cfg, capsys):
    assert main(["validate-config", "--config", cfg("V = 1\nV = 2\n")]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "line 1" in err
    assert main(["trace", "--config", cfg(TRACE.replace("x.lo = 0", "x.lo = 1"))]) == 2


def test_io_errors(cfg, tmp_path):
    assert main(["trace", "--config", str(tmp_path / "missing.cfg")]) == 4
    assert main(["trace", "--config", cfg(TRACE), "--out", str(tmp_path / "no" / "dir.csv")]) == 4


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["trace"])
    assert exc.value.code == 2


def test_console_script_module():
    r = subprocess.run([sys.executable, "-m", "qdimer.cli", "validate-config", "--preset", "fig4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "observable = T_c" in r.stdout
