"""CSV and SVG writers for sweep results."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import format_number
from .sweep import SweepGrid

NA = "NA"
UNIT_LABELS = {
    "physical": "energies cm^-1, times ps, temperatures K",
    "natural": "hbar = omega0 = kB = 1",
}


def csv_text(grid: SweepGrid) -> str:
    """Render a sweep as CSV text. Deterministic: the run timestamp is kept
    out of the file so identical inputs give identical bytes."""
    meta = grid.metadata
    buf = io.StringIO()
    buf.write(f"# qdimer {meta.get('version', '')}\n")
    units = meta.get("units", "physical")
    buf.write(f"# units: {units} ({UNIT_LABELS.get(units, '')})\n")
    buf.write(f"# observable: {grid.observable}\n")
    for k, v in meta.get("config", {}).items():
        buf.write(f"# config: {k} = {v}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([ax.name for ax in grid.axes] + [grid.observable])
    for row in grid.rows():
        *coords, value = row
        writer.writerow([format_number(c) for c in coords] + [NA if value is None else format_number(value)])
    return buf.getvalue()


def write_csv(grid: SweepGrid, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(grid))


@dataclass
class CsvTable:
    comments: list[str]
    header: list[str]
    rows: list[list[float | None]]

    def column(self, name):
        j = self.header.index(name)
        return [r[j] for r in self.rows]


def read_csv(source) -> CsvTable:
    """Parse a file written by write_csv (path or text with newlines)."""
    text = source if isinstance(source, str) and "\n" in source else Path(source).read_text(encoding="utf-8")
    comments, body = [], []
    for line in text.splitlines():
        (comments if line.startswith("#") else body).append(line)
    reader = csv.reader(body)
    header = next(reader)
    rows = [[None if cell == NA else float(cell) for cell in r] for r in reader]
    return CsvTable(comments, header, rows)


# diverging map: cold (-1) -> light grey-white (0) -> hot (+1)
_COLD = np.array([59, 76, 192], dtype=float)
_MID = np.array([242, 242, 242], dtype=float)
_HOT = np.array([180, 4, 38], dtype=float)
NA_COLOR = "#9e9e9e"


def diverging_color(s: float) -> str:
    """Hex colour for s in [-1, 1] (clipped)."""
    s = float(np.clip(s, -1.0, 1.0))
    rgb = _MID + (_HOT - _MID) * s if s >= 0 else _MID + (_COLD - _MID) * (-s)
    r, g, b = (int(round(c)) for c in rgb)
    return f"#{r:02x}{g:02x}{b:02x}"


def _value_range(grid: SweepGrid):
    if grid.observable == "delta_P":
        return -1.0, 1.0
    if grid.observable in ("P_ll", "P_lm"):
        return 0.0, 1.0
    finite = grid.values[~grid.na]
    if finite.size == 0:
        return 0.0, 1.0
    return float(finite.min()), float(finite.max())


def _to_unit(v, lo, hi):
    """Map [lo, hi] onto [-1, 1]; a degenerate range maps to 0."""
    if hi <= lo:
        return 0.0
    return 2.0 * (v - lo) / (hi - lo) - 1.0


def _f(x):
    return f"{x:.2f}"


def _ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    return list(np.linspace(lo, hi, n))


def render_svg(grid: SweepGrid, style: str | None = None) -> str:
    """Heatmap (two axes) or line plot (one axis, or style='lines')."""
    if len(grid.axes) not in (1, 2):
        raise ValueError("can only render one- or two-axis sweeps")
    style = style or ("heatmap" if len(grid.axes) == 2 else "lines")
    if style not in ("heatmap", "lines"):
        raise ValueError(f"unknown style {style!r}")
    if style == "heatmap" and len(grid.axes) != 2:
        raise ValueError("a heatmap needs two axes")

    W, H = 720, 480
    left, right, top, bottom = 80, 120, 30, 60
    pw, ph = W - left - right, H - top - bottom
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
           f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>']
    vlo, vhi = _value_range(grid)
    xs = grid.coords[0]
    xlo, xhi = float(xs[0]), float(xs[-1])

    def px(x):
        return left + (0.5 * pw if xhi == xlo else (x - xlo) / (xhi - xlo) * pw)

    if style == "heatmap":
        ys = grid.coords[1]
        nx, ny = len(xs), len(ys)
        cw, chh = pw / nx, ph / ny
        for i in range(nx):
            for j in range(ny):
                fill = NA_COLOR if grid.na[i, j] else diverging_color(_to_unit(grid.values[i, j], vlo, vhi))
                out.append(f'<rect x="{_f(left + i * cw)}" y="{_f(top + ph - (j + 1) * chh)}" '
                           f'width="{_f(cw)}" height="{_f(chh)}" fill="{fill}" stroke="none"/>')
        ylo, yhi = float(ys[0]), float(ys[-1])
        ylabel = grid.axes[1].name
        # colour bar
        bx = left + pw + 30
        for k in range(50):
            s = 1.0 - 2.0 * (k + 0.5) / 50
            out.append(f'<rect x="{bx}" y="{_f(top + k * ph / 50)}" width="16" '
                       f'height="{_f(ph / 50 + 0.5)}" fill="{diverging_color(s)}"/>')
        out.append(f'<text x="{bx + 20}" y="{top + 10}" font-size="11">{format(vhi, ".4g")}</text>')
        out.append(f'<text x="{bx + 20}" y="{top + ph}" font-size="11">{format(vlo, ".4g")}</text>')
        out.append(f'<text x="{bx}" y="{top + ph + 20}" font-size="11">{grid.observable}</text>')
    else:
        ylo, yhi = vlo, vhi
        if yhi <= ylo:
            ylo, yhi = ylo - 1.0, yhi + 1.0
        ylabel = grid.observable
        series = [grid.values] if len(grid.axes) == 1 else [grid.values[:, j] for j in range(len(grid.coords[1]))]
        masks = [grid.na] if len(grid.axes) == 1 else [grid.na[:, j] for j in range(len(grid.coords[1]))]
        for k, (vals, mask) in enumerate(zip(series, masks)):
            colour = diverging_color(-1.0 + 2.0 * k / max(1, len(series) - 1)) if len(series) > 1 else "#1f3a93"
            segment = []
            for x, v, bad in list(zip(xs, vals, mask)) + [(None, None, True)]:
                if bad:
                    if len(segment) > 1:
                        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" '
                                   f'points="{" ".join(segment)}"/>')
                    segment = []
                    continue
                y = top + ph - (v - ylo) / (yhi - ylo) * ph
                segment.append(f"{_f(px(x))},{_f(y)}")

    # frame, ticks and labels
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#000000"/>')
    for x in _ticks(xlo, xhi):
        out.append(f'<text x="{_f(px(x))}" y="{top + ph + 16}" font-size="11" text-anchor="middle">'
                   f'{format(x, ".4g")}</text>')
    for y in _ticks(ylo, yhi):
        yy = top + ph / 2 if yhi == ylo else top + ph - (y - ylo) / (yhi - ylo) * ph
        out.append(f'<text x="{left - 6}" y="{_f(yy + 4)}" font-size="11" text-anchor="end">'
                   f'{format(y, ".4g")}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{H - 15}" font-size="13" text-anchor="middle">{grid.axes[0].name}</text>')
    out.append(f'<text x="20" y="{top + ph / 2}" font-size="13" text-anchor="middle" '
               f'transform="rotate(-90 20 {top + ph / 2})">{ylabel}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(grid: SweepGrid, path, style: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_svg(grid, style))
