"""One-dimensional root bracketing and extremum search."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, NoRootError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RootResult:
    x: float
    fx: float
    bracket: tuple[float, float]
    iterations: int


def bracketed_root(f, lo: float, hi: float, *, ftol: float = 0.0, xtol: float = 1e-12,
                   rtol: float = 4 * 2.220446049250313e-16, maxiter: int = 200,
                   f_lo: float | None = None, f_hi: float | None = None) -> RootResult:
    """Root of ``f`` on [lo, hi] by bisection with secant acceleration.

    f(lo) and f(hi) must differ in sign. Each step tries the secant point of
    the bracket ends; it is rejected in favour of the midpoint when it falls
    outside the bracket or the previous step failed to halve the bracket.
    Stops once |f| <= ftol or the bracket is narrower than xtol + rtol*|x|.
    """
    a, b = float(lo), float(hi)
    fa = f(a) if f_lo is None else f_lo
    fb = f(b) if f_hi is None else f_hi
    if fa == 0:
        return RootResult(a, fa, (a, a), 0)
    if fb == 0:
        return RootResult(b, fb, (b, b), 0)
    if (fa > 0) == (fb > 0):
        raise NoRootError("f(lo) and f(hi) must have opposite signs", fa, fb)
    width = abs(b - a)
    bisect_next = False
    for it in range(1, maxiter + 1):
        x = 0.5 * (a + b)
        if not bisect_next and fb != fa:
            xs = b - fb * (b - a) / (fb - fa)
            if min(a, b) < xs < max(a, b):
                x = xs
        fx = f(x)
        if fx == 0 or abs(fx) <= ftol:
            return RootResult(x, fx, (min(a, b), max(a, b)), it)
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        new_width = abs(b - a)
        bisect_next = new_width > 0.5 * width
        width = new_width
        if width <= xtol + rtol * abs(x):
            xb, fxb = (a, fa) if abs(fa) < abs(fb) else (b, fb)
            return RootResult(xb, fxb, (min(a, b), max(a, b)), it)
    raise ConvergenceError("root bracket did not shrink to tolerance", 0.5 * (a + b), width)


def golden_section_min(f, a: float, b: float, rtol: float = 1e-8, maxiter: int = 500):
    """Minimize a unimodal ``f`` on [a, b]; returns (x, f(x), iterations).

    Iterates until the bracket width falls below ``rtol * |x|`` and returns
    the best point evaluated.
    """
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    best = (c, fc) if fc <= fd else (d, fd)
    for it in range(1, maxiter + 1):
        if b - a <= rtol * max(abs(a), abs(b)):
            return best[0], best[1], it
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
            if fc < best[1]:
                best = (c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
            if fd < best[1]:
                best = (d, fd)
    raise ConvergenceError("golden-section search did not converge", best[0], b - a)
