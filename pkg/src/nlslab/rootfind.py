"""Bracketed scalar root finding: geometric scans feeding Brent's method."""

from __future__ import annotations

from typing import Callable

from scipy.optimize import brentq

from .errors import NonConvergenceError


_RTOL_FLOOR = 4.0 * 2.220446049250313e-16  # brentq's minimum


def solve_bracketed(fn: Callable[[float], float], lo: float, hi: float,
                    xtol: float = 1e-14, rtol: float = _RTOL_FLOOR) -> float:
    """Brent iteration on a sign-changing bracket [lo, hi]."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NonConvergenceError(
            f"no sign change on bracket [{lo:g}, {hi:g}]: f = ({flo:g}, {fhi:g})")
    return brentq(fn, lo, hi, xtol=xtol, rtol=max(rtol, _RTOL_FLOOR))


def grow_bracket(fn: Callable[[float], float], x0: float, factor: float = 1.5,
                 max_steps: int = 200, upward: bool = True) -> tuple[float, float]:
    """Geometric scan from x0 until fn changes sign; returns the bracket."""
    x_prev = x0
    f_prev = fn(x_prev)
    if f_prev == 0.0:
        return x_prev, x_prev
    x = x0
    for _ in range(max_steps):
        x = x * factor if upward else x / factor
        f = fn(x)
        if f == 0.0 or f_prev * f < 0.0:
            return (x_prev, x) if upward else (x, x_prev)
        x_prev, f_prev = x, f
    raise NonConvergenceError(f"geometric scan from {x0:g} found no sign change")
