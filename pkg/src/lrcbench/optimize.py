"""Deterministic 1-D minimisation: dense grid, then ternary refinement.

No unimodality is assumed globally; the refinement only polishes the best
grid cell and the grid winner is kept if refinement does worse.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

GRID_STEP = 1e-4
REFINE_TOL = 1e-8


def grid_minimize(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                  step: float = GRID_STEP, tol: float = REFINE_TOL) -> tuple[float, float]:
    """Return (x*, f(x*)) for a vectorised objective on [lo, hi].

    ``f`` must accept a 1-D float array; NaN is treated as +inf.
    """
    if hi < lo:
        raise ValueError("empty interval")
    if hi == lo:
        v = float(_safe(f, np.array([lo]))[0])
        return lo, v
    npts = int(np.ceil((hi - lo) / step)) + 1
    xs = np.linspace(lo, hi, npts)
    vals = _safe(f, xs)
    i = int(np.argmin(vals))
    best_x, best_v = float(xs[i]), float(vals[i])
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, npts - 1)])
    while b - a > tol:
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        v1, v2 = _safe(f, np.array([m1, m2]))
        if v1 <= v2:
            b = m2
        else:
            a = m1
    mid = (a + b) / 2
    v = float(_safe(f, np.array([mid]))[0])
    if v < best_v:
        best_x, best_v = mid, v
    return best_x, best_v


def grid_maximize(f, lo, hi, step=GRID_STEP, tol=REFINE_TOL) -> tuple[float, float]:
    x, v = grid_minimize(lambda z: -np.asarray(f(z)), lo, hi, step, tol)
    return x, -v


def _safe(f, xs: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        v = np.asarray(f(xs), dtype=float)
    return np.where(np.isnan(v), np.inf, v)
