"""Asymptotic rate vs relative-distance curves.

Everything here is a closed form or a 1-D optimisation solved with
:func:`lrcbench.optimize.grid_minimize` (dense grid plus ternary polish),
so outputs are deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import ValidationError
from .optimize import grid_maximize, grid_minimize


def entropy_q(x, q: int):
    """q-ary entropy H_q(x) with 0 log 0 = 0. Accepts scalars or arrays."""
    arr = np.asarray(x, dtype=float)
    if ((arr < 0) | (arr > 1)).any():
        raise ValidationError("entropy argument outside [0, 1]")
    with np.errstate(divide="ignore", invalid="ignore"):
        h = (arr * np.log(q - 1) - np.where(arr > 0, arr * np.log(arr), 0.0)
             - np.where(arr < 1, (1 - arr) * np.log1p(-arr), 0.0)) / np.log(q)
    return float(h) if np.ndim(x) == 0 else h


def inv_entropy_q(y: float, q: int) -> float:
    """The x in [0, 1-1/q] with H_q(x) = y, by bisection on x to machine precision.

    H_q is flat at its maximum, so x is only determined to about sqrt(eps)
    there; H_q(result) still matches y to rounding.
    """
    if not 0 <= y <= 1:
        raise ValidationError("entropy value outside [0, 1]")
    lo, hi = 0.0, 1 - 1 / q
    if y == 0:
        return 0.0
    if y == 1:
        return hi
    while True:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            return mid
        if entropy_q(mid, q) < y:
            lo = mid
        else:
            hi = mid


@dataclass(frozen=True)
class RoptProvider:
    """Asymptotic optimal-rate model R_opt(delta).

    Variants singleton, plotkin, gv, mrrw2 (binary only) and custom.
    plotkin, gv and mrrw2 vanish for delta >= 1 - 1/q. singleton is left
    as max(1 - delta, 0) so that plugging it into :func:`converse_rate`
    reproduces the r/(r+1) (1 - delta) line.
    """

    variant: str
    func: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if self.variant not in ("singleton", "plotkin", "gv", "mrrw2", "custom"):
            raise ValidationError(f"unknown R_opt provider {self.variant!r}")
        if self.variant == "custom" and self.func is None:
            raise ValidationError("custom provider needs func")


def ropt_eval(provider: RoptProvider, delta, q: int):
    """Evaluate R_opt at delta (scalar or array); values lie in [0, 1]."""
    d = np.asarray(delta, dtype=float)
    theta = 1 - 1 / q
    v = provider.variant
    with np.errstate(invalid="ignore", divide="ignore"):
        if v == "singleton":
            out = 1 - d
        elif v == "plotkin":
            out = np.where(d < theta, 1 - d / theta, 0.0)
        elif v == "gv":
            out = np.where(d < theta, 1 - entropy_q(np.clip(d, 0, theta), q), 0.0)
        elif v == "mrrw2":
            if q != 2:
                raise ValidationError("mrrw2 is defined for q = 2 only")
            dd = np.clip(d, 0, 0.5)
            out = np.where(d < 0.5, entropy_q(0.5 - np.sqrt(dd * (1 - dd)), 2), 0.0)
        else:
            out = np.vectorize(lambda z: float(provider.func(float(z))))(d)
    out = np.clip(out, 0.0, 1.0)
    return float(out) if np.ndim(delta) == 0 else out


def _scaled_arg(delta: float, x: np.ndarray, r: int):
    """Fraction 1 - x(1+1/r) of the length left after t repair groups, and delta over it."""
    left = 1 - x * (1 + 1 / r)
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = np.where(left > 0, delta / np.where(left > 0, left, 1.0), np.inf)
    return left, arg


def converse_rate(delta: float, r: int, q: int, provider: RoptProvider) -> float:
    """min over x in [0, r/(r+1)] of x + (1 - x(1+1/r)) R_opt(delta / (1 - x(1+1/r)))."""
    if not 0 <= delta <= 1:
        raise ValidationError("delta outside [0, 1]")

    def objective(x):
        left, arg = _scaled_arg(delta, x, r)
        inside = arg <= 1
        R = np.zeros_like(x)
        if inside.any():
            R[inside] = ropt_eval(provider, arg[inside], q)
        return x + np.maximum(left, 0.0) * R

    _, v = grid_minimize(objective, 0.0, r / (r + 1))
    return float(min(max(v, 0.0), 1.0))


def _achievability_exponent(delta: float, r: int, q: int, x):
    """log_q(1+x(q-1)) + log_q(1+(q-1)((1-x)/(1+x(q-1)))^{r+1})/(r+1) - delta log_q x."""
    x = np.asarray(x, dtype=float)
    lq = math.log(q)
    base = 1 + x * (q - 1)
    spc = np.log1p((q - 1) * ((1 - x) / base) ** (r + 1)) / (r + 1)
    if delta == 0:
        dist = np.zeros_like(x)
    else:
        with np.errstate(divide="ignore"):
            dist = -delta * np.log(x)
    return (np.log(base) + spc + dist) / lq


def achievable_rate(delta: float, r: int, q: int, mode: str = "optimize") -> float:
    """Rate certified by the random locally recoverable ensembles.

    optimize: 1 - min over x in [0, 1] of the achievability exponent (the
    random-coding count of light codewords drops below one).
    substitute: the closed form at x = delta / ((q-1)(1-delta)).
    """
    if mode not in ("optimize", "substitute"):
        raise ValidationError(f"unknown mode {mode!r}")
    if not 0 <= delta <= 1:
        raise ValidationError("delta outside [0, 1]")
    theta = 1 - 1 / q
    if delta >= theta:
        return 0.0
    if mode == "substitute":
        val = (1 - entropy_q(delta, q)
               - math.log(1 + (q - 1) * (1 - delta * q / (q - 1)) ** (r + 1), q) / (r + 1))
    else:
        _, g = grid_minimize(lambda x: _achievability_exponent(delta, r, q, x), 0.0, 1.0)
        val = 1 - g
    return float(min(max(val, 0.0), 1.0))


def gv_parity_rate(delta: float, r: int, q: int) -> float:
    """max(r/(r+1) - H_q(delta), 0); zero from delta = 1 - 1/q on."""
    if not 0 <= delta <= 1:
        raise ValidationError("delta outside [0, 1]")
    if delta >= 1 - 1 / q:
        return 0.0
    return max(r / (r + 1) - entropy_q(delta, q), 0.0)


def list_converse_rate(sigma: float, r: int, q: int) -> float:
    """1 - max over x in [0, r/(r+1)] of x/r + (1 - x(1+1/r)) H_q(sigma / (1 - x(1+1/r))).

    H_q is held at 1 once its argument passes 1 - 1/q.
    """
    if not 0 <= sigma <= 1:
        raise ValidationError("sigma outside [0, 1]")
    theta = 1 - 1 / q

    def bracket(x):
        left, arg = _scaled_arg(sigma, x, r)
        H = np.ones_like(x)
        low = arg < theta
        if low.any():
            H[low] = entropy_q(arg[low], q)
        return x / r + np.maximum(left, 0.0) * H

    _, v = grid_maximize(bracket, 0.0, r / (r + 1))
    return float(min(max(1 - v, 0.0), 1.0))


# -- curve sampling ---------------------------------------------------------------

@dataclass(frozen=True)
class CurvePoint:
    delta: float
    rate: float
    series: str

    def __post_init__(self):
        if not self.series:
            raise ValidationError("series label must be nonempty")
        if not (math.isfinite(self.delta) and math.isfinite(self.rate)):
            raise ValidationError("curve point must be finite")


def _eq1(delta, r, q):
    return max(r / (r + 1) * (1 - delta), 0.0)


def _plotkin_applied(delta, r, q):
    return max(r / (r + 1) * (1 - delta / (1 - 1 / q)), 0.0)


SERIES: dict[str, Callable[[float, int, int], float]] = {
    "eq1-singleton": _eq1,
    "plotkin-applied": _plotkin_applied,
    "converse-mrrw": lambda d, r, q: converse_rate(d, r, q, RoptProvider("mrrw2")),
    "converse-gv": lambda d, r, q: converse_rate(d, r, q, RoptProvider("gv")),
    "converse-plotkin": lambda d, r, q: converse_rate(d, r, q, RoptProvider("plotkin")),
    "converse-singleton": lambda d, r, q: converse_rate(d, r, q, RoptProvider("singleton")),
    "achievable-eq5": lambda d, r, q: achievable_rate(d, r, q, "optimize"),
    "achievable-eq10": lambda d, r, q: achievable_rate(d, r, q, "substitute"),
    "gv-parity": gv_parity_rate,
    "list-converse": list_converse_rate,
    "mrrw": lambda d, r, q: ropt_eval(RoptProvider("mrrw2"), d, q),
    "gv": lambda d, r, q: ropt_eval(RoptProvider("gv"), d, q),
}


def delta_grid(lo: float, hi: float, step: float) -> list[float]:
    if step <= 0 or lo < 0 or hi > 1 or hi < lo:
        raise ValidationError("bad delta grid")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def sample_curves(series: Iterable[str], r: int, q: int, deltas: Iterable[float]) -> list[CurvePoint]:
    """Evaluate each named series at every delta; order is series-major."""
    series = list(series)
    for s in series:
        if s not in SERIES:
            raise ValidationError(f"unknown series {s!r}; known: {', '.join(SERIES)}")
    deltas = list(deltas)
    if any(not 0 <= d <= 1 for d in deltas):
        raise ValidationError("delta grid outside [0, 1]")
    return [CurvePoint(d, float(SERIES[s](d, r, q)), s) for s in series for d in deltas]
