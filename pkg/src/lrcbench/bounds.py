"""Finite-length upper bounds on the dimension of locally recoverable codes.

The central quantity is

    min over t = 0 .. ceil(n/(r+1)) of  t*r + k_opt(n - t(r+1), d)

with ``k_opt`` supplied by a :class:`KOptProvider`. All bounds are
real-valued; callers that compare against an integer dimension should use
:func:`floor_bound`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .errors import TableMiss, ValidationError

_TOL = 1e-9


def floor_bound(x: float) -> int:
    """Integer part of a real bound, tolerant of float noise just below an integer."""
    return math.floor(x + _TOL)


@dataclass(frozen=True)
class KOptProvider:
    """Upper bound on k_opt(n', d) over a q-ary alphabet.

    ``variant`` is one of singleton, plotkin, exact-table, custom. The table
    maps ``(q, n', d)`` to an exact value; ``func(n', d, q)`` backs ``custom``.
    Every variant returns 0 when n' < d.

    The plotkin variant is ``log_q(d / (d - n'(1-1/q)))`` inside the Plotkin
    range ``n'(1-1/q) < d``; above it we extend by shortening,
    ``(n' - d/(1-1/q)) + log_q(2qd/(1-1/q))``. That extension is ours.
    """

    variant: str
    table: Mapping[tuple[int, int, int], float] = field(default_factory=dict)
    func: Optional[Callable[[int, int, int], float]] = None
    restriction: str = "unrestricted"

    def __post_init__(self):
        if self.variant not in ("singleton", "plotkin", "exact-table", "custom"):
            raise ValidationError(f"unknown k_opt provider {self.variant!r}")
        if self.variant == "custom" and self.func is None:
            raise ValidationError("custom provider needs func")

    def __call__(self, n: int, d: int, q: int) -> float:
        return kopt_upper(self, n, d, q)

    @classmethod
    def singleton(cls) -> "KOptProvider":
        return cls("singleton")

    @classmethod
    def plotkin(cls) -> "KOptProvider":
        return cls("plotkin")

    @classmethod
    def exact(cls, table: Mapping[tuple[int, int, int], float],
              restriction: str = "unrestricted") -> "KOptProvider":
        return cls("exact-table", table=dict(table), restriction=restriction)

    @classmethod
    def custom(cls, func: Callable[[int, int, int], float]) -> "KOptProvider":
        return cls("custom", func=func)


def kopt_upper(provider: KOptProvider, n: int, d: int, q: int) -> float:
    if d < 1:
        raise ValidationError("d must be >= 1")
    if q < 2:
        raise ValidationError("q must be >= 2")
    if n < d:
        return 0.0
    v = provider.variant
    if v == "singleton":
        return float(n - d + 1)
    if v == "plotkin":
        theta = 1 - 1 / q
        if n * theta < d:
            return math.log(d / (d - n * theta), q)
        return (n - d / theta) + math.log(2 * q * d / theta, q)
    if v == "exact-table":
        try:
            return float(provider.table[(q, n, d)])
        except KeyError:
            raise TableMiss(f"no exact k_opt entry for q={q}, n={n}, d={d}") from None
    return float(provider.func(n, d, q))


@dataclass(frozen=True)
class BoundQuery:
    n: int
    d: int
    q: int
    r: int
    k: Optional[float] = None

    def __post_init__(self):
        if not 1 <= self.d <= self.n:
            raise ValidationError(f"need 1 <= d <= n, got d={self.d}, n={self.n}")
        if self.q < 2:
            raise ValidationError("q must be >= 2")
        # r = n is vacuous (only n-1 other coordinates) but admitted so that
        # grids over r <= k <= n need no special case.
        if not 1 <= self.r <= self.n:
            raise ValidationError(f"need 1 <= r <= n, got r={self.r}")


@dataclass(frozen=True)
class BoundResult:
    bound: float
    argmin_t: int
    terms: tuple[float, ...]

    def refutes(self, k: float) -> bool:
        """True when a code of dimension k is impossible."""
        return self.bound < k - _TOL


def cm_bound(query: BoundQuery, provider: KOptProvider) -> BoundResult:
    """Locality-aware bound on k; t = 0 is included (the locality-unaware case)."""
    n, d, q, r = query.n, query.d, query.q, query.r
    t_max = -(-n // (r + 1))
    terms = []
    for t in range(t_max + 1):
        rest = n - t * (r + 1)
        terms.append(t * r + (kopt_upper(provider, rest, d, q) if rest > 0 else 0.0))
    best = min(range(len(terms)), key=lambda t: (terms[t], t))
    return BoundResult(terms[best], best, tuple(terms))


def singleton_locality_d_bound(n: int, k: int, r: int) -> int:
    """d <= n - k - ceil(k/r) + 2."""
    if not 1 <= k <= n or not 1 <= r <= k:
        raise ValidationError("need 1 <= k <= n and 1 <= r <= k")
    return n - k - (-(-k // r)) + 2


def plotkin_locality_k_bound(n: int, d: int, q: int, r: int) -> float:
    """k <= r/(r+1) (n - d/(1-1/q)) + log_q(2qd/(1-1/q)), clamped at 0."""
    theta = 1 - 1 / q
    value = r / (r + 1) * (n - d / theta) + math.log(2 * q * d / theta, q)
    return max(value, 0.0)


def min_feasible_locality(n: int, k: float, d: int, q: int, provider: KOptProvider) -> int:
    """Smallest r >= 1 whose bound does not refute dimension k (n-1 if all are refuted)."""
    for r in range(1, max(n - 1, 1) + 1):
        if not cm_bound(BoundQuery(n, d, q, r), provider).refutes(k):
            return r
    return max(n - 1, 1)


def list_cm_bound(n: int, s: int, q: int, r: int, L: int,
                  kL_provider: Callable[[int, int], float]) -> BoundResult:
    """List-decoding analogue: min_t t*r + max(k_L(n - t(r+1), s), 0).

    ``kL_provider(n', s)`` must bound log_q of the largest (s, L)-list
    decodable code of length n'; it is called with the raw residual length,
    which may be negative.
    """
    if r < 1 or q < 2 or L < 1:
        raise ValidationError("need r >= 1, q >= 2, L >= 1")
    t_max = -(-n // (r + 1))
    terms = tuple(t * r + max(float(kL_provider(n - t * (r + 1), s)), 0.0)
                  for t in range(t_max + 1))
    best = min(range(len(terms)), key=lambda t: (terms[t], t))
    return BoundResult(terms[best], best, terms)
