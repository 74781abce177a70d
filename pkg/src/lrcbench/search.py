"""Exhaustive oracles for tiny parameters.

Nothing here calls into :mod:`lrcbench.code`'s distance or locality
routines: the oracle functions are literal definitional loops so they can
be used to cross-check the fast paths.
"""
from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Optional, TextIO

import numpy as np

from .bounds import KOptProvider
from .code import Codebook, LinearCode
from .errors import BudgetExceeded, ValidationError
from .field import GF, Field


@dataclass(frozen=True)
class SearchLimits:
    max_codewords: int = 1 << 22
    max_subsets: int = 1 << 22
    max_seconds: float = 600.0

    def __post_init__(self):
        if self.max_codewords <= 0 or self.max_subsets <= 0 or self.max_seconds <= 0:
            raise ValidationError("search limits must be positive")


class _Budget:
    def __init__(self, limits: SearchLimits):
        self.limits = limits
        self.start = time.monotonic()
        self.words = 0
        self.subsets = 0

    def spend_words(self, count: int) -> None:
        self.words += count
        if self.words > self.limits.max_codewords:
            raise BudgetExceeded(f"more than {self.limits.max_codewords} codewords enumerated")
        self._clock()

    def spend_subset(self) -> None:
        self.subsets += 1
        if self.subsets > self.limits.max_subsets:
            raise BudgetExceeded(f"more than {self.limits.max_subsets} subsets tried")
        if self.subsets % 4096 == 0:
            self._clock()

    def _clock(self) -> None:
        if time.monotonic() - self.start > self.limits.max_seconds:
            raise BudgetExceeded(f"search exceeded {self.limits.max_seconds} s")


# -- naive definitional oracles ---------------------------------------------------

def _naive_words(code) -> list[tuple[int, ...]]:
    if isinstance(code, Codebook):
        return sorted(set(tuple(int(x) for x in w) for w in code.words))
    F, G = code.field, code.generator.tolist()
    words = set()
    for msg in product(range(F.q), repeat=code.k):
        w = [0] * code.n
        for coef, row in zip(msg, G):
            for j, g in enumerate(row):
                w[j] = F.add(w[j], F.mul(coef, g))
        words.add(tuple(w))
    return sorted(words)


def oracle_distance(code, limits: SearchLimits = SearchLimits()) -> float:
    """Minimum distance over all pairs of distinct codewords (inf for one word)."""
    words = _naive_words(code)
    budget = _Budget(limits)
    budget.spend_words(len(words))
    best = math.inf
    for x, y in combinations(words, 2):
        best = min(best, sum(a != b for a, b in zip(x, y)))
    return best


def oracle_locality(code, limits: SearchLimits = SearchLimits()) -> float:
    """Max over i of the smallest |R| that separates every pair differing at i.

    Returns inf when some coordinate has no repair set.
    """
    words = _naive_words(code)
    n = len(words[0])
    budget = _Budget(limits)
    worst = 0
    for i in range(n):
        pairs = [(x, y) for x, y in combinations(words, 2) if x[i] != y[i]]
        others = [j for j in range(n) if j != i]
        found = None
        for s in range(0 if not pairs else 1, n):
            for R in combinations(others, s):
                budget.spend_subset()
                if all(any(x[j] != y[j] for j in R) for x, y in pairs):
                    found = s
                    break
            if found is not None:
                break
        if found is None:
            return math.inf
        worst = max(worst, found)
    return worst


# -- linear code enumeration ----------------------------------------------------------

def iter_linear_codes(n: int, k: int, d: int, q: int,
                      limits: SearchLimits = SearchLimits()) -> Iterator[np.ndarray]:
    """Yield systematic generators [I_k | A] with minimum distance >= d.

    Rows of A are taken in nondecreasing packed order: permuting rows of A
    together with the first k coordinates gives an equivalent code, so this
    still reaches every code up to coordinate permutation.
    """
    if not 1 <= k <= n:
        raise ValidationError("need 1 <= k <= n")
    F = GF(q)
    budget = _Budget(limits)
    m = n - k
    cands = [np.array(v[::-1], dtype=np.int64) for v in product(range(q), repeat=m)]
    cands = [v for v in cands if int((v != 0).sum()) >= d - 1]
    if not cands:
        return
    scalars = range(1, q)

    def extend(rows: list[np.ndarray], span: np.ndarray, start: int):
        i = len(rows)
        if i == k:
            G = np.zeros((k, n), dtype=np.int64)
            G[:, :k] = np.eye(k, dtype=np.int64)
            G[:, k:] = np.array(rows)
            yield G
            return
        for c in range(start, len(cands)):
            g = np.zeros(n, dtype=np.int64)
            g[i] = 1
            g[k:] = cands[c]
            shifted = [F.add_arr(span, F.mul_arr(g, lam)) for lam in scalars]
            new = np.concatenate(shifted, axis=0)
            budget.spend_words(new.shape[0])
            if int((new != 0).sum(axis=1).min()) >= d:
                yield from extend(rows + [cands[c]], np.concatenate([span, new]), c)

    yield from extend([], np.zeros((1, n), dtype=np.int64), 0)


def _linear_exists(n, k, d, q, limits) -> bool:
    return next(iter_linear_codes(n, k, d, q, limits), None) is not None


# -- maximum clique on the distance graph --------------------------------------------

def _mask(bools: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bools, bitorder="little").tobytes(), "little")


def _max_clique(adj: list[int], P: int, budget: _Budget) -> int:
    best = 0

    def colour(P: int):
        order, bounds, col, U = [], [], 0, P
        while U:
            col += 1
            Q = U
            while Q:
                v = (Q & -Q).bit_length() - 1
                Q &= ~(1 << v) & ~adj[v]
                U &= ~(1 << v)
                order.append(v)
                bounds.append(col)
        return order, bounds

    def expand(size: int, P: int):
        nonlocal best
        budget.spend_subset()
        order, bounds = colour(P)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best:
                return
            v = order[idx]
            nxt = P & adj[v]
            if nxt:
                expand(size + 1, nxt)
            elif size + 1 > best:
                best = size + 1
            P &= ~(1 << v)

    if P:
        expand(0, P)
    return best


def max_code_size(n: int, d: int, q: int = 2, limits: SearchLimits = SearchLimits()) -> int:
    """A_q(n, d) by maximum clique on the graph of words at distance >= d.

    Isometries of Hamming space let us fix the zero word and a second word
    1^w 0^(n-w) for some w in d..n; each w is searched separately.
    """
    if d > n:
        return 1
    N = q**n
    if N * N > limits.max_codewords * 64:
        raise BudgetExceeded(f"distance graph on {N} words is too large")
    budget = _Budget(limits)
    # word index = sum(c_j q^j), so coordinate j is digit j
    words = np.array(list(product(range(q), repeat=n)), dtype=np.int64)[:, ::-1]
    adj = [_mask((words != words[v]).sum(axis=1) >= d) for v in range(N)]
    best = 2
    for w in range(d, n + 1):
        u = sum(q**j for j in range(w))
        best = max(best, 2 + _max_clique(adj, adj[0] & adj[u], budget))
    return best


def exact_kopt(n: int, d: int, q: int = 2, limits: SearchLimits = SearchLimits(),
               restriction: str = "unrestricted") -> float:
    """Exact k_opt(n, d): log_q of A_q(n, d), or the largest linear dimension."""
    if restriction not in ("linear", "unrestricted"):
        raise ValidationError(f"unknown restriction {restriction!r}")
    if n < 0 or d < 1:
        raise ValidationError("need n >= 0 and d >= 1")
    if n < d:
        return 0.0
    if restriction == "unrestricted":
        return math.log(max_code_size(n, d, q, limits)) / math.log(q)
    best = 0
    for k in range(1, n + 1):
        if not _linear_exists(n, k, d, q, limits):
            break
        best = k
    return float(best)


def best_lrc_dimension(n: int, d: int, q: int, r: int,
                       limits: SearchLimits = SearchLimits()) -> int:
    """Largest k of a linear [n, k, >=d] code with locality <= r (0 if none).

    Locality is invariant under coordinate permutation, so checking the
    systematic representative of each class is enough.
    """
    F = GF(q)
    for k in range(n - d + 1, 0, -1):
        for G in iter_linear_codes(n, k, d, q, limits):
            if oracle_locality(LinearCode(F, G, check=False), limits) <= r:
                return k
    return 0


# -- k_opt tables -------------------------------------------------------------------

def kopt_table(q: int, ns, ds, restriction: str = "unrestricted",
               limits: SearchLimits = SearchLimits()) -> dict[tuple[int, int, int], float]:
    return {(q, n, d): exact_kopt(n, d, q, limits, restriction) for n in ns for d in ds}


def write_kopt_csv(out: TextIO, table: dict, restriction: str = "unrestricted") -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["q", "n", "d", "kopt", "restriction"])
    for (q, n, d), v in sorted(table.items()):
        w.writerow([q, n, d, f"{v:.12g}", restriction])


def read_kopt_csv(src: TextIO) -> KOptProvider:
    table, restrictions = {}, set()
    for row in csv.DictReader(src):
        table[(int(row["q"]), int(row["n"]), int(row["d"]))] = float(row["kopt"])
        restrictions.add(row.get("restriction") or "unrestricted")
    restriction = "linear" if "linear" in restrictions else "unrestricted"
    return KOptProvider.exact(table, restriction)


def exact_provider(q: int, n_max: int, d: int, restriction: Optional[str] = None,
                   limits: SearchLimits = SearchLimits()) -> KOptProvider:
    """Exact-table provider covering every residual length 1..n_max at distance d.

    Binary tables are unrestricted by default; nonbinary ones fall back to
    linear codes (a lower bound on the true k_opt).
    """
    restriction = restriction or ("unrestricted" if q == 2 else "linear")
    return KOptProvider.exact(kopt_table(q, range(1, n_max + 1), [d], restriction, limits),
                              restriction)
