"""Code objects and the locality machinery.

Coordinates are 0-based everywhere (the usual write-ups index from 1).
A code is either a :class:`LinearCode` (generator matrix) or a
:class:`Codebook` (explicit list of words). Every routine below accepts both;
linear codes are expanded to their codeword list when a routine needs it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import BudgetExceeded, ValidationError
from .field import Field
from . import linalg

MAX_CODEWORDS = 1 << 20
MAX_PAIRS = 50_000_000
MAX_SUBSETS = 2_000_000
_TOL = 1e-9


@dataclass(frozen=True)
class RepairProfile:
    """One repair set per coordinate; ``sets[i]`` never contains ``i``."""

    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(tuple(sorted(int(j) for j in s)) for s in self.sets))
        for i, s in enumerate(self.sets):
            if i in s:
                raise ValidationError(f"coordinate {i} is in its own repair set")

    @property
    def locality(self) -> int:
        return max((len(s) for s in self.sets), default=0)

    def __len__(self) -> int:
        return len(self.sets)

    def to_list(self) -> list[list[int]]:
        return [list(s) for s in self.sets]


class Codebook:
    """Explicit code: an (M, n) array of field elements.

    Duplicate words are only accepted with ``raw=True`` (random ensembles);
    they are dropped and counted in ``duplicates``.
    """

    def __init__(self, field: Field, words, raw: bool = False):
        W = np.asarray(words, dtype=np.int64)
        if W.ndim != 2:
            raise ValidationError("codewords must form a 2-D array")
        if W.size and ((W < 0).any() or (W >= field.q).any()):
            raise ValidationError(f"codeword symbols outside GF({field.q})")
        if W.shape[0] == 0:
            raise ValidationError("empty codebook")
        _, first = np.unique(W, axis=0, return_index=True)
        first.sort()
        self.duplicates = W.shape[0] - first.size
        if self.duplicates and not raw:
            raise ValidationError(f"{self.duplicates} duplicate codewords")
        self.field = field
        self.raw_size = W.shape[0]
        self.words = W[first]
        self.words.setflags(write=False)

    @property
    def n(self) -> int:
        return self.words.shape[1]

    @property
    def size(self) -> int:
        return self.words.shape[0]

    @property
    def k(self) -> float:
        """log_q of the number of distinct codewords (real-valued)."""
        return math.log(self.size) / math.log(self.field.q)

    def __repr__(self) -> str:
        return f"Codebook(GF({self.field.q}), n={self.n}, size={self.size})"


class LinearCode:
    """Linear code given by a k x n generator over ``field``.

    ``check=False`` skips the full-rank test; random ensembles use it, and
    :func:`min_distance` then reports weight 0 for a degenerate generator.
    """

    def __init__(self, field: Field, generator, parity=None, check: bool = True):
        G = np.atleast_2d(np.asarray(generator, dtype=np.int64))
        if G.size and ((G < 0).any() or (G >= field.q).any()):
            raise ValidationError(f"generator entries outside GF({field.q})")
        self.field = field
        self.generator = G
        self.generator.setflags(write=False)
        if check and linalg.rank(field, G) != G.shape[0]:
            raise ValidationError("generator matrix is not full row rank")
        if parity is not None:
            H = np.atleast_2d(np.asarray(parity, dtype=np.int64))
            if H.shape[1] != G.shape[1]:
                raise ValidationError("parity and generator lengths differ")
            if field.matmul(G, H.T).any():
                raise ValidationError("G H^T != 0")
            H.setflags(write=False)
            self.parity = H
        else:
            self.parity = None

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def parity_matrix(self) -> np.ndarray:
        if self.parity is not None:
            return self.parity
        return linalg.nullspace(self.field, self.generator)

    def iter_codewords(self, chunk: int = 4096) -> Iterator[np.ndarray]:
        """All q^k encodings in message order, in blocks of ``chunk`` rows."""
        q, k = self.field.q, self.k
        total = q**k
        if total > MAX_CODEWORDS:
            raise BudgetExceeded(f"{total} codewords exceed budget {MAX_CODEWORDS}")
        powers = q ** np.arange(k, dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            msgs = (idx[:, None] // powers) % q
            yield self.field.matmul(msgs, self.generator)

    @cached_property
    def _codebook(self) -> Codebook:
        words = np.concatenate(list(self.iter_codewords()), axis=0)
        return Codebook(self.field, words, raw=True)

    def codebook(self) -> Codebook:
        return self._codebook

    def __repr__(self) -> str:
        return f"LinearCode(GF({self.field.q}), n={self.n}, k={self.k})"


Code = Union[Codebook, LinearCode]


def as_codebook(code: Code) -> Codebook:
    return code.codebook() if isinstance(code, LinearCode) else code


def dimension(code: Code) -> float:
    return as_codebook(code).k if isinstance(code, Codebook) else float(code.k)


def _weights(words: np.ndarray) -> np.ndarray:
    return (words != 0).sum(axis=1)


def min_distance(code: Code, max_pairs: int = MAX_PAIRS) -> float:
    """Minimum Hamming distance; ``math.inf`` for a one-word code.

    Linear codes use the minimum weight over nonzero messages, which is 0
    when the generator is rank-deficient.
    """
    if isinstance(code, LinearCode):
        if code.k == 0:
            return math.inf
        best = code.n
        for b, block in enumerate(code.iter_codewords()):
            w = _weights(block)[1:] if b == 0 else _weights(block)
            if w.size:
                best = min(best, int(w.min()))
        return best
    W = code.words
    M = W.shape[0]
    if M < 2:
        return math.inf
    if M * (M - 1) // 2 > max_pairs:
        raise BudgetExceeded(f"{M * (M - 1) // 2} pairs exceed budget {max_pairs}")
    best = code.n
    for i in range(M - 1):
        d = int((W[i + 1:] != W[i]).sum(axis=1).min())
        if d < best:
            best = d
            if best == 1:
                break
    return best


def _distinct(words: np.ndarray, cols: Sequence[int], q: int) -> int:
    cols = list(cols)
    if not cols:
        return 1
    if len(cols) * math.log2(q) < 62:
        keys = words[:, cols] @ (q ** np.arange(len(cols), dtype=np.int64))
        return int(np.unique(keys).size)
    return int(np.unique(words[:, cols], axis=0).shape[0])


def projection_entropy(code: Code, coords: Iterable[int]) -> float:
    """log_q of the number of distinct restrictions of codewords to ``coords``."""
    coords = sorted(set(int(c) for c in coords))
    if not coords:
        return 0.0
    if isinstance(code, LinearCode):
        return float(linalg.rank(code.field, code.generator[:, coords]))
    cb = code
    return math.log(_distinct(cb.words, coords, cb.field.q)) / math.log(cb.field.q)


def _check_coords(n: int, coords: Iterable[int]) -> list[int]:
    out = sorted(set(int(c) for c in coords))
    if any(not 0 <= c < n for c in out):
        raise ValidationError(f"coordinates {out} outside 0..{n - 1}")
    return out


def verify_repair_set(code: Code, i: int, R: Iterable[int]) -> bool:
    """True iff the values on R determine coordinate i across the code."""
    cb = as_codebook(code)
    R = _check_coords(cb.n, R)
    if i in R:
        raise ValidationError(f"coordinate {i} lies in its own repair set")
    q = cb.field.q
    return _distinct(cb.words, R, q) == _distinct(cb.words, R + [i], q)


def locality_of(code: Code, max_subsets: int = MAX_SUBSETS) -> tuple[int, RepairProfile]:
    """Locality and a witnessing profile of per-coordinate minimal repair sets.

    Repair sets are searched by increasing size, lexicographically, first hit
    wins. Supersets of repair sets are repair sets, so the max of per-coordinate
    minima is the locality in the fixed-size sense as well.
    """
    cb = as_codebook(code)
    n, q, W = cb.n, cb.field.q, cb.words
    sets: list[tuple[int, ...]] = []
    tried = 0
    for i in range(n):
        others = [j for j in range(n) if j != i]
        if _distinct(W, others, q) != _distinct(W, others + [i], q):
            raise ValidationError(f"coordinate {i} is not recoverable from the others (d = 1)")
        found = None
        for s in range(1, n):
            for R in combinations(others, s):
                tried += 1
                if tried > max_subsets:
                    raise BudgetExceeded(f"locality search exceeded {max_subsets} subsets")
                if _distinct(W, R, q) == _distinct(W, R + (i,), q):
                    found = R
                    break
            if found is not None:
                break
        sets.append(found)
    profile = RepairProfile(tuple(sets))
    return profile.locality, profile


def repair_erasure(code: Code, word: Sequence, i: int, profile: RepairProfile) -> int:
    """Recover coordinate i of ``word`` (whose entry at i is ignored)."""
    R = list(profile.sets[i])
    F = code.field
    vals = [None if j == i else int(word[j]) for j in range(len(word))]
    if isinstance(code, LinearCode) and code.parity is not None:
        allowed = set(R) | {i}
        for h in code.parity:
            support = set(np.nonzero(h)[0].tolist())
            if h[i] and support <= allowed:
                acc = 0
                for j in support - {i}:
                    acc = F.add(acc, F.mul(int(h[j]), vals[j]))
                return F.mul(F.neg(acc), F.inv(int(h[i])))
    W = as_codebook(code).words
    target = np.array([vals[j] for j in R], dtype=np.int64)
    match = W[(W[:, R] == target).all(axis=1)] if R else W
    if match.shape[0] == 0:
        raise ValidationError("repair-set projection not found: word is not from this code")
    options = np.unique(match[:, i])
    if options.size != 1:
        raise ValidationError(f"repair set {R} does not determine coordinate {i}")
    return int(options[0])


def build_core_set(code: Code, profile: RepairProfile, t: int) -> tuple[int, ...]:
    """Coordinate set I with |I| = t(r+1) and H(I) <= t r.

    Greedy loop: take the smallest coordinate outside everything chosen so
    far, add its repair set, then pad with the smallest fresh coordinates
    until the set has m(r+1) elements after round m. Padding also applies
    in round 1 when the repair set is shorter than r.
    """
    n = len(profile)
    r = profile.locality
    k = dimension(code)
    if t < 1 or t * r > k + _TOL:
        raise ValidationError(f"t={t} outside 1..k/r = {k / r:.4g}")
    if n < t * (r + 1):
        raise ValidationError(f"n={n} < t(r+1)={t * (r + 1)}")
    chosen: set[int] = set()
    for m in range(1, t + 1):
        fresh = [c for c in range(n) if c not in chosen]
        if not fresh:
            raise ValidationError("no fresh coordinate left")
        a = fresh[0]
        chosen |= {a} | set(profile.sets[a])
        pad = m * (r + 1) - len(chosen)
        chosen |= set([c for c in range(n) if c not in chosen][:pad])
    return tuple(sorted(chosen))


def shorten_best_prefix(code: Code, coords: Iterable[int], m: float) -> Codebook:
    """Suffix code of the most popular restriction to ``coords``.

    Ties go to the lexicographically smallest restriction.
    """
    cb = as_codebook(code)
    I = _check_coords(cb.n, coords)
    if projection_entropy(cb, I) > m + _TOL:
        raise ValidationError(f"H(I) = {projection_entropy(cb, I):.6g} exceeds m = {m}")
    if not I:
        return cb
    rest = [c for c in range(cb.n) if c not in set(I)]
    prefixes, inverse, counts = np.unique(cb.words[:, I], axis=0, return_inverse=True,
                                          return_counts=True)
    best = int(np.argmax(counts))
    rows = cb.words[np.ravel(inverse) == best]
    return Codebook(cb.field, rows[:, rest])


def encode(code: LinearCode, message: Sequence[int]) -> np.ndarray:
    msg = np.asarray(message, dtype=np.int64).reshape(1, -1)
    if msg.shape[1] != code.k:
        raise ValidationError(f"message length {msg.shape[1]} != k = {code.k}")
    if (msg < 0).any() or (msg >= code.field.q).any():
        raise ValidationError("message symbols outside the field")
    return code.field.matmul(msg, code.generator)[0]


# -- JSON artifact form ---------------------------------------------------------

def code_to_dict(code: Code, profile: RepairProfile | None = None) -> dict:
    d = {"field": code.field.to_dict(), "n": code.n}
    if isinstance(code, LinearCode):
        d.update(k=code.k, generator=code.generator.tolist(),
                 parity=None if code.parity is None else code.parity.tolist(), codewords=None)
    else:
        d.update(k=code.k, generator=None, parity=None, codewords=code.words.tolist())
    d["repair_sets"] = None if profile is None else profile.to_list()
    return d


def code_from_dict(d: dict) -> tuple[Code, RepairProfile | None]:
    F = Field.from_dict(d["field"])
    if d.get("generator") is not None:
        code: Code = LinearCode(F, d["generator"], d.get("parity"), check=False)
    elif d.get("codewords") is not None:
        code = Codebook(F, d["codewords"], raw=True)
    else:
        raise ValidationError("artifact has neither generator nor codewords")
    if code.n != d.get("n", code.n):
        raise ValidationError("artifact length does not match its matrix")
    rs = d.get("repair_sets")
    return code, (RepairProfile(tuple(tuple(s) for s in rs)) if rs is not None else None)
