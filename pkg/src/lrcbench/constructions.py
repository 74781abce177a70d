"""Explicit and random locally recoverable code constructions.

Covers the binary Simplex family with its weight-3 Hamming parity rows,
parity augmentation of an arbitrary base code, extended Reed-Solomon over
GF(q^r) concatenated with a q-ary single parity check, the two random
ensembles (independent words, random linear outer code), and the exact and
Chernoff-type distance certificates that go with them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Optional

import numpy as np

from . import linalg
from .code import (Code, Codebook, LinearCode, RepairProfile, code_from_dict, code_to_dict,
                   locality_of, min_distance, verify_repair_set)
from .errors import BudgetExceeded, ValidationError
from .field import FIELD_CEILING, GF, Field, field_create, prime_power, symbol_map
from .optimize import grid_minimize

REJECTION_CAP = 100_000


@dataclass
class CodeArtifact:
    code: Code
    n: int
    k: float
    d_claimed: Optional[float]
    r_claimed: int
    q: int
    construction: str
    params: dict
    profile: RepairProfile
    seed: Optional[int] = None
    verified: bool = False

    def to_dict(self) -> dict:
        d = code_to_dict(self.code, self.profile)
        d["claims"] = {"n": self.n, "k": self.k, "d": self.d_claimed, "r": self.r_claimed,
                       "q": self.q}
        d.update(construction=self.construction, params=self.params, seed=self.seed,
                 verified=self.verified)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CodeArtifact":
        code, profile = code_from_dict(d)
        claims = d.get("claims") or {}
        if profile is None:
            _, profile = locality_of(code)
        return cls(code=code, n=claims.get("n", code.n), k=claims.get("k", d.get("k")),
                   d_claimed=claims.get("d"), r_claimed=claims.get("r", profile.locality),
                   q=claims.get("q", code.field.q), construction=d.get("construction", "unknown"),
                   params=d.get("params") or {}, profile=profile, seed=d.get("seed"),
                   verified=bool(d.get("verified", False)))


def verify_artifact(art: CodeArtifact) -> dict:
    """Measure distance and locality by brute force and compare with the claims."""
    d = min_distance(art.code)
    r, _ = locality_of(art.code)
    profile_ok = len(art.profile) == art.code.n and all(
        verify_repair_set(art.code, i, R) for i, R in enumerate(art.profile.sets))
    d_ok = art.d_claimed is None or d >= art.d_claimed
    ok = bool(d_ok and r <= art.r_claimed and profile_ok and art.n == art.code.n)
    art.verified = ok
    return {"construction": art.construction, "n": art.code.n, "k": art.k,
            "d_claimed": art.d_claimed, "d_measured": d, "r_claimed": art.r_claimed,
            "r_measured": r, "profile_locality": art.profile.locality,
            "profile_valid": profile_ok, "verified": ok}


def _block_profile(block_sizes: list[int]) -> RepairProfile:
    sets, start = [], 0
    for size in block_sizes:
        block = list(range(start, start + size))
        sets.extend(tuple(j for j in block if j != i) for i in block)
        start += size
    return RepairProfile(tuple(sets))


# -- Simplex / Hamming ------------------------------------------------------------

def simplex_generator(m: int) -> np.ndarray:
    """m x (2^m - 1); column j (0-based) is the binary expansion of j+1, LSB in row 0."""
    cols = np.arange(1, 2**m)
    return ((cols[None, :] >> np.arange(m)[:, None]) & 1).astype(np.int64)


def hamming_weight3_generator(m: int) -> np.ndarray:
    """Rows with ones at columns (i, 2^j, i + 2^j), 1 <= j <= m-1, 1 <= i < 2^j (1-based)."""
    if m < 2:
        raise ValidationError("m must be >= 2")
    n = 2**m - 1
    rows = []
    for j in range(1, m):
        for i in range(1, 2**j):
            row = np.zeros(n, dtype=np.int64)
            row[[i - 1, 2**j - 1, i + 2**j - 1]] = 1
            rows.append(row)
    return np.array(rows, dtype=np.int64)


def build_simplex(m: int) -> CodeArtifact:
    if m < 2:
        raise ValidationError("Simplex code needs m >= 2")
    G = simplex_generator(m)
    H = hamming_weight3_generator(m)
    n = 2**m - 1
    sets: list[tuple[int, ...] | None] = [None] * n
    for row in H:
        support = np.nonzero(row)[0].tolist()
        for c in support:
            if sets[c] is None:
                sets[c] = tuple(x for x in support if x != c)
    code = LinearCode(GF(2), G, parity=H)
    return CodeArtifact(code, n=n, k=m, d_claimed=2 ** (m - 1), r_claimed=2, q=2,
                        construction="simplex", params={"m": m},
                        profile=RepairProfile(tuple(sets)))


# -- parity augmentation ------------------------------------------------------------

def augment_blocks(n: int, r: int) -> list[int]:
    """Sizes of ceil(n/(r+1)) contiguous blocks, as equal as possible, each >= 2."""
    if n < 2 or r < 1:
        raise ValidationError("need n >= 2 and r >= 1")
    b = -(-n // (r + 1))
    if n // b < 2:
        b = n // 2
    base, extra = divmod(n, b)
    return [base + 1] * extra + [base] * (b - extra)


def gv_augment(H0, r: int, field: Field | None = None) -> CodeArtifact:
    """Append disjoint all-ones parity rows to the parity matrix H0."""
    F = field or GF(2)
    H0 = np.atleast_2d(np.asarray(H0, dtype=np.int64))
    n = H0.shape[1]
    sizes = augment_blocks(n, r)
    extra = np.zeros((len(sizes), n), dtype=np.int64)
    start = 0
    for b, size in enumerate(sizes):
        extra[b, start:start + size] = 1
        start += size
    base_G = linalg.nullspace(F, H0)
    H = np.vstack([H0, extra]) if H0.size else extra
    G = linalg.nullspace(F, H)
    if G.shape[0] == 0:
        raise ValidationError("augmented code has dimension 0")
    d_base = min_distance(LinearCode(F, base_G)) if base_G.shape[0] else math.inf
    code = LinearCode(F, G, parity=linalg.row_basis(F, H))
    return CodeArtifact(code, n=n, k=code.k, d_claimed=d_base, r_claimed=max(sizes) - 1,
                        q=F.q, construction="gv-augment",
                        params={"r": r, "k0": int(base_G.shape[0]), "blocks": sizes},
                        profile=_block_profile(sizes))


# -- concatenation with a single parity check ---------------------------------------------

def _fields(q: int, r: int) -> tuple[Field, Field]:
    p, m = prime_power(q)
    if q**r > FIELD_CEILING:
        raise ValidationError(f"q^r = {q**r} exceeds field ceiling")
    return GF(q), field_create(p, m * r)


def concat_expand(small: Field, big: Field, outer: np.ndarray) -> np.ndarray:
    """Map each GF(q^r) symbol to r GF(q) symbols plus their sum."""
    sm = symbol_map(big, small)
    exp = sm.expand(outer)                      # (..., n_o, r)
    par = exp[..., 0]
    for j in range(1, exp.shape[-1]):
        par = small.add_arr(par, exp[..., j])
    blocks = np.concatenate([exp, par[..., None]], axis=-1)
    return blocks.reshape(*outer.shape[:-1], -1)


def _expanded_generator(small: Field, big: Field, outer_G: np.ndarray) -> np.ndarray:
    sm = symbol_map(big, small)
    rows = []
    for row in outer_G:
        for beta in sm.basis:
            rows.append(concat_expand(small, big, big.mul_arr(row, beta)))
    return np.array(rows, dtype=np.int64)


def build_concat_rs_spc(q: int, r: int, k_o: int) -> CodeArtifact:
    """Extended RS over GF(q^r) (all q^r evaluation points) with an SPC inner code."""
    small, big = _fields(q, r)
    Q = big.q
    if not 1 <= k_o <= Q:
        raise ValidationError(f"k_o must be in 1..{Q}")
    points = np.arange(Q, dtype=np.int64)
    outer_G = np.array([[big.pow(int(a), i) for a in points] for i in range(k_o)],
                       dtype=np.int64)
    G = _expanded_generator(small, big, outer_G)
    code = LinearCode(small, G)
    return CodeArtifact(code, n=(r + 1) * Q, k=k_o * r, d_claimed=2 * (Q - k_o + 1),
                        r_claimed=r, q=q, construction="concat-rs-spc",
                        params={"q": q, "r": r, "k_o": k_o},
                        profile=_block_profile([r + 1] * Q))


# -- single parity check statistics -----------------------------------------------------

@dataclass(frozen=True)
class SpcWeightDistribution:
    q: int
    r: int
    masses: tuple[Fraction, ...]

    def __getitem__(self, j: int) -> Fraction:
        return self.masses[j]


def spc_weight_distribution(q: int, r: int) -> SpcWeightDistribution:
    """Weight law of a uniformly random word of the [r+1, r] q-ary SPC code."""
    if q < 2 or r < 1:
        raise ValidationError("need q >= 2, r >= 1")
    masses = []
    for j in range(r + 2):
        sign = 1 if j % 2 == 0 else -1
        term = Fraction(q - 1) ** (j - 1) + sign
        masses.append(Fraction(math.comb(r + 1, j), q**r) * Fraction(q - 1, q) * term)
    return SpcWeightDistribution(q, r, tuple(masses))


def spc_weight_counts(q: int, r: int) -> list[int]:
    """Weight enumerator of the SPC code by direct enumeration (q^r words)."""
    if q**r > 1 << 16:
        raise BudgetExceeded("SPC enumeration too large")
    F = GF(q)
    data = np.array(list(product(range(q), repeat=r)), dtype=np.int64)
    par = data[:, 0]
    for j in range(1, r):
        par = F.add_arr(par, data[:, j])
    w = (data != 0).sum(axis=1) + (par != 0)
    return np.bincount(w, minlength=r + 2).tolist()


def spc_mgf(q: int, r: int, t: float) -> float:
    """E exp(-t X) for X the weight of a uniform SPC codeword."""
    if t < 0:
        raise ValidationError("t must be >= 0")
    x = math.exp(-t)
    return ((1 + x * (q - 1)) ** (r + 1) + (q - 1) * (1 - x) ** (r + 1)) / q ** (r + 1)


def _mgf_x(q: int, r: int, x):
    return ((1 + x * (q - 1)) ** (r + 1) + (q - 1) * (1 - x) ** (r + 1)) / q ** (r + 1)


def exact_block_tail(q: int, r: int, blocks: int, d: int, max_states: int = 1_000_000) -> Fraction:
    """Pr(X_1 + ... + X_blocks < d), exactly, for i.i.d. SPC weights."""
    if blocks * (r + 2) > max_states:
        raise BudgetExceeded("block convolution too large")
    if d <= 0:
        return Fraction(0)
    law = spc_weight_distribution(q, r).masses
    dist = [Fraction(1)]
    for _ in range(blocks):
        new = [Fraction(0)] * (len(dist) + r + 1)
        for w, pw in enumerate(dist):
            if pw:
                for j, pj in enumerate(law):
                    new[w + j] += pw * pj
        dist = new
    return sum(dist[:d], Fraction(0))


@dataclass(frozen=True)
class DistanceCertificate:
    chernoff_tail: float
    expected_bad: float
    certified: bool
    x_opt: float


def ensemble_distance_certificate(q: int, r: int, n: int, k: float, d: int) -> DistanceCertificate:
    """Chernoff bound on Pr(W < d) and the resulting expected count of light words.

    The bound ``x^{-d} (E x^X)^{n/(r+1)}`` is minimised over x = e^{-t} in (0, 1].
    """
    if n % (r + 1):
        raise ValidationError("r+1 must divide n")
    if d <= 0:
        return DistanceCertificate(0.0, 0.0, True, 0.0)
    blocks = n // (r + 1)

    def log_tail(x):
        return -d * np.log(x) + blocks * np.log(_mgf_x(q, r, x))

    x, lv = grid_minimize(log_tail, 0.0, 1.0)
    tail = math.exp(lv)
    expected = math.exp(lv + k * math.log(q))
    return DistanceCertificate(tail, expected, expected < 1.0, x)


def lll_existence_check(q: int, r: int, n: int, M: int, d: int) -> bool:
    """Local-lemma condition Pr(W < d) (2M - 1) < 1/e, with the exact tail."""
    if n % (r + 1):
        raise ValidationError("r+1 must divide n")
    if M < 2:
        raise ValidationError("M must be >= 2")
    tail = exact_block_tail(q, r, n // (r + 1), d)
    return tail * (2 * M - 1) < Fraction(math.exp(-1))


# -- random ensembles --------------------------------------------------------------

def _rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, stream])))


def sample_random_lrc(q: int, r: int, n: int, M: int, seed: int, stream: int = 0) -> CodeArtifact:
    """M independent words, each block = r uniform symbols followed by their sum."""
    if n % (r + 1):
        raise ValidationError("r+1 must divide n")
    F = GF(q)
    blocks = n // (r + 1)
    data = _rng(seed, stream).integers(0, q, size=(M, blocks, r))
    par = data[..., 0]
    for j in range(1, r):
        par = F.add_arr(par, data[..., j])
    words = np.concatenate([data, par[..., None]], axis=-1).reshape(M, n)
    code = Codebook(F, words, raw=True)
    return CodeArtifact(code, n=n, k=math.log(M) / math.log(q), d_claimed=None, r_claimed=r,
                        q=q, construction="thm2-ensemble",
                        params={"q": q, "r": r, "n": n, "M": M, "stream": stream,
                                "duplicates": code.duplicates},
                        profile=_block_profile([r + 1] * blocks), seed=seed)


def sample_lrc_with_distance(q: int, r: int, n: int, M: int, d: int, seed: int,
                             max_iter: int = REJECTION_CAP) -> CodeArtifact:
    """Rejection-sample the independent-word ensemble until M distinct words at distance >= d."""
    for attempt in range(max_iter):
        art = sample_random_lrc(q, r, n, M, seed, stream=attempt)
        if art.code.duplicates == 0 and min_distance(art.code) >= d:
            art.d_claimed = d
            art.params["attempts"] = attempt + 1
            return art
    raise BudgetExceeded(f"no code with d >= {d} in {max_iter} samples")


def sample_random_concat(q: int, r: int, n: int, k: int, seed: int) -> CodeArtifact:
    """Uniform random linear outer code over GF(q^r), SPC inner code.

    The outer generator is fully uniform, so it may be rank-deficient; the
    resulting code then has minimum weight 0 over nonzero messages.
    """
    if n % (r + 1) or k % r:
        raise ValidationError("need (r+1) | n and r | k")
    n_o, k_o = n // (r + 1), k // r
    if k_o > n_o:
        raise ValidationError("outer dimension exceeds outer length")
    small, big = _fields(q, r)
    outer_G = _rng(seed).integers(0, big.q, size=(k_o, n_o))
    G = _expanded_generator(small, big, outer_G)
    code = LinearCode(small, G, check=False)
    return CodeArtifact(code, n=n, k=k, d_claimed=None, r_claimed=r, q=q,
                        construction="thm3-concat",
                        params={"q": q, "r": r, "n": n, "k": k, "outer_generator": outer_G.tolist()},
                        profile=_block_profile([r + 1] * n_o), seed=seed)


def concat_monte_carlo(q: int, r: int, n: int, k: int, d: int, trials: int,
                       seed0: int = 0) -> float:
    """Fraction of seeds seed0.. whose random concatenated code has min weight < d."""
    bad = 0
    for s in range(seed0, seed0 + trials):
        if min_distance(sample_random_concat(q, r, n, k, s).code) < d:
            bad += 1
    return bad / trials
