"""Finite fields GF(p^m) with table-driven arithmetic.

Elements are plain integers in ``[0, q)``: the polynomial
``c0 + c1 x + ... + c_{m-1} x^{m-1}`` is packed base-p as ``sum(c_i p^i)``.
Scalar ops take ints; the ``*_arr`` variants take numpy integer arrays.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .errors import ValidationError

FIELD_CEILING = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p**m, or raise ValidationError."""
    if q < 2:
        raise ValidationError(f"q={q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValidationError(f"q={q} is not a prime power")
    return p, m


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p): coefficient tuples, constant term first ----------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over GF(p); b must have a nonzero leading coeff."""
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _trim(a)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for dd in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=dd):
            if not poly_mod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m.

    Lexicographic order is on the coefficient list read from the highest
    non-leading coefficient down, i.e. the packed integer value.
    """
    if m == 1:
        return (0, 1)
    for packed in range(p**m):
        low = [(packed // p**i) % p for i in range(m)]
        cand = tuple(low + [1])
        if is_irreducible(cand, p):
            return cand
    raise ValidationError(f"no irreducible polynomial of degree {m} over GF({p})")


class Field:
    """GF(p^m); immutable once built."""

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValidationError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValidationError(f"extension degree {m} < 1")
        q = p**m
        if q > FIELD_CEILING:
            raise ValidationError(f"field order {q} exceeds ceiling {FIELD_CEILING}")
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ValidationError("modulus must be monic of degree m")
            if not is_irreducible(modulus, p):
                raise ValidationError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p, self.m, self.q = p, m, q
        self.modulus = tuple(modulus)
        self._build_tables()

    # -- construction ---------------------------------------------------------
    def _slow_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if p == 2:
            mod = sum(c << i for i, c in enumerate(self.modulus))
            prod = 0
            while b:
                if b & 1:
                    prod ^= a
                b >>= 1
                a <<= 1
                if a >> m:
                    a ^= mod
            return prod
        ca = [(a // p**i) % p for i in range(m)]
        cb = [(b // p**i) % p for i in range(m)]
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = poly_mod(prod, self.modulus, p) if m > 1 else [prod[0] % p]
        return sum(c * p**i for i, c in enumerate(rem))

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        q, p, m = self.q, self.p, self.m
        if m == 1:
            g = 2 if q > 2 else 1
            factors = _prime_factors(q - 1)
            while any(pow(g, (q - 1) // f, q) == 1 for f in factors) and q > 2:
                g += 1
            exp = np.empty(q - 1, dtype=np.int64)
            x = 1
            for i in range(q - 1):
                exp[i] = x
                x = x * g % q
        else:
            factors = _prime_factors(q - 1)
            g = 2
            while any(self._slow_pow(g, (q - 1) // f) == 1 for f in factors):
                g += 1
            exp = np.empty(q - 1, dtype=np.int64)
            x = 1
            for i in range(q - 1):
                exp[i] = x
                x = self._slow_mul(x, g)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.generator = int(g)
        self._exp = exp
        self._log = log
        digits = np.array([[(a // p**i) % p for i in range(m)] for a in range(q)], dtype=np.int64)
        self._digits = digits
        self._weights = p ** np.arange(m, dtype=np.int64)
        neg = (((-digits) % p) @ self._weights).astype(np.int64)
        self._neg = neg
        for arr in (exp, log, digits, neg):
            arr.setflags(write=False)

    # -- scalar arithmetic ----------------------------------------------------
    def _check(self, *els: int) -> None:
        for a in els:
            if not 0 <= a < self.q:
                raise ValidationError(f"element {a} is not in GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return int(((self._digits[a] + self._digits[b]) % self.p) @ self._weights)

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def arith(self, op: str, a: int, b: int | None = None) -> int:
        """Dispatch by name: add, sub, mul, div, inv, neg, pow."""
        if op in ("inv", "neg"):
            return getattr(self, op)(a)
        if b is None:
            raise ValidationError(f"operation {op!r} needs a second operand")
        return getattr(self, op)(a, b)

    # -- vectorised arithmetic --------------------------------------------------
    def add_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._weights

    def neg_arr(self, a) -> np.ndarray:
        return self._neg[np.asarray(a, dtype=np.int64)]

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over the field."""
        A = np.atleast_2d(np.asarray(A, dtype=np.int64))
        B = np.atleast_2d(np.asarray(B, dtype=np.int64))
        if self.m == 1:
            return (A @ B) % self.p
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            out = self.add_arr(out, self.mul_arr(A[:, j:j + 1], B[j:j + 1, :]))
        return out

    def elements(self) -> range:
        return range(self.q)

    def poly(self, a: int) -> list[int]:
        """Coefficient list (constant first) of element a."""
        return [int(c) for c in self._digits[a]]

    # -- serialisation ----------------------------------------------------------
    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> "Field":
        return field_create(int(d["p"]), int(d["m"]), tuple(d.get("modulus") or ()) or None)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})" if self.m == 1 else f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def field_create(p: int, m: int = 1, modulus: tuple[int, ...] | None = None) -> Field:
    """Cached constructor; equal arguments return the same object."""
    return Field(p, m, modulus)


def GF(q: int) -> Field:
    p, m = prime_power(q)
    return field_create(p, m)


# -- symbol expansion GF(q^r) <-> GF(q)^r ---------------------------------------

class SymbolMap:
    """GF(q)-linear bijection between GF(q^r) and GF(q)^r.

    For a prime base field the coordinates are the polynomial coefficients of
    the big-field element (constant term first). For an extension base field
    the small field is embedded via a root of its modulus and the basis is
    ``1, g, ..., g^{r-1}`` for the smallest element g that yields a basis.
    """

    def __init__(self, big: Field, small: Field):
        if big.p != small.p or big.m % small.m:
            raise ValidationError(f"{big!r} is not an extension of {small!r}")
        self.big, self.small = big, small
        self.r = big.m // small.m
        r, q = self.r, small.q
        if small.m == 1:
            self.embed = np.arange(q, dtype=np.int64)
            self.basis = np.array([small.p**j for j in range(r)], dtype=np.int64)
        else:
            self.embed = self._embedding()
            self.basis = self._find_basis()
        coeffs = np.array(list(product(range(q), repeat=r)), dtype=np.int64)[:, ::-1]
        composed = self._compose_arr(coeffs)
        if len(set(composed.tolist())) != big.q:
            raise ValidationError("basis does not span the extension field")
        expand = np.empty((big.q, r), dtype=np.int64)
        expand[composed] = coeffs
        self._expand = expand
        self._expand.setflags(write=False)

    def _embedding(self) -> np.ndarray:
        big, small = self.big, self.small
        mod = small.modulus
        root = None
        for b in range(big.q):
            acc, power = 0, 1
            for c in mod:
                acc = big.add(acc, big.mul(c, power))
                power = big.mul(power, b)
            if acc == 0:
                root = b
                break
        emb = np.zeros(small.q, dtype=np.int64)
        for a in range(small.q):
            acc, power = 0, 1
            for c in small.poly(a):
                acc = big.add(acc, big.mul(c, power))
                power = big.mul(power, root)
            emb[a] = acc
        return emb

    def _find_basis(self) -> np.ndarray:
        big, r, q = self.big, self.r, self.small.q
        coeffs = np.array(list(product(range(q), repeat=r)), dtype=np.int64)
        for g in range(1, big.q):
            basis = np.array([big.pow(g, j) for j in range(r)], dtype=np.int64)
            self.basis = basis
            if len(set(self._compose_arr(coeffs).tolist())) == big.q:
                return basis
        raise ValidationError("no power basis found")

    def _compose_arr(self, coeffs: np.ndarray) -> np.ndarray:
        out = np.zeros(coeffs.shape[:-1], dtype=np.int64)
        for j in range(self.r):
            term = self.big.mul_arr(self.embed[coeffs[..., j]], self.basis[j])
            out = self.big.add_arr(out, term)
        return out

    def expand(self, e):
        """Big-field element(s) -> trailing axis of r small-field elements."""
        return self._expand[np.asarray(e, dtype=np.int64)]

    def compose(self, v):
        v = np.asarray(v, dtype=np.int64)
        if v.shape[-1] != self.r or (v < 0).any() or (v >= self.small.q).any():
            raise ValidationError("vector is not in GF(q)^r")
        return self._compose_arr(v)


@lru_cache(maxsize=None)
def symbol_map(big: Field, small: Field) -> SymbolMap:
    return SymbolMap(big, small)


def symbol_expand(big: Field, small: Field, e: int) -> tuple[int, ...]:
    big._check(e)
    return tuple(int(x) for x in symbol_map(big, small).expand(e))


def symbol_compose(big: Field, small: Field, v: Sequence[int]) -> int:
    return int(symbol_map(big, small).compose(v))
