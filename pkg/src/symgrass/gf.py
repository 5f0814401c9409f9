"""Exact arithmetic in GF(p^m) for small prime powers.

Elements are encoded as integers in [0, q): the base-p digits of the
integer, little-endian, are the coefficients of the residue polynomial.
The reduction modulus is deterministic: the monic irreducible of degree
m over GF(p) whose coefficient vector has the smallest integer encoding.

Fields small enough for table-driven work (q <= 256) expose dense numpy
add/sub/mul/neg/inv tables used by the vectorized layers; scalar
operations work for any q up to the construction bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegreeOutOfRange, DivisionByZero, NonPrime, SpecMismatch

# field_make refuses orders above this
ORDER_BOUND = 1 << 16
# dense q x q tables only below this (uint8 element storage)
TABLE_MAX = 256


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _int_to_poly(n: int, p: int) -> tuple[int, ...]:
    """Little-endian base-p digit vector (empty for 0)."""
    digits = []
    while n:
        n, r = divmod(n, p)
        digits.append(r)
    return tuple(digits)


def _poly_to_int(coeffs, p: int) -> int:
    n = 0
    for c in reversed(coeffs):
        n = n * p + c
    return n


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) - 1 >= dm and a:
        a = _poly_trim(a)
        if len(a) - 1 < dm:
            break
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(mod):
            a[shift + i] = (a[shift + i] - factor * c) % p
        a = _poly_trim(a)
    return _poly_trim(a)


def _is_irreducible(coeffs, p):
    """Trial division by all monic polynomials of degree 1..deg/2."""
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            div = list(_int_to_poly(low, p))
            div += [0] * (d - len(div)) + [1]
            if not _poly_mod(coeffs, div, p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for low in range(p**m):
        cand = list(_int_to_poly(low, p))
        cand += [0] * (m - len(cand)) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible of degree %d over GF(%d)" % (m, p))


@dataclass(frozen=True)
class GFTables:
    """Dense lookup tables for one field; arrays indexed by element repr."""

    add: np.ndarray  # (q, q)
    sub: np.ndarray  # (q, q)
    mul: np.ndarray  # (q, q)
    neg: np.ndarray  # (q,)
    inv: np.ndarray  # (q,) entry 0 is unused


class FieldSpec:
    """GF(p^m) with a fixed modulus; immutable and shareable.

    Scalar arithmetic methods take and return integer element reprs.
    """

    __slots__ = ("p", "m", "q", "modulus", "_tables")

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._tables = None

    def __repr__(self):
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    # -- scalar arithmetic on integer reprs --------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        pa, pb = _int_to_poly(a, self.p), _int_to_poly(b, self.p)
        out = [0] * max(len(pa), len(pb))
        for i, c in enumerate(pa):
            out[i] = c
        for i, c in enumerate(pb):
            out[i] = (out[i] + c) % self.p
        return _poly_to_int(_poly_trim(out), self.p)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return _poly_to_int([(-c) % self.p for c in _int_to_poly(a, self.p)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        prod = _poly_mul(_int_to_poly(a, self.p), _int_to_poly(b, self.p), self.p)
        return _poly_to_int(_poly_mod(prod, self.modulus, self.p), self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        if self.m == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def from_int(self, n: int) -> int:
        """Reduce an arbitrary integer to an element: n mod p mapped into GF(p) < GF(q)."""
        return n % self.p

    # -- dense tables -------------------------------------------------------

    @property
    def tables(self) -> GFTables:
        """Lazy add/sub/mul/neg/inv lookup tables (q <= 256 only)."""
        if self._tables is None:
            if self.q > TABLE_MAX:
                raise DegreeOutOfRange(
                    f"dense tables limited to q <= {TABLE_MAX}, got q = {self.q}"
                )
            self._tables = self._build_tables()
        return self._tables

    def _build_tables(self) -> GFTables:
        q, p, m = self.q, self.p, self.m
        digits = np.zeros((q, m), dtype=np.int64)
        vals = np.arange(q)
        for i in range(m):
            digits[:, i] = vals % p
            vals = vals // p
        powers = p ** np.arange(m)

        summed = (digits[:, None, :] + digits[None, :, :]) % p
        add = (summed * powers).sum(axis=2).astype(np.uint8)
        neg = (((-digits) % p) * powers).sum(axis=1).astype(np.uint8)
        sub = add[:, neg]

        # multiplication via a generator of the unit group
        gen = self._find_generator()
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = self.mul(x, gen)
        exp[q - 1 :] = exp[: q - 1]
        mul = np.zeros((q, q), dtype=np.uint8)
        if q > 1:
            lg = log[1:]
            mul[1:, 1:] = exp[lg[:, None] + lg[None, :]]
        inv = np.zeros(q, dtype=np.uint8)
        inv[1:] = exp[(q - 1 - lg) % (q - 1)]
        return GFTables(add=add, sub=sub, mul=mul, neg=neg, inv=inv)

    def _find_generator(self) -> int:
        n = self.q - 1
        factors = set()
        f, r = 2, n
        while f * f <= r:
            while r % f == 0:
                factors.add(f)
                r //= f
            f += 1
        if r > 1:
            factors.add(r)
        for g in range(2, self.q):
            if all(self.pow(g, n // f) != 1 for f in factors):
                return g
        return 1  # q = 2


@lru_cache(maxsize=None)
def field_make(p: int, m: int) -> FieldSpec:
    """Construct GF(p^m) with the deterministic smallest-encoding modulus."""
    if not _is_prime(p):
        raise NonPrime(p)
    if m < 1 or p**m > ORDER_BOUND:
        raise DegreeOutOfRange(f"need m >= 1 and p^m <= {ORDER_BOUND}")
    return FieldSpec(p, m, _smallest_irreducible(p, m))


def field_from_order(q: int) -> FieldSpec:
    """Construct GF(q) from the order alone; q must be a prime power."""
    if q < 2:
        raise DegreeOutOfRange(f"no field of order {q}")
    p = 2
    while q % p:
        p += 1
        if p * p > q:
            p = q
            break
    m = 0
    r = q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise NonPrime(q)
    return field_make(p, m)


@dataclass(frozen=True)
class FieldElement:
    """Scalar wrapper binding a repr to its field; supports arithmetic operators."""

    repr: int
    spec: FieldSpec

    def __post_init__(self):
        if not 0 <= self.repr < self.spec.q:
            raise SpecMismatch(f"repr {self.repr} outside [0, {self.spec.q})")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatch("elements from different fields")
            return other.repr
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec.add(self.repr, v), self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec.sub(self.repr, v), self.spec)

    def __mul__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec.mul(self.repr, v), self.spec)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.spec.neg(self.repr), self.spec)

    def __truediv__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec.div(self.repr, v), self.spec)

    def __pow__(self, e: int):
        return FieldElement(self.spec.pow(self.repr, e), self.spec)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec.inv(self.repr), self.spec)

    def __int__(self):
        return self.repr

    __index__ = __int__

    def __bool__(self):
        return self.repr != 0


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def field_elements(spec: FieldSpec) -> list[FieldElement]:
    """All q elements in increasing repr order (0, then 1, then the rest)."""
    return [FieldElement(v, spec) for v in range(spec.q)]


def solve_quadratic(spec: FieldSpec, b: int, c: int) -> set[int]:
    """Exact root set of x^2 + b*x + c over the field, by enumeration."""
    b, c = int(b), int(c)
    roots = set()
    for x in range(spec.q):
        if spec.add(spec.add(spec.mul(x, x), spec.mul(b, x)), c) == 0:
            roots.add(x)
    return roots
