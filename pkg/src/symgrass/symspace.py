"""The evaluation domain of symmetric matrices over GF(q) and its minor combinatorics.

Evaluation points are the n = q^(l(l+1)/2) symmetric l x l matrices. Each
point owns a canonical index: read the upper-triangle entries in row-major
order as base-q digits, most significant first. All generator matrices,
codewords and reports use this coordinate order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, IndexOutOfRange, ShapeMismatch
from .gf import FieldSpec

POINT_BUDGET = 1 << 24


def dim_sym(ell: int) -> int:
    """Number of upper-triangle entries of an l x l symmetric matrix."""
    return ell * (ell + 1) // 2


def ut_index(i: int, j: int, ell: int) -> int:
    """Row-major position of upper-triangle entry (i, j), 1-based, i <= j."""
    return (i - 1) * ell - (i - 1) * (i - 2) // 2 + (j - i)


def entry_column(i: int, j: int, ell: int, symmetric: bool) -> int:
    """Point-array column holding entry (i, j); folds to the upper triangle
    for symmetric points, row-major over all l^2 entries otherwise."""
    if symmetric:
        if i > j:
            i, j = j, i
        return ut_index(i, j, ell)
    return (i - 1) * ell + (j - 1)


def points_array(ell: int, spec: FieldSpec, symmetric: bool = True,
                 budget: int = POINT_BUDGET) -> np.ndarray:
    """All evaluation points as an (n, digits) uint8 array in canonical order."""
    d = dim_sym(ell) if symmetric else ell * ell
    n = spec.q**d
    if n > budget:
        raise BudgetExceeded(n, budget)
    spec.tables  # force the dtype constraint (q <= 256) early
    pts = np.zeros((n, d), dtype=np.uint8)
    idx = np.arange(n)
    for t in range(d):
        pts[:, t] = (idx // spec.q ** (d - 1 - t)) % spec.q
    return pts


@dataclass(frozen=True)
class SymMatrix:
    """An l x l symmetric matrix over a field, stored as its upper triangle."""

    ell: int
    spec: FieldSpec
    upper: tuple[int, ...]  # row-major upper-triangle entry reprs

    def __post_init__(self):
        if len(self.upper) != dim_sym(self.ell):
            raise ShapeMismatch(
                f"expected {dim_sym(self.ell)} upper entries, got {len(self.upper)}"
            )
        if any(not 0 <= v < self.spec.q for v in self.upper):
            raise IndexOutOfRange("entry repr outside field")

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.ell and 1 <= j <= self.ell):
            raise IndexOutOfRange(f"entry ({i},{j}) outside [{self.ell}]^2")
        if i > j:
            i, j = j, i
        return self.upper[ut_index(i, j, self.ell)]

    def full(self) -> np.ndarray:
        m = np.zeros((self.ell, self.ell), dtype=np.int64)
        for i in range(1, self.ell + 1):
            for j in range(1, self.ell + 1):
                m[i - 1, j - 1] = self.entry(i, j)
        return m

    @property
    def index(self) -> int:
        n = 0
        for v in self.upper:
            n = n * self.spec.q + v
        return n

    @classmethod
    def from_index(cls, idx: int, ell: int, spec: FieldSpec) -> "SymMatrix":
        d = dim_sym(ell)
        digits = []
        for t in range(d):
            digits.append((idx // spec.q ** (d - 1 - t)) % spec.q)
        return cls(ell, spec, tuple(digits))

    @classmethod
    def from_full(cls, m: np.ndarray, spec: FieldSpec) -> "SymMatrix":
        m = np.asarray(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeMismatch(f"need a square matrix, got {m.shape}")
        ell = m.shape[0]
        if not np.array_equal(m, m.T):
            raise ShapeMismatch("matrix is not symmetric")
        upper = tuple(
            int(m[i - 1, j - 1]) for i in range(1, ell + 1) for j in range(i, ell + 1)
        )
        return cls(ell, spec, upper)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> int:
        return minor_value(self.full(), rows, cols, self.spec)


def enumerate_symmetric(ell: int, spec: FieldSpec,
                        budget: int = POINT_BUDGET) -> Iterator[SymMatrix]:
    """All symmetric matrices in canonical-index order, lazily."""
    if ell < 1:
        raise IndexOutOfRange("need ell >= 1")
    n = spec.q ** dim_sym(ell)
    if n > budget:
        raise BudgetExceeded(n, budget)

    def gen():
        for idx in range(n):
            yield SymMatrix.from_index(idx, ell, spec)

    return gen()


def minor_value(matrix: np.ndarray, rows: Sequence[int], cols: Sequence[int],
                spec: FieldSpec) -> int:
    """det of the submatrix on 1-based row/column sets; the empty minor is 1."""
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ShapeMismatch(f"|I| = {len(rows)} but |J| = {len(cols)}")
    matrix = np.asarray(matrix)
    size = matrix.shape[0]
    for v in rows + cols:
        if not 1 <= v <= size:
            raise IndexOutOfRange(f"index {v} outside [{size}]")
    s = len(rows)
    if s == 0:
        return 1
    acc = 0
    neg_one = spec.neg(1)
    for perm in permutations(range(s)):
        inversions = sum(
            1 for a in range(s) for b in range(a + 1, s) if perm[a] > perm[b]
        )
        term = 1 if inversions % 2 == 0 else neg_one
        for a in range(s):
            term = spec.mul(term, int(matrix[rows[a] - 1, cols[perm[a]] - 1]))
        acc = spec.add(acc, term)
    return acc


def eval_minor_at_points(rows: Sequence[int], cols: Sequence[int],
                         points: np.ndarray, ell: int, spec: FieldSpec,
                         symmetric: bool = True) -> np.ndarray:
    """Vectorized minor values over a full point array; returns an (n,) uint8 vector."""
    t = spec.tables
    n = points.shape[0]
    s = len(rows)
    if len(cols) != s:
        raise ShapeMismatch(f"|I| = {s} but |J| = {len(cols)}")
    if s == 0:
        return np.ones(n, dtype=np.uint8)
    acc = np.zeros(n, dtype=np.uint8)
    for perm in permutations(range(s)):
        inversions = sum(
            1 for a in range(s) for b in range(a + 1, s) if perm[a] > perm[b]
        )
        term = points[:, entry_column(rows[0], cols[perm[0]], ell, symmetric)]
        for a in range(1, s):
            col = points[:, entry_column(rows[a], cols[perm[a]], ell, symmetric)]
            term = t.mul[term, col]
        if inversions % 2:
            term = t.neg[term]
        acc = t.add[acc, term]
    return acc


def evaluation_matrix(pairs, points: np.ndarray, ell: int, spec: FieldSpec,
                      symmetric: bool = True) -> np.ndarray:
    """Stack minor evaluations of each pair over all points into a (k, n) matrix."""
    g = np.zeros((len(pairs), points.shape[0]), dtype=np.uint8)
    for r, pair in enumerate(pairs):
        rows, cols = (pair.rows, pair.cols) if hasattr(pair, "rows") else pair
        g[r] = eval_minor_at_points(rows, cols, points, ell, spec, symmetric)
    return g


def congruence_translate_permutation(ell: int, spec: FieldSpec, a: np.ndarray,
                                     s: np.ndarray | None = None,
                                     budget: int = POINT_BUDGET) -> np.ndarray:
    """Canonical-index permutation of the point set under M -> A^T M A + S.

    Returns perm with perm[i] = index of the image of the i-th point.
    """
    t = spec.tables
    a = np.asarray(a)
    pts = points_array(ell, spec, symmetric=True, budget=budget)
    n = pts.shape[0]
    perm = np.zeros(n, dtype=np.int64)
    for i in range(1, ell + 1):
        for j in range(i, ell + 1):
            acc = np.zeros(n, dtype=np.uint8)
            for u in range(1, ell + 1):
                for v in range(1, ell + 1):
                    cuv = spec.mul(int(a[u - 1, i - 1]), int(a[v - 1, j - 1]))
                    if cuv:
                        col = pts[:, entry_column(u, v, ell, True)]
                        acc = t.add[acc, t.mul[cuv, col]]
            if s is not None and int(s[i - 1, j - 1]):
                acc = t.add[acc, int(s[i - 1, j - 1])]
            perm = perm * spec.q + acc
    return perm


@dataclass(frozen=True)
class DosetPair:
    """Ordered row/column index sets with rows[a] <= cols[a] componentwise."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.cols):
            raise ShapeMismatch("row and column sets differ in size")
        for seq in (self.rows, self.cols):
            if any(seq[a] >= seq[a + 1] for a in range(len(seq) - 1)):
                raise IndexOutOfRange("index sets must be strictly increasing")
        if any(r > c for r, c in zip(self.rows, self.cols)):
            raise IndexOutOfRange(f"pair ({self.rows},{self.cols}) violates rows[a] <= cols[a]")

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def spread(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.rows) | set(self.cols)))

    def contained_in(self, other: "DosetPair") -> bool:
        return set(self.rows) <= set(other.rows) and set(self.cols) <= set(other.cols)

    def __str__(self):
        fmt = lambda s: ",".join(map(str, s)) if s else "-"
        return f"({fmt(self.rows)}|{fmt(self.cols)})"


EMPTY_PAIR = DosetPair((), ())


def doset_pairs(ell: int) -> list[DosetPair]:
    """All doset pairs on [ell], ordered by (size, lex rows, lex cols)."""
    if ell < 1:
        raise IndexOutOfRange("need ell >= 1")
    out = []
    for t in range(ell + 1):
        for rows in combinations(range(1, ell + 1), t):
            for cols in combinations(range(1, ell + 1), t):
                if all(r <= c for r, c in zip(rows, cols)):
                    out.append(DosetPair(rows, cols))
    return out


def all_pairs(ell: int) -> list[DosetPair | tuple]:
    """All (rows, cols) index pairs with |rows| = |cols|, doset or not,
    in the same (size, lex, lex) order; used by the full-matrix code variant."""
    out = []
    for t in range(ell + 1):
        for rows in combinations(range(1, ell + 1), t):
            for cols in combinations(range(1, ell + 1), t):
                out.append((rows, cols))
    return out


def narayana(n: int, k: int) -> int:
    if not 1 <= k <= n:
        return 0
    return math.comb(n, k) * math.comb(n, k - 1) // n


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def count_fullrank_symmetric(ell: int, spec: FieldSpec,
                             budget: int = POINT_BUDGET) -> tuple[int, int]:
    """(enumerated, closed-form) counts of invertible symmetric matrices."""
    pts = points_array(ell, spec, symmetric=True, budget=budget)
    full = tuple(range(1, ell + 1))
    dets = eval_minor_at_points(full, full, pts, ell, spec, symmetric=True)
    enumerated = int(np.count_nonzero(dets))
    q = spec.q
    formula = Fraction(q) ** math.comb(ell + 1, 2)
    for i in range(1, (ell + 1) // 2 + 1):
        formula *= 1 - Fraction(1, q ** (2 * i - 1))
    assert formula.denominator == 1
    return enumerated, int(formula)


def isotropic_embed_check(matrix: np.ndarray, spec: FieldSpec) -> bool:
    """True iff the rowspan of [M | J] is totally isotropic for the alternating
    form with +1 blocks on the first l antidiagonal entries and -1 after."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"need a square matrix, got {m.shape}")
    ell = m.shape[0]
    two = 2 * ell
    rows = []
    for r in range(ell):
        x = [int(m[r, c]) % spec.q for c in range(ell)] + [0] * ell
        x[ell + (ell - 1 - r)] = 1  # J antidiagonal block
        rows.append(x)
    neg_one = spec.neg(1)
    for x in rows:
        for y in rows:
            b = 0
            for i in range(1, two + 1):
                j = two + 1 - i
                sign = 1 if i <= ell else neg_one
                b = spec.add(b, spec.mul(sign, spec.mul(x[i - 1], y[j - 1])))
            if b != 0:
                return False
    return True
