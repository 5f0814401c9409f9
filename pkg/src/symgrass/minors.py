"""Linear combinations of doset minors and the affine congruence action.

A combination is a sparse coefficient map over the doset-pair basis. The
action f(X) -> f(A^T X A + S) is computed exactly by permuting the
function's value vector over all evaluation points and solving the result
back against the doset-minor evaluation basis; injectivity of the
evaluation map makes that solve unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AlreadyMinimal,
    CoefficientNotOne,
    EvenCharacteristic,
    LabelMismatch,
    NotMaximal,
    ShapeMismatch,
    SingularMatrix,
    SpecMismatch,
)
from .gf import FieldSpec
from .linalg import gf_matvec, reduce_against, rref
from .polys import Polynomial, expand_to_polynomial, normal_form, poly_add, poly_scale
from .symspace import (
    POINT_BUDGET,
    DosetPair,
    SymMatrix,
    congruence_translate_permutation,
    doset_pairs,
    evaluation_matrix,
    minor_value,
    points_array,
)


@dataclass
class MinorCombination:
    """An element of the doset-minor span, as a pair -> coefficient map."""

    ell: int
    spec: FieldSpec
    coeffs: dict[DosetPair, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for pair, c in self.coeffs.items():
            if any(v > self.ell for v in pair.rows + pair.cols):
                raise LabelMismatch(f"pair {pair} does not fit in [{self.ell}]")
            c = int(c)
            if not 0 <= c < self.spec.q:
                raise SpecMismatch(f"coefficient {c} outside [0, {self.spec.q})")
            if c:
                clean[pair] = c
        self.coeffs = clean

    @property
    def support(self) -> list[DosetPair]:
        return sorted(self.coeffs, key=lambda p: (p.size, p.rows, p.cols))

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, pair: DosetPair) -> int:
        return self.coeffs.get(pair, 0)

    def to_polynomial(self, reduce: bool = True) -> Polynomial:
        out: Polynomial = {}
        for pair, c in self.coeffs.items():
            p = expand_to_polynomial(pair.rows, pair.cols, self.ell, self.spec)
            out = poly_add(out, poly_scale(p, c, self.spec), self.spec)
        return normal_form(out, self.ell, self.spec) if reduce else out


def combination(ell: int, spec: FieldSpec, coeffs: dict) -> MinorCombination:
    """Build a combination from {(rows, cols): coeff} with plain tuples allowed."""
    mapping = {}
    for key, c in coeffs.items():
        pair = key if isinstance(key, DosetPair) else DosetPair(tuple(key[0]), tuple(key[1]))
        mapping[pair] = c
    return MinorCombination(ell, spec, mapping)


def evaluate(f: MinorCombination, point) -> int:
    """f at one evaluation point (a SymMatrix or a full square array)."""
    if isinstance(point, SymMatrix):
        if point.spec != f.spec:
            raise SpecMismatch("point field differs from combination field")
        if point.ell != f.ell:
            raise SpecMismatch(f"point size {point.ell} != {f.ell}")
        matrix = point.full()
    else:
        matrix = np.asarray(point)
        if matrix.shape != (f.ell, f.ell):
            raise ShapeMismatch(f"expected {f.ell}x{f.ell}, got {matrix.shape}")
    acc = 0
    for pair, c in f.coeffs.items():
        acc = f.spec.add(acc, f.spec.mul(c, minor_value(matrix, pair.rows, pair.cols, f.spec)))
    return acc


_BASIS_CACHE: dict = {}


def eval_basis(ell: int, spec: FieldSpec, budget: int = POINT_BUDGET):
    """Cached (pairs, G, R, pivots, T) for the doset evaluation basis,
    with R = T @ G the reduced form of the evaluation matrix G."""
    key = (ell, spec)
    if key not in _BASIS_CACHE:
        pairs = doset_pairs(ell)
        pts = points_array(ell, spec, symmetric=True, budget=budget)
        g = evaluation_matrix(pairs, pts, ell, spec, symmetric=True)
        r, pivots, t = rref(g, spec, transform=True)
        if len(pivots) != len(pairs):
            raise AssertionError("doset evaluation basis is rank deficient")
        _BASIS_CACHE[key] = (pairs, g, r, pivots, t)
    return _BASIS_CACHE[key]


def message_vector(f: MinorCombination, pairs: list[DosetPair]) -> np.ndarray:
    index = {p: i for i, p in enumerate(pairs)}
    msg = np.zeros(len(pairs), dtype=np.uint8)
    for pair, c in f.coeffs.items():
        if pair not in index:
            raise LabelMismatch(f"pair {pair} is not a basis label")
        msg[index[pair]] = c
    return msg


def weight(f: MinorCombination, budget: int = POINT_BUDGET) -> int:
    """Number of evaluation points where f is nonzero."""
    pairs, g, _, _, _ = eval_basis(f.ell, f.spec, budget)
    values = gf_matvec(message_vector(f, pairs), g, f.spec)
    return int(np.count_nonzero(values))


def act(f: MinorCombination, a: np.ndarray, s=None,
        budget: int = POINT_BUDGET) -> MinorCombination:
    """The combination g with g(X) = f(A^T X A + S) for all symmetric X."""
    spec, ell = f.spec, f.ell
    a = np.asarray(a)
    if a.shape != (ell, ell):
        raise ShapeMismatch(f"expected {ell}x{ell} congruence matrix, got {a.shape}")
    full = tuple(range(1, ell + 1))
    if minor_value(a, full, full, spec) == 0:
        raise SingularMatrix("congruence matrix is not invertible")
    if s is None:
        s_mat = None
    elif isinstance(s, SymMatrix):
        s_mat = s.full()
    else:
        s_mat = np.asarray(s)
        if not np.array_equal(s_mat, s_mat.T):
            raise ShapeMismatch("translation matrix must be symmetric")

    pairs, g, r, pivots, t = eval_basis(ell, spec, budget)
    values = gf_matvec(message_vector(f, pairs), g, spec)
    perm = congruence_translate_permutation(ell, spec, a, s_mat, budget)
    transformed = values[perm]
    remainder, coeffs_r = reduce_against(transformed, r, pivots, spec)
    if remainder.any():
        raise AssertionError("transformed function left the doset span")
    msg = gf_matvec(coeffs_r, t, spec)
    return MinorCombination(ell, spec, {p: int(c) for p, c in zip(pairs, msg) if c})


def maximal_pairs(f: MinorCombination) -> list[DosetPair]:
    """Support pairs whose row/column sets are contained in no other support pair's."""
    supp = f.support
    return [
        p
        for p in supp
        if not any(o != p and p.contained_in(o) for o in supp)
    ]


def clear_subminors(f: MinorCombination, rows, budget: int = POINT_BUDGET):
    """Translate away every (k-1)-size support minor inside a principal k-minor.

    Requires odd field order, the principal pair (rows, rows) maximal in f
    with coefficient 1. Returns (g, S) with g = f(X + S).
    """
    spec, ell = f.spec, f.ell
    if spec.p == 2:
        raise EvenCharacteristic("translation coefficients divide by 2")
    idx = tuple(sorted(rows))
    pair = DosetPair(idx, idx)
    if pair not in f.coeffs or pair not in maximal_pairs(f):
        raise NotMaximal(f"{pair} is not a maximal support minor of f")
    if f.coeffs[pair] != 1:
        raise CoefficientNotOne(f"coefficient of {pair} is {f.coeffs[pair]}, need 1")

    half = spec.inv(spec.from_int(2))
    s = np.zeros((ell, ell), dtype=np.int64)
    for a in idx:
        rest = tuple(v for v in idx if v != a)
        s[a - 1, a - 1] = spec.neg(f.coefficient(DosetPair(rest, rest)))
    for ai, a in enumerate(idx):
        for b in idx[ai + 1 :]:
            # doset orientation of the unordered pair (idx - a, idx - b)
            sub_rows = tuple(v for v in idx if v != b)
            sub_cols = tuple(v for v in idx if v != a)
            c = f.coefficient(DosetPair(sub_rows, sub_cols))
            sign = 1 if (a + b) % 2 == 0 else spec.neg(1)
            val = spec.neg(spec.mul(sign, spec.mul(half, c)))
            s[a - 1, b - 1] = val
            s[b - 1, a - 1] = val
    g = act(f, np.eye(ell, dtype=np.int64), s, budget)
    size = len(idx) - 1
    for p in g.support:
        if p.size == size and set(p.rows) <= set(idx) and set(p.cols) <= set(idx):
            raise AssertionError("translation failed to clear a subminor")
    return g, SymMatrix.from_full(s, spec)


def elementary_add(ell: int, i: int, j: int, m: int) -> np.ndarray:
    """The row-operation matrix adding m times row j to row i (1-based)."""
    e = np.eye(ell, dtype=np.int64)
    e[i - 1, j - 1] = m
    return e


def spread_reduce(f: MinorCombination, budget: int = POINT_BUDGET) -> MinorCombination:
    """One congruence step shrinking the spread of a minimal-spread maximal minor.

    Picks the maximal support minor with the smallest spread; if its spread
    already equals its size raises AlreadyMinimal. Otherwise permutes it to
    rows [k], columns {s-k+1..s} and applies the elementary congruence from
    the matching spread case, returning a same-weight combination whose
    support holds a size-k minor of spread s-1.
    """
    spec, ell = f.spec, f.ell
    maxima = maximal_pairs(f)
    if not maxima:
        raise AlreadyMinimal("zero combination")
    chosen = min(maxima, key=lambda p: (len(p.spread), p.size, p.rows, p.cols))
    k, s = chosen.size, len(chosen.spread)
    if s == k:
        raise AlreadyMinimal(f"maximal minor {chosen} already has spread {k}")

    rows_set, cols_set = set(chosen.rows), set(chosen.cols)
    sigma = {}
    for slot, v in enumerate(sorted(rows_set - cols_set), start=1):
        sigma[v] = slot
    for slot, v in enumerate(sorted(rows_set & cols_set), start=s - k + 1):
        sigma[v] = slot
    for slot, v in enumerate(sorted(cols_set - rows_set), start=k + 1):
        sigma[v] = slot
    free = [v for v in range(1, ell + 1) if v not in sigma]
    for slot, v in zip(range(s + 1, ell + 1), free):
        sigma[v] = slot
    perm = np.zeros((ell, ell), dtype=np.int64)
    for v, slot in sigma.items():
        perm[v - 1, slot - 1] = 1
    g = act(f, perm, None, budget)

    target_col = s if s == k + 1 else s - 1
    for lam in range(1, spec.q):
        candidate = act(g, elementary_add(ell, 1, target_col, lam), None, budget)
        hit = any(
            p.size == k and len(p.spread) == s - 1 for p in candidate.support
        )
        # lambda = 1 works unless it cancels an existing coefficient exactly
        if hit:
            return candidate
    raise AssertionError("no multiplier produced the smaller-spread minor")
