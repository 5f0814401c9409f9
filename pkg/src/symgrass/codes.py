"""Generator matrices, distances, duals and automorphisms of the evaluation codes.

Two variants share one machinery: the symmetric-domain code evaluates the
doset-minor basis at all symmetric matrices, the full-domain variant
evaluates every (rows, cols) minor at all l x l matrices. Columns follow
canonical point order; rows follow basis-label order.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BudgetExceeded,
    EmptyResult,
    LabelMismatch,
    ShapeMismatch,
    SingularMatrix,
)
from .gf import FieldSpec
from .kernels import min_weight_scan, weight_histogram
from .linalg import gf_matmul, gf_matvec, in_rowspace, nullspace, rref
from .minors import MinorCombination
from .symspace import (
    POINT_BUDGET,
    DosetPair,
    SymMatrix,
    all_pairs,
    congruence_translate_permutation,
    dim_sym,
    doset_pairs,
    evaluation_matrix,
    minor_value,
    points_array,
)

DEFAULT_OP_BUDGET = 10**10

SYMPLECTIC = "symplectic"
AFFINE = "affine_grassmann"


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get("SYMGRASS_BUDGET", DEFAULT_OP_BUDGET))


@dataclass
class LinearCode:
    spec: FieldSpec
    ell: int
    variant: str
    generator: np.ndarray  # (k, n) uint8
    basis_labels: list | None  # DosetPair or (rows, cols) tuples; None once re-reduced
    column_labels: np.ndarray  # canonical point index per column
    _rref: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def rref_data(self):
        if self._rref is None:
            r, pivots, t = rref(self.generator, self.spec, transform=True)
            self._rref = (r, pivots, t)
        return self._rref

    def rank(self) -> int:
        return len(self.rref_data()[1])

    def contains(self, v: np.ndarray) -> bool:
        r, pivots, _ = self.rref_data()
        return in_rowspace(v, r, pivots, self.spec)


@dataclass
class WeightReport:
    d: int | None
    witness: list[int] | None
    histogram: dict[int, int] | None
    enumerated: int
    elapsed_s: float
    exhaustive: bool
    n: int
    k: int
    q: int
    ell: int

    def to_dict(self) -> dict:
        out = {
            "ell": self.ell,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "witness": self.witness,
            "histogram": (
                {str(w): c for w, c in sorted(self.histogram.items())}
                if self.histogram is not None
                else None
            ),
            "exhaustive": self.exhaustive,
            "enumerated": self.enumerated,
            "elapsed_s": round(self.elapsed_s, 6),
        }
        return out


@dataclass
class DualWitness:
    """A low-weight dual codeword: support points and matching coefficients."""

    support: list[SymMatrix]
    coefficients: list[int]

    def __post_init__(self):
        if len(self.support) != len(self.coefficients):
            raise ShapeMismatch("support and coefficient lengths differ")
        if len({m.index for m in self.support}) != len(self.support):
            raise LabelMismatch("support points must be distinct")
        if any(c == 0 for c in self.coefficients):
            raise LabelMismatch("coefficients must be nonzero")


def build_generator(ell: int, spec: FieldSpec, variant: str = SYMPLECTIC,
                    budget: int = POINT_BUDGET) -> LinearCode:
    if variant == SYMPLECTIC:
        pairs: list = doset_pairs(ell)
        pts = points_array(ell, spec, symmetric=True, budget=budget)
        g = evaluation_matrix(pairs, pts, ell, spec, symmetric=True)
    elif variant == AFFINE:
        pairs = all_pairs(ell)
        pts = points_array(ell, spec, symmetric=False, budget=budget)
        g = evaluation_matrix(pairs, pts, ell, spec, symmetric=False)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return LinearCode(
        spec=spec,
        ell=ell,
        variant=variant,
        generator=g,
        basis_labels=pairs,
        column_labels=np.arange(g.shape[1], dtype=np.int64),
    )


_CODE_CACHE: dict = {}


def cached_code(ell: int, spec: FieldSpec, variant: str = SYMPLECTIC,
                budget: int = POINT_BUDGET) -> LinearCode:
    key = (ell, spec, variant)
    if key not in _CODE_CACHE:
        _CODE_CACHE[key] = build_generator(ell, spec, variant, budget)
    return _CODE_CACHE[key]


def encode(code: LinearCode, f: MinorCombination) -> np.ndarray:
    if code.basis_labels is None:
        raise LabelMismatch("code rows are no longer labelled by minors")
    if f.spec != code.spec or f.ell != code.ell:
        raise LabelMismatch("combination does not match the code's field or size")
    index = {}
    for i, label in enumerate(code.basis_labels):
        key = (label.rows, label.cols) if isinstance(label, DosetPair) else tuple(label)
        index[key] = i
    msg = np.zeros(code.k, dtype=np.uint8)
    for pair, c in f.coeffs.items():
        key = (pair.rows, pair.cols)
        if key not in index:
            raise LabelMismatch(f"pair {pair} is not a row label of this code")
        msg[index[key]] = c
    return gf_matvec(msg, code.generator, code.spec)


def min_distance_exhaustive(code: LinearCode, budget: int | None = None,
                            workers: int = 1,
                            backend: str | None = None) -> WeightReport:
    budget = resolve_budget(budget)
    q, k, n = code.spec.q, code.k, code.n
    lines = (q**k - 1) // (q - 1)
    if lines * n > budget:
        raise BudgetExceeded(lines * n, budget)
    start = time.perf_counter()
    best, msg, enumerated = min_weight_scan(
        code.generator, code.spec, workers=workers, backend=backend
    )
    if best == 0:
        raise AssertionError("generator rows are linearly dependent")
    return WeightReport(
        d=int(best),
        witness=[int(v) for v in msg],
        histogram=None,
        enumerated=enumerated,
        elapsed_s=time.perf_counter() - start,
        exhaustive=True,
        n=n,
        k=k,
        q=q,
        ell=code.ell,
    )


def weight_enumerator(code: LinearCode, budget: int | None = None,
                      workers: int = 1,
                      backend: str | None = None) -> WeightReport:
    budget = resolve_budget(budget)
    q, k, n = code.spec.q, code.k, code.n
    if q**k * n > budget:
        raise BudgetExceeded(q**k * n, budget)
    start = time.perf_counter()
    hist = weight_histogram(code.generator, code.spec, workers=workers, backend=backend)
    nonzero = np.nonzero(hist)[0]
    positive = [int(w) for w in nonzero if w > 0]
    return WeightReport(
        d=min(positive) if positive else None,
        witness=None,
        histogram={int(w): int(hist[w]) for w in nonzero},
        enumerated=int(hist.sum()),
        elapsed_s=time.perf_counter() - start,
        exhaustive=True,
        n=n,
        k=k,
        q=q,
        ell=code.ell,
    )


def _normalize_column(col: np.ndarray, spec: FieldSpec):
    """Projective normal form: (tuple with first nonzero scaled to 1, scale)."""
    hits = np.nonzero(col)[0]
    if hits.size == 0:
        return None, 0
    alpha = int(col[hits[0]])
    t = spec.tables
    return tuple(t.mul[int(t.inv[alpha]), col].tolist()), alpha


def dual_low_weight_scan(code: LinearCode, wmax: int,
                         budget: int | None = None):
    """Smallest dual-codeword weight <= wmax with a witness, or None.

    Weight 1 needs a zero column, weight 2 a dependent column pair; weights
    3 and 4 come from column-combination searches against a projective
    column dictionary.
    """
    budget = resolve_budget(budget)
    spec = code.spec
    t = spec.tables
    g = code.generator
    n = code.n

    def witness(positions, coeffs):
        support = [
            SymMatrix.from_index(int(code.column_labels[p]), code.ell, spec)
            for p in positions
        ]
        return DualWitness(support=support, coefficients=[int(c) for c in coeffs])

    # weight 1: a zero column
    zero_cols = np.nonzero(~g.any(axis=0))[0]
    if zero_cols.size:
        return 1, witness([int(zero_cols[0])], [1])
    if wmax < 2:
        return None

    normalized = {}
    norm_of = []
    scale_of = []
    for i in range(n):
        key, alpha = _normalize_column(g[:, i], spec)
        norm_of.append(key)
        scale_of.append(alpha)
        if key in normalized:
            j = normalized[key]
            # alpha_j^-1 * g_j - alpha_i^-1 * g_i = 0
            ci = int(t.neg[t.inv[scale_of[i]]])
            cj = int(t.inv[scale_of[j]])
            if wmax >= 2:
                return 2, witness([j, i], [cj, ci])
        else:
            normalized[key] = i
    if wmax < 3:
        return None

    if n * n * (spec.q - 1) * code.k > budget:
        raise BudgetExceeded(n * n * (spec.q - 1) * code.k, budget)
    for i in range(n):
        gi = g[:, i]
        for j in range(i + 1, n):
            gj = g[:, j]
            for b in range(1, spec.q):
                v = t.add[gi, t.mul[b, gj]]
                w = t.neg[v]
                key, beta = _normalize_column(w, spec)
                if key is None:
                    continue
                l = normalized.get(key)
                if l is not None and l != i and l != j:
                    c = int(t.mul[beta, t.inv[scale_of[l]]])
                    return 3, witness([i, j, l], [1, b, c])
    if wmax < 4:
        return None

    work = n * n * n // 6 * (spec.q - 1) ** 2 * code.k
    if work > budget:
        raise BudgetExceeded(work, budget)
    for i in range(n):
        gi = g[:, i]
        for j in range(i + 1, n):
            gj = g[:, j]
            for b in range(1, spec.q):
                vij = t.add[gi, t.mul[b, gj]]
                for l in range(j + 1, n):
                    gl = g[:, l]
                    for c in range(1, spec.q):
                        v = t.add[vij, t.mul[c, gl]]
                        w = t.neg[v]
                        key, beta = _normalize_column(w, spec)
                        if key is None:
                            continue
                        m = normalized.get(key)
                        if m is not None and m > l:
                            d = int(t.mul[beta, t.inv[scale_of[m]]])
                            return 4, witness([i, j, l, m], [1, b, c, d])
    return None


def dual_witness_check(code: LinearCode, witness: DualWitness) -> bool:
    """True iff the witness annihilates every generator row."""
    positions = {int(lbl): p for p, lbl in enumerate(code.column_labels)}
    spec = code.spec
    cols = []
    for m in witness.support:
        if m.index not in positions:
            raise LabelMismatch(f"support point {m.index} is not a code coordinate")
        cols.append(positions[m.index])
    for row in code.generator:
        acc = 0
        for pos, c in zip(cols, witness.coefficients):
            acc = spec.add(acc, spec.mul(c, int(row[pos])))
        if acc != 0:
            return False
    return True


def puncture_shorten(code: LinearCode, coords, mode: str) -> LinearCode:
    coords = sorted(set(int(c) for c in coords))
    for c in coords:
        if not 0 <= c < code.n:
            raise LabelMismatch(f"coordinate {c} outside [0, {code.n})")
    keep = [c for c in range(code.n) if c not in set(coords)]
    spec = code.spec
    if mode == "puncture":
        sub = code.generator[:, keep]
    elif mode == "shorten":
        if coords:
            gc = code.generator[:, coords]
            messages = nullspace(gc.T, spec)
            sub = gf_matmul(messages, code.generator, spec)[:, keep]
        else:
            sub = code.generator
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if not keep:
        raise EmptyResult("no coordinates left")
    r, pivots = rref(sub, spec)
    if not pivots:
        raise EmptyResult("resulting code is zero")
    reduced = r[: len(pivots)]
    same_rows = reduced.shape == code.generator.shape and np.array_equal(
        reduced, code.generator
    )
    return LinearCode(
        spec=spec,
        ell=code.ell,
        variant=code.variant,
        generator=code.generator if same_rows else reduced,
        basis_labels=code.basis_labels if same_rows else None,
        column_labels=code.column_labels[keep],
    )


def permutation_preserves(code: LinearCode, perm: np.ndarray) -> bool:
    """Membership test for the coordinate permutation c'[i] = c[perm[i]]."""
    for row in code.generator:
        if not code.contains(row[perm]):
            return False
    return True


def automorphism_check(code: LinearCode, a: np.ndarray, s=None) -> bool:
    """Does M -> A^T M A + S induce a coordinate automorphism of the code?"""
    if code.variant != SYMPLECTIC or code.n != code.spec.q ** dim_sym(code.ell):
        raise LabelMismatch("needs the full symmetric-domain code")
    a = np.asarray(a)
    full = tuple(range(1, code.ell + 1))
    if minor_value(a, full, full, code.spec) == 0:
        raise SingularMatrix("congruence matrix is not invertible")
    s_mat = s.full() if isinstance(s, SymMatrix) else s
    perm = congruence_translate_permutation(code.ell, code.spec, a, s_mat)
    return permutation_preserves(code, perm)


def macwilliams_transform(histogram: dict[int, int], n: int, q: int) -> dict[int, int]:
    """Dual weight distribution from a primal one, exactly over the integers."""
    import math

    total = sum(histogram.values())
    out = {}
    for j in range(n + 1):
        acc = 0
        for i, count in histogram.items():
            kr = 0
            for s in range(min(i, j) + 1):
                term = (
                    (-1) ** s
                    * (q - 1) ** (j - s)
                    * math.comb(i, s)
                    * math.comb(n - i, j - s)
                )
                kr += term
            acc += count * kr
        if acc % total:
            raise AssertionError("transform did not divide evenly")
        val = acc // total
        if val:
            out[j] = val
    return out
