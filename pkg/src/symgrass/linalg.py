"""Dense linear algebra over GF(q) backed by the field lookup tables.

Matrices are uint8 numpy arrays of element reprs. Everything here is
exact; there is no floating point anywhere.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec


def gf_matmul(a: np.ndarray, b: np.ndarray, spec: FieldSpec) -> np.ndarray:
    t = spec.tables
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    for k in range(a.shape[1]):
        out = t.add[out, t.mul[a[:, k][:, None], b[k][None, :]]]
    return out


def gf_matvec(v: np.ndarray, m: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Row vector times matrix: sum_i v[i] * m[i, :]."""
    t = spec.tables
    out = np.zeros(m.shape[1], dtype=np.uint8)
    for i, c in enumerate(v):
        if c:
            out = t.add[out, t.mul[int(c), m[i]]]
    return out


def rref(mat: np.ndarray, spec: FieldSpec, transform: bool = False):
    """Reduced row echelon form.

    Returns (R, pivots) or, with transform=True, (R, pivots, T) where
    T @ mat == R over the field (T square, invertible).
    """
    t = spec.tables
    a = np.array(mat, dtype=np.uint8, copy=True)
    rows, cols = a.shape
    tr = np.eye(rows, dtype=np.uint8) if transform else None
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, col])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
            if transform:
                tr[[r, p]] = tr[[p, r]]
        invv = int(t.inv[a[r, col]])
        if invv != 1:
            a[r] = t.mul[invv, a[r]]
            if transform:
                tr[r] = t.mul[invv, tr[r]]
        factor = a[:, col].copy()
        factor[r] = 0
        mask = factor != 0
        if mask.any():
            scaled = t.mul[t.neg[factor[mask]][:, None], a[r][None, :]]
            a[mask] = t.add[a[mask], scaled]
            if transform:
                tscaled = t.mul[t.neg[factor[mask]][:, None], tr[r][None, :]]
                tr[mask] = t.add[tr[mask], tscaled]
        pivots.append(col)
        r += 1
    if transform:
        return a, pivots, tr
    return a, pivots


def rank(mat: np.ndarray, spec: FieldSpec) -> int:
    _, pivots = rref(mat, spec)
    return len(pivots)


def reduce_against(v: np.ndarray, r: np.ndarray, pivots: list[int],
                   spec: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """Reduce v by the RREF rows; returns (remainder, coefficients)."""
    t = spec.tables
    res = np.array(v, dtype=np.uint8, copy=True)
    coeffs = np.zeros(len(pivots), dtype=np.uint8)
    for i, col in enumerate(pivots):
        c = int(res[col])
        if c:
            coeffs[i] = c
            res = t.add[res, t.mul[t.neg[c], r[i]]]
    return res, coeffs


def in_rowspace(v: np.ndarray, r: np.ndarray, pivots: list[int],
                spec: FieldSpec) -> bool:
    res, _ = reduce_against(v, r, pivots, spec)
    return not res.any()


def nullspace(mat: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Basis of {h : mat @ h^T = 0} as rows; shape (n - rank, n)."""
    t = spec.tables
    r, pivots = rref(mat, spec)
    n = mat.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, p in enumerate(pivots):
            basis[row, p] = t.neg[r[i, f]]
    return basis
