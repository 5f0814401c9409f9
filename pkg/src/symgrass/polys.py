"""Multivariate polynomials in the l^2 matrix variables.

A monomial is a tuple of l^2 exponents over the variables X(i,j) in
row-major order; a polynomial is a dict mapping monomials to nonzero
coefficient reprs. The monomial order is lexicographic over the
row-major variable order, so two monomials compare by the exponent of
X(l,l) first, then X(l,l-1), down to X(1,1).

Functions on symmetric points are normalized against the relations
X(j,i) = X(i,j) and X^q = X (exponent folding), which preserves values
at every symmetric point.
"""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

import numpy as np

from .errors import ZeroPolynomial
from .gf import FieldSpec

Monomial = tuple[int, ...]
Polynomial = dict[Monomial, int]


def variable_index(i: int, j: int, ell: int) -> int:
    return (i - 1) * ell + (j - 1)


def monomial_key(mono: Monomial) -> tuple[int, ...]:
    """Sort key; larger key = later in the order."""
    return mono[::-1]


def poly_add(p: Polynomial, q: Polynomial, spec: FieldSpec) -> Polynomial:
    out = dict(p)
    for mono, c in q.items():
        v = spec.add(out.get(mono, 0), c)
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def poly_scale(p: Polynomial, c: int, spec: FieldSpec) -> Polynomial:
    if c == 0:
        return {}
    return {m: spec.mul(c, v) for m, v in p.items()}


def poly_mul(p: Polynomial, q: Polynomial, spec: FieldSpec) -> Polynomial:
    out: Polynomial = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            mono = tuple(a + b for a, b in zip(m1, m2))
            v = spec.add(out.get(mono, 0), spec.mul(c1, c2))
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


def expand_to_polynomial(rows: Sequence[int], cols: Sequence[int], ell: int,
                         spec: FieldSpec) -> Polynomial:
    """Signed permutation expansion of det over rows/cols, unreduced,
    in the full l^2-variable ring."""
    s = len(rows)
    nvars = ell * ell
    if s == 0:
        return {(0,) * nvars: 1}
    neg_one = spec.neg(1)
    out: Polynomial = {}
    for perm in permutations(range(s)):
        inversions = sum(
            1 for a in range(s) for b in range(a + 1, s) if perm[a] > perm[b]
        )
        exps = [0] * nvars
        for a in range(s):
            exps[variable_index(rows[a], cols[perm[a]], ell)] += 1
        mono = tuple(exps)
        c = 1 if inversions % 2 == 0 else neg_one
        v = spec.add(out.get(mono, 0), c)
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def normal_form(p: Polynomial, ell: int, spec: FieldSpec) -> Polynomial:
    """Fold X(j,i) onto X(i,j) for j > i, then reduce exponents e > 0 to
    ((e-1) mod (q-1)) + 1. The result agrees with p on every symmetric point."""
    q = spec.q
    out: Polynomial = {}
    for mono, c in p.items():
        exps = [0] * (ell * ell)
        for i in range(1, ell + 1):
            for j in range(1, ell + 1):
                e = mono[variable_index(i, j, ell)]
                if e:
                    a, b = (i, j) if i <= j else (j, i)
                    exps[variable_index(a, b, ell)] += e
        for t, e in enumerate(exps):
            if e > 0:
                exps[t] = (e - 1) % (q - 1) + 1 if q > 1 else e
        key = tuple(exps)
        v = spec.add(out.get(key, 0), c)
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def leading_term(p: Polynomial) -> Monomial:
    if not p:
        raise ZeroPolynomial("the zero polynomial has no leading term")
    return max(p, key=monomial_key)


def poly_eval(p: Polynomial, matrix: np.ndarray, ell: int, spec: FieldSpec) -> int:
    matrix = np.asarray(matrix)
    acc = 0
    for mono, c in p.items():
        term = c
        for i in range(1, ell + 1):
            for j in range(1, ell + 1):
                e = mono[variable_index(i, j, ell)]
                if e:
                    term = spec.mul(term, spec.pow(int(matrix[i - 1, j - 1]), e))
        acc = spec.add(acc, term)
    return acc


def shift_polynomial(p: Polynomial, shift: np.ndarray, ell: int,
                     spec: FieldSpec) -> Polynomial:
    """Substitute X(i,j) -> X(i,j) + shift[i,j]; exact symbolic composition."""
    shift = np.asarray(shift)
    nvars = ell * ell
    out: Polynomial = {}
    for mono, c in p.items():
        term: Polynomial = {(0,) * nvars: c}
        for i in range(1, ell + 1):
            for j in range(1, ell + 1):
                e = mono[variable_index(i, j, ell)]
                if e:
                    unit = [0] * nvars
                    unit[variable_index(i, j, ell)] = 1
                    lin = {tuple(unit): 1}
                    s = int(shift[i - 1, j - 1])
                    if s:
                        lin[(0,) * nvars] = s
                    for _ in range(e):
                        term = poly_mul(term, lin, spec)
        out = poly_add(out, term, spec)
    return out
