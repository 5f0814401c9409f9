"""Text formats for matrices, minor combinations and generator matrices.

All field elements appear as their integer reprs. Matrix files start with
the header line `q p m ell`, generator files with `q p m ell variant k n`.
Combination lines read `I|J|coeff` with comma-separated 1-based indices
and `-` for the empty set.
"""

from __future__ import annotations

import numpy as np

from .codes import AFFINE, SYMPLECTIC, LinearCode
from .errors import UnsupportedFormat
from .gf import FieldSpec, field_make
from .minors import MinorCombination, combination
from .symspace import DosetPair, all_pairs, doset_pairs


def write_matrix(matrix: np.ndarray, spec: FieldSpec) -> str:
    m = np.asarray(matrix)
    ell = m.shape[0]
    lines = [f"{spec.q} {spec.p} {spec.m} {ell}"]
    for r in range(ell):
        lines.append(" ".join(str(int(v)) for v in m[r]))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple[np.ndarray, FieldSpec]:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    q, p, m, ell = (int(v) for v in lines[0].split())
    spec = field_make(p, m)
    if spec.q != q:
        raise UnsupportedFormat(f"header says q={q} but p^m={spec.q}")
    rows = [[int(v) for v in ln.split()] for ln in lines[1 : ell + 1]]
    mat = np.array(rows, dtype=np.int64)
    if mat.shape != (ell, ell):
        raise UnsupportedFormat(f"expected {ell}x{ell} entries")
    return mat, spec


def _fmt_set(s: tuple[int, ...]) -> str:
    return ",".join(str(v) for v in s) if s else "-"


def _parse_set(s: str) -> tuple[int, ...]:
    s = s.strip()
    if s == "-":
        return ()
    return tuple(int(v) for v in s.split(","))


def write_combination(f: MinorCombination) -> str:
    lines = []
    for pair in f.support:
        lines.append(f"{_fmt_set(pair.rows)}|{_fmt_set(pair.cols)}|{f.coeffs[pair]}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_combination(text: str, ell: int, spec: FieldSpec) -> MinorCombination:
    coeffs = {}
    for ln in text.strip().splitlines():
        if not ln.strip():
            continue
        parts = ln.split("|")
        if len(parts) != 3:
            raise UnsupportedFormat(f"bad combination line: {ln!r}")
        rows, cols, c = _parse_set(parts[0]), _parse_set(parts[1]), int(parts[2])
        coeffs[(rows, cols)] = c
    return combination(ell, spec, coeffs)


def write_generator(code: LinearCode) -> str:
    lines = [
        f"{code.spec.q} {code.spec.p} {code.spec.m} {code.ell} "
        f"{code.variant} {code.k} {code.n}"
    ]
    for row in code.generator:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_generator(text: str) -> LinearCode:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    q, p, m, ell = (int(v) for v in head[:4])
    variant = head[4]
    k, n = int(head[5]), int(head[6])
    spec = field_make(p, m)
    if spec.q != q:
        raise UnsupportedFormat(f"header says q={q} but p^m={spec.q}")
    rows = [[int(v) for v in ln.split()] for ln in lines[1 : k + 1]]
    g = np.array(rows, dtype=np.uint8)
    if g.shape != (k, n):
        raise UnsupportedFormat(f"expected a {k}x{n} generator")
    labels = None
    if variant == SYMPLECTIC and k == len(doset_pairs(ell)):
        labels = doset_pairs(ell)
    elif variant == AFFINE and k == len(all_pairs(ell)):
        labels = all_pairs(ell)
    return LinearCode(
        spec=spec,
        ell=ell,
        variant=variant,
        generator=g,
        basis_labels=labels,
        column_labels=np.arange(n, dtype=np.int64),
    )
