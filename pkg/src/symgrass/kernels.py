"""Hot inner loops for exhaustive codeword searches.

Both entry points enumerate messages so that consecutive messages differ
in exactly one coordinate (reflected q-ary Gray order), keeping the
running codeword and its weight updated by a single generator-row delta
per step. The numba kernels release the GIL so chunks run on a thread
pool; the pure-numpy fallback executes the identical enumeration and is
selected with SYMGRASS_BACKEND=numpy (SYMGRASS_BACKEND=numba forces the
jit path and raises if numba is unavailable).

Results are deterministic and independent of backend and worker count:
chunks are merged in a fixed order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .gf import FieldSpec

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def active_backend() -> str:
    """Resolve the kernel backend from SYMGRASS_BACKEND (auto/numba/numpy)."""
    mode = os.environ.get("SYMGRASS_BACKEND", "auto").lower()
    if mode == "numpy":
        return "numpy"
    if mode == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("SYMGRASS_BACKEND=numba but numba is not importable")
        return "numba"
    return "numba" if HAS_NUMBA else "numpy"


def gray_steps(q: int, t: int):
    """Yield (digit, old, new) moves of the reflected q-ary Gray walk over
    q^t states starting at all zeros; exactly one digit moves by +-1 per step."""
    digits = [0] * t
    dirs = [1] * t
    while True:
        i = 0
        while i < t:
            nd = digits[i] + dirs[i]
            if 0 <= nd < q:
                break
            dirs[i] = -dirs[i]
            i += 1
        if i == t:
            return
        yield i, digits[i], digits[i] + dirs[i]
        digits[i] += dirs[i]


@njit(cache=True, nogil=True)
def _scan_chunk_jit(c, wt, gs, add, sub, rows, q, out_digits):  # pragma: no cover
    t = rows.shape[0]
    n = c.shape[0]
    digits = np.zeros(t, np.int64)
    dirs = np.ones(t, np.int64)
    best = wt
    while True:
        i = 0
        nd = 0
        while i < t:
            nd = digits[i] + dirs[i]
            if 0 <= nd < q:
                break
            dirs[i] = -dirs[i]
            i += 1
        if i == t:
            break
        delta = sub[nd, digits[i]]
        row = rows[i]
        for pos in range(n):
            ov = c[pos]
            nv = add[ov, gs[row, delta, pos]]
            c[pos] = nv
            if ov != 0:
                wt -= 1
            if nv != 0:
                wt += 1
        digits[i] = nd
        if wt < best:
            best = wt
            for a in range(t):
                out_digits[a] = digits[a]
    return best


def _scan_chunk_np(c, wt, gs, add, sub, rows, q, out_digits):
    t = len(rows)
    digits = np.zeros(t, dtype=np.int64)
    best = int(wt)
    for i, old, new in gray_steps(q, t):
        delta = sub[new, old]
        c = add[c, gs[rows[i], delta]]
        digits[i] = new
        wt = int(np.count_nonzero(c))
        if wt < best:
            best = wt
            out_digits[:] = digits
    return best


@njit(cache=True, nogil=True)
def _hist_chunk_jit(c, wt, gs, add, sub, rows, q, hist):  # pragma: no cover
    t = rows.shape[0]
    n = c.shape[0]
    digits = np.zeros(t, np.int64)
    dirs = np.ones(t, np.int64)
    hist[wt] += 1
    while True:
        i = 0
        nd = 0
        while i < t:
            nd = digits[i] + dirs[i]
            if 0 <= nd < q:
                break
            dirs[i] = -dirs[i]
            i += 1
        if i == t:
            break
        delta = sub[nd, digits[i]]
        row = rows[i]
        for pos in range(n):
            ov = c[pos]
            nv = add[ov, gs[row, delta, pos]]
            c[pos] = nv
            if ov != 0:
                wt -= 1
            if nv != 0:
                wt += 1
        digits[i] = nd
        hist[wt] += 1


def _hist_chunk_np(c, wt, gs, add, sub, rows, q, hist):
    t = len(rows)
    hist[int(wt)] += 1
    for i, old, new in gray_steps(q, t):
        delta = sub[new, old]
        c = add[c, gs[rows[i], delta]]
        wt = int(np.count_nonzero(c))
        hist[wt] += 1


def scaled_rows(g: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """(k, q, n) array of every scalar multiple of every generator row."""
    t = spec.tables
    k, n = g.shape
    out = np.zeros((k, spec.q, n), dtype=np.uint8)
    for r in range(k):
        out[r] = t.mul[:, g[r]]
    return out


def min_weight_scan(g: np.ndarray, spec: FieldSpec, workers: int = 1,
                    backend: str | None = None):
    """Exact minimum nonzero weight of the row space of g.

    Enumerates one projective representative per codeword line (first
    nonzero message coordinate fixed to 1). Returns (weight, message,
    enumerated) with the lexicographically earliest chunk winning ties.
    """
    t = spec.tables
    k, n = g.shape
    q = spec.q
    gs = scaled_rows(g, spec)
    backend = backend or active_backend()
    kernel = _scan_chunk_jit if backend == "numba" else _scan_chunk_np

    chunks = []
    for j in range(k):
        if j == k - 1:
            chunks.append((j, None))
        else:
            for v in range(q):
                chunks.append((j, v))

    def run_chunk(chunk):
        j, v = chunk
        c0 = g[j].copy()
        msg = np.zeros(k, dtype=np.uint8)
        msg[j] = 1
        rows = np.arange(j + 2, k, dtype=np.int64)
        if v is not None:
            if v:
                c0 = t.add[c0, t.mul[v, g[j + 1]]]
            msg[j + 1] = v
        wt0 = int(np.count_nonzero(c0))
        out_digits = np.zeros(len(rows), dtype=np.uint8)
        if len(rows) == 0:
            return wt0, msg, 1
        best = int(kernel(c0, wt0, gs, t.add, t.sub, rows, q, out_digits))
        msg[rows] = out_digits
        return best, msg, q ** len(rows)

    if workers > 1 and backend == "numba":
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_chunk, chunks))
    else:
        results = [run_chunk(c) for c in chunks]

    best_wt, best_msg, enumerated = None, None, 0
    for wt, msg, count in results:
        enumerated += count
        if best_wt is None or wt < best_wt:
            best_wt, best_msg = wt, msg
    return best_wt, best_msg, enumerated


def weight_histogram(g: np.ndarray, spec: FieldSpec, workers: int = 1,
                     backend: str | None = None) -> np.ndarray:
    """Exact weight histogram over all q^k codewords; hist[w] counts weight w."""
    t = spec.tables
    k, n = g.shape
    q = spec.q
    gs = scaled_rows(g, spec)
    backend = backend or active_backend()
    kernel = _hist_chunk_jit if backend == "numba" else _hist_chunk_np

    def run_chunk(v):
        hist = np.zeros(n + 1, dtype=np.int64)
        c0 = t.mul[v, g[0]].copy()
        wt0 = int(np.count_nonzero(c0))
        rows = np.arange(1, k, dtype=np.int64)
        kernel(c0, wt0, gs, t.add, t.sub, rows, q, hist)
        return hist

    if k == 0:
        hist = np.zeros(n + 1, dtype=np.int64)
        hist[0] = 1
        return hist
    if workers > 1 and backend == "numba":
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_chunk, range(q)))
    else:
        parts = [run_chunk(v) for v in range(q)]
    return np.sum(parts, axis=0)
