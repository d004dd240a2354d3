"""Level expansion kernels for the Cayley-graph BFS.

Elements are int64 matrices flattened to rows of length ``k*k``. Two
interchangeable backends produce the next BFS level:

* ``numba``: compiled loop over an open-addressing hash set (full-row
  comparison, so no collisions can merge elements).
* ``numpy``: batched matrix products, then sort-based deduplication.

Both only look at levels ``r - 1`` and ``r``: in a Cayley graph with a
symmetric generating set the neighbours of level ``r`` live in levels
``r - 1``, ``r`` and ``r + 1``, so nothing older needs to be consulted.

Setting ``LIEEXP_DISABLE_NUMBA=1`` (or lacking numba) selects the numpy
backend by default. Both return the new level in the same canonical order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


BACKENDS = ("numba", "numpy")


def default_backend() -> str:
    if not HAVE_NUMBA or os.environ.get("LIEEXP_DISABLE_NUMBA", "") not in ("", "0"):
        return "numpy"
    return "numba"


def row_view(rows: np.ndarray) -> np.ndarray:
    """Rows as a 1-d array of opaque byte strings (equality = row equality)."""
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


def canonical_order(rows: np.ndarray) -> np.ndarray:
    """Lexicographic row order (first column most significant)."""
    if len(rows) == 0:
        return np.zeros(0, dtype=np.int64)
    return np.lexsort(rows.T[::-1])


def products(frontier: np.ndarray, gens: np.ndarray, k: int) -> np.ndarray:
    """All right multiples ``w * g``; row ``i * ngens + j`` is ``frontier[i] @ gens[j]``."""
    m = frontier.reshape(-1, k, k)
    out = np.einsum("mij,gjl->mgil", m, gens, optimize=False)
    return out.reshape(-1, k * k)


# ---------------------------------------------------------------- numpy


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    _, idx = np.unique(row_view(rows), return_index=True)
    return rows[np.sort(idx)]


def expand_numpy(frontier, previous, gens, k, workers=1):
    """Next level from ``frontier`` (level r) and ``previous`` (level r - 1)."""
    if len(frontier) == 0:
        return frontier
    if workers > 1 and len(frontier) >= 4 * workers:
        chunks = np.array_split(frontier, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _unique_rows(products(c, gens, k)), chunks))
        cand = _unique_rows(np.concatenate(parts))
    else:
        cand = _unique_rows(products(frontier, gens, k))
    seen = np.concatenate([row_view(frontier), row_view(previous)])
    fresh = cand[~np.isin(row_view(cand), seen)]
    return fresh[canonical_order(fresh)]


# ---------------------------------------------------------------- numba


@njit(cache=True)
def _hash_row(row):
    h = np.uint64(1469598103934665603)
    for x in row:
        h ^= np.uint64(x & 0xFFFFFFFFFFFF)
        h *= np.uint64(1099511628211)
        h ^= h >> np.uint64(29)
    return h


@njit(cache=True)
def _insert(table, used, row):
    """Insert ``row``; returns True when it was not present."""
    mask = np.uint64(len(used) - 1)
    slot = _hash_row(row) & mask
    d = row.shape[0]
    while used[slot]:
        same = True
        for t in range(d):
            if table[slot, t] != row[t]:
                same = False
                break
        if same:
            return False
        slot = (slot + np.uint64(1)) & mask
    used[slot] = True
    for t in range(d):
        table[slot, t] = row[t]
    return True


@njit(cache=True)
def _fill(table, used, rows):
    for i in range(rows.shape[0]):
        _insert(table, used, rows[i])


@njit(cache=True)
def _expand_from(frontier, start, gens, k, table, used, out, count, fill_limit):
    """Expand frontier rows from ``start`` on; stops early (returning the row
    index to resume at) when ``out`` or the hash table could overflow."""
    n_gens = gens.shape[0]
    d = k * k
    row = np.empty(d, dtype=np.int64)
    for i in range(start, frontier.shape[0]):
        if count + n_gens > out.shape[0] or count + n_gens > fill_limit:
            return i, count
        w = frontier[i]
        for g in range(n_gens):
            for r in range(k):
                for c in range(k):
                    acc = 0
                    for t in range(k):
                        acc += w[r * k + t] * gens[g, t, c]
                    row[r * k + c] = acc
            if _insert(table, used, row):
                for t in range(d):
                    out[count, t] = row[t]
                count += 1
    return frontier.shape[0], count


def _pow2(n: int) -> int:
    cap = 1
    while cap < n:
        cap <<= 1
    return cap


def expand_numba(frontier, previous, gens, k):
    """Next level via a hash set seeded with levels r - 1 and r."""
    if len(frontier) == 0:
        return frontier
    d = k * k
    base = len(frontier) + len(previous)
    n_new = max(len(frontier), 64)
    while True:
        cap = _pow2(2 * (base + n_new))
        table = np.zeros((cap, d), dtype=np.int64)
        used = np.zeros(cap, dtype=np.bool_)
        _fill(table, used, previous)
        _fill(table, used, frontier)
        out = np.empty((n_new, d), dtype=np.int64)
        # the load factor stays at most 1/2
        fill_limit = cap // 2 - base
        start, count = 0, 0
        while start < len(frontier):
            start, count = _expand_from(frontier, start, gens, k, table, used, out, count, fill_limit)
            if start < len(frontier) and count + len(gens) > out.shape[0] and count + len(gens) <= fill_limit:
                out = np.concatenate([out, np.empty_like(out)])
            elif start < len(frontier):
                break
        if start == len(frontier):
            fresh = out[:count]
            return fresh[canonical_order(fresh)]
        # table too small: retry with room for twice as many new rows
        n_new = 2 * max(n_new, count)
