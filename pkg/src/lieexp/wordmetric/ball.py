"""Exact word lengths on a ball of the Cayley graph."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from . import _kernels
from .presets import MatrixGroupPresentation, matrix_key

__all__ = ["BallTable", "bfs_ball", "DEFAULT_MAX_STATES"]

log = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 5_000_000


@dataclass
class BallTable:
    """Elements of the ball of radius ``radius`` with their exact word lengths.

    ``keys`` holds flattened matrices ordered by (length, lexicographic
    entries), which is independent of backend and worker count.
    ``requested_radius`` differs from ``radius`` only when the state budget
    cut the search short.
    """

    preset: str
    matrix_size: int
    radius: int
    requested_radius: int
    keys: np.ndarray
    lengths: np.ndarray
    budget_exhausted: bool = False
    level_sizes: list[int] = field(default_factory=list)
    _sorted: tuple | None = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.lengths)

    @property
    def complete(self) -> bool:
        return not self.budget_exhausted

    def _index(self):
        if self._sorted is None:
            view = _kernels.row_view(self.keys)
            order = np.argsort(view, kind="stable")
            self._sorted = (view[order], order)
        return self._sorted

    def lookup_many(self, rows: np.ndarray) -> np.ndarray:
        """Word lengths of flattened elements; ``-1`` marks elements outside the table."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.matrix_size**2)
        if len(rows) == 0:
            return np.zeros(0, dtype=np.int64)
        sorted_view, order = self._index()
        q = _kernels.row_view(rows)
        pos = np.searchsorted(sorted_view, q)
        pos_c = np.minimum(pos, len(sorted_view) - 1)
        hit = sorted_view[pos_c] == q
        out = np.full(len(rows), -1, dtype=np.int64)
        out[hit] = self.lengths[order[pos_c[hit]]]
        return out

    def lookup(self, m) -> int | None:
        """Word length of one matrix, or None when it is not tabled."""
        v = int(self.lookup_many(np.asarray(m, dtype=np.int64).reshape(1, -1))[0])
        return None if v < 0 else v

    def __contains__(self, m) -> bool:
        return self.lookup(m) is not None

    def matrices(self) -> np.ndarray:
        k = self.matrix_size
        return self.keys.reshape(-1, k, k)

    def to_text(self) -> str:
        """One ``matrix-key TAB length`` line per element, in table order."""
        k = self.matrix_size
        lines = [f"{matrix_key(row.reshape(k, k))}\t{int(n)}" for row, n in zip(self.keys, self.lengths)]
        return "\n".join(lines) + ("\n" if lines else "")

    def summary(self) -> dict:
        return {
            "preset": self.preset,
            "radius": self.radius,
            "requested_radius": self.requested_radius,
            "states": len(self),
            "budget_exhausted": self.budget_exhausted,
            "level_sizes": list(self.level_sizes),
        }


def bfs_ball(
    p: MatrixGroupPresentation,
    radius: int,
    max_states: int = DEFAULT_MAX_STATES,
    workers: int = 1,
    backend: str | None = None,
) -> BallTable:
    """Breadth-first search from the identity out to ``radius``.

    A level that would push the table past ``max_states`` is discarded and
    the search stops; the returned table is then the complete ball of the
    last finished radius. ``workers`` shards frontier products across
    threads on the numpy backend; the output never depends on it.
    """
    if radius < 0:
        raise InputError("radius must be non-negative")
    if max_states <= 0:
        raise InputError("max_states must be positive")
    if workers < 1:
        raise InputError("workers must be at least 1")
    backend = backend or _kernels.default_backend()
    if backend not in _kernels.BACKENDS:
        raise InputError(f"unknown backend {backend!r}; choose from {', '.join(_kernels.BACKENDS)}")
    if backend == "numba" and not _kernels.HAVE_NUMBA:
        raise InputError("numba backend requested but numba is not importable")

    k = p.matrix_size
    d = k * k
    gens = p.flat_generators
    frontier = p.identity.reshape(1, d)
    previous = np.zeros((0, d), dtype=np.int64)
    levels = [frontier]
    total = 1
    exhausted = False
    for r in range(radius):
        if backend == "numba":
            nxt = _kernels.expand_numba(frontier, previous, gens, k)
        else:
            nxt = _kernels.expand_numpy(frontier, previous, gens, k, workers=workers)
        if total + len(nxt) > max_states:
            log.info("state budget %d reached; stopping at radius %d", max_states, r)
            exhausted = True
            break
        if len(nxt) == 0:
            # finite group exhausted; further levels are empty
            levels.extend(np.zeros((0, d), dtype=np.int64) for _ in range(radius - r))
            break
        levels.append(nxt)
        total += len(nxt)
        previous, frontier = frontier, nxt
    keys = np.concatenate(levels)
    lengths = np.concatenate([np.full(len(lv), n, dtype=np.int64) for n, lv in enumerate(levels)])
    return BallTable(
        preset=p.name,
        matrix_size=k,
        radius=len(levels) - 1,
        requested_radius=radius,
        keys=keys,
        lengths=lengths,
        budget_exhausted=exhausted,
        level_sizes=[len(lv) for lv in levels],
    )
