"""Finitely generated integer matrix groups used as discrete stand-ins.

Each preset carries a symmetric generating set together with the data the
sampling and additivity checks need: element families indexed by a size
parameter and a declared split ``G = N ⋊ H``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError, ValidationError

__all__ = [
    "MatrixGroupPresentation",
    "SemidirectSplit",
    "preset",
    "PRESETS",
    "SOL_MATRIX",
    "matrix_key",
]

SOL_MATRIX = np.array([[2, 1], [1, 1]], dtype=np.int64)

LATTICE_CAVEAT = (
    "word lengths are computed on a discrete lattice analogue of the complex group; "
    "only the asymptotic shape is comparable, constants are not"
)


def matrix_key(m: np.ndarray) -> str:
    """Row-major text key: entries joined by ',' within a row and ';' between rows."""
    return ";".join(",".join(str(int(x)) for x in row) for row in np.asarray(m))


@dataclass(frozen=True)
class SemidirectSplit:
    """``G = N ⋊ H``: a classifier for ``N``, a decomposition ``g = n * sigma(h)``
    and the intrinsic length ``ell_1`` of the ``H`` part.

    ``decompose`` maps flattened elements to ``(n, h_length)`` with ``n`` the
    flattened ``N`` factors; ``normal_size`` gives the size parameter ``x``
    of elements of ``N`` used when sampling the subgroup.
    """

    normal_name: str
    in_normal: Callable[[np.ndarray], np.ndarray]
    decompose: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]
    normal_size: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class MatrixGroupPresentation:
    name: str
    matrix_size: int
    generators: tuple[np.ndarray, ...]
    generator_names: tuple[str, ...]
    families: dict = field(default_factory=dict, compare=False)
    split: SemidirectSplit | None = field(default=None, compare=False)
    caveat: str = LATTICE_CAVEAT

    def __post_init__(self):
        k = self.matrix_size
        keys = set()
        for g in self.generators:
            if g.shape != (k, k) or g.dtype != np.int64:
                raise InputError(f"{self.name}: generators must be {k}x{k} int64 matrices")
            if round(abs(np.linalg.det(g))) != 1:
                raise ValidationError(f"{self.name}: generator {matrix_key(g)} is not unimodular")
            keys.add(g.tobytes())
        eye = np.eye(k, dtype=np.int64)
        for g in self.generators:
            if not any(np.array_equal(g @ h, eye) for h in self.generators):
                raise ValidationError(f"{self.name}: inverse of {matrix_key(g)} is not a generator")
        if len(keys) != len(self.generators):
            raise InputError(f"{self.name}: repeated generator")

    @property
    def flat_generators(self) -> np.ndarray:
        """Generators stacked as an ``(ngens, k, k)`` int64 array."""
        return np.stack(self.generators)

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.matrix_size, dtype=np.int64)

    def family(self, name: str) -> Callable[[int], tuple[float, np.ndarray]]:
        """Indexed element family ``n -> (x(n), g(n))``."""
        if name not in self.families:
            raise InputError(
                f"preset {self.name!r} has no family {name!r}; available: {', '.join(self.families) or 'none'}"
            )
        return self.families[name]


def _elementary(k: int, i: int, j: int, c: int) -> np.ndarray:
    m = np.eye(k, dtype=np.int64)
    m[i, j] = c
    return m


def _heisenberg_power(n: int) -> tuple[float, np.ndarray]:
    # z^n = I + n E13 is central
    return float(n), _elementary(3, 0, 2, n)


def _abelian_power(n: int) -> tuple[float, np.ndarray]:
    return float(n), _elementary(3, 0, 2, n)


def sol_orbit(k: int) -> np.ndarray:
    """The translation ``(A^k e1, 0)``, reachable by the word ``t^k a t^-k``."""
    v = np.linalg.matrix_power(SOL_MATRIX, k) @ np.array([1, 0], dtype=np.int64)
    out = np.eye(3, dtype=np.int64)
    out[:2, 2] = v
    return out


def sol_orbit_family(k: int) -> tuple[float, np.ndarray]:
    m = sol_orbit(k)
    return float(np.hypot(m[0, 2], m[1, 2])), m


def _free_abelian() -> MatrixGroupPresentation:
    gens = (
        np.array([[1, 0, 1], [0, 1, 0], [0, 0, 1]], dtype=np.int64),
        np.array([[1, 0, -1], [0, 1, 0], [0, 0, 1]], dtype=np.int64),
        np.array([[1, 0, 0], [0, 1, 1], [0, 0, 1]], dtype=np.int64),
        np.array([[1, 0, 0], [0, 1, -1], [0, 0, 1]], dtype=np.int64),
    )

    def in_normal(flat):
        return flat[:, 5] == 0

    def decompose(flat):
        # Z x Z with N = first factor and H = second; ell_1(h) = |y|
        n = flat.copy()
        n[:, 5] = 0
        return n, np.abs(flat[:, 5])

    return MatrixGroupPresentation(
        name="free_abelian_2",
        matrix_size=3,
        generators=gens,
        generator_names=("x", "X", "y", "Y"),
        families={"center": _abelian_power},
        split=SemidirectSplit("first factor Z", in_normal, decompose, lambda flat: np.abs(flat[:, 2]).astype(float)),
    )


def _heisenberg() -> MatrixGroupPresentation:
    gens = (
        _elementary(3, 0, 1, 1),
        _elementary(3, 0, 1, -1),
        _elementary(3, 1, 2, 1),
        _elementary(3, 1, 2, -1),
    )

    def in_normal(flat):
        return (flat[:, 1] == 0) & (flat[:, 5] == 0)

    def decompose(flat):
        # g = [[1, a, b], [0, 1, c], [0, 0, 1]] = z^(b - ac) * E12(a) E23(c)
        a, b, c = flat[:, 1], flat[:, 2], flat[:, 5]
        n = np.zeros_like(flat)
        n[:, [0, 4, 8]] = 1
        n[:, 2] = b - a * c
        return n, np.abs(a) + np.abs(c)

    return MatrixGroupPresentation(
        name="heisenberg_Z",
        matrix_size=3,
        generators=gens,
        generator_names=("a", "A", "c", "C"),
        families={"center": _heisenberg_power},
        split=SemidirectSplit("center", in_normal, decompose, lambda flat: np.abs(flat[:, 2]).astype(float)),
    )


def _sol() -> MatrixGroupPresentation:
    t = np.eye(3, dtype=np.int64)
    t[:2, :2] = SOL_MATRIX
    t_inv = np.eye(3, dtype=np.int64)
    t_inv[:2, :2] = np.array([[1, -1], [-1, 2]], dtype=np.int64)
    gens = (
        _elementary(3, 0, 2, 1),
        _elementary(3, 0, 2, -1),
        _elementary(3, 1, 2, 1),
        _elementary(3, 1, 2, -1),
        t,
        t_inv,
    )

    def in_normal(flat):
        return (flat[:, 0] == 1) & (flat[:, 1] == 0) & (flat[:, 3] == 0) & (flat[:, 4] == 1)

    def decompose(flat):
        # g = (v, A^k) = (v, 1) * t^k
        n = flat.copy()
        n[:, [0, 4]] = 1
        n[:, [1, 3]] = 0
        return n, np.array([_sol_exponent(row) for row in flat], dtype=np.int64)

    return MatrixGroupPresentation(
        name="sol_lattice",
        matrix_size=3,
        generators=gens,
        generator_names=("a", "A", "b", "B", "t", "T"),
        families={"orbit": sol_orbit_family},
        split=SemidirectSplit(
            "translations Z^2", in_normal, decompose, lambda flat: np.hypot(flat[:, 2], flat[:, 5])
        ),
    )


def _sol_exponent(flat_row: np.ndarray) -> int:
    """``|k|`` for an element whose linear part is ``A^k``."""
    # A^k = [[F(2k+1), F(2k)], [F(2k), F(2k-1)]] with Fibonacci numbers, so the
    # off-diagonal entry is F(2k) up to sign and determines |k|
    off = abs(int(flat_row[1]))
    k, a, b = 0, 0, 1  # a, b = F(2k), F(2k + 1)
    while a < off:
        a, b = a + b, a + 2 * b
        k += 1
    if a != off:
        raise ValidationError(f"linear part {flat_row[:2]}/{flat_row[3:5]} is not a power of A")
    return k


PRESETS: dict[str, Callable[[], MatrixGroupPresentation]] = {
    "heisenberg_Z": _heisenberg,
    "sol_lattice": _sol,
    "free_abelian_2": _free_abelian,
}


def preset(name: str) -> MatrixGroupPresentation:
    if name not in PRESETS:
        raise InputError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return PRESETS[name]()
