"""Exact linear algebra over the Gaussian rationals Q(i).

Everything downstream (brackets, series, Levi/Cartan, weights) computes on
these types, so floats never enter the algebra path. Values are immutable;
functions are pure.

Vectors are plain tuples of :class:`GaussianRational`. Matrices are
:class:`Matrix` (dense, row-major). Subspaces are stored by their canonical
reduced row-echelon basis, so two equal subspaces compare equal by value.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction
from numbers import Rational
from typing import Literal

from .errors import InputError

try:
    # C-level rationals; same values and hashes as Fraction, about 10x faster
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

_QTYPE = type(_Q(0))
_RATIONALS = (int, Fraction, _QTYPE)
_QZERO = _Q(0)

__all__ = [
    "GaussianRational",
    "Matrix",
    "Subspace",
    "ZERO",
    "ONE",
    "I",
    "gr",
    "vector",
    "scalar_ops",
    "rref",
    "kernel",
    "subspace_combine",
    "solve_linear",
    "is_nilpotent_matrix",
    "parse_rational",
    "format_rational",
]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer ``"p"``) into a Fraction."""
    if not isinstance(text, str):
        raise InputError(f"rational must be a string 'p/q', got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise InputError(f"cannot parse rational {text!r}") from None
    if q == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x) -> str:
    return f"{int(x.numerator)}/{int(x.denominator)}"


def _as_fraction(x):
    if type(x) is _QTYPE:
        return x
    if isinstance(x, bool):
        return _Q(int(x))
    if isinstance(x, int):
        return _Q(x)
    if isinstance(x, Rational):
        return _Q(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return _Q(parse_rational(x))
    raise TypeError(f"not an exact rational: {x!r}")


_new = object.__new__
_set = object.__setattr__


def _make(re, im):
    g = _new(GaussianRational)
    _set(g, "re", re)
    _set(g, "im", im)
    return g


class GaussianRational:
    """Exact scalar ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact; pass (re, im) rationals")
        if isinstance(x, tuple) and len(x) == 2:
            return cls(x[0], x[1])
        return cls(x)

    @classmethod
    def from_json(cls, pair) -> GaussianRational:
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise InputError(f"Gaussian rational must be ['p/q', 'r/s'], got {pair!r}")
        return cls(parse_rational(pair[0]), parse_rational(pair[1]))

    def to_json(self) -> list[str]:
        return [format_rational(self.re), format_rational(self.im)]

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if type(other) is GaussianRational:
            return _make(self.re + other.re, self.im + other.im)
        if isinstance(other, _RATIONALS):
            return _make(self.re + _as_fraction(other), self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is GaussianRational:
            return _make(self.re - other.re, self.im - other.im)
        if isinstance(other, _RATIONALS):
            return _make(self.re - _as_fraction(other), self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RATIONALS):
            return _make(_as_fraction(other) - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            if isinstance(other, _RATIONALS):
                q = _as_fraction(other)
                return _make(self.re * q, self.im * q)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return _make(a * c, _QZERO)
        return _make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __neg__(self):
        return _make(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self) -> GaussianRational:
        a, b = self.re, self.im
        if not a and not b:
            raise ZeroDivisionError("division by zero in Q(i)")
        if not b:
            return _make(1 / a, _QZERO)
        n = a * a + b * b
        return _make(a / n, -b / n)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    # comparisons -----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONALS):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        imag = "i" if im == 1 else "-i" if im == -1 else f"{im}i"
        if not re:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{re}{sign}{imag}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gr(x) -> GaussianRational:
    """Shorthand coercion: ints, Fractions, ``"p/q"`` strings, ``(re, im)`` pairs."""
    return GaussianRational.coerce(x)


def vector(values: Iterable) -> tuple[GaussianRational, ...]:
    return tuple(gr(v) for v in values)


def scalar_ops(a, b, op: Literal["add", "sub", "mul", "div"]) -> GaussianRational:
    a, b = gr(a), gr(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero in Q(i)")
        return a / b
    raise InputError(f"unknown scalar op {op!r}")


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Dense immutable matrix over Q(i)."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, data: Sequence[Sequence] = (), cols: int | None = None):
        entries = tuple(tuple(gr(x) for x in row) for row in data)
        if cols is None:
            if not entries:
                raise InputError("empty matrix needs an explicit column count")
            cols = len(entries[0])
        for row in entries:
            if len(row) != cols:
                raise InputError("ragged matrix rows")
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_e", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, entries: tuple, cols: int) -> Matrix:
        m = object.__new__(cls)
        object.__setattr__(m, "rows", len(entries))
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "_e", entries)
        return m

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls._raw(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> Matrix:
        if not columns:
            return cls.zeros(rows, 0)
        return cls(list(zip(*columns)), cols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self._e[i]

    def column(self, j: int) -> tuple[GaussianRational, ...]:
        return tuple(r[j] for r in self._e)

    def tolist(self) -> list[list[GaussianRational]]:
        return [list(r) for r in self._e]

    def row_tuples(self) -> tuple[tuple[GaussianRational, ...], ...]:
        return self._e

    @property
    def T(self) -> Matrix:
        return Matrix._raw(tuple(zip(*self._e)) if self.rows else tuple(() for _ in range(self.cols)), self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __add__(self, other: Matrix) -> Matrix:
        _same_shape(self, other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.cols
        )

    def __sub__(self, other: Matrix) -> Matrix:
        _same_shape(self, other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.cols
        )

    def __neg__(self) -> Matrix:
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._e), self.cols)

    def scale(self, c) -> Matrix:
        c = gr(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._e), self.cols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
            return Matrix._raw(_matmul(self._e, other._e, other.cols), other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise InputError(f"shape mismatch {self.shape} @ vector[{len(v)}]")
        return _matvec(self._e, v)

    def __pow__(self, k: int) -> Matrix:
        if self.rows != self.cols:
            raise InputError("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self) -> GaussianRational:
        if self.rows != self.cols:
            raise InputError("trace of a non-square matrix")
        s = ZERO
        for i in range(self.rows):
            s = s + self._e[i][i]
        return s

    def is_zero(self) -> bool:
        return not any(x for r in self._e for x in r)

    def det(self) -> GaussianRational:
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        a = [list(r) for r in self._e]
        n = self.rows
        det = ONE
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return ZERO
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            piv = a[c][c]
            det = det * piv
            inv = piv.inverse()
            for r in range(c + 1, n):
                f = a[r][c]
                if f:
                    f = f * inv
                    rc = a[c]
                    a[r] = [x - f * y for x, y in zip(a[r], rc)]
        return det

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self._e)
        return f"Matrix[{self.rows}x{self.cols}]({body})"


def _same_shape(a: Matrix, b: Matrix):
    if a.shape != b.shape:
        raise InputError(f"shape mismatch {a.shape} vs {b.shape}")


def _matmul(a, b, bcols):
    cols = list(zip(*b)) if b else [()] * bcols
    out = []
    for r in a:
        row = []
        for c in cols:
            s = ZERO
            for x, y in zip(r, c):
                if x and y:
                    s = s + x * y
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _matvec(a, v):
    out = []
    for r in a:
        s = ZERO
        for x, y in zip(r, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return tuple(out)


def _rref_rows(rows: list[list[GaussianRational]], ncols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan. Returns (nonzero rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != ONE:
            inv = piv.inverse()
            rows[r] = [x * inv if x else ZERO for x in rows[r]]
        prow = rows[r]
        for k in range(nrows):
            if k != r:
                f = rows[k][c]
                if f:
                    rows[k] = [x - f * y if y else x for x, y in zip(rows[k], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Canonical reduced row-echelon form (same shape as ``m``) and rank."""
    rows, pivots = _rref_rows([list(r) for r in m.row_tuples()], m.cols)
    rank = len(pivots)
    full = [tuple(r) for r in rows] + [(ZERO,) * m.cols] * (m.rows - rank)
    return Matrix._raw(tuple(full), m.cols), rank


class Subspace:
    """Linear subspace of ``Q(i)^n`` held by its canonical echelon basis.

    The basis rows have a leading 1 in each pivot column and zeros in every
    other pivot column, so coordinates of a member vector are just its
    entries at the pivot columns.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, vectors: Iterable[Sequence] = (), ambient_dim: int | None = None):
        rows = [list(vector(v)) for v in vectors]
        if ambient_dim is None:
            if not rows:
                raise InputError("empty span needs an explicit ambient dimension")
            ambient_dim = len(rows[0])
        for r in rows:
            if len(r) != ambient_dim:
                raise InputError(
                    f"vector of length {len(r)} in ambient space of dimension {ambient_dim}"
                )
        basis, pivots = _rref_rows(rows, ambient_dim)
        self._set(ambient_dim, tuple(tuple(r) for r in basis), tuple(pivots))

    def _set(self, n, rows, pivots):
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "basis", Matrix._raw(rows, n))
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls((), n)

    @classmethod
    def full(cls, n: int) -> Subspace:
        s = object.__new__(cls)
        s._set(n, Matrix.identity(n).row_tuples(), tuple(range(n)))
        return s

    @classmethod
    def span_of_units(cls, indices: Iterable[int], n: int) -> Subspace:
        return cls([tuple(ONE if k == i else ZERO for k in range(n)) for i in indices], n)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple[tuple[GaussianRational, ...], ...]:
        return self.basis.row_tuples()

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, pivots={self.pivots})"

    def coordinates(self, v: Sequence) -> tuple[GaussianRational, ...]:
        """Coordinates of ``v`` in the echelon basis; raises if ``v`` is not a member."""
        v = tuple(v)
        coords = tuple(v[p] for p in self.pivots)
        if self.lift(coords) != v:
            raise InputError("vector does not lie in the subspace")
        return coords

    def lift(self, coords: Sequence) -> tuple[GaussianRational, ...]:
        """Ambient vector with the given coordinates in the echelon basis."""
        out = [ZERO] * self.ambient_dim
        for c, row in zip(coords, self.basis.row_tuples()):
            if c:
                out = [o + c * x if x else o for o, x in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        v = tuple(v)
        if len(v) != self.ambient_dim:
            raise InputError("vector length does not match ambient dimension")
        return self.lift(tuple(v[p] for p in self.pivots)) == v

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: Subspace) -> bool:
        _check_ambient(self, other)
        return all(other.contains(v) for v in self.vectors)

    __le__ = issubspace

    def pullback(self, inner: Subspace) -> Subspace:
        """Embed a subspace given in this subspace's coordinates into the ambient space."""
        if inner.ambient_dim != self.dim:
            raise InputError("inner subspace lives in a space of the wrong dimension")
        return Subspace([self.lift(v) for v in inner.vectors], self.ambient_dim)

    def restrict_coords(self, outer: Subspace) -> Subspace:
        """Express ``outer`` (contained in self) in this subspace's echelon coordinates."""
        return Subspace([self.coordinates(v) for v in outer.vectors], self.dim)

    def canonical_complement(self) -> Subspace:
        """Span of the standard basis vectors at the non-pivot columns."""
        piv = set(self.pivots)
        return Subspace.span_of_units([k for k in range(self.ambient_dim) if k not in piv], self.ambient_dim)

    def annihilator(self) -> Matrix:
        """Rows spanning the equations cutting out this subspace (bilinear pairing)."""
        return kernel(self.basis if self.dim else Matrix.zeros(0, self.ambient_dim)).basis


def _check_ambient(u: Subspace, w: Subspace):
    if u.ambient_dim != w.ambient_dim:
        raise InputError(f"ambient dimension mismatch: {u.ambient_dim} vs {w.ambient_dim}")


def kernel(m: Matrix) -> Subspace:
    """Null space ``{x : m x = 0}`` as a canonical subspace of ``Q(i)^cols``."""
    n = m.cols
    rows, pivots = _rref_rows([list(r) for r in m.row_tuples()], n)
    piv_set = set(pivots)
    basis = []
    for f in range(n):
        if f in piv_set:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for r, p in zip(rows, pivots):
            if r[f]:
                v[p] = -r[f]
        basis.append(v)
    return Subspace(basis, n)


def subspace_combine(
    u: Subspace, w: Subspace, mode: Literal["sum", "intersect", "complement_within"]
) -> Subspace:
    _check_ambient(u, w)
    if mode == "sum":
        return Subspace(list(u.vectors) + list(w.vectors), u.ambient_dim)
    if mode == "intersect":
        if u.is_full():
            return w
        if w.is_full():
            return u
        eqs = list(u.annihilator().row_tuples()) + list(w.annihilator().row_tuples())
        return kernel(Matrix(eqs, cols=u.ambient_dim))
    if mode == "complement_within":
        if not u.issubspace(w):
            raise InputError("complement_within requires u to be contained in w")
        chosen = list(u.vectors)
        rank = len(chosen)
        picked = []
        for v in w.vectors:
            if rank == w.dim:
                break
            trial = Subspace(chosen + [v], u.ambient_dim)
            if trial.dim > rank:
                chosen.append(v)
                picked.append(v)
                rank += 1
        return Subspace(picked, u.ambient_dim)
    raise InputError(f"unknown subspace mode {mode!r}")


def solve_linear(a: Matrix, b: Matrix) -> Matrix | None:
    """Some ``x`` with ``a @ x == b``, free variables set to zero; ``None`` if inconsistent."""
    if a.rows != b.rows:
        raise InputError(f"shape mismatch: a has {a.rows} rows, b has {b.rows}")
    n = a.cols
    aug = [list(ra) + list(rb) for ra, rb in zip(a.row_tuples(), b.row_tuples())]
    rows, pivots = _rref_rows(aug, n + b.cols)
    if pivots and pivots[-1] >= n:
        return None
    x = [[ZERO] * b.cols for _ in range(n)]
    for r, p in zip(rows, pivots):
        x[p] = r[n:]
    return Matrix(x, cols=b.cols)


def is_nilpotent_matrix(m: Matrix) -> bool:
    if m.rows != m.cols:
        raise InputError("nilpotency test needs a square matrix")
    if m.rows == 0:
        return True
    p = m
    # squaring reaches an exponent >= n in O(log n) steps
    k = 1
    while k < m.rows:
        p = p @ p
        k *= 2
        if p.is_zero():
            return True
    return p.is_zero()
