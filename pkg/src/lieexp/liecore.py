"""Lie algebras given by structure constants over Q(i).

A :class:`LieAlgebra` stores ``[e_i, e_j]`` only for ``i < j``; the other
half follows from antisymmetry. Every constructor validates the Jacobi
identity eagerly and names the first violating basis triple.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

from .errors import InputError, ValidationError
from .exactlin import (
    ONE,
    ZERO,
    GaussianRational,
    Matrix,
    Subspace,
    gr,
    kernel,
    solve_linear,
    subspace_combine,
)

Element = tuple  # coordinates in the ambient basis, one GaussianRational per basis vector

__all__ = [
    "Element",
    "ideal_closure",
    "LieAlgebra",
    "SeriesChain",
    "validate_structure",
    "bracket",
    "ad_matrix",
    "bracket_span",
    "series",
    "center",
    "quotient",
    "restrict",
    "semidirect",
    "direct_sum",
    "change_basis",
    "is_subalgebra",
    "is_ideal",
    "derivations",
]


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q(i).

    Args:
        basis_names: distinct identifiers, one per basis vector.
        brackets: ``{(i, j): vector}`` for ``i < j``; missing pairs are zero.
        validate: check Jacobi on construction (leave on outside of internal
            rebuilds whose inputs are already known to be valid).
    """

    __slots__ = ("dim", "basis_names", "_c", "_index", "_sparse")

    def __init__(
        self,
        basis_names: Sequence[str],
        brackets: Mapping[tuple[int, int], Sequence] | None = None,
        validate: bool = True,
    ):
        names = tuple(str(n) for n in basis_names)
        if len(set(names)) != len(names):
            raise InputError(f"basis names are not distinct: {names}")
        n = len(names)
        c = {}
        for (i, j), v in (brackets or {}).items():
            if not (0 <= i < j < n):
                raise InputError(f"bracket pair ({i}, {j}) must satisfy 0 <= i < j < {n}")
            v = tuple(gr(x) for x in v)
            if len(v) != n:
                raise InputError(f"bracket value for ({i}, {j}) has length {len(v)}, expected {n}")
            if any(v):
                c[(i, j)] = v
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "basis_names", names)
        object.__setattr__(self, "_c", c)
        # nonzero entries only, in both orders, for the bracket inner loop
        sparse = {}
        for (i, j), v in c.items():
            nz = tuple((k, t) for k, t in enumerate(v) if t)
            sparse[(i, j)] = nz
            sparse[(j, i)] = tuple((k, -t) for k, t in nz)
        object.__setattr__(self, "_sparse", sparse)
        object.__setattr__(self, "_index", {nm: k for k, nm in enumerate(names)})
        if validate:
            bad = validate_structure(self)
            if bad:
                i, j, k, val = bad[0]
                raise ValidationError(
                    f"Jacobi identity fails on ({names[i]}, {names[j]}, {names[k]})",
                    witness=bad,
                )

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    @classmethod
    def from_table(
        cls, basis_names: Sequence[str], table: Mapping[tuple[str, str], Mapping[str, object]]
    ) -> LieAlgebra:
        """Build from name-keyed brackets, e.g. ``{("e1", "e2"): {"e3": 1}}``.

        Pairs may be given in either order; a reversed pair is negated.
        """
        idx = {nm: k for k, nm in enumerate(basis_names)}
        n = len(basis_names)
        brackets: dict[tuple[int, int], list] = {}
        for (a, b), value in table.items():
            try:
                i, j = idx[a], idx[b]
            except KeyError as exc:
                raise InputError(f"unknown basis name {exc.args[0]!r}") from None
            if i == j:
                raise InputError(f"bracket [{a}, {a}] must be zero and cannot be given")
            sign = ONE
            if i > j:
                i, j, sign = j, i, -ONE
            if (i, j) in brackets:
                raise InputError(f"duplicate bracket pair ({basis_names[i]}, {basis_names[j]})")
            vec = [ZERO] * n
            for name, coeff in value.items():
                if name not in idx:
                    raise InputError(f"unknown basis name {name!r}")
                vec[idx[name]] = sign * gr(coeff)
            brackets[(i, j)] = vec
        return cls(basis_names, brackets)

    @classmethod
    def abelian(cls, n: int, prefix: str = "e") -> LieAlgebra:
        return cls([f"{prefix}{k + 1}" for k in range(n)], {}, validate=False)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown basis name {name!r}") from None

    def unit(self, k: int | str) -> Element:
        if isinstance(k, str):
            k = self.index(k)
        return tuple(ONE if i == k else ZERO for i in range(self.dim))

    def element(self, coeffs: Mapping[str, object]) -> Element:
        out = [ZERO] * self.dim
        for name, c in coeffs.items():
            out[self.index(name)] = gr(c)
        return tuple(out)

    def zero(self) -> Element:
        return (ZERO,) * self.dim

    def basis_bracket(self, i: int, j: int) -> Element:
        if i < j:
            return self._c.get((i, j), self.zero())
        if i > j:
            v = self._c.get((j, i))
            return tuple(-x for x in v) if v is not None else self.zero()
        return self.zero()

    def structure_constants(self) -> dict[tuple[int, int], Element]:
        """Nonzero ``[e_i, e_j]`` for ``i < j`` (a copy)."""
        return dict(self._c)

    def bracket(self, x: Element, y: Element) -> Element:
        return bracket(self, x, y)

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def span(self, *names: str) -> Subspace:
        return Subspace.span_of_units([self.index(n) for n in names], self.dim)

    def reorder(self, names: Sequence[str]) -> LieAlgebra:
        """Same algebra with the basis permuted into ``names`` order."""
        if sorted(names) != sorted(self.basis_names):
            raise InputError("reorder needs a permutation of the basis names")
        perm = [self.index(n) for n in names]
        return change_basis(self, Matrix([self.unit(p) for p in perm]), names, validate=False)

    def same_structure(self, other: LieAlgebra) -> bool:
        """Equal structure constants once bases are matched by name."""
        if set(self.basis_names) != set(other.basis_names):
            return False
        return self == other.reorder(self.basis_names)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis_names == other.basis_names and self._c == other._c

    def __hash__(self):
        return hash((self.basis_names, tuple(sorted(self._c.items()))))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)})"

    def pretty(self, v: Element) -> str:
        return format_element(v, self.basis_names)


def format_element(v: Sequence[GaussianRational], names: Sequence[str]) -> str:
    """Human-readable linear combination, e.g. ``"e1 - 1/2 f3"``."""
    parts = []
    for c, name in zip(v, names):
        if not c:
            continue
        if c == 1:
            term, sign = name, "+"
        elif c == -1:
            term, sign = name, "-"
        elif c.is_real():
            sign = "-" if c.re < 0 else "+"
            term = f"{abs(c.re)} {name}"
        else:
            sign, term = "+", f"({c}) {name}"
        parts.append((sign, term))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def validate_structure(g: LieAlgebra) -> list[tuple[int, int, int, Element]]:
    """Jacobi violations on basis triples ``i < j < k`` as ``(i, j, k, value)``.

    Antisymmetry holds by storage, so the Jacobi expression is alternating and
    trilinear; ordered basis triples therefore cover every case.
    """
    bad = []
    for i, j, k in itertools.combinations(range(g.dim), 3):
        ei, ej, ek = g.unit(i), g.unit(j), g.unit(k)
        a = bracket(g, ei, g.basis_bracket(j, k))
        b = bracket(g, ej, g.basis_bracket(k, i))
        c = bracket(g, ek, g.basis_bracket(i, j))
        total = tuple(x + y + z for x, y, z in zip(a, b, c))
        if any(total):
            bad.append((i, j, k, total))
    return bad


def _check_dim(g: LieAlgebra, *vs):
    for v in vs:
        if len(v) != g.dim:
            raise InputError(f"element of length {len(v)} in algebra of dimension {g.dim}")


def bracket(g: LieAlgebra, x: Element, y: Element) -> Element:
    _check_dim(g, x, y)
    acc: dict[int, GaussianRational] = {}
    ys = [(j, b) for j, b in enumerate(y) if b]
    sparse = g._sparse
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in ys:
            terms = sparse.get((i, j))
            if terms is None:
                continue
            coeff = a * b
            for k, t in terms:
                prev = acc.get(k)
                acc[k] = coeff * t if prev is None else prev + coeff * t
    out = [ZERO] * g.dim
    for k, v in acc.items():
        out[k] = v
    return tuple(out)


def ad_matrix(g: LieAlgebra, x: Element) -> Matrix:
    """Matrix of ``y -> [x, y]``; column ``j`` holds ``[x, e_j]``."""
    _check_dim(g, x)
    cols = [bracket(g, x, g.unit(j)) for j in range(g.dim)]
    return Matrix.from_columns(cols, g.dim)


def bracket_span(g: LieAlgebra, u: Subspace, w: Subspace) -> Subspace:
    if u.ambient_dim != g.dim or w.ambient_dim != g.dim:
        raise InputError("subspace does not live in this algebra")
    vecs = [bracket(g, a, b) for a in u.vectors for b in w.vectors]
    return Subspace(vecs, g.dim)


def is_subalgebra(g: LieAlgebra, u: Subspace) -> bool:
    return bracket_span(g, u, u).issubspace(u)


def is_ideal(g: LieAlgebra, j: Subspace) -> bool:
    return bracket_span(g, g.full(), j).issubspace(j)


def ideal_closure(g: LieAlgebra, u: Subspace) -> Subspace:
    """Smallest ideal of ``g`` containing ``u``."""
    full = g.full()
    cur = u
    while True:
        nxt = subspace_combine(cur, bracket_span(g, full, cur), "sum")
        if nxt == cur:
            return cur
        cur = nxt


@dataclass(frozen=True)
class SeriesChain:
    """Descending chain of subspaces; the last term equals its successor."""

    terms: tuple[Subspace, ...]
    kind: Literal["lower_central", "derived"]

    @property
    def stable_term(self) -> Subspace:
        return self.terms[-1]

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, k):
        return self.terms[k]

    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def series(
    g: LieAlgebra, on: Subspace | None = None, kind: Literal["lower_central", "derived"] = "lower_central"
) -> SeriesChain:
    """Lower central or derived series of the subalgebra ``on`` (default: all of g).

    Terms are computed inside ``on``: ``t_{k+1} = [on, t_k]`` or ``[t_k, t_k]``.
    """
    if on is None:
        on = g.full()
    if kind not in ("lower_central", "derived"):
        raise InputError(f"unknown series kind {kind!r}")
    if not is_subalgebra(g, on):
        raise ValidationError("series requested on a subspace that is not a subalgebra")
    terms = [on]
    while True:
        cur = terms[-1]
        nxt = bracket_span(g, on if kind == "lower_central" else cur, cur)
        if nxt == cur:
            return SeriesChain(tuple(terms), kind)
        terms.append(nxt)


def center(g: LieAlgebra) -> Subspace:
    rows = []
    for j in range(g.dim):
        # [x, e_j] = -ad(e_j) x, so x is central iff ad(e_j) x = 0 for all j
        rows.extend(ad_matrix(g, g.unit(j)).row_tuples())
    if not rows:
        return g.full()
    return kernel(Matrix(rows, cols=g.dim))


def _unit_name(names: Sequence[str], v: Sequence[GaussianRational]) -> str | None:
    nz = [k for k, x in enumerate(v) if x]
    if len(nz) == 1 and v[nz[0]] == 1:
        return names[nz[0]]
    return None


def _basis_names_for(g: LieAlgebra, vectors: Sequence[Element], prefix: str) -> list[str]:
    names = [_unit_name(g.basis_names, v) for v in vectors]
    taken = {n for n in names if n is not None}
    k = 0
    out = []
    for n in names:
        if n is None:
            while True:
                k += 1
                cand = f"{prefix}{k}"
                if cand not in taken:
                    break
            taken.add(cand)
            n = cand
        out.append(n)
    return out


def change_basis(
    g: LieAlgebra, new_basis: Matrix, names: Sequence[str] | None = None, validate: bool = True
) -> LieAlgebra:
    """The same algebra written in the basis given by the rows of ``new_basis``."""
    if new_basis.shape != (g.dim, g.dim):
        raise InputError("change_basis needs a square matrix matching the algebra dimension")
    rows = new_basis.row_tuples()
    # coordinates w.r.t. new basis: solve new_basis^T c = v
    bt = new_basis.T
    vals = {}
    for i, j in itertools.combinations(range(g.dim), 2):
        v = bracket(g, rows[i], rows[j])
        if any(v):
            sol = solve_linear(bt, Matrix.from_columns([v], g.dim))
            if sol is None:
                raise InputError("change_basis matrix is singular")
            vals[(i, j)] = sol.column(0)
    if len(Subspace(rows, g.dim).vectors) != g.dim:
        raise InputError("change_basis matrix is singular")
    if names is None:
        names = _basis_names_for(g, rows, "u")
    return LieAlgebra(names, vals, validate=validate)


def restrict(g: LieAlgebra, u: Subspace, names: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra ``u`` as a Lie algebra in its echelon basis."""
    if u.ambient_dim != g.dim:
        raise InputError("subspace does not live in this algebra")
    if not is_subalgebra(g, u):
        raise ValidationError("restrict: subspace is not closed under the bracket")
    vals = {}
    vecs = u.vectors
    for i, j in itertools.combinations(range(u.dim), 2):
        v = bracket(g, vecs[i], vecs[j])
        if any(v):
            vals[(i, j)] = u.coordinates(v)
    if names is None:
        names = _basis_names_for(g, vecs, "u")
    return LieAlgebra(names, vals, validate=False)


def quotient(g: LieAlgebra, j: Subspace) -> tuple[LieAlgebra, Matrix]:
    """``g / j`` on the canonical complement of ``j`` plus the projection matrix.

    The quotient basis is the set of ambient unit vectors at the non-pivot
    columns of ``j``; the projection sends ambient coordinates to quotient
    coordinates.
    """
    if j.ambient_dim != g.dim:
        raise InputError("subspace does not live in this algebra")
    if not is_ideal(g, j):
        raise ValidationError("quotient: subspace is not an ideal")
    piv = set(j.pivots)
    keep = [k for k in range(g.dim) if k not in piv]
    proj_rows = []
    for k in keep:
        row = [ZERO] * g.dim
        row[k] = ONE
        # eliminate pivot coordinates: x -> x - sum_p x[p] * basis_p
        for p, b in zip(j.pivots, j.vectors):
            if b[k]:
                row[p] = row[p] - b[k]
        proj_rows.append(row)
    proj = Matrix(proj_rows, cols=g.dim)
    vals = {}
    for a, b in itertools.combinations(range(len(keep)), 2):
        v = proj @ g.basis_bracket(keep[a], keep[b])
        if any(v):
            vals[(a, b)] = v
    q = LieAlgebra([g.basis_names[k] for k in keep], vals)
    return q, proj


def quotient_lift(g: LieAlgebra, j: Subspace, coords: Sequence) -> Element:
    """Ambient representative (on the canonical complement) of a quotient vector."""
    piv = set(j.pivots)
    keep = [k for k in range(g.dim) if k not in piv]
    out = [ZERO] * g.dim
    for k, c in zip(keep, coords):
        out[k] = gr(c)
    return tuple(out)


def _is_derivation(b: LieAlgebra, d: Matrix) -> tuple[int, int] | None:
    for i, j in itertools.combinations(range(b.dim), 2):
        lhs = d @ b.basis_bracket(i, j)
        rhs = tuple(
            x + y
            for x, y in zip(bracket(b, d.column(i), b.unit(j)), bracket(b, b.unit(i), d.column(j)))
        )
        if lhs != rhs:
            return i, j
    return None


def derivations(b: LieAlgebra) -> list[Matrix]:
    """A basis of Der(b) as matrices acting on column vectors."""
    n = b.dim
    # unknown D[r][s] at index r*n + s; D e_s = column s
    rows = []
    for i, j in itertools.combinations(range(n), 2):
        cij = b.basis_bracket(i, j)
        for k in range(n):
            row = [ZERO] * (n * n)
            # (D [e_i, e_j])_k = sum_s D[k][s] c_ij^s
            for s in range(n):
                if cij[s]:
                    row[k * n + s] = row[k * n + s] + cij[s]
            # -([D e_i, e_j])_k = -sum_r D[r][i] [e_r, e_j]_k
            for r in range(n):
                t = b.basis_bracket(r, j)[k]
                if t:
                    row[r * n + i] = row[r * n + i] - t
                t = b.basis_bracket(i, r)[k]
                if t:
                    row[r * n + j] = row[r * n + j] - t
            rows.append(row)
    if not rows:
        rows = [[ZERO] * (n * n)]
    ker = kernel(Matrix(rows, cols=n * n))
    return [Matrix([v[r * n : (r + 1) * n] for r in range(n)]) for v in ker.vectors]


def semidirect(b: LieAlgebra, l: LieAlgebra, action: Sequence[Matrix]) -> LieAlgebra:
    """``b ⋊ l`` where ``action[k]`` is the derivation of b by l's k-th basis vector.

    The result's basis is b's basis followed by l's; brackets are b's, l's and
    ``[x, y] = action(x) y`` for ``x`` in l, ``y`` in b.
    """
    if len(action) != l.dim:
        raise InputError(f"need one action matrix per basis vector of l ({l.dim}), got {len(action)}")
    for k, d in enumerate(action):
        if d.shape != (b.dim, b.dim):
            raise InputError(f"action matrix {k} has shape {d.shape}, expected {(b.dim, b.dim)}")
        bad = _is_derivation(b, d)
        if bad is not None:
            raise ValidationError(
                f"action of {l.basis_names[k]} is not a derivation on "
                f"({b.basis_names[bad[0]]}, {b.basis_names[bad[1]]})",
                witness=(k, bad),
            )
    for i, j in itertools.combinations(range(l.dim), 2):
        lhs = Matrix.zeros(b.dim, b.dim)
        for c, d in zip(l.basis_bracket(i, j), action):
            if c:
                lhs = lhs + d.scale(c)
        rhs = action[i] @ action[j] - action[j] @ action[i]
        if lhs != rhs:
            raise ValidationError(
                f"action is not a homomorphism on ({l.basis_names[i]}, {l.basis_names[j]})",
                witness=(i, j),
            )
    names = list(b.basis_names) + list(l.basis_names)
    if len(set(names)) != len(names):
        raise InputError("semidirect factors share basis names")
    nb, n = b.dim, b.dim + l.dim
    vals = {}
    for (i, j), v in b.structure_constants().items():
        vals[(i, j)] = tuple(v) + (ZERO,) * l.dim
    for (i, j), v in l.structure_constants().items():
        vals[(nb + i, nb + j)] = (ZERO,) * nb + tuple(v)
    for k, d in enumerate(action):
        for j in range(nb):
            col = d.column(j)
            if any(col):
                # [e_j, l_k] = -[l_k, e_j] = -D_k e_j
                vals[(j, nb + k)] = tuple(-x for x in col) + (ZERO,) * l.dim
    return LieAlgebra(names, vals)


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    return semidirect(a, b, [Matrix.zeros(a.dim, a.dim)] * b.dim)


def lift_subspace_names(g: LieAlgebra, u: Subspace) -> list[str]:
    """Pretty strings for the echelon basis of ``u``."""
    return [format_element(v, g.basis_names) for v in u.vectors]

