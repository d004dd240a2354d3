"""Classical structure theory in characteristic zero: Killing form, solvable
radical, Levi subalgebra, Cartan subalgebra.

All results are post-validated; a failed post-condition raises
:class:`~lieexp.errors.ValidationError` because it can only mean a bug.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass

from .errors import BudgetExceeded, InputError, ValidationError
from .exactlin import (
    ZERO,
    Matrix,
    Subspace,
    gr,
    is_nilpotent_matrix,
    kernel,
    solve_linear,
    subspace_combine,
)
from .liecore import (
    LieAlgebra,
    ad_matrix,
    bracket,
    bracket_span,
    center,
    is_ideal,
    is_subalgebra,
    quotient,
    quotient_lift,
    restrict,
    series,
)

__all__ = [
    "Classification",
    "LeviDecomposition",
    "CartanData",
    "killing_form",
    "classify",
    "is_nilpotent",
    "is_solvable",
    "is_semisimple",
    "is_reductive",
    "radical",
    "levi_subalgebra",
    "normalizer",
    "engel_subalgebra",
    "cartan_subalgebra",
]


@dataclass(frozen=True)
class Classification:
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool
    is_semisimple: bool
    is_reductive: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "is_abelian": self.is_abelian,
            "is_nilpotent": self.is_nilpotent,
            "is_solvable": self.is_solvable,
            "is_semisimple": self.is_semisimple,
            "is_reductive": self.is_reductive,
        }


@dataclass(frozen=True)
class LeviDecomposition:
    radical: Subspace
    levi: Subspace


@dataclass(frozen=True)
class CartanData:
    cartan: Subspace


def killing_form(g: LieAlgebra) -> Matrix:
    ads = [ad_matrix(g, g.unit(i)) for i in range(g.dim)]
    rows = []
    for i in range(g.dim):
        row = []
        for j in range(g.dim):
            row.append((ads[i] @ ads[j]).trace() if j >= i else rows[j][i])
        rows.append(row)
    if not rows:
        return Matrix.zeros(0, 0)
    return Matrix(rows)


def is_nilpotent(g: LieAlgebra) -> bool:
    return series(g, kind="lower_central").stable_term.is_zero()


def is_solvable(g: LieAlgebra) -> bool:
    return series(g, kind="derived").stable_term.is_zero()


def is_semisimple(g: LieAlgebra) -> bool:
    """Nondegenerate Killing form; the zero algebra counts as semisimple."""
    if g.dim == 0:
        return True
    return bool(killing_form(g).det())


def is_reductive(g: LieAlgebra) -> bool:
    z = center(g)
    d = bracket_span(g, g.full(), g.full())
    if not subspace_combine(z, d, "intersect").is_zero():
        return False
    if z.dim + d.dim != g.dim:
        return False
    return is_semisimple(restrict(g, d))


def classify(g: LieAlgebra) -> Classification:
    lcs = series(g, kind="lower_central")
    nil = lcs.stable_term.is_zero()
    sol = nil or series(g, kind="derived").stable_term.is_zero()
    semi = is_semisimple(g)
    return Classification(
        is_abelian=not g.structure_constants(),
        is_nilpotent=nil,
        is_solvable=sol,
        is_semisimple=semi,
        is_reductive=semi or is_reductive(g),
    )


def radical(g: LieAlgebra) -> Subspace:
    """Maximal solvable ideal, computed as the Killing-orthogonal of ``[g, g]``."""
    n = g.dim
    if n == 0:
        return Subspace.zero(0)
    derived = bracket_span(g, g.full(), g.full())
    if derived.is_zero():
        r = g.full()
    else:
        kf = killing_form(g)
        r = kernel(Matrix(derived.basis.row_tuples(), cols=n) @ kf)
    if not is_ideal(g, r):
        raise ValidationError("radical is not an ideal", witness=r)
    if not r.is_zero() and not is_solvable(restrict(g, r)):
        raise ValidationError("radical is not solvable", witness=r)
    if not r.is_full() and not is_semisimple(quotient(g, r)[0]):
        raise ValidationError("quotient by the radical is not semisimple", witness=r)
    return r


def levi_subalgebra(g: LieAlgebra) -> LeviDecomposition:
    """Radical and a Levi complement.

    The radical is peeled one abelian layer at a time: with ``n`` the last
    nonzero derived term of the radical, a Levi subalgebra of ``g / n`` is
    lifted by solving for corrections in ``n`` that restore its brackets.
    """
    r = radical(g)
    s = _levi(g, r)
    if s.dim + r.dim != g.dim or not subspace_combine(r, s, "intersect").is_zero():
        raise ValidationError("radical and Levi subalgebra are not complementary", witness=(r, s))
    if not is_subalgebra(g, s):
        raise ValidationError("Levi complement is not a subalgebra", witness=s)
    if not s.is_zero() and not is_semisimple(restrict(g, s)):
        raise ValidationError("Levi complement is not semisimple", witness=s)
    return LeviDecomposition(radical=r, levi=s)


def _levi(g: LieAlgebra, r: Subspace) -> Subspace:
    if r.is_zero():
        return g.full()
    if r.is_full():
        return Subspace.zero(g.dim)
    dchain = series(g, r, "derived")
    # stable term is 0 for solvable r; the layer above it is abelian and characteristic
    nab = dchain.terms[-2]
    q, proj = quotient(g, nab)
    r_q = Subspace([proj @ v for v in r.vectors], q.dim)
    s_q = _levi(q, r_q)
    m = s_q.dim
    if m == 0:
        return Subspace.zero(g.dim)
    lifts = [quotient_lift(g, nab, y) for y in s_q.vectors]
    # structure constants of s_q in its own echelon basis
    a = {}
    for i, j in itertools.combinations(range(m), 2):
        a[(i, j)] = s_q.coordinates(bracket(q, s_q.vectors[i], s_q.vectors[j]))
    nvec = nab.vectors
    dn = len(nvec)
    n = g.dim
    # unknown corrections z[i][t]: x_i + sum_t z[i][t] n_t
    ad_x_n = [[bracket(g, x, nt) for nt in nvec] for x in lifts]
    rows, rhs = [], []
    for i, j in itertools.combinations(range(m), 2):
        coeff = a[(i, j)]
        target = [ZERO] * n
        for k, c in enumerate(coeff):
            if c:
                target = [t + c * x for t, x in zip(target, lifts[k])]
        xij = bracket(g, lifts[i], lifts[j])
        target = [t - x for t, x in zip(target, xij)]
        for comp in range(n):
            row = [ZERO] * (m * dn)
            for t in range(dn):
                # [x_i, n_j] term: z[j][t] [x_i, n_t]
                row[j * dn + t] = row[j * dn + t] + ad_x_n[i][t][comp]
                # [n_i, x_j] term: z[i][t] [n_t, x_j] = -z[i][t] [x_j, n_t]
                row[i * dn + t] = row[i * dn + t] - ad_x_n[j][t][comp]
                for k, c in enumerate(coeff):
                    if c and nvec[t][comp]:
                        row[k * dn + t] = row[k * dn + t] - c * nvec[t][comp]
            rows.append(row)
            rhs.append([target[comp]])
    if rows:
        sol = solve_linear(Matrix(rows, cols=m * dn), Matrix(rhs, cols=1))
        if sol is None:
            raise ValidationError("Levi lifting system is inconsistent")
        z = sol.column(0)
    else:
        z = (ZERO,) * (m * dn)
    vecs = []
    for i in range(m):
        v = list(lifts[i])
        for t in range(dn):
            c = z[i * dn + t]
            if c:
                v = [a_ + c * b_ for a_, b_ in zip(v, nvec[t])]
        vecs.append(v)
    return Subspace(vecs, n)


def normalizer(g: LieAlgebra, h: Subspace) -> Subspace:
    """``{x : [x, h] ⊆ h}``."""
    if h.is_full():
        return h
    eqs = h.annihilator()
    rows = []
    for v in h.vectors:
        # [x, v] = -ad(v) x must satisfy h's equations
        m = eqs @ ad_matrix(g, v)
        rows.extend(m.row_tuples())
    if not rows:
        return g.full()
    return kernel(Matrix(rows, cols=g.dim))


def engel_subalgebra(g: LieAlgebra, x) -> Subspace:
    """Generalized null space of ``ad x``: the kernel of ``(ad x)^dim``."""
    return kernel(ad_matrix(g, x) ** g.dim)


def _spiral(dim: int, max_coeff: int) -> Iterator[tuple[int, ...]]:
    """Nonzero integer vectors ordered by max |coefficient|, then support size."""
    for bound in range(1, max_coeff + 1):
        values = [v for k in range(1, bound + 1) for v in (k, -k)]
        for size in range(1, dim + 1):
            for support in itertools.combinations(range(dim), size):
                for vals in itertools.product(values, repeat=size):
                    if max(abs(v) for v in vals) != bound:
                        continue
                    out = [0] * dim
                    for p, v in zip(support, vals):
                        out[p] = v
                    yield tuple(out)


def _restricted_ad(g: LieAlgebra, k: Subspace, y) -> Matrix:
    cols = [k.coordinates(bracket(g, y, v)) for v in k.vectors]
    return Matrix.from_columns(cols, k.dim)


def cartan_subalgebra(b: LieAlgebra, max_coeff: int = 3) -> CartanData:
    """Nilpotent self-normalizing subalgebra of a solvable algebra ``b``.

    Maintains an Engel subalgebra ``k = b_0(ad x)``. While ``k`` is not
    nilpotent, an element ``y`` of ``k`` with non-nilpotent ``ad_k y`` is
    found by a deterministic spiral over small integer combinations of k's
    basis, and ``x`` moves along ``x + c (y - x)`` for the first
    ``c = 1, 2, ...`` that shrinks the Engel subalgebra. A nilpotent Engel
    subalgebra is self-normalizing, hence Cartan.
    """
    if not is_solvable(b):
        raise InputError("cartan_subalgebra is only used on solvable algebras")
    n = b.dim
    x = b.zero()
    k = b.full()
    while not _restricted_nilpotent(b, k):
        y = None
        for coeffs in _spiral(k.dim, max_coeff):
            cand = k.lift(coeffs)
            if not is_nilpotent_matrix(_restricted_ad(b, k, cand)):
                y = cand
                break
        if y is None:
            raise BudgetExceeded(
                f"no element with non-nilpotent adjoint found with coefficients up to {max_coeff}"
            )
        for c in range(1, n + 2):
            z = tuple(a + gr(c) * (yy - a) for a, yy in zip(x, y))
            kz = engel_subalgebra(b, z)
            if kz.dim < k.dim:
                x, k = z, kz
                break
        else:
            raise BudgetExceeded("Engel subalgebra did not shrink along the search line")
    h = k
    if normalizer(b, h) != h:
        raise ValidationError("Cartan candidate is not self-normalizing", witness=h)
    stable = series(b, kind="lower_central").stable_term
    if not subspace_combine(h, stable, "sum").is_full():
        raise ValidationError("Cartan subalgebra plus the stable lower central term is not everything")
    return CartanData(cartan=h)


def _restricted_nilpotent(g: LieAlgebra, k: Subspace) -> bool:
    if k.dim == 0:
        return True
    return is_nilpotent(restrict(g, k))

