"""Descriptor of the algebra of holomorphic functions of exponential type.

For ``G = B ⋊ L`` with exponential radical ``E`` the algebra factors as

    R(E) ⊗ O_exp(B/E) ⊗ R(L)

where ``R`` means regular (polynomial) functions and ``O_exp(B/E)`` is cut
out by the growth bound ``|f| <= C exp(r max_i |s_i|^(1/w_i))`` in
coordinates adapted to the lower central series of the nilpotent ``B/E``.
The matching word-length profile is

    ell(exp(eta) exp(xi) l) ≃ log(1 + |eta|) + max_i |s_i(xi)|^(1/w_i) + ell_L(l).

Everything here is symbolic bookkeeping on top of exact subspace data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, ValidationError
from .exactlin import Subspace, subspace_combine
from .exprad import ExpRadicalData, SplitData, exponential_radical, validate_split
from .liecore import LieAlgebra, format_element, quotient, restrict, series
from .structure import cartan_subalgebra, is_nilpotent

__all__ = [
    "WeightedBasis",
    "OexpDescriptor",
    "LengthProfile",
    "weighted_basis",
    "cartan_complement",
    "oexp_descriptor",
    "length_profile",
]

NOTE_V_CHOICE = (
    "v is taken inside the Cartan subalgebra h as a complement of h∩e, so that "
    "e ⊕ v = b; a complement of h∩e taken inside e would not reach b/e."
)
NOTE_CARTAN_CHOICE = (
    "Cartan subalgebras are not unique; the coordinates on v depend on the "
    "deterministic choice made here, the factorization and profile do not."
)
NOTE_EQUIVALENCE = (
    "≃ means equivalence at infinity: each side is at most C times the other plus D "
    "for unspecified constants C, D > 0."
)


@dataclass(frozen=True)
class WeightedBasis:
    """Basis adapted to the lower central series, shallow weights first."""

    vectors: tuple[tuple, ...]
    weights: tuple[int, ...]
    coordinate_names: tuple[str, ...]

    def __len__(self):
        return len(self.weights)

    def growth_exponent(self) -> str:
        """``max{|t1|, |t2|^(1/2), ...}`` (a single term is written bare)."""
        terms = [_power(name, w) for name, w in zip(self.coordinate_names, self.weights)]
        if not terms:
            return "0"
        if len(terms) == 1:
            return terms[0]
        return "max{" + ", ".join(terms) + "}"

    def growth_bound(self, fname: str = "f") -> str:
        args = ", ".join(self.coordinate_names)
        return f"|{fname}({args})| <= C*exp(r*{self.growth_exponent()}) for some C, r > 0"


def _power(name: str, w: int) -> str:
    return f"|{name}|" if w == 1 else f"|{name}|^(1/{w})"


def _coordinate_names(prefix: str, n: int) -> tuple[str, ...]:
    if n == 1:
        return (prefix,)
    return tuple(f"{prefix}{k + 1}" for k in range(n))


def weighted_basis(n: LieAlgebra, prefix: str = "t") -> WeightedBasis:
    if not is_nilpotent(n):
        raise InputError("weighted_basis needs a nilpotent algebra")
    terms = series(n, kind="lower_central").terms  # g_1 ⊇ ... ⊇ g_{c+1} = 0
    vectors, weights = [], []
    for depth in range(len(terms) - 1):
        layer = subspace_combine(terms[depth + 1], terms[depth], "complement_within")
        vectors.extend(layer.vectors)
        weights.extend([depth + 1] * layer.dim)
    return WeightedBasis(tuple(vectors), tuple(weights), _coordinate_names(prefix, len(weights)))


def cartan_complement(b: LieAlgebra, e: Subspace) -> tuple[Subspace, Subspace]:
    """Cartan subalgebra ``h`` of the solvable ``b`` and ``v ⊆ h`` with ``(h∩e) ⊕ v = h``.

    Raises ValidationError unless ``e ⊕ v = b``.
    """
    h = cartan_subalgebra(b).cartan
    he = subspace_combine(h, e, "intersect")
    v = subspace_combine(he, h, "complement_within")
    if not subspace_combine(h, e, "sum").is_full():
        raise ValidationError("h + e does not span b", witness=(h, e))
    if not subspace_combine(e, v, "intersect").is_zero() or not subspace_combine(e, v, "sum").is_full():
        raise ValidationError("e and v are not complementary in b", witness=(e, v))
    return h, v


@dataclass(frozen=True)
class PolynomialFactor:
    label: str
    generators: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class ExpTypeFactor:
    label: str
    basis: WeightedBasis

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def growth(self) -> str:
        return self.basis.growth_bound()


@dataclass(frozen=True)
class OexpDescriptor:
    factor_E: PolynomialFactor
    factor_BE: ExpTypeFactor
    factor_L: str  # "R(<label>)" or "C" when L is trivial
    dim_l: int
    coordinate_map: dict
    cartan: Subspace
    v: Subspace
    ambient_names: tuple[str, ...]

    @property
    def tensor(self) -> str:
        parts = [f for f in (self.factor_E.label, self.factor_BE.label, self.factor_L) if f != "C"]
        return " ⊗ ".join(parts) if parts else "C"

    @property
    def expansion(self) -> str:
        s_names = self.factor_BE.basis.coordinate_names
        t_names = self.factor_E.generators
        l_args = ("l",) if self.dim_l else ()
        args = ", ".join(s_names + t_names + l_args)
        if not t_names and not s_names:
            return "f(l) regular on L" if self.dim_l else "f constant"
        if not t_names:
            tail = ", regular in l" if self.dim_l else ""
            return f"f({args}) entire in ({', '.join(s_names)}) with {self.factor_BE.basis.growth_bound()}{tail}"
        idx = ["n"] if len(t_names) == 1 else [f"n{k + 1}" for k in range(len(t_names))]
        sub = ",".join(idx)
        mono = " ".join(f"{t}^{n}" for t, n in zip(t_names, idx))
        if not s_names:
            coeff = f"c_{{{sub}}}(l)" if self.dim_l else f"c_{{{sub}}}"
            what = "regular functions on L" if self.dim_l else "constants"
            return f"f({args}) = sum_{{{sub}}} {coeff} {mono}, a finite sum with {what} as coefficients"
        fn = f"f_{{{sub}}}"
        coeff = f"{fn}({', '.join(s_names + l_args)})"
        tail = ", regular in l" if self.dim_l else ""
        return (
            f"f({args}) = sum_{{{sub}}} {coeff} {mono}, each {fn} entire with "
            f"{self.factor_BE.basis.growth_bound(fn)}{tail}"
        )

    def as_dict(self) -> dict:
        wb = self.factor_BE.basis
        return {
            "tensor": self.tensor,
            "factor_E": {"label": self.factor_E.label, "dim": self.factor_E.dim, "generators": list(self.factor_E.generators)},
            "factor_BE": {
                "label": self.factor_BE.label,
                "dim": self.factor_BE.dim,
                "coordinates": list(wb.coordinate_names),
                "weights": list(wb.weights),
                "growth": self.factor_BE.growth if self.factor_BE.dim else "bounded (trivial factor)",
            },
            "factor_L": {"label": self.factor_L, "dim": self.dim_l},
            "expansion": self.expansion,
            "coordinate_map": self.coordinate_map,
        }


def oexp_descriptor(
    g: LieAlgebra, split: SplitData, exp: ExpRadicalData | None = None
) -> OexpDescriptor:
    if exp is None:
        exp = exponential_radical(g)
    report = validate_split(g, split, exp)
    if not report.ok:
        failed = [c.name for c in report.checks if not c.passed]
        raise ValidationError(f"split is invalid: {', '.join(failed)}", witness=report)
    e, b, l = exp.e, split.b, split.l

    if e.is_zero():
        factor_e = PolynomialFactor("C", ())
        e_abelian = True
    else:
        e_alg = restrict(g, e)
        wb_e = weighted_basis(e_alg, prefix="t")
        e_abelian = all(w == 1 for w in wb_e.weights)
        label = _space_label("R", e.dim) if e_abelian else "R(E)"
        factor_e = PolynomialFactor(label, wb_e.coordinate_names)

    b_alg = restrict(g, b)
    e_in_b = b.restrict_coords(e)
    q, _ = quotient(b_alg, e_in_b)
    wb = weighted_basis(q, prefix="s" if not e.is_zero() else "t")
    if q.dim == 0:
        be_label = "C"
    elif all(w == 1 for w in wb.weights):
        be_label = _space_label("O_exp", q.dim)
    else:
        be_label = "O_exp(B/E)"
    factor_be = ExpTypeFactor(be_label, wb)

    if l.is_zero():
        factor_l = "C"
    else:
        factor_l = f"R({split.l_label or 'L'})"

    if factor_e.dim + factor_be.dim + l.dim != g.dim:
        raise ValidationError("descriptor dimensions do not add up to dim g")

    h_b, v_b = cartan_complement(b_alg, e_in_b)
    h, v = b.pullback(h_b), b.pullback(v_b)
    names = g.basis_names
    cmap = {
        "formula": "tau(eta, xi, l) = exp(eta) exp(xi) l",
        "eta": {"space": "e", "coordinates": list(factor_e.generators), "basis": [format_element(x, names) for x in e.vectors]},
        "xi": {
            "space": "v",
            "coordinates": list(wb.coordinate_names),
            "basis": [format_element(x, names) for x in v.vectors],
            "identification": "v ≅ b/e through the quotient map",
        },
        "l": {"space": "L", "label": split.l_label or ("trivial" if l.is_zero() else "L"), "dim": l.dim},
    }
    return OexpDescriptor(
        factor_E=factor_e,
        factor_BE=factor_be,
        factor_L=factor_l,
        dim_l=l.dim,
        coordinate_map=cmap,
        cartan=h,
        v=v,
        ambient_names=names,
    )


def _space_label(kind: str, n: int) -> str:
    return f"{kind}(C)" if n == 1 else f"{kind}(C^{n})"


@dataclass(frozen=True)
class LengthProfile:
    log_term: str | None
    nilpotent_term: str | None
    reductive_term: str | None
    equivalence_note: str = NOTE_EQUIVALENCE

    @property
    def formula(self) -> str:
        terms = [t for t in (self.log_term, self.nilpotent_term, self.reductive_term) if t]
        return "ell(exp(eta) exp(xi) l) ≃ " + (" + ".join(terms) if terms else "0")

    def as_dict(self) -> dict:
        return {
            "formula": self.formula,
            "log_term": self.log_term,
            "nilpotent_term": self.nilpotent_term,
            "reductive_term": self.reductive_term,
            "equivalence_note": self.equivalence_note,
        }


def length_profile(descriptor: OexpDescriptor) -> LengthProfile:
    gens = descriptor.factor_E.generators
    if not gens:
        log_term = None
    elif len(gens) == 1:
        log_term = f"log(1+|{gens[0]}|)"
    else:
        log_term = "log(1+max{" + ", ".join(f"|{t}|" for t in gens) + "})"
    wb = descriptor.factor_BE.basis
    nil_term = wb.growth_exponent() if len(wb) else None
    red_term = None
    if descriptor.dim_l:
        label = descriptor.coordinate_map["l"]["label"]
        red_term = f"ell_L(l) [word length on {label}]"
    return LengthProfile(log_term, nil_term, red_term)
