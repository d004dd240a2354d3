"""Exponential radical of a complex Lie algebra and the checks built on it.

Over C the exponential radical is ``e = r_inf + [s, r]``: the stable term of
the lower central series of the radical plus the bracket of a Levi factor
with the radical. ``[s, r]`` is taken as the ideal generated by the brackets:
the bare span need not be closed (in ``sl2 ⋉ heisenberg`` it is the plane
``span(p, q)`` while ``[p, q] = z``). ``g / e`` is the largest quotient that
splits as semisimple plus nilpotent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ValidationError
from .exactlin import Subspace, subspace_combine
from .liecore import (
    LieAlgebra,
    bracket,
    bracket_span,
    ideal_closure,
    is_ideal,
    is_subalgebra,
    quotient,
    restrict,
    series,
)
from .structure import is_nilpotent, is_reductive, is_semisimple, is_solvable, levi_subalgebra

__all__ = [
    "ExpRadicalData",
    "SplitData",
    "CheckResult",
    "SplitReport",
    "exponential_radical",
    "is_R_decomposed",
    "largest_R_decomposed_quotient",
    "validate_split",
    "minimality_candidates",
    "probe_minimality",
]


@dataclass(frozen=True)
class ExpRadicalData:
    """``e = r_infinity + s_bracket_r``; ``s_bracket_r`` is the ideal generated
    by ``s_bracket_r_span``, the plain span of the brackets ``[s, r]``."""

    r: Subspace
    s: Subspace
    r_infinity: Subspace
    s_bracket_r: Subspace
    e: Subspace
    s_bracket_r_span: Subspace | None = None


@dataclass(frozen=True)
class SplitData:
    """A declared decomposition ``g = b ⊕ l`` (solvable ideal plus reductive subalgebra).

    ``l_label`` names the reductive group whose regular functions stand in
    for the ``l`` factor, e.g. ``"SL_2"``; empty when ``l`` is zero.
    """

    b: Subspace
    l: Subspace
    l_label: str = ""


def exponential_radical(g: LieAlgebra) -> ExpRadicalData:
    levi = levi_subalgebra(g)
    r, s = levi.radical, levi.levi
    if r.is_zero():
        r_inf = r
    else:
        # computed inside the radical, then pulled back to ambient coordinates
        r_alg = restrict(g, r)
        r_inf = r.pullback(series(r_alg, kind="lower_central").stable_term)
    sr_span = bracket_span(g, s, r)
    sr = ideal_closure(g, sr_span)
    e = subspace_combine(r_inf, sr, "sum")
    if not is_ideal(g, e):
        raise ValidationError("exponential radical is not an ideal", witness=e)
    if not e.is_zero() and not is_nilpotent(restrict(g, e)):
        raise ValidationError("exponential radical is not nilpotent", witness=e)
    if r.is_full():
        stable = series(g, kind="lower_central").stable_term
        if stable != e:
            raise ValidationError(
                "solvable algebra: exponential radical differs from the stable lower central term",
                witness=(e, stable),
            )
    return ExpRadicalData(r=r, s=s, r_infinity=r_inf, s_bracket_r=sr, e=e, s_bracket_r_span=sr_span)


def is_R_decomposed(g: LieAlgebra) -> tuple[bool, dict[str, bool]]:
    """Whether ``g`` is semisimple ⊕ nilpotent, with the two witnessing facts."""
    data = exponential_radical(g)
    witness = {
        "levi_acts_trivially_on_radical": data.s_bracket_r.is_zero(),
        "radical_nilpotent": data.r.is_zero() or is_nilpotent(restrict(g, data.r)),
    }
    decomposed = data.e.is_zero()
    if decomposed != all(witness.values()):
        raise ValidationError("R-decomposition witness disagrees with the exponential radical", witness)
    return decomposed, witness


def largest_R_decomposed_quotient(g: LieAlgebra):
    """``g / e`` and its projection; the result is checked to be R-decomposed."""
    e = exponential_radical(g).e
    q, proj = quotient(g, e)
    if not exponential_radical(q).e.is_zero():
        raise ValidationError("quotient by the exponential radical is not R-decomposed")
    return q, proj


@dataclass
class CheckResult:
    name: str
    passed: bool | None  # None: skipped because a prerequisite failed
    detail: str = ""
    witness: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "witness": self.witness}


@dataclass
class SplitReport:
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]}


def _escaping_pair(g: LieAlgebra, u: Subspace, w: Subspace, target: Subspace) -> list[str] | None:
    """First basis pair ``(u_i, w_j)`` with ``[u_i, w_j]`` outside ``target``."""
    for a in u.vectors:
        for b in w.vectors:
            if not target.contains(bracket(g, a, b)):
                return [g.pretty(a), g.pretty(b)]
    return None


def validate_split(g: LieAlgebra, split: SplitData, exp: ExpRadicalData | None = None) -> SplitReport:
    """Check a declared ``b ⋊ l`` split against the exponential radical.

    (i) b solvable ideal, l reductive subalgebra, b ⊕ l = g; (ii) e ⊆ b;
    (iii) [l, b] ⊆ e, i.e. l acts trivially on b/e; (iv) b/e nilpotent;
    (v) if e = 0 then [l, b] = 0.
    """
    b, l = split.b, split.l
    checks: list[CheckResult] = []
    full = g.full()

    w = _escaping_pair(g, full, b, b)
    checks.append(CheckResult("b_is_ideal", w is None, "[g, b] ⊆ b", w or []))
    b_ideal = w is None
    checks.append(
        CheckResult(
            "b_is_solvable",
            (b.is_zero() or is_solvable(restrict(g, b))) if is_subalgebra(g, b) else False,
            "derived series of b reaches 0",
        )
    )
    w = _escaping_pair(g, l, l, l)
    checks.append(CheckResult("l_is_subalgebra", w is None, "[l, l] ⊆ l", w or []))
    if w is None:
        red = l.is_zero() or is_reductive(restrict(g, l))
        checks.append(CheckResult("l_is_reductive", red, "l = z(l) ⊕ [l, l] with [l, l] semisimple"))
    else:
        checks.append(CheckResult("l_is_reductive", None, "skipped: l is not a subalgebra"))
    inter = subspace_combine(b, l, "intersect")
    direct = inter.is_zero() and b.dim + l.dim == g.dim
    checks.append(CheckResult("b_plus_l_is_direct_and_spans", direct, f"dim b + dim l = {b.dim} + {l.dim}, dim g = {g.dim}"))

    if exp is None:
        exp = exponential_radical(g)
    e = exp.e
    contained = e.issubspace(b)
    missing = [g.pretty(v) for v in e.vectors if not b.contains(v)][:1]
    checks.append(CheckResult("e_in_b", contained, "exponential radical ⊆ b", missing))

    w = _escaping_pair(g, l, b, e)
    checks.append(CheckResult("l_acts_trivially_on_b_mod_e", w is None, "[l, b] ⊆ e", w or []))

    if b_ideal and contained and is_subalgebra(g, b):
        b_alg = restrict(g, b)
        q, _ = quotient(b_alg, b.restrict_coords(e))
        checks.append(CheckResult("b_mod_e_nilpotent", q.dim == 0 or is_nilpotent(q), f"dim b/e = {q.dim}"))
    else:
        checks.append(CheckResult("b_mod_e_nilpotent", None, "skipped: needs b an ideal containing e"))

    if e.is_zero():
        lb = bracket_span(g, l, b)
        w = _escaping_pair(g, l, b, Subspace.zero(g.dim))
        checks.append(CheckResult("trivial_action_when_e_zero", lb.is_zero(), "e = 0 forces [l, b] = 0", w or []))
    else:
        checks.append(CheckResult("trivial_action_when_e_zero", True, "not applicable: e ≠ 0"))
    return SplitReport(checks)


def minimality_candidates(g: LieAlgebra, e: Subspace, max_candidates: int = 64) -> list[Subspace]:
    """Proper subideals of ``e`` to probe: spans of subsets of its echelon basis
    (largest subsets first) that are ideals, plus proper series terms of ``e``."""
    if e.is_zero():
        return []
    seen: set[Subspace] = set()
    out: list[Subspace] = []

    def offer(j: Subspace):
        if j != e and j not in seen and j.issubspace(e) and is_ideal(g, j):
            seen.add(j)
            out.append(j)

    e_alg = restrict(g, e)
    for kind in ("lower_central", "derived"):
        for t in series(e_alg, kind=kind).terms:
            offer(e.pullback(t))
    vecs = e.vectors
    tried = 0
    for size in range(e.dim - 1, -1, -1):
        for subset in itertools.combinations(range(e.dim), size):
            if tried >= max_candidates:
                return out
            tried += 1
            offer(Subspace([vecs[k] for k in subset], g.dim))
    return out


def probe_minimality(g: LieAlgebra, e: Subspace | None = None, max_candidates: int = 64) -> list[Subspace]:
    """Candidates ``j ⊊ e`` for which ``g / j`` is (wrongly) R-decomposed; empty means pass."""
    if e is None:
        e = exponential_radical(g).e
    failures = []
    for j in minimality_candidates(g, e, max_candidates):
        q, _ = quotient(g, j)
        if is_R_decomposed(q)[0]:
            failures.append(j)
    return failures


def semisimple_or_zero(g: LieAlgebra, s: Subspace) -> bool:
    return s.is_zero() or is_semisimple(restrict(g, s))
