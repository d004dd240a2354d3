from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lieexp.errors import InputError, ValidationError
from lieexp.exactlin import ZERO, Matrix, Subspace, gr
from lieexp.liecore import (
    LieAlgebra,
    ad_matrix,
    bracket,
    bracket_span,
    center,
    change_basis,
    derivations,
    direct_sum,
    ideal_closure,
    is_ideal,
    is_subalgebra,
    quotient,
    quotient_lift,
    restrict,
    semidirect,
    series,
    validate_structure,
)
from randalg import filiform, heisenberg, irrep, random_algebra, sl2, upper_triangular4


def units(g):
    return [g.unit(k) for k in range(g.dim)]


# ---------------------------------------------------------------- construction


def test_heisenberg_bracket():
    g = LieAlgebra.from_table(["e1", "e2", "e3"], {("e1", "e2"): {"e3": 1}})
    assert validate_structure(g) == []
    assert bracket(g, g.unit("e1"), g.unit("e2")) == g.unit("e3")
    assert bracket(g, g.unit("e2"), g.unit("e1")) == tuple(-x for x in g.unit("e3"))


def test_abelian_valid():
    g = LieAlgebra.abelian(4)
    assert validate_structure(g) == []
    assert center(g) == g.full()


def test_jacobi_violation_names_triple():
    # [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]] = 0 + e3 + 0
    with pytest.raises(ValidationError) as info:
        LieAlgebra.from_table(["e1", "e2", "e3"], {("e1", "e2"): {"e3": 1}, ("e1", "e3"): {"e1": 1}})
    assert "(e1, e2, e3)" in str(info.value)
    (i, j, k, val), = info.value.witness
    assert (i, j, k) == (0, 1, 2)
    assert val == (ZERO, ZERO, gr(1))


def test_cyclic_table_satisfies_jacobi():
    # [e1,e2]=e1, [e2,e3]=e3, [e1,e3]=e2: the three cyclic terms are e2, 0, -e2
    table = {("e1", "e2"): {"e1": 1}, ("e2", "e3"): {"e3": 1}, ("e1", "e3"): {"e2": 1}}
    n, consts = 3, {(0, 1): [1, 0, 0], (1, 2): [0, 0, 1], (0, 2): [0, 1, 0]}
    assert oracles.jacobi_ok(n, consts)
    g = LieAlgebra.from_table(["e1", "e2", "e3"], table)
    assert validate_structure(g) == []


def test_table_errors():
    with pytest.raises(InputError, match="duplicate"):
        LieAlgebra.from_table(["a", "b"], {("a", "b"): {"a": 1}, ("b", "a"): {"a": 1}})
    with pytest.raises(InputError, match="unknown"):
        LieAlgebra.from_table(["a", "b"], {("a", "c"): {"a": 1}})
    with pytest.raises(InputError, match="distinct"):
        LieAlgebra(["a", "a"])
    with pytest.raises(InputError):
        LieAlgebra(["a", "b"], {(1, 0): [1, 0]})
    with pytest.raises(InputError):
        LieAlgebra(["a", "b"], {(0, 1): [1]})


def test_reversed_pair_is_negated():
    g = LieAlgebra.from_table(["a", "b"], {("b", "a"): {"b": 1}})
    assert g.basis_bracket(0, 1) == (ZERO, gr(-1))


def test_immutable():
    g = LieAlgebra.abelian(2)
    with pytest.raises(AttributeError):
        g.dim = 3


def test_pretty():
    g = LieAlgebra.abelian(3)
    assert g.pretty((gr(1), gr(-2), gr(0))) == "e1 - 2 e2"
    assert g.pretty(g.zero()) == "0"


# ---------------------------------------------------------------- brackets vs oracle


def random_elements(rng, g, count):
    return [tuple(gr(rng.randint(-2, 2)) for _ in range(g.dim)) for _ in range(count)]


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_bracket_matches_oracle(seed):
    rng = random.Random(seed)
    _, g = random_algebra(rng)
    n, consts = oracles.to_sympy_consts(g)
    x, y = random_elements(rng, g, 2)
    got = oracles.to_sympy_vectors([bracket(g, x, y)])[0]
    want = oracles.bracket(n, consts, oracles.to_sympy_vectors([x])[0], oracles.to_sympy_vectors([y])[0])
    assert got == want


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_series_match_oracle(seed):
    _, g = random_algebra(random.Random(seed))
    n, consts = oracles.to_sympy_consts(g)
    assert series(g, kind="lower_central").dims() == oracles.lower_central_dims(n, consts)
    assert series(g, kind="derived").dims() == oracles.derived_dims(n, consts)


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_ad_is_derivation(seed):
    rng = random.Random(seed)
    _, g = random_algebra(rng)
    x, y, z = random_elements(rng, g, 3)
    # ad x [y, z] = [ad x y, z] + [y, ad x z]
    lhs = ad_matrix(g, x) @ bracket(g, y, z)
    r1 = bracket(g, bracket(g, x, y), z)
    r2 = bracket(g, y, bracket(g, x, z))
    assert lhs == tuple(a + b for a, b in zip(r1, r2))


# ---------------------------------------------------------------- series, center


def test_series_of_filiform():
    g = filiform(5)
    assert series(g).dims() == [5, 3, 2, 1, 0]
    assert series(g, kind="derived").dims() == [5, 3, 0]
    assert series(g).stable_term.is_zero()


def test_series_stable_term_nonzero():
    g = sl2()
    assert series(g).dims() == [3]
    assert series(g).stable_term == g.full()


def test_series_rejects_non_subalgebra():
    g = heisenberg(1)
    with pytest.raises(ValidationError):
        series(g, g.span("hp0", "hq0"))


def test_center_of_heisenberg_and_sl2():
    assert center(heisenberg(2)) == heisenberg(2).span("hz")
    assert center(sl2()).is_zero()


# ---------------------------------------------------------------- restrict / quotient


def test_restrict_and_quotient_heisenberg_by_center():
    g = heisenberg(1)
    z = g.span("hz")
    assert is_ideal(g, z)
    q, proj = quotient(g, z)
    assert q.dim == 2
    assert series(q).dims() == [2, 0]
    assert proj.shape == (2, 3)
    lifted = quotient_lift(g, z, (gr(1), gr(0)))
    assert proj @ lifted == (gr(1), gr(0))
    assert restrict(g, z).dim == 1


def test_quotient_rejects_non_ideal():
    g = heisenberg(1)
    with pytest.raises(ValidationError):
        quotient(g, g.span("hp0"))


def test_restrict_rejects_non_subalgebra():
    g = heisenberg(1)
    with pytest.raises(ValidationError):
        restrict(g, g.span("hp0", "hq0"))


def test_upper_triangular_series():
    g = upper_triangular4()
    assert series(g).dims() == [6, 3, 1, 0]
    assert is_subalgebra(g, g.span("n12", "n13", "n14"))


# ---------------------------------------------------------------- change of basis


def test_change_basis_preserves_invariants():
    g = upper_triangular4()
    rng = random.Random(3)
    n = g.dim
    m = Matrix([[1 if r == c else (rng.randint(-1, 1) if c > r else 0) for c in range(n)] for r in range(n)])
    h = change_basis(g, m)
    assert series(h).dims() == series(g).dims()
    assert center(h).dim == center(g).dim


def test_change_basis_rejects_singular():
    g = LieAlgebra.abelian(2)
    with pytest.raises(InputError):
        change_basis(g, Matrix([[1, 1], [2, 2]]))


# ---------------------------------------------------------------- derivations, semidirect


def test_derivations_of_abelian_and_heisenberg():
    assert len(derivations(LieAlgebra.abelian(2))) == 4
    # Der(heis3) has dimension 6
    assert len(derivations(heisenberg(1))) == 6
    g = heisenberg(1)
    for d in derivations(g):
        for x in units(g):
            for y in units(g):
                lhs = d @ bracket(g, x, y)
                rhs = tuple(a + b for a, b in zip(bracket(g, d @ x, y), bracket(g, x, d @ y)))
                assert lhs == rhs


def test_semidirect_checks_action():
    b = LieAlgebra.abelian(2, prefix="v")
    l = LieAlgebra(["t"])
    g = semidirect(b, l, [Matrix([[1, 0], [0, -1]])])
    assert g.dim == 3
    assert bracket(g, g.unit("t"), g.unit("v1")) == g.unit("v1")
    with pytest.raises(ValidationError):
        # not a derivation of heis3: [p,q]=z but D z = 0 while [Dp,q]+[p,Dq] = z
        semidirect(heisenberg(1), l, [Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])])
    with pytest.raises(InputError):
        semidirect(b, l, [])


def test_semidirect_checks_homomorphism():
    b = LieAlgebra.abelian(2, prefix="v")
    hm, xm, ym = irrep(1)
    g = semidirect(b, sl2(), [Matrix(hm), Matrix(xm), Matrix(ym)])
    assert validate_structure(g) == []
    with pytest.raises(ValidationError):
        semidirect(b, sl2(), [Matrix(hm), Matrix(xm), Matrix(xm)])


def test_direct_sum():
    g = direct_sum(heisenberg(1), sl2())
    assert g.dim == 6
    assert center(g) == g.span("hz")


# ---------------------------------------------------------------- ideal closure


def test_ideal_closure_sl2_heisenberg():
    hm, xm, ym = irrep(1)
    mats = [Matrix([r + [0] for r in m] + [[0, 0, 0]]) for m in (hm, xm, ym)]
    g = semidirect(heisenberg(1), sl2(), mats)
    s, r = g.span("H", "X", "Y"), g.span("hp0", "hq0", "hz")
    raw = bracket_span(g, s, r)
    assert raw == g.span("hp0", "hq0")
    assert not is_ideal(g, raw)
    closed = ideal_closure(g, raw)
    assert closed == r
    assert is_ideal(g, closed)


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_ideal_closure_is_smallest_ideal(seed):
    rng = random.Random(seed)
    _, g = random_algebra(rng)
    u = Subspace(random_elements(rng, g, 1), g.dim)
    j = ideal_closure(g, u)
    assert u <= j and is_ideal(g, j)
    n, consts = oracles.to_sympy_consts(g)
    assert oracles.is_ideal(n, consts, oracles.to_sympy_vectors(j.vectors))
