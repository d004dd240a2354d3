from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lieexp.errors import InputError
from lieexp.exactlin import Matrix, subspace_combine
from lieexp.liecore import LieAlgebra, direct_sum, is_ideal, is_subalgebra, restrict, series
from lieexp.pipeline.catalog import catalog_algebra, cn_sln, dim2_solvable, example6dim, heisenberg3
from lieexp.structure import (
    cartan_subalgebra,
    classify,
    engel_subalgebra,
    is_nilpotent,
    is_reductive,
    is_semisimple,
    is_solvable,
    killing_form,
    levi_subalgebra,
    normalizer,
    radical,
)
from randalg import filiform, heisenberg, random_algebra, scramble, sl2


def sympy_matrix(m: Matrix):
    r, c = m.shape
    return [[oracles.to_sympy_scalar(m[i, j]) for j in range(c)] for i in range(r)]


# ---------------------------------------------------------------- classification


@pytest.mark.parametrize(
    "g, flags",
    [
        (LieAlgebra.abelian(3), (True, True, True, False, True)),
        (heisenberg3(), (False, True, True, False, False)),
        (dim2_solvable(), (False, False, True, False, False)),
        (example6dim(), (False, False, True, False, False)),
        (sl2(), (False, False, False, True, True)),
        (direct_sum(sl2(), LieAlgebra.abelian(1, prefix="z")), (False, False, False, False, True)),
        (cn_sln(2)[0], (False, False, False, False, False)),
    ],
)
def test_classify(g, flags):
    c = classify(g)
    assert (c.is_abelian, c.is_nilpotent, c.is_solvable, c.is_semisimple, c.is_reductive) == flags
    assert c.is_semisimple == is_semisimple(g)
    assert c.is_reductive == is_reductive(g)


def test_zero_algebra():
    g = LieAlgebra([])
    assert is_nilpotent(g) and is_solvable(g)
    assert levi_subalgebra(g).levi.is_zero()


# ---------------------------------------------------------------- killing form and radical vs oracle


@settings(max_examples=15)
@given(st.integers(0, 10_000))
def test_killing_form_matches_oracle(seed):
    _, g = random_algebra(random.Random(seed))
    n, consts = oracles.to_sympy_consts(g)
    assert sympy_matrix(killing_form(g)) == oracles.killing(n, consts).tolist()


@settings(max_examples=15)
@given(st.integers(0, 10_000))
def test_radical_dim_matches_oracle(seed):
    _, g = random_algebra(random.Random(seed))
    n, consts = oracles.to_sympy_consts(g)
    r = radical(g)
    assert r.dim == oracles.radical_dim(n, consts)
    assert oracles.is_ideal(n, consts, oracles.to_sympy_vectors(r.vectors))


def test_radical_of_known_algebras():
    assert radical(sl2()).is_zero()
    g, split = cn_sln(3)
    assert radical(g) == split.b
    assert radical(example6dim()) == example6dim().full()


# ---------------------------------------------------------------- Levi


def levi_ok(g):
    d = levi_subalgebra(g)
    r, s = d.radical, d.levi
    assert subspace_combine(r, s, "intersect").is_zero()
    assert subspace_combine(r, s, "sum").is_full()
    assert is_ideal(g, r)
    assert is_solvable(restrict(g, r))
    if not s.is_zero():
        assert is_subalgebra(g, s)
        assert killing_form(restrict(g, s)).det() != 0
    return d


@pytest.mark.parametrize("n", [2, 3])
def test_levi_of_cn_sln(n):
    g, split = cn_sln(n)
    d = levi_ok(g)
    assert d.radical == split.b
    assert d.levi.dim == n * n - 1


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_levi_random(seed):
    _, g = random_algebra(random.Random(seed))
    levi_ok(g)


def test_levi_is_recovered_after_scrambling():
    rng = random.Random(11)
    g = scramble(rng, cn_sln(2)[0])
    d = levi_ok(g)
    assert d.levi.dim == 3


# ---------------------------------------------------------------- Cartan


def cartan_ok(b):
    h = cartan_subalgebra(b).cartan
    assert is_nilpotent(restrict(b, h))
    assert normalizer(b, h) == h
    assert subspace_combine(h, series(b).stable_term, "sum").is_full()
    return h


@pytest.mark.parametrize(
    "b, dim",
    [(dim2_solvable(), 1), (heisenberg3(), 3), (example6dim(), 3), (filiform(5), 5), (LieAlgebra.abelian(2), 2)],
)
def test_cartan_of_solvable(b, dim):
    assert cartan_ok(b).dim == dim


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_cartan_random_radicals(seed):
    _, g = random_algebra(random.Random(seed))
    cartan_ok(restrict(g, radical(g)))


def test_cartan_rejects_non_solvable():
    with pytest.raises(InputError):
        cartan_subalgebra(sl2())


def test_engel_subalgebra_of_regular_element():
    g = dim2_solvable()
    assert engel_subalgebra(g, g.unit("e1")) == g.span("e1")
    assert engel_subalgebra(g, g.unit("e2")) == g.full()


def test_catalog_levi_and_cartan():
    for name, param in [("dim2_solvable", None), ("heisenberg3", None), ("example6dim", None), ("cn_sln", 2), ("abelian", 3)]:
        g, _ = catalog_algebra(name, param)
        d = levi_ok(g)
        cartan_ok(restrict(g, d.radical))
