from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieexp.errors import ValidationError
from lieexp.exactlin import Matrix, Subspace, subspace_combine
from lieexp.exprad import (
    SplitData,
    exponential_radical,
    is_R_decomposed,
    largest_R_decomposed_quotient,
    minimality_candidates,
    probe_minimality,
    validate_split,
)
from lieexp.liecore import LieAlgebra, direct_sum, is_ideal, restrict, semidirect, series
from lieexp.pipeline.catalog import cn_sln, dim2_solvable, example6dim, heisenberg3
from lieexp.structure import is_nilpotent, is_solvable
from randalg import heisenberg, irrep, random_algebra, sl2


def test_dim2_solvable():
    g = dim2_solvable()
    data = exponential_radical(g)
    assert data.e == g.span("e2")
    assert data.s.is_zero() and data.s_bracket_r.is_zero()


def test_nilpotent_has_zero_radical():
    for g in (heisenberg3(), LieAlgebra.abelian(3)):
        assert exponential_radical(g).e.is_zero()
        assert is_R_decomposed(g)[0]


def test_example6dim():
    g = example6dim()
    data = exponential_radical(g)
    assert data.e == g.span("f1", "f2", "f3")
    assert data.r_infinity == data.e
    q, _ = largest_R_decomposed_quotient(g)
    assert q.dim == 3 and is_nilpotent(q)


@pytest.mark.parametrize("n", [2, 3])
def test_cn_sln(n):
    g, split = cn_sln(n)
    data = exponential_radical(g)
    assert data.r_infinity.is_zero()
    assert data.e == split.b
    assert data.s_bracket_r == data.s_bracket_r_span == split.b
    decomposed, witness = is_R_decomposed(g)
    assert not decomposed
    assert witness == {"levi_acts_trivially_on_radical": False, "radical_nilpotent": True}


def test_reductive_is_R_decomposed():
    g = direct_sum(sl2(), LieAlgebra.abelian(2, prefix="z"))
    assert is_R_decomposed(g) == (True, {"levi_acts_trivially_on_radical": True, "radical_nilpotent": True})


def test_sl2_heisenberg_needs_ideal_closure():
    hm, xm, ym = irrep(1)
    mats = [Matrix([r + [0] for r in m] + [[0, 0, 0]]) for m in (hm, xm, ym)]
    g = semidirect(heisenberg(1), sl2(), mats)
    data = exponential_radical(g)
    assert data.s_bracket_r_span == g.span("hp0", "hq0")
    assert data.e == g.span("hp0", "hq0", "hz")
    assert is_ideal(g, data.e)
    assert probe_minimality(g, data.e) == []


# ---------------------------------------------------------------- minimality


def test_minimality_candidates_are_proper_subideals():
    g = example6dim()
    e = exponential_radical(g).e
    cands = minimality_candidates(g, e)
    assert cands
    for j in cands:
        assert j != e and j.issubspace(e) and is_ideal(g, j)
    assert probe_minimality(g) == []


def test_probe_flags_too_small_ideal():
    # for dim2_solvable, span(e2) is minimal; forcing e = g exposes span(e2) as a failure
    g = dim2_solvable()
    failures = probe_minimality(g, g.full())
    assert g.span("e2") in failures


# ---------------------------------------------------------------- split validation


def test_validate_split_accepts_default_split():
    g = example6dim()
    report = validate_split(g, SplitData(g.full(), Subspace.zero(g.dim)))
    assert report.ok
    names = [c.name for c in report.checks]
    assert names == [
        "b_is_ideal",
        "b_is_solvable",
        "l_is_subalgebra",
        "l_is_reductive",
        "b_plus_l_is_direct_and_spans",
        "e_in_b",
        "l_acts_trivially_on_b_mod_e",
        "b_mod_e_nilpotent",
        "trivial_action_when_e_zero",
    ]


def test_validate_split_rejects_nonideal_b():
    # b = span(e1), l = span(e2): b is not an ideal and e = span(e2) is not inside b
    g = dim2_solvable()
    report = validate_split(g, SplitData(g.span("e1"), g.span("e2")))
    assert not report.ok
    failed = {c.name for c in report.checks if c.passed is False}
    assert {"b_is_ideal", "e_in_b"} <= failed
    bad = next(c for c in report.checks if c.name == "b_is_ideal")
    assert bad.witness


def test_validate_split_rejects_nontrivial_action():
    # roles swapped: sl2 is not solvable and C^2 is not reductive over the action
    g, split = cn_sln(2)
    swapped = SplitData(split.l, split.b, "bad")
    report = validate_split(g, swapped)
    assert not report.ok


def test_validate_split_reports_skips():
    g = heisenberg3()
    report = validate_split(g, SplitData(g.span("a"), g.span("a", "c")))
    d = {c.name: c.passed for c in report.checks}
    assert d["l_is_subalgebra"] is False and d["l_is_reductive"] is None


# ---------------------------------------------------------------- random properties


def check_exp_properties(g):
    data = exponential_radical(g)
    e = data.e
    assert is_ideal(g, e)
    assert e.is_zero() or is_nilpotent(restrict(g, e))
    q, _ = largest_R_decomposed_quotient(g)
    assert exponential_radical(q).e.is_zero()
    if is_solvable(g):
        assert e == series(g).stable_term
    assert subspace_combine(data.r_infinity, data.s_bracket_r, "sum") == e


@settings(max_examples=30)
@given(st.integers(0, 100_000))
def test_exponential_radical_properties(seed):
    _, g = random_algebra(random.Random(seed))
    check_exp_properties(g)


def test_quotient_check_raises_on_bad_data(monkeypatch):
    import lieexp.exprad as mod

    g = dim2_solvable()
    real = mod.exponential_radical
    calls = []

    def fake(h):
        calls.append(h)
        data = real(h)
        if len(calls) == 1:
            return data.__class__(data.r, data.s, data.r_infinity, data.s_bracket_r, Subspace.zero(h.dim))
        return data

    monkeypatch.setattr(mod, "exponential_radical", fake)
    with pytest.raises(ValidationError):
        mod.largest_R_decomposed_quotient(g)
