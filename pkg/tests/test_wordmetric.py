from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lieexp.errors import InputError, ValidationError
from lieexp.wordmetric import (
    BACKENDS,
    MatrixGroupPresentation,
    bfs_ball,
    check_semidirect_additivity,
    default_backend,
    fit_asymptotics,
    matrix_key,
    preset,
    sample_lengths,
    sample_subgroup,
    sol_orbit,
)
from lieexp.wordmetric import _kernels

PRESET_NAMES = ["heisenberg_Z", "free_abelian_2", "sol_lattice"]


@pytest.fixture(scope="module")
def heis10():
    return bfs_ball(preset("heisenberg_Z"), 10)


@pytest.fixture(scope="module")
def sol8():
    return bfs_ball(preset("sol_lattice"), 8)


def as_dict(table):
    return {tuple(int(v) for v in row): int(n) for row, n in zip(table.keys, table.lengths)}


# ---------------------------------------------------------------- presets


def test_preset_generators():
    p = preset("heisenberg_Z")
    assert p.generator_names == ("a", "A", "c", "C")
    assert matrix_key(p.generators[0]) == "1,1,0;0,1,0;0,0,1"
    assert len(preset("sol_lattice").generators) == 6


def test_unknown_preset_and_family():
    with pytest.raises(InputError, match="available"):
        preset("nope")
    with pytest.raises(InputError, match="center"):
        preset("heisenberg_Z").family("orbit")


def test_presentation_validation():
    eye = np.eye(2, dtype=np.int64)
    two = np.array([[2, 0], [0, 1]], dtype=np.int64)
    with pytest.raises(ValidationError, match="unimodular"):
        MatrixGroupPresentation("bad", 2, (two,), ("x",))
    up = np.array([[1, 1], [0, 1]], dtype=np.int64)
    with pytest.raises(ValidationError, match="inverse"):
        MatrixGroupPresentation("bad", 2, (up,), ("x",))
    with pytest.raises(InputError, match="repeated"):
        MatrixGroupPresentation("bad", 2, (eye, eye), ("x", "y"))
    with pytest.raises(InputError):
        MatrixGroupPresentation("bad", 2, (np.eye(3, dtype=np.int64),), ("x",))


def test_sol_orbit():
    a = np.array([[2, 1], [1, 1]])
    v = np.array([1, 0])
    for k in range(6):
        m = sol_orbit(k)
        assert m[:2, :2].tolist() == [[1, 0], [0, 1]]
        assert m[:2, 2].tolist() == v.tolist()
        v = a @ v


# ---------------------------------------------------------------- BFS correctness


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("backend", BACKENDS)
def test_bfs_matches_oracle(name, backend):
    p = preset(name)
    radius = 4
    table = bfs_ball(p, radius, backend=backend)
    want = oracles.bfs_lengths(p.generators, p.matrix_size, radius)
    assert as_dict(table) == want


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_bfs_matches_word_enumeration(name):
    p = preset(name)
    table = bfs_ball(p, 3)
    assert as_dict(table) == oracles.word_lengths(p.generators, p.matrix_size, 3)


def test_radius_zero():
    table = bfs_ball(preset("heisenberg_Z"), 0)
    assert len(table) == 1
    assert table.lookup(np.eye(3, dtype=np.int64)) == 0
    assert table.level_sizes == [1]


def test_level_sizes_free_abelian():
    # Z^2 with the standard generators: level r has 4r points
    table = bfs_ball(preset("free_abelian_2"), 6)
    assert table.level_sizes == [1] + [4 * r for r in range(1, 7)]


def test_known_lengths(heis10):
    e = np.eye(3, dtype=np.int64)
    z = e.copy()
    z[0, 2] = 1
    assert heis10.lookup(z) == 4  # commutator [a, c]
    free = bfs_ball(preset("free_abelian_2"), 4)
    xy = np.eye(3, dtype=np.int64)
    xy[0, 2] = xy[1, 2] = 1
    assert free.lookup(xy) == 2


def test_table_is_sorted_by_length(heis10):
    assert np.all(np.diff(heis10.lengths) >= 0)
    assert heis10.radius == 10 and heis10.complete


def test_symmetry_and_subadditivity(heis10):
    rng = np.random.default_rng(5)
    mats = heis10.matrices().astype(np.int64)
    small = np.flatnonzero(heis10.lengths <= 5)
    for _ in range(200):
        i, j = rng.choice(small, 2)
        g, h = mats[i], mats[j]
        inv = np.rint(np.linalg.inv(g)).astype(np.int64)
        assert heis10.lookup(inv) == heis10.lengths[i]
        gh = heis10.lookup(g @ h)
        assert gh is not None and gh <= heis10.lengths[i] + heis10.lengths[j]


def test_lookup_missing(heis10):
    far = np.eye(3, dtype=np.int64)
    far[0, 1] = 50
    assert heis10.lookup(far) is None
    assert far not in heis10
    assert heis10.lookup_many(np.zeros((0, 9))).shape == (0,)


def test_to_text(heis10):
    lines = heis10.to_text().splitlines()
    assert len(lines) == len(heis10)
    assert lines[0] == "1,0,0;0,1,0;0,0,1\t0"


# ---------------------------------------------------------------- determinism and budget


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_backends_and_workers_agree(name):
    p = preset(name)
    ref = bfs_ball(p, 7, backend="numpy")
    for backend in BACKENDS:
        for workers in (1, 3):
            t = bfs_ball(p, 7, backend=backend, workers=workers)
            assert t.to_text() == ref.to_text()
            assert t.level_sizes == ref.level_sizes


def test_budget_abort_returns_last_complete_radius():
    p = preset("heisenberg_Z")
    full = bfs_ball(p, 5)
    cap = sum(full.level_sizes[:4]) + 1  # room for radius 3 but not 4
    t = bfs_ball(p, 5, max_states=cap)
    assert t.budget_exhausted and not t.complete
    assert t.radius == 3 and t.requested_radius == 5
    assert t.to_text() == bfs_ball(p, 3).to_text()


def test_bfs_input_errors():
    p = preset("heisenberg_Z")
    with pytest.raises(InputError):
        bfs_ball(p, -1)
    with pytest.raises(InputError):
        bfs_ball(p, 2, max_states=0)
    with pytest.raises(InputError):
        bfs_ball(p, 2, workers=0)
    with pytest.raises(InputError):
        bfs_ball(p, 2, backend="gpu")


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("LIEEXP_DISABLE_NUMBA", "1")
    assert default_backend() == "numpy"
    monkeypatch.setenv("LIEEXP_DISABLE_NUMBA", "0")
    assert default_backend() == ("numba" if _kernels.HAVE_NUMBA else "numpy")


@settings(max_examples=20)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=40))
def test_kernels_agree_on_arbitrary_frontiers(rows):
    # dedup and exclusion semantics only; the frontier need not be a real BFS level
    frontier = np.unique(np.array(rows, dtype=np.int64), axis=0)
    gens = np.stack([np.array([[1, 1], [0, 1]]), np.array([[1, -1], [0, 1]])]).astype(np.int64)
    previous = frontier[: len(frontier) // 2]
    a = _kernels.expand_numpy(frontier, previous, gens, 2)
    b = _kernels.expand_numba(frontier, previous, gens, 2)
    assert a.tolist() == b.tolist()


# ---------------------------------------------------------------- fits


def test_power_fit_exact_linear():
    x = np.arange(1, 41, dtype=float)
    r = fit_asymptotics(x, 3 * x, "power")
    assert r.slope == pytest.approx(1.0, abs=0.01)
    assert r.parameters["alpha"] == pytest.approx(3.0)
    assert r.residual < 1e-9


def test_power_fit_ceil_sqrt():
    x = np.arange(4, 401, dtype=float)
    r = fit_asymptotics(x, np.ceil(np.sqrt(x)), "power")
    assert 0.45 <= r.slope <= 0.55


def test_log_fit():
    x = np.arange(0, 60, dtype=float)
    r = fit_asymptotics(x, 2 * np.log1p(x) + 1, "log")
    assert r.parameters["alpha"] == pytest.approx(2.0)
    assert r.parameters["gamma"] == pytest.approx(1.0)


def test_fit_input_errors():
    with pytest.raises(InputError, match="at least 8"):
        fit_asymptotics(np.arange(1, 6), np.arange(1, 6))
    with pytest.raises(InputError, match="distinct"):
        fit_asymptotics(np.ones(10), np.arange(10))
    with pytest.raises(InputError):
        fit_asymptotics(np.arange(0, 10), np.arange(1, 11), "power")
    with pytest.raises(InputError):
        fit_asymptotics(np.arange(1, 11), np.arange(1, 11), "cubic")


@settings(max_examples=40)
@given(st.floats(0.2, 3.0), st.floats(0.5, 5.0))
def test_power_fit_recovers_exponent(beta, alpha):
    x = np.linspace(2, 500, 30)
    r = fit_asymptotics(x, alpha * x**beta, "power")
    assert r.slope == pytest.approx(beta, abs=1e-6)


# ---------------------------------------------------------------- sampling and additivity


def test_center_samples(heis10):
    s = sample_lengths(heis10, preset("heisenberg_Z").family("center"), range(1, 40), "center")
    assert s.params[0] == 1 and s.lengths[0] == 4
    assert s.missing and s.notice().startswith(f"{len(s.missing)} parameter values")
    assert np.all(np.diff(s.lengths) >= 0)


def test_subgroup_samples(sol8):
    s = sample_subgroup(sol8, preset("sol_lattice"))
    assert len(s) > 0
    assert np.all(s.lengths > 0)
    # translations by e1: length 1
    assert s.lengths[0] == 1 and s.x[0] == pytest.approx(1.0)


def test_sol_orbit_bound(sol8):
    fam = preset("sol_lattice").family("orbit")
    s = sample_lengths(sol8, fam, range(0, 10), "orbit")
    assert len(s) >= 3
    for k, n in zip(s.params, s.lengths):
        assert n <= 2 * k + 1


def test_additivity_free_abelian():
    p = preset("free_abelian_2")
    rep = check_semidirect_additivity(p, bfs_ball(p, 6))
    assert rep.C == 1.0 and rep.D == 0
    assert rep.skipped == 0


def test_additivity_heisenberg(heis10):
    rep = check_semidirect_additivity(preset("heisenberg_Z"), heis10)
    assert math.isfinite(rep.C) and rep.C <= 4
    assert rep.pairs > 0
    assert rep.constants[4] <= rep.constants[0]


def test_additivity_needs_split():
    p = preset("free_abelian_2")
    bare = MatrixGroupPresentation("bare", 3, p.generators, p.generator_names)
    with pytest.raises(InputError):
        check_semidirect_additivity(bare, bfs_ball(p, 2))
    with pytest.raises(InputError):
        sample_subgroup(bfs_ball(p, 2), bare)
