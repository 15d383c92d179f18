import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zinbiel.algebra import (nilpotent_plane, regular_bimodule, truncated_shuffle, zero_algebra,
                             zero_bimodule)
from zinbiel.cohomology import (Cochain, DegreeError, coboundary, coboundary_matrix,
                                coboundary_preimage, cocycle_basis, cohomology_dim, is_cocycle,
                                random_cocycle)
from zinbiel.fixtures import cocycle_contexts
from zinbiel.linalg import Matrix, rank, solve

import _oracle

F = Fraction
CONTEXTS = cocycle_contexts()


def _random_cochain(deg, n, m, rng):
    size = n ** deg * m
    return Cochain.from_flat(deg, n, m, [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(size)])


def test_zero_cochain_maps_to_zero():
    a = nilpotent_plane()
    v = regular_bimodule(a)
    for deg in (1, 2, 3):
        assert coboundary(a, v, Cochain.zero(deg, 2, 2)) == Cochain.zero(deg + 1, 2, 2)


def test_d1_of_identity_on_plane():
    a = nilpotent_plane()
    v = regular_bimodule(a)
    ident = Cochain.from_flat(1, 2, 2, [1, 0, 0, 1])
    out = coboundary(a, v, ident)
    assert tuple(out.values[0, 0]) == (0, 1)
    assert sum(1 for x in out.values.reshape(-1) if x) == 1


def test_matrix_shapes():
    a = nilpotent_plane()
    v = regular_bimodule(a)
    assert coboundary_matrix(a, v, 1).shape == (8, 4)
    assert coboundary_matrix(a, v, 2).shape == (16, 8)
    assert coboundary_matrix(a, v, 3).shape == (32, 16)


@pytest.mark.parametrize("name", sorted(CONTEXTS))
def test_complex_law(name):
    a, v = CONTEXTS[name]
    d1, d2, d3 = (coboundary_matrix(a, v, k) for k in (1, 2, 3))
    assert (d2 @ d1).is_zero()
    assert (d3 @ d2).is_zero()


@pytest.mark.parametrize("name", sorted(CONTEXTS))
@pytest.mark.parametrize("deg", [1, 2, 3])
def test_evaluation_matches_matrix(name, deg):
    a, v = CONTEXTS[name]
    rng = random.Random(deg)
    mat = coboundary_matrix(a, v, deg)
    for _ in range(100):
        w = _random_cochain(deg, a.dim, v.dim, rng)
        assert coboundary(a, v, w).flatten() == mat.apply(w.flatten())


@given(st.sampled_from(sorted(CONTEXTS)), st.sampled_from([1, 2]), st.integers(0, 10_000))
def test_coboundaries_are_cocycles(name, deg, seed):
    a, v = CONTEXTS[name]
    eta = _random_cochain(deg, a.dim, v.dim, random.Random(seed))
    w = coboundary(a, v, eta)
    assert is_cocycle(a, v, w)
    pre = coboundary_preimage(a, v, w)
    assert pre is not None and coboundary(a, v, pre) == w


@pytest.mark.parametrize("name", sorted(CONTEXTS))
@pytest.mark.parametrize("deg", [2, 3])
def test_cohomology_bounds_and_oracle(name, deg):
    a, v = CONTEXTS[name]
    res = cohomology_dim(a, v, deg)
    assert 0 <= res.dim <= res.cocycles
    assert res.coboundaries == rank(coboundary_matrix(a, v, deg - 1))
    if a.dim ** 4 * v.dim > 100:
        return  # the brute-force oracle is only run on the small contexts
    dicts = [{(i, j): {k: a.product[i, j, k] for k in range(a.dim) if a.product[i, j, k]}
              for i in range(a.dim) for j in range(a.dim)}]
    prod = {key: val for key, val in dicts[0].items() if val}
    left = {(i, j): {k: v.left[i, j, k] for k in range(v.dim) if v.left[i, j, k]}
            for i in range(a.dim) for j in range(v.dim)}
    right = {(j, i): {k: v.right[j, i, k] for k in range(v.dim) if v.right[j, i, k]}
             for j in range(v.dim) for i in range(a.dim)}
    oracle = _oracle.cohomology(a.dim, prod, {k: x for k, x in left.items() if x},
                                {k: x for k, x in right.items() if x}, v.dim)
    assert (res.cocycles, res.coboundaries) == oracle[deg]


def test_trivial_context():
    a = zero_algebra(1)
    res = cohomology_dim(a, zero_bimodule(a, 1), 2)
    assert (res.cocycles, res.coboundaries, res.dim) == (1, 0, 1)


def test_plane_regular_recorded_values():
    a = nilpotent_plane()
    v = regular_bimodule(a)
    assert [(r.cocycles, r.coboundaries) for r in (cohomology_dim(a, v, 2), cohomology_dim(a, v, 3))] \
        == [(3, 2), (6, 5)]


def test_cocycle_outside_coboundaries():
    a = nilpotent_plane()
    v = regular_bimodule(a)
    d2 = coboundary_matrix(a, v, 2)
    found = [w for w in cocycle_basis(a, v, 3) if solve(d2, w.flatten()) is None]
    assert found
    assert is_cocycle(a, v, found[0])
    assert coboundary_preimage(a, v, found[0]) is None


def test_random_cocycle_deterministic():
    a = nilpotent_plane()
    v = regular_bimodule(a)
    c1 = random_cocycle(a, v, 3, 1)
    assert c1 == random_cocycle(a, v, 3, 1)
    assert is_cocycle(a, v, c1)
    assert is_cocycle(a, v, random_cocycle(a, v, 3, 2))


def test_random_cocycle_in_zero_space():
    a = zero_algebra(1)
    v = zero_bimodule(a, 0)
    assert random_cocycle(a, v, 2, 7) == Cochain.zero(2, 1, 0)


def test_degree_errors():
    a = truncated_shuffle(2)
    v = regular_bimodule(a)
    with pytest.raises(DegreeError):
        coboundary(a, v, Cochain.zero(4, 2, 2))
    with pytest.raises(DegreeError):
        random_cocycle(a, v, 1, 0)


def test_flattening_is_c_order():
    w = Cochain.from_flat(2, 2, 3, list(range(12)))
    assert w.values[0, 1, 2] == 5
    assert w.values[1, 0, 0] == 6
