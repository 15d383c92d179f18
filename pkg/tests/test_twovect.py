import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zinbiel.algebra import nilpotent_plane
from zinbiel.crossed import strict_from_crossed
from zinbiel.fixtures import crossed_fixtures, equivalent_crossed, general_zinf
from zinbiel.linalg import zeros
from zinbiel.report import PreconditionError
from zinbiel.twovect import (CompositionError, Mor2, check_naturality,
                             check_zinbiel2_structure, check_zinbielator_identity, functor_S,
                             functor_S_morphism, functor_T, functor_T_morphism, product,
                             two_vector_space, zinbielator, zinbielator_target_defect,
                             zinbielator_vs_f)
from zinbiel.zinf import ZinfMorphism, identity_zinf_morphism, lift, zinf_residuals

F = Fraction


def _structures():
    out = {"lift-plane": lift(nilpotent_plane()), "general": general_zinf(2)}
    for name in ("kernel-shuffle4", "image-e2-kernel", "twisted-shuffle4"):
        out[f"strict-{name}"] = strict_from_crossed(crossed_fixtures()[name])
    return out


STRUCTURES = _structures()


def _rand_vec(rng, n):
    return tuple(F(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(n))


def test_target_minus_source_is_dh():
    L = STRUCTURES["general"]
    V = two_vector_space(L)
    rng = random.Random(0)
    for _ in range(20):
        f = Mor2(_rand_vec(rng, L.n0), _rand_vec(rng, L.n1))
        diff = tuple(t - s for t, s in zip(V.target(f), V.source(f)))
        assert diff == tuple(sum(L.d[p, a] * f.h[a] for a in range(L.n1)) for p in range(L.n0))
    zero = Mor2((F(0),) * L.n0, (F(0),) * L.n1)
    assert not any(V.source(zero)) and not any(V.target(zero))


@given(st.integers(0, 10_000))
def test_composition_associative_and_unital(seed):
    L = STRUCTURES["general"]
    V = two_vector_space(L)
    rng = random.Random(seed)
    f = Mor2(_rand_vec(rng, L.n0), _rand_vec(rng, L.n1))
    g = Mor2(V.target(f), _rand_vec(rng, L.n1))
    h = Mor2(V.target(g), _rand_vec(rng, L.n1))
    assert V.compose(h, V.compose(g, f)) == V.compose(V.compose(h, g), f)
    assert V.compose(V.identity(V.target(f)), f) == f
    assert V.compose(f, V.identity(V.source(f))) == f


def test_composition_requires_matching_ends():
    L = STRUCTURES["general"]
    V = two_vector_space(L)
    f = Mor2((F(0),) * L.n0, (F(0),) * L.n1)
    g = Mor2((F(1),) + (F(0),) * (L.n0 - 1), (F(0),) * L.n1)
    with pytest.raises(CompositionError):
        V.compose(g, f)


@given(st.sampled_from(sorted(STRUCTURES)), st.integers(0, 10_000))
def test_product_is_a_functor(name, seed):
    L = STRUCTURES[name]
    V = two_vector_space(L)
    rng = random.Random(seed)
    x, y = _rand_vec(rng, L.n0), _rand_vec(rng, L.n0)
    assert product(V.identity(x), V.identity(y), L) == V.identity(product(V.identity(x), V.identity(y), L).x)
    f = Mor2(x, _rand_vec(rng, L.n1))
    g = Mor2(y, _rand_vec(rng, L.n1))
    f2 = Mor2(V.target(f), _rand_vec(rng, L.n1))
    g2 = Mor2(V.target(g), _rand_vec(rng, L.n1))
    lhs = product(V.compose(f2, f), V.compose(g2, g), L)
    rhs = V.compose(product(f2, g2, L), product(f, g, L))
    assert lhs == rhs


def test_product_on_plane_lift():
    L = STRUCTURES["lift-plane"]
    e1 = Mor2((F(1), F(0)), ())
    assert product(e1, e1, L) == Mor2((F(0), F(1)), ())


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_zinbielator_target_matches_d_residual(name):
    L = STRUCTURES[name]
    res = zinf_residuals(L)["d"]
    for idx in itertools.product(range(L.n0), repeat=3):
        units = [tuple(F(int(i == k)) for i in range(L.n0)) for k in idx]
        defect = zinbielator_target_defect(L, *units)
        assert defect == tuple(res[idx])
        assert not any(defect)


def test_perturbed_target_defect_is_located():
    L = STRUCTURES["general"]
    l3 = np.array(L.l3)
    l3[0, 0, 0, 0] += 1  # off ker d, so condition (d) breaks at (0, 0, 0)
    bad = L.replace(l3=l3)
    e = tuple(F(int(i == 0)) for i in range(L.n0))
    assert any(zinbielator_target_defect(bad, e, e, e))
    assert tuple(zinbielator_target_defect(bad, e, e, e)) == tuple(zinf_residuals(bad)["d"][0, 0, 0])


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_naturality_and_identity(name):
    L = STRUCTURES[name]
    assert check_naturality(L).passed
    report = check_zinbielator_identity(L)
    assert report.passed
    assert zinbielator_vs_f(L) == ({}, {})


def test_strict_zinbielator_has_no_homotopy_part():
    L = STRUCTURES["strict-kernel-shuffle4"]
    e = tuple(F(int(i == 0)) for i in range(L.n0))
    assert not any(zinbielator(L, e, e, e).h)


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_round_trip(name):
    L = STRUCTURES[name]
    Z = functor_T(L)
    assert check_zinbiel2_structure(Z).passed
    assert functor_S(Z) == L


def test_zero_round_trip():
    from zinbiel.zinf import TwoTermZinf
    L = TwoTermZinf.zero(2, 1)
    assert functor_S(functor_T(L)) == L


def test_T_rejects_failing_structure():
    L = STRUCTURES["general"]
    l3 = np.array(L.l3)
    l3[0, 0, 0, 0] += 1
    with pytest.raises(PreconditionError):
        functor_T(L.replace(l3=l3))


def test_morphism_round_trip():
    X = crossed_fixtures()["kernel-shuffle4"]
    X2, alpha, beta = equivalent_crossed(X, 1)
    L, L2 = strict_from_crossed(X), strict_from_crossed(X2)
    f = ZinfMorphism(beta, alpha, zeros(L.n0, L.n0, L.n1))
    F_ = functor_T_morphism(f, L, L2)
    assert functor_S_morphism(F_, functor_T(L), functor_T(L2)) == f
    i = identity_zinf_morphism(L)
    assert functor_S_morphism(functor_T_morphism(i, L, L), functor_T(L), functor_T(L)) == i
