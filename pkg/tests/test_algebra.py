from fractions import Fraction
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zinbiel.algebra import (Algebra, AlgebraMorphism, Bimodule, check_bimodule,
                             check_commutative_associative, check_morphism, check_zinbiel,
                             identity_morphism, nilpotent_plane, regular_bimodule, symmetrize,
                             truncated_shuffle, zero_algebra, zero_bimodule)
from zinbiel.fixtures import idempotent_line, left_regular_bimodule
from zinbiel.linalg import Matrix, ein, identity, inverse, tensor, zeros
from zinbiel.report import DimensionError

F = Fraction


@pytest.mark.parametrize("n", range(1, 9))
def test_shuffle_is_zinbiel(n):
    assert check_zinbiel(truncated_shuffle(n)).passed


def test_shuffle_coefficients():
    assert not any(truncated_shuffle(1).product.reshape(-1))
    s2 = truncated_shuffle(2).product
    assert s2[0, 0, 1] == 1 and sum(s2.reshape(-1)) == 1
    s4 = truncated_shuffle(4).product
    assert s4[0, 1, 2] == 1 and s4[1, 0, 2] == 2


def test_plane_and_zero_pass():
    assert check_zinbiel(nilpotent_plane()).passed
    assert check_zinbiel(zero_algebra(3)).passed


def test_idempotent_line_located():
    report = check_zinbiel(idempotent_line())
    assert report.failing() == ["zinbiel"]
    assert report.residual_map("zinbiel") == {(0, 0, 0): (-1,)}


def test_bimodule_examples():
    a = nilpotent_plane()
    assert check_bimodule(a, regular_bimodule(a)).passed
    assert check_bimodule(a, zero_bimodule(a, 3)).passed
    assert check_bimodule(a, left_regular_bimodule(a)).passed
    assert check_bimodule(zero_algebra(2), regular_bimodule(zero_algebra(2))).passed
    assert check_bimodule(truncated_shuffle(4), regular_bimodule(truncated_shuffle(4))).passed


def test_bimodule_dimension_mismatch():
    with pytest.raises(DimensionError):
        check_bimodule(nilpotent_plane(), zero_bimodule(truncated_shuffle(3)))


def test_symmetrize_plane():
    p = symmetrize(nilpotent_plane()).product
    assert p[0, 0, 1] == 1
    assert sum(1 for x in p.reshape(-1) if x) == 1
    assert not any(symmetrize(zero_algebra(2)).product.reshape(-1))


@pytest.mark.parametrize("n", range(1, 7))
def test_symmetrize_commutative_associative(n):
    s = symmetrize(truncated_shuffle(n))
    assert np.array_equal(s.product, s.product.transpose(1, 0, 2))
    assert check_commutative_associative(s).passed


def test_morphism_examples():
    a = nilpotent_plane()
    assert check_morphism(identity_morphism(a), a, a).passed
    assert check_morphism(AlgebraMorphism(zeros(3, 2)), a, truncated_shuffle(3)).passed
    bad = check_morphism(AlgebraMorphism(tensor([[1, 0], [0, 2]])), a, a)
    assert not bad.passed


def _random_invertible(n, rng):
    # unit lower triangular times unit upper triangular
    lo = np.array(identity(n))
    up = np.array(identity(n))
    for i in range(n):
        for j in range(i):
            lo[i, j] = F(rng.randint(-2, 2))
            up[j, i] = F(rng.randint(-2, 2), rng.randint(1, 2))
    return tensor(lo), tensor(up)


@given(st.integers(2, 5), st.integers(0, 10_000))
def test_basis_change_preserves_zinbiel(n, seed):
    rng = random.Random(seed)
    lo, up = _random_invertible(n, rng)
    P = ein("ij,jk->ik", lo, up)
    # transported product c'(x, y) = P^-1 c(Px, Py), so P itself is a morphism back
    Pi = tensor(inverse(Matrix.from_array(P)).to_array())
    c = truncated_shuffle(n).product
    c2 = ein("ip,jq,ijk,rk->pqr", P, P, c, Pi)
    a2 = Algebra(c2)
    assert check_zinbiel(a2).passed
    f = AlgebraMorphism(P)
    assert check_morphism(f, a2, truncated_shuffle(n)).passed


def test_algebra_shape_validation():
    with pytest.raises(DimensionError):
        Algebra(zeros(2, 2, 3))
    with pytest.raises(DimensionError):
        Bimodule(zeros(2, 3, 3), zeros(3, 3, 3))
