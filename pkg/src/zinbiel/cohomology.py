"""Low-degree cochain complex of a Zinbiel algebra with bimodule coefficients.

An n-cochain is a tensor of shape ``(dim Z,) * n + (dim V,)``; it is
flattened in C order, so the first algebra index is the slowest and the
module index the fastest.  Coboundaries exist in degrees 1, 2 and 3:

    (d1 w)(x, y)       = x |> w(y) - w(xy) + w(x) <| y
    (d2 w)(x, y, z)    = x |> (w(y,z) + w(z,y)) - w(xy, z) + w(x, yz + zy) - w(x, y) <| z
    (d3 w)(x, y, z, t) = x |> (w(y,z,t) - w(z,t,y) + w(z,y,t) - w(t,z,y))
                         - w(xy, z, t) + w(x, yz + zy, t) - w(x, y, zt + tz) + w(x, y, z) <| t
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import Algebra, Bimodule, check_bimodule, check_zinbiel
from .linalg import Matrix, ein, kernel_basis, nonzero_entries, rank, solve, tensor, zeros
from .report import DimensionError, PreconditionError


class DegreeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    values: np.ndarray

    def __post_init__(self):
        if self.degree not in (1, 2, 3, 4):
            raise DegreeError(f"cochain degree {self.degree} outside 1..4")
        vals = tensor(self.values)
        if vals.ndim != self.degree + 1 or len(set(vals.shape[:-1])) > 1:
            raise DimensionError(f"degree-{self.degree} cochain with shape {vals.shape}")
        object.__setattr__(self, "values", vals)

    @property
    def algebra_dim(self) -> int:
        return self.values.shape[0]

    @property
    def module_dim(self) -> int:
        return self.values.shape[-1]

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(self.values.reshape(-1))

    @classmethod
    def from_flat(cls, degree: int, n: int, m: int, flat) -> "Cochain":
        return cls(degree, tensor(list(flat), (n,) * degree + (m,)))

    @classmethod
    def zero(cls, degree: int, n: int, m: int) -> "Cochain":
        return cls(degree, zeros(*((n,) * degree + (m,))))

    def __add__(self, other):
        return Cochain(self.degree, self.values + other.values)

    def __sub__(self, other):
        return Cochain(self.degree, self.values - other.values)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and np.array_equal(self.values, other.values))

    __hash__ = None


@dataclass(frozen=True)
class CohomologyResult:
    degree: int
    cocycles: int
    coboundaries: int

    @property
    def dim(self) -> int:
        return self.cocycles - self.coboundaries


def _context(a: Algebra, v: Bimodule, w: Cochain | None = None):
    if v.algebra_dim != a.dim:
        raise DimensionError(f"bimodule over dim {v.algebra_dim}, algebra has dim {a.dim}")
    if w is not None and (w.algebra_dim != a.dim or w.module_dim != v.dim):
        raise DimensionError("cochain shape does not match (algebra, bimodule)")


def coboundary(a: Algebra, v: Bimodule, w: Cochain) -> Cochain:
    """Evaluate the coboundary of ``w`` on all basis tuples."""
    _context(a, v, w)
    c, L, R, x = a.product, v.left, v.right, w.values
    S = c + c.transpose(1, 0, 2)
    if w.degree == 1:
        out = ein("xvo,yv->xyo", L, x) - ein("xyw,wo->xyo", c, x) + ein("xv,vyo->xyo", x, R)
    elif w.degree == 2:
        xs = x + x.transpose(1, 0, 2)
        out = (ein("xvo,yzv->xyzo", L, xs) - ein("xyw,wzo->xyzo", c, x)
               + ein("yzw,xwo->xyzo", S, x) - ein("xyv,vzo->xyzo", x, R))
    elif w.degree == 3:
        out = (ein("xvo,yztv->xyzto", L, x) - ein("xvo,ztyv->xyzto", L, x)
               + ein("xvo,zytv->xyzto", L, x) - ein("xvo,tzyv->xyzto", L, x)
               - ein("xyw,wzto->xyzto", c, x) + ein("yzw,xwto->xyzto", S, x)
               - ein("ztw,xywo->xyzto", S, x) + ein("xyzv,vto->xyzto", x, R))
    else:
        raise DegreeError(f"no coboundary defined on degree {w.degree}")
    return Cochain(w.degree + 1, out)


def _flat(shape):
    strides = np.cumprod((1,) + shape[::-1])[::-1][1:]
    strides = tuple(int(s) for s in strides)
    return lambda idx: sum(i * s for i, s in zip(idx, strides))


def coboundary_matrix(a: Algebra, v: Bimodule, degree: int) -> Matrix:
    """Matrix of the degree-``degree`` coboundary in the flattened cochain bases.

    Assembled term by term from the nonzero structure constants, without
    evaluating the formula on cochains.
    """
    if degree not in (1, 2, 3):
        raise DegreeError(f"no coboundary matrix in degree {degree}")
    _context(a, v)
    n, m = a.dim, v.dim
    row_of = _flat((n,) * (degree + 1) + (m,))
    col_of = _flat((n,) * degree + (m,))
    c = a.product
    S = c + c.transpose(1, 0, 2)
    nzL = list(nonzero_entries(v.left))
    nzR = list(nonzero_entries(v.right))
    nzc = list(nonzero_entries(c))
    nzS = list(nonzero_entries(S))
    acc: dict[tuple[int, int], Fraction] = {}

    def put(row, col, val):
        key = (row_of(row), col_of(col))
        acc[key] = acc.get(key, 0) + val

    free = lambda k: itertools.product(range(n), repeat=k)
    mods = range(m)

    if degree == 1:
        for (x, vv, o), val in nzL:
            for (y,) in free(1):
                put((x, y, o), (y, vv), val)
        for (x, y, w), val in nzc:
            for o in mods:
                put((x, y, o), (w, o), -val)
        for (vv, y, o), val in nzR:
            for (x,) in free(1):
                put((x, y, o), (x, vv), val)
    elif degree == 2:
        for (x, vv, o), val in nzL:
            for y, z in free(2):
                put((x, y, z, o), (y, z, vv), val)
                put((x, y, z, o), (z, y, vv), val)
        for (x, y, w), val in nzc:
            for z, o in itertools.product(range(n), mods):
                put((x, y, z, o), (w, z, o), -val)
        for (y, z, w), val in nzS:
            for x, o in itertools.product(range(n), mods):
                put((x, y, z, o), (x, w, o), val)
        for (vv, z, o), val in nzR:
            for x, y in free(2):
                put((x, y, z, o), (x, y, vv), -val)
    else:
        for (x, vv, o), val in nzL:
            for y, z, t in free(3):
                row = (x, y, z, t, o)
                put(row, (y, z, t, vv), val)
                put(row, (z, t, y, vv), -val)
                put(row, (z, y, t, vv), val)
                put(row, (t, z, y, vv), -val)
        for (x, y, w), val in nzc:
            for z, t, o in itertools.product(range(n), range(n), mods):
                put((x, y, z, t, o), (w, z, t, o), -val)
        for (y, z, w), val in nzS:
            for x, t, o in itertools.product(range(n), range(n), mods):
                put((x, y, z, t, o), (x, w, t, o), val)
        for (z, t, w), val in nzS:
            for x, y, o in itertools.product(range(n), range(n), mods):
                put((x, y, z, t, o), (x, y, w, o), -val)
        for (vv, t, o), val in nzR:
            for x, y, z in free(3):
                put((x, y, z, t, o), (x, y, z, vv), val)
    return Matrix.from_dict(n ** (degree + 1) * m, n ** degree * m, acc)


def require_valid(a: Algebra, v: Bimodule):
    za = check_zinbiel(a)
    if not za.passed:
        raise PreconditionError("algebra fails the Zinbiel identity", za)
    bm = check_bimodule(a, v)
    if not bm.passed:
        raise PreconditionError("actions fail the bimodule axioms", bm)


def cohomology_dim(a: Algebra, v: Bimodule, degree: int) -> CohomologyResult:
    if degree not in (2, 3):
        raise DegreeError("cohomology is computed in degrees 2 and 3")
    require_valid(a, v)
    d_in = coboundary_matrix(a, v, degree - 1)
    d_out = coboundary_matrix(a, v, degree)
    return CohomologyResult(degree, d_out.cols - rank(d_out), rank(d_in))


def is_cocycle(a: Algebra, v: Bimodule, w: Cochain) -> bool:
    if w.degree not in (1, 2, 3):
        raise DegreeError(f"no coboundary on degree {w.degree}")
    return not any(val != 0 for val in coboundary(a, v, w).values.reshape(-1))


def coboundary_preimage(a: Algebra, v: Bimodule, w: Cochain) -> Cochain | None:
    """A cochain ``eta`` with ``d eta = w`` (zeros in free coordinates), or None."""
    if w.degree not in (2, 3, 4):
        raise DegreeError(f"degree-{w.degree} cochains have no preceding coboundary")
    _context(a, v, w)
    x = solve(coboundary_matrix(a, v, w.degree - 1), w.flatten())
    if x is None:
        return None
    return Cochain.from_flat(w.degree - 1, a.dim, v.dim, x)


def cocycle_basis(a: Algebra, v: Bimodule, degree: int) -> list[Cochain]:
    basis = kernel_basis(coboundary_matrix(a, v, degree))
    return [Cochain.from_flat(degree, a.dim, v.dim, b) for b in basis]


def random_cocycle(a: Algebra, v: Bimodule, degree: int, seed: int) -> Cochain:
    """Seeded rational combination of the canonical cocycle basis."""
    if degree not in (2, 3):
        raise DegreeError("random cocycles are drawn in degrees 2 and 3")
    _context(a, v)
    rng = random.Random(seed)
    basis = kernel_basis(coboundary_matrix(a, v, degree))
    total = [Fraction(0)] * (a.dim ** degree * v.dim)
    for b in basis:
        coeff = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if coeff:
            total = [t + coeff * x for t, x in zip(total, b)]
    return Cochain.from_flat(degree, a.dim, v.dim, total)
