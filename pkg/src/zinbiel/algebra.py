"""Zinbiel algebras, bimodules and morphisms given by structure constants.

A product tensor ``c`` has ``c[i, j, k]`` = coefficient of ``e_k`` in
``e_i . e_j``.  A bimodule of an algebra on ``V`` stores the left action as
``left[x, a, b]`` (coefficient of ``v_b`` in ``e_x |> v_a``) and the right
action as ``right[a, x, b]`` (coefficient of ``v_b`` in ``v_a <| e_x``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .linalg import ein, identity, tensor, zeros
from .report import CheckReport, DimensionError, PreconditionError


@dataclass(frozen=True, eq=False)
class Algebra:
    product: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        p = tensor(self.product)
        if p.ndim != 3 or len(set(p.shape)) != 1:
            raise DimensionError(f"product tensor must be (n, n, n), got {p.shape}")
        object.__setattr__(self, "product", p)
        labels = tuple(self.labels) or tuple(f"e{i + 1}" for i in range(p.shape[0]))
        if len(labels) != p.shape[0] or len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct, one per basis vector")
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.product.shape[0]

    def mul(self, x, y) -> np.ndarray:
        """Product of two coordinate vectors."""
        return ein("i,j,ijk->k", tensor(x), tensor(y), self.product)

    def __eq__(self, other):
        return isinstance(other, Algebra) and np.array_equal(self.product, other.product)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Bimodule:
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        left, right = tensor(self.left), tensor(self.right)
        if left.ndim != 3 or right.ndim != 3:
            raise DimensionError("actions must be 3-index tensors")
        z, v, v2 = left.shape
        if v != v2 or right.shape != (v, z, v):
            raise DimensionError(f"inconsistent action shapes {left.shape} and {right.shape}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def algebra_dim(self) -> int:
        return self.left.shape[0]

    @property
    def dim(self) -> int:
        return self.left.shape[1]

    def __eq__(self, other):
        return (isinstance(other, Bimodule) and np.array_equal(self.left, other.left)
                and np.array_equal(self.right, other.right))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    matrix: np.ndarray  # (target dim, source dim)

    def __post_init__(self):
        m = tensor(self.matrix)
        if m.ndim != 2:
            raise DimensionError("morphism matrix must be 2-dimensional")
        object.__setattr__(self, "matrix", m)

    @property
    def source_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def target_dim(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other):
        return isinstance(other, AlgebraMorphism) and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


def _flip(c: np.ndarray) -> np.ndarray:
    return c.transpose(1, 0, 2)


def zinbiel_residual(c: np.ndarray) -> np.ndarray:
    """``(xy)z - x(yz) - x(zy)`` over all basis triples, shape (n, n, n, n)."""
    return (ein("xyw,wzo->xyzo", c, c)
            - ein("yzw,xwo->xyzo", c, c)
            - ein("zyw,xwo->xyzo", c, c))


def check_zinbiel(a: Algebra) -> CheckReport:
    report = CheckReport()
    report.add("zinbiel", zinbiel_residual(a.product))
    return report


def _check_dims(a: Algebra, v: Bimodule):
    if v.algebra_dim != a.dim:
        raise DimensionError(f"bimodule over a {v.algebra_dim}-dim algebra, got {a.dim}")


def bimodule_residuals(c, left, right) -> dict[str, np.ndarray]:
    """Residuals of the three bimodule axioms.

    ``left-assoc``:  (xy) |> v  -  x |> (y |> v + v <| y), tuples (x, y, v)
    ``right-assoc``: (v <| x) <| y  -  v <| (xy + yx),      tuples (v, x, y)
    ``middle``:      (x |> v) <| y  -  x |> (v <| y + y |> v), tuples (x, v, y)
    """
    sym = c + _flip(c)
    inner_left = left.transpose(1, 0, 2) + right  # (a, y, b): y |> v_a + v_a <| y
    return {
        "left-assoc": ein("xyw,wao->xyao", c, left) - ein("ayb,xbo->xyao", inner_left, left),
        "right-assoc": ein("axb,byo->axyo", right, right) - ein("xyw,awo->axyo", sym, right),
        "middle": ein("xab,byo->xayo", left, right) - ein("ayb,xbo->xayo", inner_left, left),
    }


def check_bimodule(a: Algebra, v: Bimodule) -> CheckReport:
    _check_dims(a, v)
    report = CheckReport()
    for name, res in bimodule_residuals(a.product, v.left, v.right).items():
        report.add(name, res)
    return report


def symmetrize(a: Algebra) -> Algebra:
    """The product (x.y + y.x)/2."""
    c = a.product
    return Algebra((c + _flip(c)) / 2, a.labels)


def check_commutative_associative(a: Algebra) -> CheckReport:
    c = a.product
    report = CheckReport()
    report.add("commutative", c - _flip(c))
    report.add("associative", ein("xyw,wzo->xyzo", c, c) - ein("yzw,xwo->xyzo", c, c))
    return report


def check_morphism(f: AlgebraMorphism, a: Algebra, b: Algebra) -> CheckReport:
    if f.source_dim != a.dim or f.target_dim != b.dim:
        raise DimensionError(
            f"morphism {f.target_dim}x{f.source_dim} between algebras of dims {a.dim}, {b.dim}")
    m = f.matrix
    report = CheckReport()
    report.add("multiplicative",
               ein("ijw,ow->ijo", a.product, m) - ein("pi,qj,pqo->ijo", m, m, b.product))
    return report


def regular_bimodule(a: Algebra) -> Bimodule:
    report = check_zinbiel(a)
    if not report.passed:
        raise PreconditionError("regular bimodule needs a Zinbiel algebra", report)
    return Bimodule(a.product, a.product)


def zero_bimodule(a: Algebra, dim: int | None = None) -> Bimodule:
    n = a.dim if dim is None else dim
    return Bimodule(zeros(a.dim, n, n), zeros(n, a.dim, n))


def identity_morphism(a: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(identity(a.dim))


def zero_algebra(n: int) -> Algebra:
    return Algebra(zeros(n, n, n))


def truncated_shuffle(n: int) -> Algebra:
    """Basis x1..xn with x_m . x_k = C(m+k-1, k) x_{m+k} when m + k <= n."""
    if n < 1:
        raise ValueError("truncated_shuffle needs n >= 1")
    c = np.empty((n, n, n), dtype=object)
    c.fill(0)
    for m in range(1, n + 1):
        for k in range(1, n + 1 - m):
            c[m - 1, k - 1, m + k - 1] = comb(m + k - 1, k)
    return Algebra(c, tuple(f"x{i}" for i in range(1, n + 1)))


def nilpotent_plane() -> Algebra:
    """Two-dimensional algebra with e1 . e1 = e2 and all other products zero."""
    c = np.zeros((2, 2, 2), dtype=object)
    c[0, 0, 1] = 1
    return Algebra(c, ("e1", "e2"))
