"""Crossed modules of Zinbiel algebras and strict 2-term structures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (Algebra, AlgebraMorphism, bimodule_residuals, check_morphism,
                      check_zinbiel)
from .linalg import ein, identity, tensor, zeros
from .report import CheckReport, DimensionError, PreconditionError
from .zinf import TwoTermZinf, check_zinf


@dataclass(frozen=True, eq=False)
class CrossedModule:
    """``phi: h -> g`` with actions ``left[x, a, b]`` (g on h) and ``right[a, x, b]``."""

    g: Algebra
    h: Algebra
    phi: np.ndarray   # (dim g, dim h)
    left: np.ndarray  # (dim g, dim h, dim h)
    right: np.ndarray  # (dim h, dim g, dim h)

    def __post_init__(self):
        for name in ("phi", "left", "right"):
            object.__setattr__(self, name, tensor(getattr(self, name)))
        ng, nh = self.g.dim, self.h.dim
        if self.phi.shape != (ng, nh):
            raise DimensionError(f"phi has shape {self.phi.shape}, expected {(ng, nh)}")
        if self.left.shape != (ng, nh, nh) or self.right.shape != (nh, ng, nh):
            raise DimensionError("action tensors do not match (dim g, dim h)")

    def __eq__(self, other):
        return (isinstance(other, CrossedModule) and self.g == other.g and self.h == other.h
                and all(np.array_equal(getattr(self, k), getattr(other, k))
                        for k in ("phi", "left", "right")))

    __hash__ = None


def check_crossed_module(X: CrossedModule) -> CheckReport:
    P, Q, F, L, R = X.g.product, X.h.product, X.phi, X.left, X.right
    report = CheckReport()
    report.merge("g", check_zinbiel(X.g))
    report.merge("h", check_zinbiel(X.h))
    report.merge("phi", check_morphism(AlgebraMorphism(F), X.h, X.g))
    for name, res in bimodule_residuals(P, L, R).items():
        report.add(f"action.{name}", res)
    # phi(x |> h) = x . phi(h)
    report.add("equivariant-left", ein("xab,kb->xak", L, F) - ein("ja,xjk->xak", F, P))
    # phi(h <| x) = phi(h) . x
    report.add("equivariant-right", ein("axb,kb->axk", R, F) - ein("ja,jxk->axk", F, P))
    # phi(h) |> k = h . k
    report.add("peiffer-left", ein("ja,jbc->abc", F, L) - Q)
    # h . k = h <| phi(k)
    report.add("peiffer-right", Q - ein("jb,ajc->abc", F, R))
    return report


def strict_from_crossed(X: CrossedModule) -> TwoTermZinf:
    report = check_crossed_module(X)
    if not report.passed:
        raise PreconditionError("input is not a crossed module", report)
    return _strict(X)


def _strict(X: CrossedModule) -> TwoTermZinf:
    ng, nh = X.g.dim, X.h.dim
    return TwoTermZinf(X.phi, X.g.product, X.left, X.right, zeros(ng, ng, ng, nh))


def crossed_from_strict(L: TwoTermZinf) -> CrossedModule:
    if not L.is_strict():
        raise PreconditionError("structure is not strict (l3 != 0)")
    report = check_zinf(L)
    if not report.passed:
        raise PreconditionError("structure fails the 2-term axioms", report)
    # h . k := l2(dh, k)
    hprod = ein("ja,jbc->abc", L.d, L.l2_01)
    return CrossedModule(Algebra(L.l2_00), Algebra(hprod), L.d, L.l2_01, L.l2_10)


def identity_crossed(a: Algebra) -> CrossedModule:
    return CrossedModule(a, a, identity(a.dim), a.product, a.product)


def zero_crossed(g: Algebra, nh: int) -> CrossedModule:
    """phi = 0 from an ``nh``-dimensional h with zero product and zero actions."""
    return CrossedModule(g, Algebra(zeros(nh, nh, nh)), zeros(g.dim, nh),
                         zeros(g.dim, nh, nh), zeros(nh, g.dim, nh))
