"""2-term Z-infinity algebras and their homomorphisms.

Storage convention for ``L = (V1 --d--> V0, l2, l3)``:

* ``d[i, a]``       coefficient of ``u_i`` in ``d h_a``
* ``l2_00[i, j, k]`` ``l2(x_i, x_j)`` in V0
* ``l2_01[i, a, b]`` ``l2(x_i, h_a)`` in V1
* ``l2_10[a, i, b]`` ``l2(h_a, x_i)`` in V1
* ``l3[i, j, k, a]`` ``l3(x_i, x_j, x_k)`` in V1

``l2`` vanishes on V1 x V1 and is not stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (Algebra, Bimodule, check_bimodule, check_zinbiel, zinbiel_residual)
from .cohomology import Cochain, coboundary
from .linalg import ein, identity, tensor, zeros
from .report import CheckReport, DimensionError, PreconditionError


@dataclass(frozen=True, eq=False)
class TwoTermZinf:
    d: np.ndarray
    l2_00: np.ndarray
    l2_01: np.ndarray
    l2_10: np.ndarray
    l3: np.ndarray

    def __post_init__(self):
        for name in ("d", "l2_00", "l2_01", "l2_10", "l3"):
            object.__setattr__(self, name, tensor(getattr(self, name)))
        n0, n1 = self.d.shape
        expected = {
            "l2_00": (n0, n0, n0),
            "l2_01": (n0, n1, n1),
            "l2_10": (n1, n0, n1),
            "l3": (n0, n0, n0, n1),
        }
        for name, shape in expected.items():
            if getattr(self, name).shape != shape:
                raise DimensionError(f"{name} has shape {getattr(self, name).shape}, expected {shape}")

    @property
    def n0(self) -> int:
        return self.d.shape[0]

    @property
    def n1(self) -> int:
        return self.d.shape[1]

    def is_strict(self) -> bool:
        return not any(v != 0 for v in self.l3.reshape(-1))

    def is_skeletal(self) -> bool:
        return not any(v != 0 for v in self.d.reshape(-1))

    def replace(self, **changes) -> "TwoTermZinf":
        fields = {k: getattr(self, k) for k in ("d", "l2_00", "l2_01", "l2_10", "l3")}
        fields.update(changes)
        return TwoTermZinf(**fields)

    def __eq__(self, other):
        return isinstance(other, TwoTermZinf) and all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ("d", "l2_00", "l2_01", "l2_10", "l3"))

    __hash__ = None

    @classmethod
    def zero(cls, n0: int, n1: int) -> "TwoTermZinf":
        return cls(zeros(n0, n1), zeros(n0, n0, n0), zeros(n0, n1, n1),
                   zeros(n1, n0, n1), zeros(n0, n0, n0, n1))


def lift(a: Algebra) -> TwoTermZinf:
    """An algebra viewed as a 2-term structure with V1 = 0."""
    n = a.dim
    return TwoTermZinf(zeros(n, 0), a.product, zeros(n, 0, 0), zeros(0, n, 0), zeros(n, n, n, 0))


def zinf_residuals(L: TwoTermZinf) -> dict[str, np.ndarray]:
    """Residual tensors of the coherent axiom system (b1)...(f).

    Tuple axes come first in the order the variables appear in each identity;
    the last axis is the value.
    """
    D, P, A, B, T = L.d, L.l2_00, L.l2_01, L.l2_10, L.l3
    S = P + P.transpose(1, 0, 2)
    res = {}
    res["b1"] = ein("iab,kb->iak", A, D) - ein("ja,ijk->iak", D, P)
    res["b2"] = ein("aib,kb->aik", B, D) - ein("ja,jik->aik", D, P)
    res["c"] = ein("ja,jbc->abc", D, A) - ein("jb,ajc->abc", D, B)
    # d l3(x,y,z) = x(yz) + x(zy) - (xy)z
    res["d"] = ein("ijka,oa->ijko", T, D) + zinbiel_residual(P)
    # l3(x,y,dh) = x(yh) + x(hy) - (xy)h
    res["e1"] = (ein("ka,ijkb->ijab", D, T)
                 - ein("jac,icb->ijab", A, A) - ein("ajc,icb->ijab", B, A)
                 + ein("ijw,wab->ijab", P, A))
    # l3(x,dh,z) = x(hz) + x(zh) - (xh)z
    res["e2"] = (ein("ja,ijkb->iakb", D, T)
                 - ein("akc,icb->iakb", B, A) - ein("kac,icb->iakb", A, A)
                 + ein("iac,ckb->iakb", A, B))
    # l3(dh,y,z) = h(yz) + h(zy) - (hy)z
    res["e3"] = (ein("ia,ijkb->ajkb", D, T)
                 - ein("jkw,awb->ajkb", S, B)
                 + ein("ajc,ckb->ajkb", B, B))
    res["f"] = f_residual(L)
    return res


def f_residual(L: TwoTermZinf) -> np.ndarray:
    P, A, B, T = L.l2_00, L.l2_01, L.l2_10, L.l3
    S = P + P.transpose(1, 0, 2)
    return (ein("jklc,icb->ijklb", T, A) + ein("kjlc,icb->ijklb", T, A)
            + ein("jkw,iwlb->ijklb", S, T) + ein("ijkc,clb->ijklb", T, B)
            - ein("kljc,icb->ijklb", T, A) - ein("lkjc,icb->ijklb", T, A)
            - ein("klw,ijwb->ijklb", S, T) - ein("ijw,wklb->ijklb", P, T))


def _verbatim_e_residuals(L: TwoTermZinf) -> dict[str, np.ndarray]:
    """(e1)-(e3) exactly as printed in the source definition.

    The printed (e1) has a self-cancelling pair and (e2), (e3) carry the
    opposite overall sign; these are reported, never used for pass/fail.
    """
    D, P, A, B, T = L.d, L.l2_00, L.l2_01, L.l2_10, L.l3
    S = P + P.transpose(1, 0, 2)
    return {
        "e1-printed": ein("ka,ijkb->ijab", D, T) + ein("ajc,icb->ijab", B, A),
        "e2-printed": (ein("ja,ijkb->iakb", D, T) - ein("iac,ckb->iakb", A, B)
                       + ein("akc,icb->iakb", B, A) + ein("kac,icb->iakb", A, A)),
        "e3-printed": (ein("ia,ijkb->ajkb", D, T) - ein("ajc,ckb->ajkb", B, B)
                       + ein("jkw,awb->ajkb", S, B)),
    }


def check_zinf(L: TwoTermZinf) -> CheckReport:
    report = CheckReport()
    for name, res in zinf_residuals(L).items():
        report.add(name, res)
    for name, res in _verbatim_e_residuals(L).items():
        report.add(name, res, variant=True)
    return report


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ZinfMorphism:
    f0: np.ndarray  # (n0', n0)
    f1: np.ndarray  # (n1', n1)
    f2: np.ndarray  # (n0, n0, n1')

    def __post_init__(self):
        for name in ("f0", "f1", "f2"):
            object.__setattr__(self, name, tensor(getattr(self, name)))
        if self.f0.ndim != 2 or self.f1.ndim != 2 or self.f2.ndim != 3:
            raise DimensionError("f0, f1 must be matrices and f2 a 3-index tensor")
        n0 = self.f0.shape[1]
        if self.f2.shape != (n0, n0, self.f1.shape[0]):
            raise DimensionError(f"f2 has shape {self.f2.shape}")

    def is_strict(self) -> bool:
        return not any(v != 0 for v in self.f2.reshape(-1))

    def __eq__(self, other):
        return isinstance(other, ZinfMorphism) and all(
            np.array_equal(getattr(self, k), getattr(other, k)) for k in ("f0", "f1", "f2"))

    __hash__ = None


def identity_zinf_morphism(L: TwoTermZinf) -> ZinfMorphism:
    return ZinfMorphism(identity(L.n0), identity(L.n1), zeros(L.n0, L.n0, L.n1))


def _morphism_shapes(f: ZinfMorphism, L: TwoTermZinf, Lp: TwoTermZinf):
    if f.f0.shape != (Lp.n0, L.n0) or f.f1.shape != (Lp.n1, L.n1):
        raise DimensionError(
            f"morphism ({f.f0.shape}, {f.f1.shape}) between ({L.n0},{L.n1}) and ({Lp.n0},{Lp.n1})")


def check_zinf_morphism(f: ZinfMorphism, L: TwoTermZinf, Lp: TwoTermZinf) -> CheckReport:
    _morphism_shapes(f, L, Lp)
    F0, F1, F2 = f.f0, f.f1, f.f2
    report = CheckReport()
    # (i) f0 d = d' f1
    report.add("i", ein("pi,ia->ap", F0, L.d) - ein("pb,ba->ap", Lp.d, F1))
    # (ii) f0 l2(x,y) - l2'(f0 x, f0 y) = d' f2(x,y)
    report.add("ii", ein("ijk,pk->ijp", L.l2_00, F0) - ein("pi,qj,pqr->ijr", F0, F0, Lp.l2_00)
               - ein("ijb,rb->ijr", F2, Lp.d))
    # (iii) f1 l2(x,a) - l2'(f0 x, f1 a) = f2(x, d a)
    report.add("iii", ein("iab,cb->iac", L.l2_01, F1) - ein("pi,qa,pqc->iac", F0, F1, Lp.l2_01)
               - ein("ja,ijc->iac", L.d, F2))
    # (iv) f1 l3(x,y,z) - l3'(f0x,f0y,f0z)
    #      = f2(x, l2(y,z)) - f2(l2(x,y), z) - f2(y, l2(x,z))
    #        + l2'(f0x, f2(y,z)) - l2'(f2(x,y), f0z) - l2'(f0y, f2(x,z))
    lhs = (ein("ijka,ba->ijkb", L.l3, F1)
           - ein("pi,qj,rk,pqrb->ijkb", F0, F0, F0, Lp.l3))
    rhs = (ein("jkw,iwb->ijkb", L.l2_00, F2) - ein("ijw,wkb->ijkb", L.l2_00, F2)
           - ein("ikw,jwb->ijkb", L.l2_00, F2)
           + ein("pi,jkc,pcb->ijkb", F0, F2, Lp.l2_01)
           - ein("ijc,pk,cpb->ijkb", F2, F0, Lp.l2_10)
           - ein("pj,ikc,pcb->ijkb", F0, F2, Lp.l2_01))
    report.add("iv", lhs - rhs)
    # mirrored (iii) for the right action; informational only
    report.add("iii-mirror", ein("aib,cb->aic", L.l2_10, F1) - ein("qa,pi,qpc->aic", F1, F0, Lp.l2_10)
               - ein("ja,jic->aic", L.d, F2), variant=True)
    return report


def compose_morphisms(g: ZinfMorphism, f: ZinfMorphism) -> ZinfMorphism:
    """``g . f``: (g.f)_2(x, y) = g2(f0 x, f0 y) + g1 f2(x, y)."""
    if g.f0.shape[1] != f.f0.shape[0] or g.f1.shape[1] != f.f1.shape[0]:
        raise DimensionError("target of f is not the source of g")
    f0 = ein("pq,qi->pi", g.f0, f.f0)
    f1 = ein("pq,qi->pi", g.f1, f.f1)
    f2 = ein("pi,qj,pqc->ijc", f.f0, f.f0, g.f2) + ein("cb,ijb->ijc", g.f1, f.f2)
    return ZinfMorphism(f0, f1, f2)


# ---------------------------------------------------------------------------
# skeletal structures
# ---------------------------------------------------------------------------

def skeletal_from_cocycle(a: Algebra, v: Bimodule, theta: Cochain) -> TwoTermZinf:
    za = check_zinbiel(a)
    if not za.passed:
        raise PreconditionError("algebra fails the Zinbiel identity", za)
    bm = check_bimodule(a, v)
    if not bm.passed:
        raise PreconditionError("actions fail the bimodule axioms", bm)
    if theta.degree != 3 or theta.algebra_dim != a.dim or theta.module_dim != v.dim:
        raise DimensionError("theta must be a 3-cochain on (algebra, bimodule)")
    dtheta = coboundary(a, v, theta)
    if any(x != 0 for x in dtheta.values.reshape(-1)):
        report = CheckReport()
        report.add("cocycle", dtheta.values)
        raise PreconditionError("theta is not a 3-cocycle", report)
    return TwoTermZinf(zeros(a.dim, v.dim), a.product, v.left, v.right, theta.values)


def skeletal_unchecked(a: Algebra, v: Bimodule, theta: Cochain) -> TwoTermZinf:
    """Assemble the skeletal structure without validating the inputs."""
    return TwoTermZinf(zeros(a.dim, v.dim), a.product, v.left, v.right, theta.values)


def classify_skeletal(L: TwoTermZinf) -> tuple[Algebra, Bimodule, Cochain]:
    """Split a skeletal structure into (algebra, bimodule, 3-cocycle).

    Raises :class:`PreconditionError` when d != 0 or when the extracted
    triple fails one of its checkers; the error carries the failing report.
    """
    if not L.is_skeletal():
        raise PreconditionError("structure is not skeletal (d != 0)")
    a = Algebra(L.l2_00)
    v = Bimodule(L.l2_01, L.l2_10)
    theta = Cochain(3, L.l3)
    report = CheckReport()
    report.merge("algebra", check_zinbiel(a))
    report.merge("bimodule", check_bimodule(a, v))
    report.add("cocycle", coboundary(a, v, theta).values)
    if not report.passed:
        raise PreconditionError("extracted triple fails its checkers", report)
    return a, v, theta
