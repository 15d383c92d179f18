"""2-term A-infinity / C-infinity / dendriform data and the bridges from Z-infinity.

A :class:`TwoTermAinf` stores ``m1 = d``, the graded ``m2`` components and
``m3`` with the same index conventions as :class:`~zinbiel.zinf.TwoTermZinf`.
Bridges:

* :func:`symmetrize_zinf`: ``m2 = (l2 + l2 flipped)/2`` and ``m3`` the
  average of ``l3`` over all argument orders;
* :func:`dendrify`: the two dendriform halves are ``l2`` and its flip, and
  the three ``m3`` cells are the cyclic rotations of ``l3``;
* :func:`totalize`: sum over cells;
* :func:`zinf_from_rb`: a Rota-Baxter pair on a commutative 2-term algebra
  gives ``l2(x, y) = m2(x, Ry) + m2(Rx, y)`` and the matching ``l3``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import ein, identity, tensor, zeros
from .report import CheckReport, DimensionError, PreconditionError
from .zinf import TwoTermZinf

_FIELDS = ("d", "m2_00", "m2_01", "m2_10", "m3")


def _shapes(n0: int, n1: int) -> dict:
    return {"m2_00": (n0, n0, n0), "m2_01": (n0, n1, n1), "m2_10": (n1, n0, n1),
            "m3": (n0, n0, n0, n1)}


@dataclass(frozen=True, eq=False)
class TwoTermAinf:
    d: np.ndarray
    m2_00: np.ndarray
    m2_01: np.ndarray
    m2_10: np.ndarray
    m3: np.ndarray

    def __post_init__(self):
        for name in _FIELDS:
            object.__setattr__(self, name, tensor(getattr(self, name)))
        n0, n1 = self.d.shape
        for name, shape in _shapes(n0, n1).items():
            if getattr(self, name).shape != shape:
                raise DimensionError(f"{name} has shape {getattr(self, name).shape}, expected {shape}")

    @property
    def n0(self) -> int:
        return self.d.shape[0]

    @property
    def n1(self) -> int:
        return self.d.shape[1]

    def __eq__(self, other):
        return isinstance(other, TwoTermAinf) and all(
            np.array_equal(getattr(self, k), getattr(other, k)) for k in _FIELDS)

    __hash__ = None

    @classmethod
    def zero(cls, n0: int, n1: int) -> "TwoTermAinf":
        return cls(zeros(n0, n1), *(zeros(*s) for s in _shapes(n0, n1).values()))

    @classmethod
    def from_product(cls, product) -> "TwoTermAinf":
        """An ordinary algebra with ``A1 = 0``."""
        P = tensor(product)
        n = P.shape[0]
        return cls(zeros(n, 0), P, zeros(n, 0, 0), zeros(0, n, 0), zeros(n, n, n, 0))


@dataclass(frozen=True, eq=False)
class TwoTermDend:
    """``mu2[r]`` for cells r = 1, 2 as (V0V0, V0V1, V1V0) triples; ``mu3[r]`` for r = 1, 2, 3."""

    d: np.ndarray
    mu2: tuple  # ((m00, m01, m10) for cell 1, same for cell 2)
    mu3: tuple  # (cell 1, cell 2, cell 3)

    def __post_init__(self):
        object.__setattr__(self, "d", tensor(self.d))
        n0, n1 = self.d.shape
        sh = _shapes(n0, n1)
        if len(self.mu2) != 2 or len(self.mu3) != 3:
            raise DimensionError("need two mu2 cells and three mu3 cells")
        mu2 = []
        for cell in self.mu2:
            parts = tuple(tensor(t) for t in cell)
            for part, key in zip(parts, ("m2_00", "m2_01", "m2_10")):
                if part.shape != sh[key]:
                    raise DimensionError(f"mu2 component has shape {part.shape}, expected {sh[key]}")
            mu2.append(parts)
        mu3 = tuple(tensor(t) for t in self.mu3)
        for t in mu3:
            if t.shape != sh["m3"]:
                raise DimensionError(f"mu3 cell has shape {t.shape}, expected {sh['m3']}")
        object.__setattr__(self, "mu2", tuple(mu2))
        object.__setattr__(self, "mu3", mu3)

    @property
    def n0(self) -> int:
        return self.d.shape[0]

    @property
    def n1(self) -> int:
        return self.d.shape[1]

    def __eq__(self, other):
        return (isinstance(other, TwoTermDend) and np.array_equal(self.d, other.d)
                and all(np.array_equal(a, b) for ca, cb in zip(self.mu2, other.mu2)
                        for a, b in zip(ca, cb))
                and all(np.array_equal(a, b) for a, b in zip(self.mu3, other.mu3)))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class RotaBaxter2:
    R0: np.ndarray  # (n0, n0)
    R1: np.ndarray  # (n1, n1)

    def __post_init__(self):
        object.__setattr__(self, "R0", tensor(self.R0))
        object.__setattr__(self, "R1", tensor(self.R1))
        if self.R0.ndim != 2 or self.R0.shape[0] != self.R0.shape[1]:
            raise DimensionError("R0 must be square")
        if self.R1.ndim != 2 or self.R1.shape[0] != self.R1.shape[1]:
            raise DimensionError("R1 must be square")

    def __eq__(self, other):
        return (isinstance(other, RotaBaxter2) and np.array_equal(self.R0, other.R0)
                and np.array_equal(self.R1, other.R1))

    __hash__ = None


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def ainf_residuals(A: TwoTermAinf) -> dict[str, np.ndarray]:
    """Canonical residuals (b1)...(f); tuple axes first, value axis last."""
    D, P, L, R, T = A.d, A.m2_00, A.m2_01, A.m2_10, A.m3
    res = {}
    res["b1"] = ein("ja,ijk->iak", D, P) - ein("iab,kb->iak", L, D)
    res["b2"] = ein("ja,jik->aik", D, P) - ein("aib,kb->aik", R, D)
    res["c"] = ein("ja,jbc->abc", D, L) - ein("jb,ajc->abc", D, R)
    # d m3(x,y,z) = x(yz) - (xy)z
    res["d"] = (ein("ijka,oa->ijko", T, D)
                - ein("jkw,iwo->ijko", P, P) + ein("ijw,wko->ijko", P, P))
    # m3(x,y,dh) = x(yh) - (xy)h
    res["e1"] = (ein("ka,ijkb->ijab", D, T)
                 - ein("jac,icb->ijab", L, L) + ein("ijw,wab->ijab", P, L))
    # m3(x,dh,z) = x(hz) - (xh)z
    res["e2"] = (ein("ja,ijkb->iakb", D, T)
                 - ein("akc,icb->iakb", R, L) + ein("iac,ckb->iakb", L, R))
    # m3(dh,y,z) = h(yz) - (hy)z
    res["e3"] = (ein("ia,ijkb->ajkb", D, T)
                 - ein("jkw,awb->ajkb", P, R) + ein("ajc,ckb->ajkb", R, R))
    res["f"] = _pentagon(A, printed=False)
    return res


def _pentagon(A: TwoTermAinf, printed: bool) -> np.ndarray:
    P, L, R, T = A.m2_00, A.m2_01, A.m2_10, A.m3
    fourth = (ein("ilw,jkwb->ijklb", P, T) if printed      # m3(y, z, m2(x, t))
              else ein("klw,ijwb->ijklb", P, T))            # m3(x, y, m2(z, t))
    return (ein("jklc,icb->ijklb", T, L) - ein("ijw,wklb->ijklb", P, T)
            + ein("jkw,iwlb->ijklb", P, T) - fourth + ein("ijkc,clb->ijklb", T, R))


def printed_variant_residuals(A: TwoTermAinf) -> dict[str, np.ndarray]:
    """Residuals of the alternative printed forms of (e1), (e2), (e3) and (f)."""
    D, L, R, T = A.d, A.m2_01, A.m2_10, A.m3
    return {
        # right-hand side cancels to zero
        "e1-printed": ein("ka,ijkb->ijab", D, T),
        # m3(x,dh,z) = (xh)z - x(hz)
        "e2-printed": (ein("ja,ijkb->iakb", D, T)
                       - ein("iac,ckb->iakb", L, R) + ein("akc,icb->iakb", R, L)),
        # m3(dh,y,z) = (hy)z - h(yz)
        "e3-printed": (ein("ia,ijkb->ajkb", D, T)
                       - ein("ajc,ckb->ajkb", R, R) + ein("jkw,awb->ajkb", A.m2_00, R)),
        "f-printed": _pentagon(A, printed=True),
    }


def check_ainf(A: TwoTermAinf) -> CheckReport:
    report = CheckReport()
    for name, res in ainf_residuals(A).items():
        report.add(name, res)
    for name, res in printed_variant_residuals(A).items():
        report.add(name, res, variant=True)
    return report


def check_cinf(A: TwoTermAinf) -> CheckReport:
    """A-infinity conditions plus symmetric ``m2`` (both gradings) and S3-symmetric ``m3``."""
    report = check_ainf(A)
    report.add("m2-symmetric", A.m2_00 - A.m2_00.transpose(1, 0, 2))
    report.add("m2-mixed-symmetric", A.m2_01 - A.m2_10.transpose(1, 0, 2))
    T = A.m3
    sym = [T - T.transpose(p + (3,)) for p in itertools.permutations(range(3)) if p != (0, 1, 2)]
    report.add("m3-symmetric", np.stack(sym, axis=-2) if sym else T, nvalue_axes=2)
    return report


def rota_baxter_residuals(R: RotaBaxter2, A: TwoTermAinf) -> dict[str, np.ndarray]:
    """Residuals of the Rota-Baxter axioms, LHS - RHS.

    The outer operator is R1 whenever the value lies in degree 1.  ``chain``
    asks R to commute with d.
    """
    if R.R0.shape != (A.n0, A.n0) or R.R1.shape != (A.n1, A.n1):
        raise DimensionError("operator shapes do not match the algebra")
    R0, R1, P, L, Rt, T = R.R0, R.R1, A.m2_00, A.m2_01, A.m2_10, A.m3
    # m2(R0 x, R0 y) = R0(m2(x, R0 y) + m2(R0 x, y))
    inner = ein("qj,iqk->ijk", R0, P) + ein("pi,pjk->ijk", R0, P)
    rb0 = ein("pi,qj,pqk->ijk", R0, R0, P) - ein("ijk,ok->ijo", inner, R0)
    # m2(R0 x, R1 h) = R1(m2(x, R1 h) + m2(R0 x, h))
    inner = ein("ba,ibc->iac", R1, L) + ein("pi,pac->iac", R0, L)
    rb1 = ein("pi,ba,pbc->iac", R0, R1, L) - ein("iac,oc->iao", inner, R1)
    # m2(R1 h, R0 x) = R1(m2(h, R0 x) + m2(R1 h, x))
    inner = ein("pi,apc->aic", R0, Rt) + ein("ba,bic->aic", R1, Rt)
    rb2 = ein("ba,pi,bpc->aic", R1, R0, Rt) - ein("aic,oc->aio", inner, R1)
    # m3(R0x, R0y, R0z) = R1(m3(x,R0y,R0z) + m3(R0x,y,R0z) + m3(R0x,R0y,z))
    inner = (ein("qj,rk,iqrc->ijkc", R0, R0, T) + ein("pi,rk,pjrc->ijkc", R0, R0, T)
             + ein("pi,qj,pqkc->ijkc", R0, R0, T))
    rb3 = ein("pi,qj,rk,pqrc->ijkc", R0, R0, R0, T) - ein("ijkc,oc->ijko", inner, R1)
    chain = ein("pq,qa->ap", R0, A.d) - ein("pb,ba->ap", A.d, R1)
    return {"rb-00": rb0, "rb-01": rb1, "rb-10": rb2, "rb-3": rb3, "chain": chain}


def check_rota_baxter(R: RotaBaxter2, A: TwoTermAinf) -> CheckReport:
    report = CheckReport()
    for name, res in rota_baxter_residuals(R, A).items():
        report.add(name, res)
    return report


# ---------------------------------------------------------------------------
# bridges
# ---------------------------------------------------------------------------

HALF = Fraction(1, 2)
SIXTH = Fraction(1, 6)


def symmetrize_zinf(L: TwoTermZinf) -> TwoTermAinf:
    m2_00 = (L.l2_00 + L.l2_00.transpose(1, 0, 2)) * HALF
    m2_01 = (L.l2_01 + L.l2_10.transpose(1, 0, 2)) * HALF
    m2_10 = m2_01.transpose(1, 0, 2)
    T = L.l3
    m3 = sum((T.transpose(p + (3,)) for p in itertools.permutations(range(3))),
             zeros(*T.shape)) * SIXTH
    A = TwoTermAinf(L.d, m2_00, m2_01, m2_10, m3)
    sym = CheckReport()
    sym.add("m3", m3 - m3.transpose(1, 0, 2, 3))
    sym.add("m2", m2_00 - m2_00.transpose(1, 0, 2))
    assert sym.passed, "symmetrization is not symmetric"
    return A


def _flip(t: np.ndarray) -> np.ndarray:
    return t.transpose(1, 0, 2)


def dendrify(L: TwoTermZinf) -> TwoTermDend:
    """Cell 1 is ``l2``, cell 2 its flip; the ``mu3`` cells rotate the arguments of ``l3``."""
    cell1 = (L.l2_00, L.l2_01, L.l2_10)
    cell2 = (_flip(L.l2_00), _flip(L.l2_10), _flip(L.l2_01))
    T = L.l3
    # mu3[2](x,y,z) = l3(y,z,x) and mu3[3](x,y,z) = l3(z,x,y)
    rot2 = T.transpose(2, 0, 1, 3)
    rot3 = T.transpose(1, 2, 0, 3)
    return TwoTermDend(L.d, (cell1, cell2), (T, rot2, rot3))


def totalize(D: TwoTermDend) -> TwoTermAinf:
    (a00, a01, a10), (b00, b01, b10) = D.mu2
    return TwoTermAinf(D.d, a00 + b00, a01 + b01, a10 + b10, D.mu3[0] + D.mu3[1] + D.mu3[2])


def zinf_from_rb(A: TwoTermAinf, R: RotaBaxter2) -> TwoTermZinf:
    ca = check_cinf(A)
    if not ca.passed:
        raise PreconditionError("input fails the C-infinity checks", ca)
    rb = check_rota_baxter(R, A)
    if not rb.passed:
        raise PreconditionError("operator fails the Rota-Baxter axioms", rb)
    return rb_structure(A, R)


def rb_structure(A: TwoTermAinf, R: RotaBaxter2) -> TwoTermZinf:
    """The induced brackets without precondition checks."""
    R0, R1 = R.R0, R.R1
    P, L, Rt, T = A.m2_00, A.m2_01, A.m2_10, A.m3
    l2_00 = ein("qj,iqk->ijk", R0, P) + ein("pi,pjk->ijk", R0, P)
    l2_01 = ein("ba,ibc->iac", R1, L) + ein("pi,pac->iac", R0, L)
    l2_10 = ein("pi,apc->aic", R0, Rt) + ein("ba,bic->aic", R1, Rt)
    l3 = (ein("qj,rk,iqrc->ijkc", R0, R0, T) + ein("pi,rk,pjrc->ijkc", R0, R0, T)
          + ein("pi,qj,pqkc->ijkc", R0, R0, T))
    return TwoTermZinf(A.d, l2_00, l2_01, l2_10, l3)


def shift_operator(n: int, coeffs) -> np.ndarray:
    """``x_i -> c_i x_{i+1}`` (and ``x_n -> 0``) as an (n, n) matrix."""
    R = np.empty((n, n), dtype=object)
    R.fill(Fraction(0))
    for i, c in enumerate(coeffs[: n - 1]):
        R[i + 1, i] = Fraction(c)
    return tensor(R)


def search_shift_operators(A: TwoTermAinf, values=(0, 1, -1, 2, -2)) -> list[tuple]:
    """Exhaustive search over shift-type ``R0`` (with ``R1 = 0``) passing the Rota-Baxter checks.

    Returns the passing coefficient tuples in the enumeration order of ``values``.
    """
    if A.n1:
        raise PreconditionError("shift search is for algebras with A1 = 0")
    n = A.n0
    hits = []
    for coeffs in itertools.product(list(values), repeat=max(n - 1, 0)):
        R = RotaBaxter2(shift_operator(n, coeffs), zeros(0, 0))
        if check_rota_baxter(R, A).passed:
            hits.append(tuple(coeffs))
    return hits


def rb_search_fixture() -> tuple[TwoTermAinf, RotaBaxter2]:
    """The symmetrized 3-dimensional truncated shuffle algebra with the first
    nonzero passing shift operator whose induced product is nonzero."""
    from .algebra import symmetrize, truncated_shuffle

    A = TwoTermAinf.from_product(symmetrize(truncated_shuffle(3)).product)
    for coeffs in search_shift_operators(A):
        R = RotaBaxter2(shift_operator(3, coeffs), zeros(0, 0))
        if any(v != 0 for v in rb_structure(A, R).l2_00.reshape(-1)):
            return A, R
    raise PreconditionError("no shift operator with nonzero induced product")


def identity_rb(A: TwoTermAinf) -> RotaBaxter2:
    return RotaBaxter2(identity(A.n0), identity(A.n1))
