"""The categorified side: 2-vector spaces with a product and a Zinbielator.

A 2-term complex ``V1 --d--> V0`` is the 2-vector space with objects ``V0``
and morphisms ``V0 + V1``; ``f = (x, h)`` goes from ``x`` to ``x + dh``.
Composition adds the ``V1`` parts: ``(x + dh, k) o (x, h) = (x, h + k)``.

:func:`functor_T` turns a 2-term Z-infinity algebra into explicit categorical
data (:class:`Zinbiel2Algebra`: source/target/unit matrices, the product on
morphisms and the Zinbielator tensor); :func:`functor_S` reads a 2-term
structure back off such data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import (Matrix, ZERO, ein, identity, kernel_basis, solve, tensor, unit, zeros)
from .report import CheckReport, DimensionError, PreconditionError, Violation
from .zinf import TwoTermZinf, ZinfMorphism, check_zinf, f_residual


class CompositionError(ValueError):
    pass


def _v(x) -> tuple[Fraction, ...]:
    return tuple(Fraction(a) for a in x)


def _add(*vs):
    return tuple(sum(col, ZERO) for col in zip(*vs))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _lin(M: np.ndarray, x) -> tuple:
    """Matrix (out, in) applied to a vector."""
    return tuple(sum((M[o, i] * x[i] for i in range(len(x)) if x[i]), ZERO)
                 for o in range(M.shape[0]))


def _bil(T: np.ndarray, u, v) -> tuple:
    out = [ZERO] * T.shape[2]
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            c = ui * vj
            for k in range(T.shape[2]):
                t = T[i, j, k]
                if t:
                    out[k] += c * t
    return tuple(out)


def _tri(T: np.ndarray, u, v, w) -> tuple:
    out = [ZERO] * T.shape[3]
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            for k, wk in enumerate(w):
                if not wk:
                    continue
                c = ui * vj * wk
                for o in range(T.shape[3]):
                    t = T[i, j, k, o]
                    if t:
                        out[o] += c * t
    return tuple(out)


@dataclass(frozen=True)
class Mor2:
    x: tuple  # source object in V0
    h: tuple  # V1 part

    def __add__(self, other: "Mor2") -> "Mor2":
        return Mor2(_add(self.x, other.x), _add(self.h, other.h))

    def __sub__(self, other: "Mor2") -> "Mor2":
        return Mor2(_sub(self.x, other.x), _sub(self.h, other.h))

    def flat(self) -> tuple:
        return tuple(self.x) + tuple(self.h)


@dataclass(frozen=True, eq=False)
class TwoVect:
    """The 2-vector space of a 2-term complex ``d: V1 -> V0``."""

    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d", tensor(self.d))

    @property
    def objects_dim(self) -> int:
        return self.d.shape[0]

    @property
    def morphisms_dim(self) -> int:
        return self.d.shape[0] + self.d.shape[1]

    def source(self, f: Mor2) -> tuple:
        return _v(f.x)

    def target(self, f: Mor2) -> tuple:
        return _add(f.x, _lin(self.d, f.h))

    def identity(self, x) -> Mor2:
        return Mor2(_v(x), (ZERO,) * self.d.shape[1])

    def compose(self, g: Mor2, f: Mor2) -> Mor2:
        """``g o f``; requires ``source(g) == target(f)``."""
        if self.source(g) != self.target(f):
            raise CompositionError("source of g differs from target of f")
        return Mor2(_v(f.x), _add(f.h, g.h))

    def basis(self) -> list[Mor2]:
        n0, n1 = self.d.shape
        out = [Mor2(unit(n0, i), (ZERO,) * n1) for i in range(n0)]
        out += [Mor2((ZERO,) * n0, unit(n1, a)) for a in range(n1)]
        return out


def two_vector_space(L: TwoTermZinf) -> TwoVect:
    return TwoVect(L.d)


def source(f: Mor2) -> tuple:
    return _v(f.x)


def target(f: Mor2, L: TwoTermZinf) -> tuple:
    return _add(f.x, _lin(L.d, f.h))


def identity_mor(x, L: TwoTermZinf) -> Mor2:
    return Mor2(_v(x), (ZERO,) * L.n1)


def compose(g: Mor2, f: Mor2, L: TwoTermZinf) -> Mor2:
    return two_vector_space(L).compose(g, f)


def obj_product(L: TwoTermZinf, x, y) -> tuple:
    return _bil(L.l2_00, x, y)


def product(f: Mor2, g: Mor2, L: TwoTermZinf) -> Mor2:
    """``(x,h).(y,k) = (l2(x,y), l2(x,k) + l2(h,y) + l2(dh,k))``."""
    dh = _lin(L.d, f.h)
    return Mor2(_bil(L.l2_00, f.x, g.x),
                _add(_bil(L.l2_01, f.x, g.h), _bil(L.l2_10, f.h, g.x), _bil(L.l2_01, dh, g.h)))


def zinbielator(L: TwoTermZinf, x, y, z) -> Mor2:
    """``J_{x,y,z} = ((xy)z, l3(x,y,z))``."""
    xy = _bil(L.l2_00, x, y)
    return Mor2(_bil(L.l2_00, xy, z), _tri(L.l3, x, y, z))


def zinbielator_target_defect(L: TwoTermZinf, x, y, z) -> tuple:
    """``target(J) - (x(yz) + x(zy))``; zero exactly when condition (d) holds at (x,y,z)."""
    m = L.l2_00
    want = _add(_bil(m, x, _bil(m, y, z)), _bil(m, x, _bil(m, z, y)))
    return _sub(target(zinbielator(L, x, y, z), L), want)


# ---------------------------------------------------------------------------
# coherence checks
# ---------------------------------------------------------------------------

def check_naturality(L: TwoTermZinf) -> CheckReport:
    """Naturality of J on all triples of basis morphisms.

    For f: x -> x', g: y -> y', e: z -> z' compares
    ``J_{x',y',z'} o ((f.g).e)`` with ``(f.(g.e) + f.(e.g)) o J_{x,y,z}``.
    """
    V = two_vector_space(L)
    basis = V.basis()
    natural, composable = [], []
    for (i, f), (j, g), (k, e) in itertools.product(enumerate(basis), repeat=3):
        sf, sg, se = V.source(f), V.source(g), V.source(e)
        tf, tg, te = V.target(f), V.target(g), V.target(e)
        lower = product(product(f, g, L), e, L)
        upper = product(f, product(g, e, L), L) + product(f, product(e, g, L), L)
        try:
            left = V.compose(zinbielator(L, tf, tg, te), lower)
            right = V.compose(upper, zinbielator(L, sf, sg, se))
        except CompositionError:
            gap = _sub(V.source(zinbielator(L, tf, tg, te)), V.target(lower))
            gap2 = _sub(V.source(upper), V.target(zinbielator(L, sf, sg, se)))
            composable.append(Violation((i, j, k), gap + gap2))
            continue
        diff = (left - right).flat()
        if any(diff):
            natural.append(Violation((i, j, k), diff))
    report = CheckReport()
    report.add_list("composable", composable)
    report.add_list("natural", natural)
    return report


def zinbielator_paths(L: TwoTermZinf, x, y, z, t) -> tuple[Mor2, Mor2]:
    """The two composites rewriting ((xy)z)t into the six-term target."""
    V = two_vector_space(L)
    m = lambda a, b: _bil(L.l2_00, a, b)
    J = lambda a, b, c: zinbielator(L, a, b, c)
    ident = V.identity
    yz, zy, zt, tz = m(y, z), m(z, y), m(z, t), m(t, z)

    a1 = product(J(x, y, z), ident(t), L)
    a2 = J(x, yz, t) + J(x, zy, t)
    a3 = (product(ident(x), J(y, z, t), L) + product(ident(x), J(z, y, t), L)
          + ident(m(x, m(t, yz))) + ident(m(x, m(t, zy))))
    left = V.compose(a3, V.compose(a2, a1))

    b1 = J(m(x, y), z, t)
    b2 = J(x, y, zt) + J(x, y, tz)
    b3 = (ident(m(x, m(y, zt))) + ident(m(x, m(y, tz)))
          + product(ident(x), J(z, t, y), L) + product(ident(x), J(t, z, y), L))
    right = V.compose(b3, V.compose(b2, b1))
    return left, right


def six_term_target(L: TwoTermZinf, x, y, z, t) -> tuple:
    m = lambda a, b: _bil(L.l2_00, a, b)
    terms = []
    for p, q, r in ((y, z, t), (y, t, z), (z, y, t), (z, t, y), (t, y, z), (t, z, y)):
        terms.append(m(x, m(p, m(q, r))))
    return _add(*terms)


def check_zinbielator_identity(L: TwoTermZinf) -> CheckReport:
    """Both composites of the coherence pentagon agree, on all basis quadruples.

    ``identity`` records the V1 part of (left path - right path); it matches
    the residual of condition (f) tuple by tuple.
    """
    V = two_vector_space(L)
    n0 = L.n0
    ident_v, tgt_v, comp_v = [], [], []
    for idx in itertools.product(range(n0), repeat=4):
        x, y, z, t = (unit(n0, i) for i in idx)
        try:
            left, right = zinbielator_paths(L, x, y, z, t)
        except CompositionError:
            comp_v.append(Violation(idx, (Fraction(1),)))
            continue
        diff = _sub(left.h, right.h)
        if any(diff) or left.x != right.x:
            ident_v.append(Violation(idx, diff))
        gap = _sub(V.target(left), six_term_target(L, x, y, z, t))
        if any(gap):
            tgt_v.append(Violation(idx, gap))
    report = CheckReport()
    report.add_list("composable", comp_v)
    report.add_list("identity", ident_v)
    report.add_list("target", tgt_v)
    return report


# ---------------------------------------------------------------------------
# explicit categorical data and the two conversions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Zinbiel2Algebra:
    """Categorical data on objects ``C0`` (dim n0) and morphisms ``C1`` (dim N).

    ``source``/``target`` are (n0, N), ``unit`` is (N, n0), ``product`` is
    the bilinear functor ``C1 x C1 -> C1`` as an (N, N, N) tensor and
    ``zinbielator`` is the trilinear ``J: C0^3 -> C1`` as (n0, n0, n0, N).
    """

    source: np.ndarray
    target: np.ndarray
    unit: np.ndarray
    product: np.ndarray
    zinbielator: np.ndarray

    def __post_init__(self):
        for name in ("source", "target", "unit", "product", "zinbielator"):
            object.__setattr__(self, name, tensor(getattr(self, name)))
        n0, N = self.source.shape
        shapes = {"target": (n0, N), "unit": (N, n0), "product": (N, N, N),
                  "zinbielator": (n0, n0, n0, N)}
        for name, shape in shapes.items():
            if getattr(self, name).shape != shape:
                raise DimensionError(f"{name} has shape {getattr(self, name).shape}, expected {shape}")

    @property
    def objects_dim(self) -> int:
        return self.source.shape[0]

    @property
    def morphisms_dim(self) -> int:
        return self.source.shape[1]

    def __eq__(self, other):
        return isinstance(other, Zinbiel2Algebra) and all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ("source", "target", "unit", "product", "zinbielator"))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Zinbiel2Morphism:
    F0: np.ndarray  # (n0', n0)
    F1: np.ndarray  # (N', N)
    F2: np.ndarray  # (n0, n0, N')

    def __post_init__(self):
        for name in ("F0", "F1", "F2"):
            object.__setattr__(self, name, tensor(getattr(self, name)))


def _block(top_left, bottom_right, n0, n1, n0p, n1p):
    out = np.empty((n0p + n1p, n0 + n1), dtype=object)
    out.fill(ZERO)
    out[:n0p, :n0] = top_left
    out[n0p:, n0:] = bottom_right
    return tensor(out)


def functor_T(L: TwoTermZinf) -> Zinbiel2Algebra:
    report = check_zinf(L)
    if not report.passed:
        raise PreconditionError("structure fails the 2-term axioms", report)
    return _to_categorical(L)


def _to_categorical(L: TwoTermZinf) -> Zinbiel2Algebra:
    n0, n1 = L.n0, L.n1
    N = n0 + n1
    src = np.empty((n0, N), dtype=object)
    src.fill(ZERO)
    src[:, :n0] = identity(n0)
    tgt = src.copy()
    tgt[:, n0:] = L.d
    unit_m = src.T.copy()
    prod = np.empty((N, N, N), dtype=object)
    prod.fill(ZERO)
    prod[:n0, :n0, :n0] = L.l2_00
    prod[:n0, n0:, n0:] = L.l2_01
    prod[n0:, :n0, n0:] = L.l2_10
    prod[n0:, n0:, n0:] = ein("ja,jbc->abc", L.d, L.l2_01)
    J = np.empty((n0, n0, n0, N), dtype=object)
    J.fill(ZERO)
    J[..., :n0] = ein("ijw,wko->ijko", L.l2_00, L.l2_00)
    J[..., n0:] = L.l3
    return Zinbiel2Algebra(src, tgt, unit_m, prod, J)


def check_zinbiel2_structure(Z: Zinbiel2Algebra) -> CheckReport:
    """Unit, source/target and functoriality laws of the explicit data."""
    S, Tg, U, P = Z.source, Z.target, Z.unit, Z.product
    report = CheckReport()
    n0 = Z.objects_dim
    report.add("source-unit", ein("pn,nq->pq", S, U) - identity(n0))
    report.add("target-unit", ein("pn,nq->pq", Tg, U) - identity(n0))
    # object product x.y := source(i(x) . i(y))
    obj = ein("ai,bj,abn,pn->ijp", U, U, P, S)
    report.add("unit-product", ein("ai,bj,abn->ijn", U, U, P) - ein("ijp,np->ijn", obj, U))
    report.add("source-product", ein("abn,pn->abp", P, S) - ein("ia,jb,ijp->abp", S, S, obj))
    report.add("target-product", ein("abn,pn->abp", P, Tg) - ein("ia,jb,ijp->abp", Tg, Tg, obj))
    report.add("zinbielator-source",
               ein("ijkn,pn->ijkp", Z.zinbielator, S) - ein("ijw,wkp->ijkp", obj, obj))
    return report


def _kernel_coords(K: Matrix, m) -> tuple:
    x = solve(K, m)
    if x is None:
        raise PreconditionError("morphism part does not lie in the kernel of the source map")
    return x


def functor_S(Z: Zinbiel2Algebra) -> TwoTermZinf:
    """Read (d, l2, l3) off explicit categorical data.

    ``V1 = ker(source)``, ``d = target`` on ``V1``, ``l2(x, y)`` the source of
    ``1_x . 1_y``, ``l2(x, h) = 1_x . h``, ``l2(h, x) = h . 1_x`` and ``l3``
    the ``V1`` projection of ``J``.
    """
    report = check_zinbiel2_structure(Z)
    if not report.passed:
        raise PreconditionError("categorical data fails its structure laws", report)
    S, Tg, U, P = Z.source, Z.target, Z.unit, Z.product
    n0, N = S.shape
    kb = kernel_basis(Matrix.from_array(S))
    n1 = len(kb)
    K = Matrix.from_columns(kb, N)
    Ka = K.to_array()
    coords = lambda m: _kernel_coords(K, m)
    p1 = lambda m: coords(_sub(m, _lin(U, _lin(S, m))))

    d = ein("pn,na->pa", Tg, Ka) if n1 else zeros(n0, 0)
    l2_00 = ein("ai,bj,abn,pn->ijp", U, U, P, S)
    l2_01 = np.empty((n0, n1, n1), dtype=object)
    l2_10 = np.empty((n1, n0, n1), dtype=object)
    l3 = np.empty((n0, n0, n0, n1), dtype=object)
    for i in range(n0):
        ui = U[:, i]
        for a in range(n1):
            l2_01[i, a] = coords(_bil(P, ui, Ka[:, a]))
            l2_10[a, i] = coords(_bil(P, Ka[:, a], ui))
    for i, j, k in itertools.product(range(n0), repeat=3):
        l3[i, j, k] = p1(tuple(Z.zinbielator[i, j, k]))
    L = TwoTermZinf(d, l2_00, l2_01 if n1 else zeros(n0, 0, 0),
                    l2_10 if n1 else zeros(0, n0, 0), l3 if n1 else zeros(n0, n0, n0, 0))
    final = check_zinf(L)
    if not final.passed:
        raise PreconditionError("extracted structure fails the 2-term axioms", final)
    return L


def functor_T_morphism(f: ZinfMorphism, L: TwoTermZinf, Lp: TwoTermZinf) -> Zinbiel2Morphism:
    """``F0 = f0``, ``F1 = f0 + f1`` and ``F2(x,y) = (f0x . f0y, f2(x,y))``."""
    n0, n1, n0p, n1p = L.n0, L.n1, Lp.n0, Lp.n1
    F1 = _block(f.f0, f.f1, n0, n1, n0p, n1p)
    F2 = np.empty((n0, n0, n0p + n1p), dtype=object)
    F2.fill(ZERO)
    F2[..., :n0p] = ein("pi,qj,pqr->ijr", f.f0, f.f0, Lp.l2_00)
    F2[..., n0p:] = f.f2
    return Zinbiel2Morphism(f.f0, F1, F2)


def functor_S_morphism(F: Zinbiel2Morphism, Z: Zinbiel2Algebra, Zp: Zinbiel2Algebra) -> ZinfMorphism:
    """``f0 = F0``, ``f1 = F1`` on ``ker s`` and ``f2 = F2 - i(s(F2))``."""
    kb = kernel_basis(Matrix.from_array(Z.source))
    kbp = kernel_basis(Matrix.from_array(Zp.source))
    Kp = Matrix.from_columns(kbp, Zp.morphisms_dim)
    n0 = Z.objects_dim
    f1 = np.empty((len(kbp), len(kb)), dtype=object)
    for a, vec in enumerate(kb):
        f1[:, a] = _kernel_coords(Kp, _lin(F.F1, vec))
    f2 = np.empty((n0, n0, len(kbp)), dtype=object)
    for i, j in itertools.product(range(n0), repeat=2):
        m = tuple(F.F2[i, j])
        f2[i, j] = _kernel_coords(Kp, _sub(m, _lin(Zp.unit, _lin(Zp.source, m))))
    return ZinfMorphism(F.F0, f1 if kb and kbp else zeros(len(kbp), len(kb)),
                        f2 if kbp else zeros(n0, n0, 0))


def zinbielator_vs_f(L: TwoTermZinf) -> tuple[dict, dict]:
    """Residual maps of the coherence identity and of condition (f), for comparison."""
    eq5 = check_zinbielator_identity(L).residual_map("identity")
    report = CheckReport()
    report.add("f", f_residual(L))
    return eq5, report.residual_map("f")
