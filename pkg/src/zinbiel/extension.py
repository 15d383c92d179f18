"""Crossed-module extensions ``0 -> M -> V -> S -> Z -> 0`` and their 3-cocycle.

``M`` is the kernel of the crossed module map ``d: V -> S`` and ``Z`` its
cokernel, presented as a complement of ``Im d`` inside ``S`` with projection
``pi``.  Given sections ``s: Z -> S`` (``pi s = 1``) and ``q: Im d -> V``
(``d q = 1``), the defect ``g(x, y) = q(s(x)s(y) - s(xy))`` yields a
3-cocycle of ``Z`` with values in ``M``; its class does not depend on the
sections.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Bimodule, check_bimodule, check_zinbiel
from .cohomology import Cochain, CohomologyResult, coboundary_preimage, cohomology_dim
from .crossed import CrossedModule, check_crossed_module
from .linalg import (Matrix, complement_basis, ein, inverse, kernel_basis, rank,
                     row_space_basis, solve, tensor, zeros)
from .report import CheckReport, DimensionError, PreconditionError


class ExtensionError(ValueError):
    """Extension data that contradicts exactness (e.g. a theta value outside M)."""

    def __init__(self, message: str, report: CheckReport | None = None):
        super().__init__(message)
        self.report = report


def _cols(vectors, dim) -> np.ndarray:
    """Stack vectors as the columns of a (dim, len) tensor."""
    if not vectors:
        return zeros(dim, 0)
    return tensor(np.array(vectors, dtype=object).T)


def _coords(basis: Matrix, v, what: str) -> tuple:
    x = solve(basis, v)
    if x is None:
        raise ExtensionError(f"vector does not lie in {what}")
    return x


@dataclass(frozen=True, eq=False)
class CrossedExtension:
    crossed: CrossedModule
    kernel: np.ndarray        # (dim V, dim M), columns span ker d
    image: np.ndarray         # (dim S, rank d), columns span Im d
    complement: np.ndarray    # (dim S, dim Z), columns complete the image to a basis
    projection: np.ndarray    # (dim Z, dim S), pi
    image_coords: np.ndarray  # (rank d, dim S), Im-coordinates w.r.t. [image | complement]
    quotient: Algebra         # Z
    module: Bimodule          # M as a Z-bimodule

    @property
    def d(self) -> np.ndarray:
        return self.crossed.phi

    @property
    def dims(self) -> dict:
        return {"M": self.kernel.shape[1], "V": self.kernel.shape[0], "S": self.image.shape[0],
                "Z": self.complement.shape[1], "image": self.image.shape[1]}

    @property
    def inclusion(self) -> np.ndarray:
        return self.kernel

    def kernel_coords(self, v) -> tuple:
        return _coords(Matrix.from_array(self.kernel), v, "the kernel M")


def extension_from_crossed(X: CrossedModule) -> CrossedExtension:
    report = check_crossed_module(X)
    if not report.passed:
        raise PreconditionError("input is not a crossed module", report)
    ns, nv = X.phi.shape
    D = Matrix.from_array(X.phi)
    kb = kernel_basis(D)
    ib = row_space_basis([tuple(X.phi[:, j]) for j in range(nv)], ns)
    cb = complement_basis(ib, ns)
    K, Im, C = _cols(kb, nv), _cols(ib, ns), _cols(cb, ns)
    r, nz, m = len(ib), len(cb), len(kb)

    basis = Matrix.from_columns(list(ib) + list(cb), ns)
    inv = inverse(basis).to_array() if ns else zeros(0, 0)
    image_coords = tensor(inv[:r]) if r else zeros(0, ns)
    pi = tensor(inv[r:]) if nz else zeros(0, ns)

    # induced product on Z: pi(s(x) s(y)) for the complement section
    zprod = ein("px,qy,pqr,zr->xyz", C, C, X.g.product, pi) if nz else zeros(0, 0, 0)
    quotient = Algebra(zprod)
    Km = Matrix.from_array(K) if m else None
    left = np.empty((nz, m, m), dtype=object)
    right = np.empty((m, nz, m), dtype=object)
    if m and nz:
        lv = ein("px,va,pvo->xao", C, K, X.left)
        rv = ein("px,va,vpo->axo", C, K, X.right)
        for x in range(nz):
            for a in range(m):
                left[x, a] = _coords(Km, tuple(lv[x, a]), "the kernel M")
                right[a, x] = _coords(Km, tuple(rv[a, x]), "the kernel M")
    module = Bimodule(tensor(left) if m and nz else zeros(nz, m, m),
                      tensor(right) if m and nz else zeros(m, nz, m))
    E = CrossedExtension(X, K, Im, C, pi, image_coords, quotient, module)
    exact = check_exactness(E)
    if not exact.passed:
        raise ExtensionError("sequence is not exact", exact)
    induced = CheckReport()
    induced.merge("quotient", check_zinbiel(quotient))
    induced.merge("module", check_bimodule(quotient, module))
    if not induced.passed:
        raise ExtensionError("induced structures fail their checkers", induced)
    return E


def check_exactness(E: CrossedExtension) -> CheckReport:
    """Rank checks: i injective, pi surjective, Im i = ker d, Im d = ker pi."""
    nv, m = E.kernel.shape
    ns, r = E.image.shape
    nz = E.complement.shape[1]
    D = Matrix.from_array(E.d)
    report = CheckReport()
    flag = lambda ok: np.array([[0 if ok else 1]], dtype=object)
    report.add("i-injective", flag(rank(Matrix.from_array(E.kernel)) == m if m else True))
    report.add("pi-surjective", flag(rank(Matrix.from_array(E.projection)) == nz if nz else True))
    report.add("d-kills-M", ein("sv,va->as", E.d, E.kernel))
    report.add("ker-d-dimension", flag(m == nv - rank(D)))
    report.add("pi-kills-image", ein("zs,sv->vz", E.projection, E.d))
    report.add("ker-pi-dimension", flag(rank(D) + nz == ns and r == rank(D)))
    return report


@dataclass(frozen=True, eq=False)
class SectionPair:
    s: np.ndarray  # (dim S, dim Z)
    q: np.ndarray  # (dim V, rank d), on Im d in the image basis
    strategy: str = "pivot"

    def __post_init__(self):
        object.__setattr__(self, "s", tensor(self.s))
        object.__setattr__(self, "q", tensor(self.q))

    def __eq__(self, other):
        return (isinstance(other, SectionPair) and np.array_equal(self.s, other.s)
                and np.array_equal(self.q, other.q))

    __hash__ = None


def choose_sections(E: CrossedExtension, strategy: str = "pivot") -> SectionPair:
    """``pivot``: s includes the complement, q solves d q(b) = b with free coordinates 0.

    ``shifted`` adds the first image vector to every s(z) and the first kernel
    vector to every q(b).
    """
    if strategy not in ("pivot", "shifted"):
        raise ValueError(f"unknown section strategy {strategy!r}")
    nv, m = E.kernel.shape
    ns, r = E.image.shape
    D = Matrix.from_array(E.d)
    qcols = [solve(D, tuple(E.image[:, k])) for k in range(r)]
    s = np.array(E.complement, dtype=object)
    q = np.array(_cols(qcols, nv), dtype=object)
    if strategy == "shifted":
        if r:
            s = s + E.image[:, :1]
        if m and r:
            q = q + E.kernel[:, :1]
    sp = SectionPair(s, q, strategy)
    report = check_sections(E, sp)
    if not report.passed:
        raise ExtensionError("sections fail their identities", report)
    return sp


def check_sections(E: CrossedExtension, sp: SectionPair) -> CheckReport:
    nz = E.complement.shape[1]
    report = CheckReport()
    report.add("pi-s", ein("zs,sx->xz", E.projection, sp.s) - np.eye(nz, dtype=object))
    report.add("d-q", ein("sv,vk->ks", E.d, sp.q) - E.image.T)
    return report


def section_defect(E: CrossedExtension, sp: SectionPair) -> np.ndarray:
    """``s(x)s(y) - s(xy)`` in S, shape (Z, Z, S)."""
    P = E.crossed.g.product
    return (ein("px,qy,pqr->xyr", sp.s, sp.s, P)
            - ein("xyw,rw->xyr", E.quotient.product, sp.s))


def apply_q(E: CrossedExtension, q: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Apply a section of d to a (Z, Z, S) tensor with values in Im d."""
    return ein("xyr,kr,vk->xyv", values, E.image_coords, q)


def theta_values(E: CrossedExtension, sp: SectionPair) -> np.ndarray:
    """The V-valued 3-cochain before conversion to M coordinates, shape (Z, Z, Z, V)."""
    X = E.crossed
    G = apply_q(E, sp.q, section_defect(E, sp))
    Gs = G + G.transpose(1, 0, 2)
    c = E.quotient.product
    Sym = c + c.transpose(1, 0, 2)
    Ls = ein("px,pvo->xvo", sp.s, X.left)
    Rs = ein("px,vpo->vxo", sp.s, X.right)
    return (ein("xvo,yzv->xyzo", Ls, Gs) - ein("xyw,wzo->xyzo", c, G)
            + ein("yzw,xwo->xyzo", Sym, G) - ein("xyv,vzo->xyzo", G, Rs))


def _to_module(E: CrossedExtension, values: np.ndarray, what: str) -> np.ndarray:
    m = E.kernel.shape[1]
    lead = values.shape[:-1]
    report = CheckReport()
    flat = values.reshape(-1, values.shape[-1])
    report.add("in-M", ein("nv,sv->ns", flat, E.d).reshape(lead + (E.d.shape[0],)))
    if not report.passed:
        raise ExtensionError(f"{what} has values outside the kernel M", report)
    out = np.empty(lead + (m,), dtype=object)
    Km = Matrix.from_array(E.kernel) if m else None
    for idx in np.ndindex(*lead):
        out[idx] = _coords(Km, tuple(values[idx]), "the kernel M") if m else ()
    return tensor(out) if m else zeros(*(lead + (0,)))


def theta(E: CrossedExtension, sp: SectionPair) -> Cochain:
    return Cochain(3, _to_module(E, theta_values(E, sp), "theta"))


def xi(E: CrossedExtension) -> tuple[Cochain, CohomologyResult]:
    """Representative from pivot sections, plus H^3 of (Z, M) for context."""
    rep = theta(E, choose_sections(E, "pivot"))
    return rep, cohomology_dim(E.quotient, E.module, 3)


def same_class(t1: Cochain, t2: Cochain, a: Algebra, v: Bimodule) -> bool:
    """True when ``t1 - t2`` lies in the image of the degree-2 coboundary."""
    if t1.degree != t2.degree:
        raise DimensionError("cochains of different degrees")
    for t in (t1, t2):
        if t.algebra_dim != a.dim or t.module_dim != v.dim:
            raise DimensionError("cochain does not live on the given (algebra, bimodule)")
    return coboundary_preimage(a, v, t1 - t2) is not None


def comparison_map(E: CrossedExtension, E2: CrossedExtension, alpha, beta,
                   sp: SectionPair, sp2: SectionPair) -> Cochain:
    """``(alpha q - q' beta)(s(x)s(y) - s(xy))`` in M coordinates.

    For an equivalence (alpha, beta) fixing M and Z, with ``sp2.s = beta sp.s``,
    its coboundary is the difference of the two theta cochains.
    """
    alpha, beta = tensor(alpha), tensor(beta)
    defect = section_defect(E, sp)
    first = ein("xyv,wv->xyw", apply_q(E, sp.q, defect), alpha)
    second = apply_q(E2, sp2.q, ein("xyr,tr->xyt", defect, beta))
    return Cochain(2, _to_module(E, first - second, "comparison map"))


def transported_sections(E: CrossedExtension, E2: CrossedExtension, beta,
                         sp: SectionPair) -> SectionPair:
    """``s' = beta s`` and pivot ``q'`` on the second extension."""
    s2 = ein("ts,sx->tx", tensor(beta), sp.s)
    q2 = choose_sections(E2, "pivot").q
    pair = SectionPair(s2, q2, "transported")
    report = check_sections(E2, pair)
    if not report.passed:
        raise ExtensionError("transported sections fail their identities", report)
    return pair

