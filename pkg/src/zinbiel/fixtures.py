"""Concrete structures used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .algebra import (Algebra, Bimodule, check_bimodule, nilpotent_plane, regular_bimodule,
                      truncated_shuffle, zero_bimodule)
from .cohomology import Cochain, random_cocycle
from .crossed import CrossedModule, check_crossed_module, identity_crossed, strict_from_crossed, zero_crossed
from .linalg import ein, identity, kernel_basis, Matrix, tensor, zeros
from .report import PreconditionError
from .zinf import TwoTermZinf


def idempotent_line() -> Algebra:
    """One-dimensional algebra with e.e = e; not Zinbiel."""
    return Algebra(tensor([[[1]]]))


def left_regular_bimodule(a: Algebra) -> Bimodule:
    """Left multiplication with the zero right action (a bimodule when it checks)."""
    v = Bimodule(a.product, zeros(a.dim, a.dim, a.dim))
    report = check_bimodule(a, v)
    if not report.passed:
        raise PreconditionError("left multiplication with zero right action is not a bimodule", report)
    return v


def quotient_algebra(s: Algebra, ideal: list[int]) -> Algebra:
    """Quotient by a coordinate ideal, in the remaining coordinates."""
    comp = [j for j in range(s.dim) if j not in ideal]
    P = s.product
    for x in range(s.dim):
        for i in ideal:
            for c in comp:
                if P[x, i, c] or P[i, x, c]:
                    raise PreconditionError(f"coordinates {ideal} do not span an ideal")
    return Algebra(tensor(P[np.ix_(comp, comp, comp)]))


def semidirect(z: Algebra, w: Bimodule) -> Algebra:
    """``Z + W`` with ``(z, w)(z', w') = (zz', z |> w' + w <| z')``."""
    n, m = z.dim, w.dim
    P = np.empty((n + m,) * 3, dtype=object)
    P.fill(Fraction(0))
    P[:n, :n, :n] = z.product
    P[:n, n:, n:] = w.left
    P[n:, :n, n:] = w.right
    return Algebra(P)


def ideal_crossed(s: Algebra, ideal: list[int]) -> CrossedModule:
    """Inclusion of a coordinate ideal with multiplication as the actions."""
    quotient_algebra(s, ideal)
    idx = list(ideal)
    n, k = s.dim, len(idx)
    phi = np.empty((n, k), dtype=object)
    phi.fill(Fraction(0))
    for a, i in enumerate(idx):
        phi[i, a] = Fraction(1)
    P = s.product
    h = Algebra(tensor(P[np.ix_(idx, idx, idx)]))
    left = tensor(P[np.ix_(range(n), idx, idx)])
    right = tensor(P[np.ix_(idx, range(n), idx)])
    return CrossedModule(s, h, phi, left, right)


def kernel_extension(s: Algebra, ideal: list[int], w: Bimodule) -> CrossedModule:
    """``V = I + W -> S`` with kernel ``W``, a bimodule over ``S/I`` pulled back along pi.

    The product on V is ``(i, w)(i', w') = (ii', 0)`` and S acts on the ideal
    part by multiplication and on W through the quotient.
    """
    z = quotient_algebra(s, ideal)
    if w.algebra_dim != z.dim:
        raise PreconditionError("bimodule is not over the quotient algebra")
    comp = [j for j in range(s.dim) if j not in ideal]
    n, k, m = s.dim, len(ideal), w.dim
    base = ideal_crossed(s, ideal)
    nv = k + m
    phi = np.empty((n, nv), dtype=object)
    phi.fill(Fraction(0))
    phi[:, :k] = base.phi
    Q = np.empty((nv, nv, nv), dtype=object)
    Q.fill(Fraction(0))
    Q[:k, :k, :k] = base.h.product
    L = np.empty((n, nv, nv), dtype=object)
    L.fill(Fraction(0))
    L[:, :k, :k] = base.left
    R = np.empty((nv, n, nv), dtype=object)
    R.fill(Fraction(0))
    R[:k, :, :k] = base.right
    for zi, x in enumerate(comp):
        L[x, k:, k:] = w.left[zi]
        R[k:, x, k:] = w.right[:, zi]
    X = CrossedModule(s, Algebra(Q), phi, L, R)
    report = check_crossed_module(X)
    if not report.passed:
        raise PreconditionError("kernel extension fails the crossed-module checks", report)
    return X


def image_e2_crossed() -> CrossedModule:
    """A line ``u`` mapped onto ``e2`` of the nilpotent plane."""
    return ideal_crossed(nilpotent_plane(), [1])


def image_e2_with_kernel() -> CrossedModule:
    """As :func:`image_e2_crossed` with one extra kernel vector."""
    s = nilpotent_plane()
    return kernel_extension(s, [1], zero_bimodule(quotient_algebra(s, [1]), 1))


def split_crossed() -> CrossedModule:
    """``Z + W -> Z`` split by the inclusion of Z, with kernel the regular module."""
    z = nilpotent_plane()
    w = regular_bimodule(z)
    s = semidirect(z, w)
    return kernel_extension(s, [2, 3], regular_bimodule(z))


def shuffle_kernel_crossed(n: int = 4, cut: int = 2) -> CrossedModule:
    """``truncated_shuffle(n)`` modulo the span of ``x_{cut+1}..x_n``, kernel the regular module."""
    s = truncated_shuffle(n)
    ideal = list(range(cut, n))
    return kernel_extension(s, ideal, regular_bimodule(quotient_algebra(s, ideal)))


def twisted_shuffle_crossed() -> CrossedModule:
    """:func:`shuffle_kernel_crossed` with ``x1 |> x3`` and ``x2 |> x3`` shifted into the kernel.

    The twist makes the extension class nonzero: ``x1 |> x3`` gains ``w1`` and
    ``x2 |> x3`` gains ``w2``, and the product on V is ``d(v) |> v'``.
    """
    base = shuffle_kernel_crossed(4, 2)
    L = np.array(base.left)
    L[0, 0, 2] += 1
    L[1, 0, 3] += 1
    Q = ein("sa,sbc->abc", base.phi, L)
    X = CrossedModule(base.g, Algebra(Q), base.phi, L, base.right)
    report = check_crossed_module(X)
    if not report.passed:
        raise PreconditionError("twisted extension fails the crossed-module checks", report)
    return X


def extension_fixtures() -> dict[str, CrossedModule]:
    return {
        "identity-plane": identity_crossed(nilpotent_plane()),
        "zero-map-plane": zero_crossed(nilpotent_plane(), 2),
        "ideal-shuffle4": ideal_crossed(truncated_shuffle(4), [2, 3]),
        "image-e2": image_e2_crossed(),
        "image-e2-kernel": image_e2_with_kernel(),
        "kernel-shuffle4": shuffle_kernel_crossed(4, 2),
        "kernel-shuffle5": shuffle_kernel_crossed(5, 3),
        "split-plane": split_crossed(),
        "twisted-shuffle4": twisted_shuffle_crossed(),
    }


def crossed_fixtures() -> dict[str, CrossedModule]:
    out = dict(extension_fixtures())
    out["identity-shuffle3"] = identity_crossed(truncated_shuffle(3))
    out["zero-map-shuffle3"] = zero_crossed(truncated_shuffle(3), 1)
    return out


def _rand_frac(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def _inverse_rank_one(u, v) -> np.ndarray:
    """``(1 + u v^T)^-1 = 1 - u v^T`` when ``v^T u = 0``."""
    n = len(u)
    return tensor(np.array(identity(n)) - np.outer(np.array(u, dtype=object), np.array(v, dtype=object)))


def equivalent_crossed(X: CrossedModule, seed: int) -> tuple[CrossedModule, np.ndarray, np.ndarray]:
    """Transport X along ``alpha = 1 + m0 (mu d)`` and ``beta = 1 + b0 (rho pi)``.

    ``m0`` is a kernel vector and ``b0`` an image vector, so alpha fixes M,
    beta induces the identity on Z and the map d is unchanged.
    """
    from .extension import extension_from_crossed

    rng = random.Random(seed)
    E = extension_from_crossed(X)
    ns, nv = X.phi.shape
    kb = kernel_basis(Matrix.from_array(X.phi))
    mu = [_rand_frac(rng) for _ in range(ns)]
    rho = [_rand_frac(rng) for _ in range(E.complement.shape[1])]
    u_a = kb[0] if kb else (Fraction(0),) * nv
    v_a = tuple(ein("s,sv->v", tensor(mu), X.phi)) if nv else ()
    u_b = tuple(E.image[:, 0]) if E.image.shape[1] else (Fraction(0),) * ns
    v_b = tuple(ein("z,zs->s", tensor(rho), E.projection)) if rho else (Fraction(0),) * ns
    alpha = tensor(np.array(identity(nv)) + np.outer(np.array(u_a, dtype=object), np.array(v_a, dtype=object)))
    beta = tensor(np.array(identity(ns)) + np.outer(np.array(u_b, dtype=object), np.array(v_b, dtype=object)))
    ai = _inverse_rank_one(u_a, v_a)
    bi = _inverse_rank_one(u_b, v_b)
    P = ein("ip,jq,ijk,rk->pqr", bi, bi, X.g.product, beta)
    Q = ein("ip,jq,ijk,rk->pqr", ai, ai, X.h.product, alpha)
    L = ein("ip,jq,ijk,rk->pqr", bi, ai, X.left, alpha)
    R = ein("ip,jq,ijk,rk->pqr", ai, bi, X.right, alpha)
    phi = ein("si,iv,vw->sw", beta, X.phi, ai)
    X2 = CrossedModule(Algebra(P), Algebra(Q), phi, L, R)
    return X2, alpha, beta


def pulled_back_cocycle(X: CrossedModule, ideal: list[int], theta: Cochain) -> np.ndarray:
    """``l3`` on S with values in the kernel part of V, from a cocycle on (S/I, W)."""
    n = X.g.dim
    nv = X.h.dim
    comp = [j for j in range(n) if j not in ideal]
    k = len(ideal)
    l3 = np.empty((n, n, n, nv), dtype=object)
    l3.fill(Fraction(0))
    for a, x in enumerate(comp):
        for b, y in enumerate(comp):
            for c, z in enumerate(comp):
                l3[x, y, z, k:] = theta.values[a, b, c]
    return tensor(l3)


def general_zinf(seed: int = 0) -> TwoTermZinf:
    """A 2-term structure with d != 0 and l3 != 0.

    The strict structure of :func:`shuffle_kernel_crossed` with a random
    3-cocycle of the quotient pulled back as l3.
    """
    s = truncated_shuffle(4)
    ideal = [2, 3]
    z = quotient_algebra(s, ideal)
    w = regular_bimodule(z)
    X = kernel_extension(s, ideal, w)
    theta = random_cocycle(z, w, 3, seed)
    return strict_from_crossed(X).replace(l3=pulled_back_cocycle(X, ideal, theta))


def cocycle_contexts() -> dict[str, tuple[Algebra, Bimodule]]:
    plane = nilpotent_plane()
    s3 = truncated_shuffle(3)
    return {
        "plane-regular": (plane, regular_bimodule(plane)),
        "plane-left": (plane, left_regular_bimodule(plane)),
        "plane-zero2": (plane, zero_bimodule(plane, 2)),
        "shuffle3-regular": (s3, regular_bimodule(s3)),
        "shuffle3-zero1": (s3, zero_bimodule(s3, 1)),
        "shuffle4-regular": (truncated_shuffle(4), regular_bimodule(truncated_shuffle(4))),
    }
