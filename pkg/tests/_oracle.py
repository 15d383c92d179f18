"""Brute-force reference for the cochain complex, independent of the package.

Structure constants are plain dicts ``{(i, j): {k: value}}``.  Each column of
a coboundary matrix is obtained by evaluating the coboundary formula on one
basis cochain, tuple by tuple; ranks come from sympy.
"""

from __future__ import annotations

import itertools

import sympy


def _mul(T, dim_out, a, b):
    out = [0] * dim_out
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            for k, v in T.get((i, j), {}).items():
                out[k] += ai * bj * v
    return out


def _add(*vs):
    return [sum(c) for c in zip(*vs)]


def _neg(v):
    return [-x for x in v]


def _eval(w, n, m, args):
    """Multilinear extension of a cochain given on basis tuples."""
    out = [0] * m
    for idx in itertools.product(range(n), repeat=len(args)):
        coef = 1
        for a, i in zip(args, idx):
            coef *= a[i]
        if coef and idx in w:
            out = [o + coef * v for o, v in zip(out, w[idx])]
    return out


def _coboundary(n, c, L, R, m, deg, w):
    E = [[int(i == j) for j in range(n)] for i in range(n)]
    M = lambda x, y: _mul(c, n, x, y)
    act_l = lambda x, v: _mul(L, m, x, v)
    act_r = lambda v, x: _mul(R, m, v, x)
    ev = lambda *args: _eval(w, n, m, args)
    res = {}
    for t in itertools.product(range(n), repeat=deg + 1):
        a = [E[i] for i in t]
        if deg == 1:
            x, y = a
            r = _add(act_l(x, ev(y)), _neg(ev(M(x, y))), act_r(ev(x), y))
        elif deg == 2:
            x, y, z = a
            r = _add(act_l(x, _add(ev(y, z), ev(z, y))), _neg(ev(M(x, y), z)),
                     ev(x, _add(M(y, z), M(z, y))), _neg(act_r(ev(x, y), z)))
        else:
            x, y, z, s = a
            br = _add(ev(y, z, s), _neg(ev(z, s, y)), ev(z, y, s), _neg(ev(s, z, y)))
            r = _add(act_l(x, br), _neg(ev(M(x, y), z, s)), ev(x, _add(M(y, z), M(z, y)), s),
                     _neg(ev(x, y, _add(M(z, s), M(s, z)))), act_r(ev(x, y, z), s))
        res[t] = r
    return res


def coboundary_matrix(n, c, L, R, m, deg) -> sympy.Matrix:
    cols = []
    rows = list(itertools.product(range(n), repeat=deg + 1))
    for idx in itertools.product(range(n), repeat=deg):
        for v in range(m):
            w = {idx: [int(k == v) for k in range(m)]}
            img = _coboundary(n, c, L, R, m, deg, w)
            cols.append([img[t][o] for t in rows for o in range(m)])
    return sympy.Matrix(cols).T


def cohomology(n, c, L, R, m) -> dict:
    """``{degree: (cocycles, coboundaries)}`` for degrees 2 and 3."""
    D1, D2, D3 = (coboundary_matrix(n, c, L, R, m, k) for k in (1, 2, 3))
    r1, r2, r3 = D1.rank(), D2.rank(), D3.rank()
    return {2: (D2.shape[1] - r2, r1), 3: (D3.shape[1] - r3, r2)}


NILPOTENT_PLANE = {(0, 0): {1: 1}}
