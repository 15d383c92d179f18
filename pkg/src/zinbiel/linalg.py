"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Multilinear maps (products, actions,
cochains, homotopies) are stored as read-only numpy object arrays of
Fractions; see :func:`tensor`.  :class:`Matrix` is a sparse-row exact matrix
used for elimination, since coboundary matrices get large (thousands of rows)
while staying very sparse.

Pivoting is deterministic: columns are scanned left to right and every pivot
row is fully reduced, so the reduced row echelon form, kernel bases and
particular solutions are reproducible.
"""

from __future__ import annotations

import re
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL = re.compile(r"^\s*([+-]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


class MalformedRational(ValueError):
    pass


def parse_scalar(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    A leading unicode minus sign is accepted.  Zero denominators and
    anything that is not an integer ratio raise :class:`MalformedRational`.
    """
    if isinstance(text, bool):
        raise MalformedRational(f"malformed rational {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedRational(f"malformed rational {text!r}")
    m = _RATIONAL.match(text.replace("−", "-"))
    if m is None:
        raise MalformedRational(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise MalformedRational(f"malformed rational {text!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign == "-" else value


def format_scalar(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# tensors
# ---------------------------------------------------------------------------

def tensor(data, shape: Sequence[int] | None = None) -> np.ndarray:
    """Return a read-only object array of Fractions.

    ``data`` may be a nested sequence, an ndarray, or ``None`` together with
    ``shape`` for a zero tensor.
    """
    if data is None:
        if shape is None:
            raise ValueError("shape required for a zero tensor")
        arr = np.empty(tuple(shape), dtype=object)
        arr.fill(ZERO)
    else:
        src = np.asarray(data, dtype=object)
        if shape is not None:
            src = src.reshape(tuple(shape))
        arr = np.empty(src.shape, dtype=object)
        flat_src = src.reshape(-1)
        flat = arr.reshape(-1)
        for k in range(flat_src.size):
            flat[k] = Fraction(flat_src[k])
    arr.flags.writeable = False
    return arr


def zeros(*shape: int) -> np.ndarray:
    return tensor(None, shape)


def identity(n: int) -> np.ndarray:
    arr = np.empty((n, n), dtype=object)
    arr.fill(ZERO)
    for i in range(n):
        arr[i, i] = ONE
    arr.flags.writeable = False
    return arr


def frac_array(arr) -> np.ndarray:
    """Normalize an einsum result (ints and Fractions mixed) to a read-only tensor."""
    arr = np.asarray(arr, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    src = arr.reshape(-1)
    dst = out.reshape(-1)
    for k in range(src.size):
        dst[k] = Fraction(src[k])
    out.flags.writeable = False
    return out


def ein(spec: str, *operands) -> np.ndarray:
    """Exact einsum over object arrays.

    Contractions over empty axes return Fraction zeros of the right shape.
    """
    out_shape = _einsum_shape(spec, operands)
    if 0 in out_shape or any(op.size == 0 for op in operands):
        return zeros(*out_shape)
    # Contract over Python ints after clearing denominators; Fraction
    # arithmetic inside the contraction loop is ~50x slower.
    scaled = []
    denom = 1
    for op in operands:
        ints, d = _clear_denominators(op)
        scaled.append(ints)
        denom *= d
    raw = np.einsum(spec, *scaled)
    out = np.empty(out_shape, dtype=object)
    src = np.asarray(raw, dtype=object).reshape(-1)
    dst = out.reshape(-1)
    for k in range(src.size):
        dst[k] = Fraction(int(src[k]), denom)
    out.flags.writeable = False
    return out


def _clear_denominators(arr) -> tuple[np.ndarray, int]:
    flat = np.asarray(arr, dtype=object).reshape(-1)
    d = 1
    for v in flat:
        den = v.denominator if isinstance(v, Fraction) else 1
        if den != 1:
            d = d * den // gcd(d, den)
    ints = np.empty(flat.size, dtype=object)
    for k, v in enumerate(flat):
        if isinstance(v, Fraction):
            ints[k] = v.numerator * (d // v.denominator)
        else:
            ints[k] = int(v) * d
    return ints.reshape(np.shape(arr)), d


def _einsum_shape(spec, operands):
    lhs, rhs = spec.split("->")
    sizes = {}
    for sub, op in zip(lhs.split(","), operands):
        for letter, n in zip(sub, op.shape):
            sizes[letter] = n
    return tuple(sizes[c] for c in rhs)


def nonzero_entries(arr: np.ndarray) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """Yield ``(index, value)`` for nonzero entries in lexicographic order."""
    for idx in np.ndindex(*arr.shape):
        v = arr[idx]
        if v != 0:
            yield idx, Fraction(v)


def is_zero(arr: np.ndarray) -> bool:
    return all(v == 0 for v in np.asarray(arr, dtype=object).reshape(-1))


def vec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def unit(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(ONE if k == i else ZERO for k in range(n))


# ---------------------------------------------------------------------------
# sparse exact matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Exact rational matrix with sparse rows.

    ``row_data[i]`` is a tuple of ``(column, value)`` pairs with nonzero values,
    sorted by column.
    """

    rows: int
    cols: int
    row_data: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
            data.append(tuple((j, Fraction(v)) for j, v in enumerate(r) if v != 0))
        return cls(len(rows), cols, tuple(data))

    @classmethod
    def from_array(cls, arr) -> "Matrix":
        arr = np.asarray(arr, dtype=object)
        if arr.ndim != 2:
            raise ValueError("matrix must be 2-dimensional")
        return cls.from_rows(arr.tolist(), cols=arr.shape[1])

    @classmethod
    def from_dict(cls, rows: int, cols: int, entries: dict) -> "Matrix":
        """Build from ``{(i, j): value}``; zero values are dropped."""
        buckets: list[dict] = [dict() for _ in range(rows)]
        for (i, j), v in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry {(i, j)} outside {rows}x{cols}")
            if v != 0:
                buckets[i][j] = Fraction(v)
        return cls(rows, cols, tuple(tuple(sorted(b.items())) for b in buckets))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        entries = {}
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                if v != 0:
                    entries[i, j] = v
        return cls.from_dict(rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(((i, ONE),) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(() for _ in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[Fraction, ...]:
        """Dense row-major entries."""
        out = [ZERO] * (self.rows * self.cols)
        for i, row in enumerate(self.row_data):
            for j, v in row:
                out[i * self.cols + j] = v
        return tuple(out)

    def __getitem__(self, key) -> Fraction:
        i, j = key
        for c, v in self.row_data[i]:
            if c == j:
                return v
        return ZERO

    def to_rows(self) -> list[list[Fraction]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for i, row in enumerate(self.row_data):
            for j, v in row:
                out[i][j] = v
        return out

    def to_array(self) -> np.ndarray:
        return tensor(self.to_rows() if self.rows else None, (self.rows, self.cols))

    def nnz(self) -> int:
        return sum(len(r) for r in self.row_data)

    def is_zero(self) -> bool:
        return all(not r for r in self.row_data)

    def transpose(self) -> "Matrix":
        entries = {}
        for i, row in enumerate(self.row_data):
            for j, v in row:
                entries[j, i] = v
        return Matrix.from_dict(self.cols, self.rows, entries)

    T = property(transpose)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(sum((val * v[j] for j, val in row), ZERO) for row in self.row_data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for row in self.row_data:
            acc: dict[int, Fraction] = {}
            for k, a in row:
                for j, b in other.row_data[k]:
                    acc[j] = acc.get(j, ZERO) + a * b
            out.append(tuple(sorted((j, v) for j, v in acc.items() if v != 0)))
        return Matrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for r1, r2 in zip(self.row_data, other.row_data):
            acc = dict(r1)
            for j, v in r2:
                acc[j] = acc.get(j, ZERO) + sign * v
            out.append(tuple(sorted((j, v) for j, v in acc.items() if v != 0)))
        return Matrix(self.rows, self.cols, tuple(out))

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        if c == 0:
            return Matrix.zero(self.rows, self.cols)
        return Matrix(self.rows, self.cols,
                      tuple(tuple((j, c * v) for j, v in row) for row in self.row_data))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        data = tuple(r1 + tuple((j + self.cols, v) for j, v in r2)
                     for r1, r2 in zip(self.row_data, other.row_data))
        return Matrix(self.rows, self.cols + other.cols, data)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _reduce(rows: list[dict], ncols: int, stop_col: int | None = None):
    """Gauss-Jordan elimination in place on sparse row dicts.

    Only columns below ``stop_col`` are eligible as pivots.  Returns the pivot
    columns and the reordered list of rows (pivot rows first, in pivot order).
    """
    limit = ncols if stop_col is None else stop_col
    # column -> set of row ids with a nonzero in that column
    col_index: dict[int, set] = {}
    for r, row in enumerate(rows):
        for j in row:
            col_index.setdefault(j, set()).add(r)
    used: set[int] = set()
    pivots: list[int] = []
    pivot_rows: list[int] = []
    for col in range(limit):
        candidates = [r for r in col_index.get(col, ()) if r not in used]
        if not candidates:
            continue
        # The reduced form is unique, so the choice here only affects fill-in.
        p = min(candidates, key=lambda r: (len(rows[r]), r))
        prow = rows[p]
        inv = ONE / prow[col]
        if inv != 1:
            for j in prow:
                prow[j] *= inv
        for r in list(col_index.get(col, ())):
            if r == p:
                continue
            row = rows[r]
            factor = row[col]
            for j, v in prow.items():
                new = row.get(j, ZERO) - factor * v
                if new == 0:
                    if j in row:
                        del row[j]
                        col_index[j].discard(r)
                else:
                    if j not in row:
                        col_index.setdefault(j, set()).add(r)
                    row[j] = new
        used.add(p)
        pivots.append(col)
        pivot_rows.append(p)
    rest = [r for r in range(len(rows)) if r not in used]
    return pivots, [rows[r] for r in pivot_rows] + [rows[r] for r in rest]


def _row_dicts(m: Matrix) -> list[dict]:
    return [dict(row) for row in m.row_data]


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``m``."""
    pivots, rows = _reduce(_row_dicts(m), m.cols)
    data = tuple(tuple(sorted(r.items())) for r in rows)
    return Matrix(m.rows, m.cols, data), len(pivots), pivots


def rank(m: Matrix) -> int:
    pivots, _ = _reduce(_row_dicts(m), m.cols)
    return len(pivots)


def kernel_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Canonical null-space basis: one vector per free column, 1 there, 0 at other free columns."""
    pivots, rows = _reduce(_row_dicts(m), m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for p, row in zip(pivots, rows):
            coeff = row.get(free)
            if coeff:
                v[p] = -coeff
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """Particular solution of ``m x = b`` with zeros in free columns, or None."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {m.rows} rows")
    rows = _row_dicts(m)
    for r, bv in zip(rows, b):
        if bv != 0:
            r[m.cols] = Fraction(bv)
    pivots, reduced = _reduce(rows, m.cols + 1, stop_col=m.cols)
    for row in reduced[len(pivots):]:
        if row.get(m.cols, 0) != 0:
            return None
    x = [ZERO] * m.cols
    for p, row in zip(pivots, reduced):
        x[p] = row.get(m.cols, ZERO)
    return tuple(x)


def complement_basis(span: Sequence[Sequence], dim: int) -> list[tuple[Fraction, ...]]:
    """Standard basis vectors ``e_j`` for the non-pivot indices of the span's rref."""
    for v in span:
        if len(v) != dim:
            raise ValueError(f"span vector of length {len(v)} in dimension {dim}")
    if span:
        pivots, _ = _reduce(_row_dicts(Matrix.from_rows(span, cols=dim)), dim)
    else:
        pivots = []
    pivot_set = set(pivots)
    return [unit(dim, j) for j in range(dim) if j not in pivot_set]


def row_space_basis(vectors: Sequence[Sequence], dim: int) -> list[tuple[Fraction, ...]]:
    """Nonzero rows of the rref of the stacked vectors."""
    if not vectors:
        return []
    pivots, rows = _reduce(_row_dicts(Matrix.from_rows(vectors, cols=dim)), dim)
    return [tuple(r.get(j, ZERO) for j in range(dim)) for r in rows[:len(pivots)]]


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = m.hstack(Matrix.identity(n))
    pivots, rows = _reduce(_row_dicts(aug), 2 * n, stop_col=n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return Matrix(n, n, tuple(tuple(sorted((j - n, v) for j, v in r.items() if j >= n))
                              for r in rows[:n]))
