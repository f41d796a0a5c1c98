"""
Exact Linear Algebra
Matrices over exact rationals (Fraction) or integer polynomials (sympy Poly) held
in numpy object arrays: fraction-free determinants, rank, inverse and the
Moore-Penrose pseudo-inverse of symmetric matrices.
"""
import csv
import io
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly

from errors import ConsistencyError, DomainError, ShapeError

logger = logging.getLogger("ExactLinalg")


def _is_zero(x) -> bool:
    if isinstance(x, Poly):
        return x.is_zero
    return x == 0


def _exact_divide(a, b):
    if isinstance(a, Poly):
        return a.exquo(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ConsistencyError(f"Bareiss step: {a} is not divisible by {b}")
        return q
    return a / b


_divide = np.frompyfunc(_exact_divide, 2, 1)


def _boxed(x) -> np.ndarray:
    """0-d object array, so numpy broadcasts x instead of unpacking it."""
    box = np.empty((), dtype=object)
    box[()] = x
    return box


def as_fractions(a) -> np.ndarray:
    """Object array of Fractions."""
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for index, value in np.ndenumerate(arr):
        out[index] = Fraction(value)
    return out


def render_scalar(x) -> str:
    """Rationals as 'p/q' (integers bare), polynomials as sympy text."""
    if isinstance(x, Poly):
        return str(x.as_expr())
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def bareiss_det(a) -> Any:
    """
    Determinant by fraction-free (Bareiss) elimination with row pivoting.

    Entries may be ints, Fractions or sympy Polys over ZZ; every division is exact.
    """
    m = np.array(a, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"Determinant of a non-square matrix of shape {m.shape}")
    n = m.shape[0]
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if _is_zero(m[k, k]):
            swap = next((r for r in range(k + 1, n) if not _is_zero(m[r, k])), None)
            if swap is None:
                return m[k, k] * 0
            m[[k, swap]] = m[[swap, k]]
            sign = -sign
        pivot = m[k, k]
        rest = m[k + 1:, k + 1:] * _boxed(pivot) - np.outer(m[k + 1:, k], m[k, k + 1:])
        m[k + 1:, k + 1:] = rest if k == 0 else _divide(rest, _boxed(prev))
        m[k + 1:, k] = 0
        prev = pivot
    det = m[n - 1, n - 1]
    return det if sign > 0 else -det


def row_echelon(a) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over Fractions and the pivot columns."""
    m = as_fractions(a)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        found = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if found is None:
            continue
        m[[r, found]] = m[[found, r]]
        m[r] = m[r] / m[r, c]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    return len(row_echelon(a)[1])


def inverse(a) -> np.ndarray:
    """Exact inverse by Gauss-Jordan elimination."""
    m = as_fractions(a)
    n = m.shape[0]
    if m.ndim != 2 or m.shape[1] != n:
        raise ShapeError(f"Inverse of a non-square matrix of shape {m.shape}")
    augmented = np.concatenate((m, as_fractions(np.eye(n, dtype=int))), axis=1)
    reduced, pivots = row_echelon(augmented)
    if pivots[:n] != list(range(n)):
        raise DomainError("Matrix is singular")
    return reduced[:, n:]


def pseudo_inverse(g) -> np.ndarray:
    """
    Moore-Penrose pseudo-inverse of a symmetric rational matrix.

    With C the pivot columns of G (a basis of its column space) the
    pseudo-inverse is C (C^t G C)^{-1} C^t.
    """
    g = as_fractions(g)
    if g.shape[0] != g.shape[1] or not np.array_equal(g, g.T):
        raise ShapeError("pseudo_inverse() expects a symmetric matrix")
    _, pivots = row_echelon(g)
    if len(pivots) == g.shape[0]:
        return inverse(g)
    if not pivots:
        return as_fractions(np.zeros(g.shape, dtype=int))
    c = g[:, pivots]
    core = inverse(c.T.dot(g).dot(c))
    return c.dot(core).dot(c.T)


class ExactMatrix:
    """
    Exact matrix with row and column index lists (partitions in canonical order).
    """

    def __init__(self, entries, rows: Sequence, columns: Optional[Sequence] = None):
        self.entries = np.array(entries, dtype=object)
        self.rows = list(rows)
        self.columns = list(rows if columns is None else columns)
        if self.entries.shape != (len(self.rows), len(self.columns)):
            raise ShapeError(
                f"Entries of shape {self.entries.shape} do not match index lists ({len(self.rows)}, {len(self.columns)})"
            )
        if len(set(self.rows)) != len(self.rows) or len(set(self.columns)) != len(self.columns):
            raise ShapeError("Index lists must be duplicate-free")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def __getitem__(self, key):
        return self.entries[key]

    def entry(self, row, column):
        return self.entries[self.rows.index(row), self.columns.index(column)]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.columns != other.rows:
            raise ShapeError("Index lists do not chain")
        return ExactMatrix(self.entries.dot(other.entries), self.rows, other.columns)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows and self.columns == other.columns and all(
            a == b for a, b in zip(self.entries.flat, other.entries.flat)
        )

    __hash__ = None

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.entries.T, self.columns, self.rows)

    def trace(self):
        return sum(self.entries.diagonal(), Fraction(0))

    def det(self):
        return bareiss_det(self.entries)

    def rank(self) -> int:
        return rank(self.entries)

    def to_rows(self) -> List[List[str]]:
        return [[render_scalar(x) for x in row] for row in self.entries]

    def to_json(self) -> Dict:
        return {
            "index": [str(p) for p in self.rows],
            "columns": [str(p) for p in self.columns],
            "entries": self.to_rows(),
        }

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([""] + [str(p) for p in self.columns])
        for label, row in zip(self.rows, self.to_rows()):
            writer.writerow([str(label)] + row)
        return buffer.getvalue()

    def __repr__(self) -> str:
        return f"ExactMatrix({self.shape[0]}x{self.shape[1]})"
