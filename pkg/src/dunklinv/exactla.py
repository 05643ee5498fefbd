"""Exact dense linear algebra over Q, Q(params) and cyclotomic fields.

Plain Gaussian elimination; the pivot in each column is the first entry that
is nonzero in its canonical form, so no division by a symbolically zero
element can happen.  Pivots used by :func:`solve` are returned as a
certificate: the solution is valid at any parameter value where none of them
vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "Matrix",
    "Solution",
    "NoSolution",
    "NonUnique",
    "solve",
    "kernel_basis",
    "rank",
]


class NoSolution(ArithmeticError):
    """The linear system is inconsistent."""


class NonUnique(ArithmeticError):
    """The linear system has more than one solution."""

    def __init__(self, message, kernel=None):
        super().__init__(message)
        self.kernel = kernel or []


def _inv(x):
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x if isinstance(x, Fraction) else x.inverse()


class Matrix:
    """Row-major rectangular matrix of scalars."""

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls([[Fraction(0)] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = [other.column(j) for j in range(other.ncols)]
            return Matrix([[_dot(r, c) for c in cols] for r in self.rows])
        # column vector
        if len(other) != self.ncols:
            raise ValueError("shape mismatch")
        return [_dot(r, other) for r in self.rows]

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, s) -> "Matrix":
        return Matrix([[a * s for a in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("not square")
        n = self.nrows
        cols = []
        for j in range(n):
            e = [Fraction(int(i == j)) for i in range(n)]
            cols.append(solve(self, e).x)
        return Matrix([[cols[j][i] for j in range(n)] for i in range(n)])

    def __repr__(self):
        return f"Matrix({self.rows!r})"


def _dot(a, b):
    acc = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            acc = x * y + acc
    return acc


def _echelon(rows: list[list], ncols: int):
    """In-place reduced row echelon form of the first ``ncols`` columns.

    Returns the list of (row, col, original pivot value).
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        inv = _inv(p)
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append((r, col, p))
        r += 1
        if r == nrows:
            break
    return pivots


@dataclass
class Solution:
    x: list
    pivots: list  # nonvanishing certificate: the pivot values used

    def __iter__(self):
        return iter(self.x)

    def __len__(self):
        return len(self.x)

    def __getitem__(self, i):
        return self.x[i]


def solve(A, b: Sequence) -> Solution:
    """Unique x with A x = b, else NoSolution / NonUnique."""
    A = A if isinstance(A, Matrix) else Matrix(A)
    if len(b) != A.nrows:
        raise ValueError("right-hand side has wrong length")
    rows = [list(r) + [bi] for r, bi in zip(A.rows, b)]
    pivots = _echelon(rows, A.ncols)
    # consistency: zero rows must have zero rhs
    for i in range(len(pivots), A.nrows):
        if rows[i][-1]:
            raise NoSolution("inconsistent linear system")
    if len(pivots) < A.ncols:
        raise NonUnique("underdetermined linear system", kernel=kernel_basis(A))
    x = [None] * A.ncols
    for r, col, _ in pivots:
        x[col] = rows[r][-1]
    return Solution(x, [p for _, _, p in pivots])


def kernel_basis(A) -> list[list]:
    """Basis of {v : A v = 0}; one vector per free column."""
    A = A if isinstance(A, Matrix) else Matrix(A)
    rows = [list(r) for r in A.rows]
    pivots = _echelon(rows, A.ncols)
    pivot_cols = {col: r for r, col, _ in pivots}
    free = [j for j in range(A.ncols) if j not in pivot_cols]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * A.ncols
        v[fcol] = Fraction(1)
        for col, r in pivot_cols.items():
            val = rows[r][fcol]
            v[col] = -val if val else Fraction(0)
        basis.append(v)
    return basis


def rank(A) -> int:
    A = A if isinstance(A, Matrix) else Matrix(A)
    rows = [list(r) for r in A.rows]
    return len(_echelon(rows, A.ncols))
