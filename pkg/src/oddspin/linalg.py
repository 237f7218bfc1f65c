"""Exact dense linear algebra over the rationals.

Only small matrices appear in this package (a handful of rows and columns),
so plain Gaussian elimination on ``Fraction`` entries is both exact and
fast enough.  ``solve_linear`` never guesses: it returns a report that is
either a unique solution, an explicit list of undetermined columns, or an
inconsistency witness.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError
from .scalars import ONE, ZERO, as_scalar


@dataclass(frozen=True)
class RatMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "RatMatrix":
        if not rows:
            raise DimensionError("matrix needs at least one row")
        width = len(rows[0])
        if width == 0:
            raise DimensionError("matrix needs at least one column")
        converted = []
        for row in rows:
            if len(row) != width:
                raise DimensionError("ragged rows in matrix literal")
            converted.append(tuple(as_scalar(v) for v in row))
        return RatMatrix(tuple(converted))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions do not match")
        rows = []
        for i in range(self.rows):
            rows.append(
                tuple(
                    sum(
                        (self.entries[i][t] * other.entries[t][j] for t in range(self.cols)),
                        start=ZERO,
                    )
                    for j in range(other.cols)
                )
            )
        return RatMatrix(tuple(rows))

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        if self.cols != len(vector):
            raise DimensionError("vector length does not match column count")
        vec = [as_scalar(v) for v in vector]
        return tuple(
            sum((row[j] * vec[j] for j in range(self.cols)), start=ZERO)
            for row in self.entries
        )

    def det(self) -> Fraction:
        return det(self)


def det(m: RatMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination with exact pivots."""
    if m.rows != m.cols:
        raise DimensionError("determinant of a non-square matrix")
    a = [list(row) for row in m.entries]
    n = m.rows
    sign = ONE
    result = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        pv = a[col][col]
        result *= pv
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] / pv
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return sign * result


@dataclass(frozen=True)
class LinearSolveReport:
    """Outcome of an exact linear solve.

    status is one of "unique", "underdetermined" or "inconsistent".  For a
    unique solve the solution vector is populated; an underdetermined solve
    lists the free columns and every column whose value depends on them;
    an inconsistent solve records the reduced row that has no solution.
    """

    status: str
    solution: tuple[Fraction, ...] | None
    rank: int
    pivot_columns: tuple[int, ...]
    free_columns: tuple[int, ...]
    undetermined_columns: tuple[int, ...]
    witness_row: int | None


def solve_linear(m: RatMatrix, rhs: Sequence) -> LinearSolveReport:
    """Solve m x = rhs exactly (Gauss-Jordan), reporting degeneracy."""
    if m.rows != len(rhs):
        raise DimensionError("right-hand side length does not match row count")
    a = [list(row) + [as_scalar(rhs[i])] for i, row in enumerate(m.entries)]
    n_rows, n_cols = m.rows, m.cols

    pivot_cols: list[int] = []
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        pv = a[row][col]
        a[row] = [v / pv for v in a[row]]
        for r in range(n_rows):
            if r != row and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [a[r][c] - factor * a[row][c] for c in range(n_cols + 1)]
        pivot_cols.append(col)
        row += 1
        if row == n_rows:
            break

    rank = len(pivot_cols)
    for r in range(rank, n_rows):
        if a[r][n_cols] != 0:
            return LinearSolveReport(
                status="inconsistent",
                solution=None,
                rank=rank,
                pivot_columns=tuple(pivot_cols),
                free_columns=tuple(c for c in range(n_cols) if c not in pivot_cols),
                undetermined_columns=(),
                witness_row=r,
            )

    free_cols = tuple(c for c in range(n_cols) if c not in pivot_cols)
    if not free_cols:
        solution = [ZERO] * n_cols
        for r, col in enumerate(pivot_cols):
            solution[col] = a[r][n_cols]
        return LinearSolveReport(
            status="unique",
            solution=tuple(solution),
            rank=rank,
            pivot_columns=tuple(pivot_cols),
            free_columns=(),
            undetermined_columns=(),
            witness_row=None,
        )

    undetermined = set(free_cols)
    for r, col in enumerate(pivot_cols):
        if any(a[r][f] != 0 for f in free_cols):
            undetermined.add(col)
    return LinearSolveReport(
        status="underdetermined",
        solution=None,
        rank=rank,
        pivot_columns=tuple(pivot_cols),
        free_columns=free_cols,
        undetermined_columns=tuple(sorted(undetermined)),
        witness_row=None,
    )
