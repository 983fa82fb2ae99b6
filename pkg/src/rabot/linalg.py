"""Exact rational Gaussian elimination. No floating point anywhere."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def solve_linear(
    rows: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]
) -> list[Fraction] | None:
    """One exact solution of rows * x = rhs, or None if inconsistent.

    Handles rectangular and rank-deficient systems; free variables are set
    to zero, so callers wanting uniqueness must validate the solution
    against extra data themselves.
    """
    if len(rows) != len(rhs):
        raise ValueError("matrix and right-hand side disagree on row count")
    m = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    if not m:
        return []
    n_cols = len(m[0]) - 1
    if any(len(row) != n_cols + 1 for row in m):
        raise ValueError("ragged matrix")

    pivot_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][n_cols] != 0:
            return None

    x = [Fraction(0)] * n_cols
    for row, c in enumerate(pivot_cols):
        x[c] = m[row][n_cols]
    return x
