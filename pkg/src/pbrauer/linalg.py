"""Exact Gaussian elimination over rational function fields.

Elimination uses cross-multiplied row updates (no division by the pivot
until the final normalization), which keeps intermediate entries small for
the sparse fractions showing up in Jacobians and wedge-coordinate systems.
Pivots are chosen by the lowest graded-lex leading monomial.
"""

from __future__ import annotations


def row_reduce(rows):
    """Reduced row echelon form.  Returns (rows, pivot_columns).

    rows is a list of lists of RatFunc over a common field; the input is not
    mutated.  Pivot rows end up normalized (pivot entry 1).
    """
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        cand = [i for i in range(r, len(rows)) if rows[i][col]]
        if not cand:
            continue
        best = min(cand, key=lambda i: rows[i][col].glex_size())
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][col]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [piv * a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    for k, col in enumerate(pivots):
        piv = rows[k][col]
        rows[k] = [a / piv for a in rows[k]]
    return rows, pivots


def matrix_rank(rows) -> int:
    return len(row_reduce(rows)[1])


def solve(a_rows, rhs):
    """One exact solution x of A x = b, or None when inconsistent.

    Free variables are set to zero.  a_rows: m lists of n RatFunc; rhs: m
    RatFunc over the same field.
    """
    if not a_rows:
        return []
    aug = [list(row) + [b] for row, b in zip(a_rows, rhs)]
    red, pivots = row_reduce(aug)
    n = len(a_rows[0])
    if n in pivots:
        return None  # pivot in the rhs column
    fld = rhs[0].field
    x = [fld.zero()] * n
    for k, col in enumerate(pivots):
        x[col] = red[k][n]
    return x
