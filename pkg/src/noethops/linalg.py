"""Exact dense row reduction over any exact field.

Entries only need +, -, *, /, bool and ==; `fractions.Fraction` and
`poly.RationalFunction` both qualify.  Pivoting takes the first nonzero
entry in column order, never by magnitude, so results are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (in place on a shallow copy of `rows`).

    Returns (nonzero rows, pivot column per row).
    """
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    return mat[:rank], pivots


def rank(rows: list[list], ncols: int) -> int:
    reduced, pivots = rref(rows, ncols)
    return len(pivots)


def kernel_basis(rows: list[list], ncols: int, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    """Basis of {v : M v = 0}, one vector per free column, in column order.

    The basis is the canonical one read off the RREF: vector j has `one` at
    its free column and the negated pivot-column entries elsewhere.
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for col in range(ncols):
        if col in pivot_set:
            continue
        v = [zero] * ncols
        v[col] = one
        for r, pc in enumerate(pivots):
            if reduced[r][col]:
                v[pc] = -reduced[r][col]
        basis.append(v)
    return basis


def reduce_vector(reduced: list[list], pivots: list[int], v: Sequence) -> list:
    """Residual of v after elimination by RREF rows; zero iff v is in the row
    space."""
    out = list(v)
    for row, pc in zip(reduced, pivots):
        if out[pc]:
            factor = out[pc]
            out = [x - factor * y for x, y in zip(out, row)]
    return out


def in_row_space(reduced: list[list], pivots: list[int], v: Sequence) -> bool:
    return not any(reduce_vector(reduced, pivots, v))
