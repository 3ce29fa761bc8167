"""Gaussian elimination over GF(2) with rows stored as Python int bitmasks.

Bit c of a row is the entry in column c. Pivots are chosen as the first
(lowest-index) row having a one in the current column, so every result is
deterministic.
"""

from __future__ import annotations

from typing import Iterable


def row_reduce(rows: Iterable[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form. Returns ``(nonzero_rows, pivot_columns)``."""
    work = list(rows)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows: Iterable[int], ncols: int) -> int:
    return len(row_reduce(rows, ncols)[1])


def solve(rows: list[int], ncols: int, rhs: int) -> int | None:
    """Solve ``A s = rhs`` where ``rows`` are the rows of A and bit i of ``rhs`` is entry i.

    Returns the particular solution with every free variable set to zero, as a
    bitmask over columns, or None when the system is inconsistent.
    """
    flag = 1 << ncols
    augmented = [row | (flag if (rhs >> i) & 1 else 0) for i, row in enumerate(rows)]
    reduced, pivots = row_reduce(augmented, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    s = 0
    for row, col in zip(reduced, pivots):
        if row & flag:
            s |= 1 << col
    return s


def annihilator(vectors: Iterable[int], nbits: int) -> list[int]:
    """Basis of {lam : <lam, v> = 0 for all v}, i.e. the null space of the vectors as rows."""
    reduced, pivots = row_reduce(vectors, nbits)
    free = [c for c in range(nbits) if c not in set(pivots)]
    basis = []
    for f in free:
        lam = 1 << f
        for row, col in zip(reduced, pivots):
            if (row >> f) & 1:
                lam |= 1 << col
        basis.append(lam)
    return basis


def columns_to_rows(columns: Iterable[int], height: int) -> list[int]:
    """Transpose: columns given as ``height``-bit ints into row bitmasks over column index."""
    rows = [0] * height
    for j, col in enumerate(columns):
        for r in range(height):
            if (col >> r) & 1:
                rows[r] |= 1 << j
    return rows
