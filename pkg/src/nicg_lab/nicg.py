"""Two independent deciders for the non-redundant generator property.

A set X is a non-redundant integer cone generator (NICG) when its component
sum cannot be produced once any single member is removed.  Equivalently,
since the all-ones coefficient vector always solves M lam = sum(X) and any
solution that is >= 1 everywhere must be all-ones, X is NICG iff that system
has no nonnegative integer solution with a zero entry.

``is_nicg_removal`` implements the removal definition directly on top of the
cone-membership search.  ``is_nicg_gauss`` decides the same property by
exact elimination: row-reduce the system, express pivot variables through
the free ones, and enumerate the bounded free assignments.  The two never
share code paths; tests drive them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cone import in_int_cone_masks
from .core import VecSet, sum_masks, sum_set
from .errors import InvalidInputError


@dataclass(frozen=True)
class MatrixView:
    """Column matrix of a vector set: rows[i][j] = component i+1 of vector j.

    Entries are small nonnegative ints; row transforms may take them outside
    {0,1} transiently, but columns stay pairwise distinct.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise InvalidInputError("matrix needs at least one row")
        width = len(self.rows[0])
        for r in self.rows:
            if len(r) != width:
                raise InvalidInputError("ragged matrix")
            for e in r:
                if not isinstance(e, int) or e < 0:
                    raise InvalidInputError(f"entry {e!r} is not a nonnegative int")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero_one(self) -> bool:
        return all(e in (0, 1) for r in self.rows for e in r)


def matrix_of(x: VecSet) -> MatrixView:
    """d x |X| column matrix of the set, columns in ascending mask order."""
    return MatrixView(
        tuple(tuple((m >> i) & 1 for m in x.masks) for i in range(x.dim))
    )


def zero_column_variant(m: MatrixView, k: int) -> MatrixView:
    """Copy of the matrix with column k (0-based) zeroed.

    X is NICG iff for every k the zeroed system has no nonnegative integer
    solution for the original column sum.
    """
    if not 0 <= k < m.ncols:
        raise InvalidInputError(f"column {k} out of range 0..{m.ncols - 1}")
    return MatrixView(
        tuple(
            tuple(0 if j == k else e for j, e in enumerate(row))
            for row in m.rows
        )
    )


def is_nicg_removal_masks(masks: Sequence[int], d: int) -> bool:
    b = sum_masks(masks, d)
    for k in range(len(masks)):
        rest = tuple(masks[:k]) + tuple(masks[k + 1:])
        if in_int_cone_masks(rest, d, b) is not None:
            return False
    return True


def is_nicg_removal(x: VecSet) -> bool:
    """Removal-based decider: drop each member, ask membership for sum(X)."""
    return is_nicg_removal_masks(x.masks, x.dim)


def nonneg_integer_solutions(
    m: MatrixView, b: Sequence[int], cap: int
) -> list[tuple[int, ...]]:
    """All nonnegative integer lam with M lam = b, up to ``cap`` of them.

    Exact rational row reduction expresses pivot variables through the free
    ones; each free parameter then ranges over 0..ncols (complete whenever b
    is at most the column sum, the non-redundancy use case).  A partial
    assignment is abandoned as soon as a determined pivot variable comes out
    negative or non-integral.
    """
    if cap < 1:
        raise InvalidInputError("cap must be a positive integer")
    if len(b) != m.nrows or any(not isinstance(c, int) or c < 0 for c in b):
        raise InvalidInputError("target must be nonnegative ints, one per row")
    n = m.ncols
    rows = [[Fraction(e) for e in row] + [Fraction(bv)] for row, bv in zip(m.rows, b)]

    # Gauss-Jordan with the first nonzero entry as pivot, columns left to right
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [e / piv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [e - f * pe for e, pe in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][n]:
            return []  # 0 = nonzero: inconsistent system

    free_cols = [c for c in range(n) if c not in pivot_cols]
    # tightest row bound per free column; zero columns fall back to ncols
    bounds = {}
    for c in free_cols:
        limit = n
        for row, bv in zip(m.rows, b):
            if row[c] >= 1:
                limit = min(limit, bv)
        bounds[c] = limit

    # pivot row r is determined once every free column it touches is assigned
    needs = [
        [c for c in free_cols if rows[rr][c]] for rr in range(len(pivot_cols))
    ]
    ready_at = [[] for _ in range(len(free_cols) + 1)]
    for rr, need in enumerate(needs):
        last = 0
        for c in need:
            last = max(last, free_cols.index(c) + 1)
        ready_at[last].append(rr)

    solutions: list[tuple[int, ...]] = []
    assign = {}

    def value_of_pivot(rr: int) -> Fraction:
        acc = rows[rr][n]
        for c in free_cols:
            if rows[rr][c] and c in assign:
                acc -= rows[rr][c] * assign[c]
        return acc

    def emit() -> bool:
        lam = [0] * n
        for c in free_cols:
            lam[c] = assign[c]
        for rr, c in enumerate(pivot_cols):
            v = value_of_pivot(rr)
            lam[c] = int(v)
        solutions.append(tuple(lam))
        return len(solutions) >= cap

    def walk(i: int) -> bool:
        for rr in ready_at[i]:
            v = value_of_pivot(rr)
            if v < 0 or v.denominator != 1:
                return False
        if i == len(free_cols):
            return emit()
        c = free_cols[i]
        for v in range(bounds[c] + 1):
            assign[c] = v
            stop = walk(i + 1)
            del assign[c]
            if stop:
                return True
        return False

    walk(0)
    return solutions


def _is_nicg_gauss_masks(masks: Sequence[int], d: int) -> bool:
    """Integer-only twin of the elimination decider, on raw masks.

    Fraction-free (Bareiss) forward elimination keeps every intermediate an
    exact integer; the bounded enumeration then looks for any solution with
    a zero coefficient.  Mirrors the compiled kernel in ``_fastpath``.
    """
    n = len(masks)
    if n <= 1:
        return True
    a = []
    bsum = [0] * d
    for i in range(d):
        row = [(mm >> i) & 1 for mm in masks]
        s = sum(row)
        row.append(s)
        bsum[i] = s
        a.append(row)

    prev = 1
    rank = 0
    rowof = [-1] * n  # pivot row of each column, -1 = free
    for c in range(n):
        pr = next((i for i in range(rank, d) if a[i][c]), None)
        if pr is None:
            continue
        a[rank], a[pr] = a[pr], a[rank]
        p = a[rank][c]
        for i in range(rank + 1, d):
            f = a[i][c]
            ai = a[i]
            ar = a[rank]
            for j in range(c, n + 1):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
        prev = p
        rowof[c] = rank
        rank += 1
        if rank == d:
            break
    if n == rank:
        return True  # unique rational solution, necessarily all-ones

    bound = []
    for m in masks:
        bb = n
        for i in range(d):
            if (m >> i) & 1 and bsum[i] < bb:
                bb = bsum[i]
        bound.append(bb)

    # enumerate columns from the last to the first: free columns branch,
    # pivot columns are solved from their echelon row and checked
    val = [0] * n

    def descend(c: int) -> bool:
        if c < 0:
            return any(v == 0 for v in val)
        rr = rowof[c]
        if rr >= 0:
            row = a[rr]
            s = row[n]
            for j in range(c + 1, n):
                if row[j]:
                    s -= row[j] * val[j]
            p = row[c]
            if p < 0:
                p, s = -p, -s
            if s < 0 or s % p:
                return False
            v = s // p
            if v > bound[c]:
                return False
            val[c] = v
            return descend(c - 1)
        for v in range(bound[c] + 1):
            val[c] = v
            if descend(c - 1):
                return True
        return False

    return not descend(n - 1)


def is_nicg_gauss(x: VecSet) -> bool:
    """Elimination-based decider; agrees with is_nicg_removal everywhere."""
    return _is_nicg_gauss_masks(x.masks, x.dim)


def nicg_witness_solutions(x: VecSet, cap: int = 1 << 20) -> list[tuple[int, ...]]:
    """All nonnegative integer solutions of M lam = sum(X) (diagnostic)."""
    return nonneg_integer_solutions(matrix_of(x), list(sum_set(x)), cap)
