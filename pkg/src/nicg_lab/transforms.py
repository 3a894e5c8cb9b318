"""Row transformations that preserve the non-redundant generator property.

Adding one row of the column matrix into another is harmless when the two
rows share no variable (no column has a 1 in both); subtracting row i1 from
row i2 is harmless when every variable of i1 also appears in i2.  Repeated
subtraction removes every all-ones row, which is what bounds each component
of the generated sum by |X| - 1 in the counting arguments of the bounds
module.

All transforms return fresh matrices and assert that columns stay pairwise
distinct; a collision would silently turn the column *set* into a multiset,
so it is reported as an error instead.
"""

from __future__ import annotations

from .errors import InvalidInputError, NotNormalizableError, TransformError
from .nicg import MatrixView


def _check_rows(m: MatrixView, i1: int, i2: int) -> None:
    if not 0 <= i1 < m.nrows or not 0 <= i2 < m.nrows:
        raise InvalidInputError(f"row index out of range 0..{m.nrows - 1}")
    if i1 == i2:
        raise InvalidInputError("row indices must be distinct")


def _check_distinct_columns(m: MatrixView) -> MatrixView:
    cols = m.columns()
    if len(set(cols)) != len(cols):
        raise TransformError("transform collapsed two columns into one")
    return m


def rows_share_variable(m: MatrixView, i1: int, i2: int) -> bool:
    """True iff some column has a 1 in both rows (0-based indices)."""
    _check_rows(m, i1, i2)
    if not m.is_zero_one():
        raise InvalidInputError("variable sharing is defined on 0/1 matrices")
    return any(a == 1 and b == 1 for a, b in zip(m.rows[i1], m.rows[i2]))


def row_sum_transform(m: MatrixView, i1: int, i2: int) -> MatrixView:
    """Replace row i2 by row i1 + row i2; rows must not share a variable."""
    if rows_share_variable(m, i1, i2):
        raise TransformError(f"rows {i1} and {i2} share a variable")
    new_rows = list(m.rows)
    new_rows[i2] = tuple(a + b for a, b in zip(m.rows[i1], m.rows[i2]))
    return _check_distinct_columns(MatrixView(tuple(new_rows)))


def row_subtract_transform(m: MatrixView, i1: int, i2: int) -> MatrixView:
    """Replace row i2 by row i2 - row i1; i1's support must lie inside i2's."""
    _check_rows(m, i1, i2)
    if not m.is_zero_one():
        raise InvalidInputError("row subtraction is defined on 0/1 matrices")
    if any(a == 1 and b == 0 for a, b in zip(m.rows[i1], m.rows[i2])):
        raise TransformError(f"row {i1} has a variable missing from row {i2}")
    new_rows = list(m.rows)
    new_rows[i2] = tuple(b - a for a, b in zip(m.rows[i1], m.rows[i2]))
    return _check_distinct_columns(MatrixView(tuple(new_rows)))


def normalize_all_ones_rows(m: MatrixView) -> MatrixView:
    """Subtract rows until no row is all ones.

    Deterministic choice: i2 is the first all-ones row, i1 the first other
    row that still has a 1 somewhere (subtracting a zero row makes no
    progress).  When no such i1 remains the matrix cannot be normalized;
    that happens for single-column matrices, whose only nonzero row pattern
    is necessarily all ones.
    """
    if not m.is_zero_one():
        raise InvalidInputError("normalization is defined on 0/1 matrices")
    cur = m
    while True:
        i2 = next(
            (i for i, row in enumerate(cur.rows) if all(e == 1 for e in row)),
            None,
        )
        if i2 is None:
            return cur
        i1 = next(
            (
                i
                for i, row in enumerate(cur.rows)
                if i != i2 and any(e != 0 for e in row)
            ),
            None,
        )
        if i1 is None:
            raise NotNormalizableError(
                "all-ones row left with only zero rows to subtract"
            )
        cur = row_subtract_transform(cur, i1, i2)
