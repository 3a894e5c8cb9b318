"""Bundled reference data: known maximum witnesses and a membership fixture.

``KNOWN_MAX_WITNESSES`` holds one verified maximum-cardinality generator set
per dimension 1..6 (vector strings, component 1 first).  The test suite
re-verifies each with both deciders; nothing here is trusted unchecked.

``VENN_REGION_SYSTEM`` is a cone-membership fixture: the cardinality
constraint system of three 20-element sets inside a 100-element universe
with all pairwise unions of size 30.  Columns are the 8 region indicator
vectors (membership pattern of region in universe/unions/sets), the target
is the right-hand side of the constraints.  It has the classic
inclusion-exclusion certificate: 70 outside, 10 in each pairwise-only
region, 0 elsewhere.
"""

from __future__ import annotations

from .core import VecSet
from .files import vecset_from_strings

#: exact maximum cardinalities settled by exhaustive search
KNOWN_EXACT = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 9}

#: verified lower-bound witness sizes from randomized search
KNOWN_LOWER = {7: 11, 8: 13, 9: 14, 10: 16}

KNOWN_MAX_WITNESSES: dict[int, tuple[str, ...]] = {
    1: ("1",),
    2: ("10", "11"),
    3: ("110", "101", "111"),
    4: ("1100", "1110", "1101", "1011", "0111"),
    5: ("11000", "11100", "10110", "10101", "01101", "01011", "11011"),
    6: (
        "110000",
        "111000",
        "110100",
        "101100",
        "011010",
        "010101",
        "100011",
        "110110",
        "111001",
    ),
}


def known_witness(d: int) -> VecSet:
    return vecset_from_strings(d, list(KNOWN_MAX_WITNESSES[d]))


#: rows: universe size, three pairwise unions, three set sizes
VENN_REGION_ROWS: tuple[tuple[int, ...], ...] = (
    (1, 1, 1, 1, 1, 1, 1, 1),
    (0, 0, 1, 1, 1, 1, 1, 1),
    (0, 1, 0, 1, 1, 1, 1, 1),
    (0, 1, 1, 1, 0, 1, 1, 1),
    (0, 0, 0, 0, 1, 1, 1, 1),
    (0, 0, 1, 1, 0, 0, 1, 1),
    (0, 1, 0, 1, 0, 1, 0, 1),
)

VENN_REGION_TARGET: tuple[int, ...] = (100, 30, 30, 30, 20, 20, 20)


def venn_region_columns() -> VecSet:
    """The 8 region columns as 7-dimensional bit vectors."""
    d = len(VENN_REGION_ROWS)
    masks = []
    for j in range(len(VENN_REGION_ROWS[0])):
        m = 0
        for i in range(d):
            if VENN_REGION_ROWS[i][j]:
                m |= 1 << i
        masks.append(m)
    return VecSet.from_masks(d, masks)
