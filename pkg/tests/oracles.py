"""Independent brute-force oracles the tests check the library against.

Everything here enumerates directly from definitions (no elimination, no
pruning) so it shares no code path with the implementations under test.
"""

from __future__ import annotations

import itertools
from itertools import permutations


def mask_bits(mask: int, d: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(d))


def combo_sum(masks, coeffs, d) -> tuple[int, ...]:
    acc = [0] * d
    for lam, m in zip(coeffs, masks):
        for i in range(d):
            if (m >> i) & 1:
                acc[i] += lam
    return tuple(acc)


def brute_in_cone(masks, d, b, coeff_cap=None) -> bool:
    """Direct enumeration of all coefficient vectors up to the cap."""
    cap = coeff_cap if coeff_cap is not None else (max(b) if b else 0)
    for coeffs in itertools.product(range(cap + 1), repeat=len(masks)):
        if combo_sum(masks, coeffs, d) == tuple(b):
            return True
    return not any(b)


def brute_nicg(masks, d) -> bool:
    """NICG straight from the definition with the removal quantifier."""
    total = combo_sum(masks, [1] * len(masks), d)
    for k in range(len(masks)):
        rest = masks[:k] + masks[k + 1:]
        if brute_in_cone(list(rest), d, total, coeff_cap=len(masks)):
            return False
    return True


def brute_solutions(rows, b, bound) -> list[tuple[int, ...]]:
    """All lam with M lam = b and every lam_j <= bound, by enumeration."""
    ncols = len(rows[0]) if rows else 0
    out = []
    for coeffs in itertools.product(range(bound + 1), repeat=ncols):
        if all(
            sum(r[j] * coeffs[j] for j in range(ncols)) == bv
            for r, bv in zip(rows, b)
        ):
            out.append(coeffs)
    return out


def brute_canonical(masks, d) -> tuple[int, ...]:
    """Minimal sorted mask tuple over all permutations, computed directly."""
    best = None
    for perm in permutations(range(d)):
        imgs = []
        for m in masks:
            y = 0
            for i in range(d):
                if (m >> i) & 1:
                    y |= 1 << perm[i]
            imgs.append(y)
        key = tuple(sorted(imgs))
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def nonzero_subsets(d, max_size=None):
    """Every subset of the nonzero masks at dimension d (as tuples)."""
    universe = list(range(1, 1 << d))
    top = len(universe) if max_size is None else max_size
    for size in range(0, top + 1):
        yield from itertools.combinations(universe, size)
