"""Membership in the integer cone of a bit-vector set, with certificates.

``b in int_cone(X)`` iff b is a nonnegative integer combination of the
members of X.  The decision procedure is a depth-first enumeration over
coefficients: take the first vector, try coefficients 0, 1, 2, ... while the
residual stays componentwise nonnegative, recurse on the remaining vectors.
On success the coefficient vector (aligned to the ascending mask order of X)
is returned as a checkable certificate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .core import VecSet
from .errors import InvalidInputError

#: nodes explored before the rational-feasibility prune switches on
_LP_ESCALATION = 5000


def _rational_cone_feasible(cols: list[list[int]], rhs: Sequence[int]) -> bool:
    """Is rhs a nonnegative *rational* combination of the columns?

    Phase-I simplex with exact fractions and Bland's rule.  Infeasibility
    here soundly refutes integer feasibility, so the certificate search can
    prune the branch.
    """
    m = len(rhs)
    n = len(cols)
    if all(v == 0 for v in rhs):
        return True
    if n == 0:
        return False
    width = n + m + 1
    rows = []
    for i in range(m):
        row = [Fraction(cols[j][i]) for j in range(n)]
        row += [Fraction(1 if k == i else 0) for k in range(m)]
        row.append(Fraction(rhs[i]))
        rows.append(row)
    # minimize the artificial sum; start with all-artificial basis
    obj = [sum(rows[i][j] for i in range(m)) for j in range(width)]
    for k in range(m):
        obj[n + k] = Fraction(0)
    basis = list(range(n, n + m))
    while True:
        enter = next((j for j in range(n + m) if obj[j] > 0), None)
        if enter is None:
            return obj[width - 1] == 0
        pivot_row = None
        best = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][width - 1] / rows[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[pivot_row]
                ):
                    best = ratio
                    pivot_row = i
        if pivot_row is None:  # cannot happen: objective is bounded below
            return False
        piv = rows[pivot_row][enter]
        rows[pivot_row] = [e / piv for e in rows[pivot_row]]
        for i in range(m):
            if i != pivot_row and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [e - f * pe for e, pe in zip(rows[i], rows[pivot_row])]
        if obj[enter]:
            f = obj[enter]
            obj = [e - f * pe for e, pe in zip(obj, rows[pivot_row])]
        basis[pivot_row] = enter


def _check_target(d: int, b: Sequence[int]) -> tuple[int, ...]:
    if len(b) != d:
        raise InvalidInputError(f"target has {len(b)} components, expected {d}")
    out = []
    for i, c in enumerate(b):
        if not isinstance(c, int) or c < 0:
            raise InvalidInputError(f"target component {i + 1} is {c!r}, expected int >= 0")
        out.append(c)
    return tuple(out)


def in_int_cone_masks(masks: Sequence[int], d: int, b: Sequence[int]) -> Optional[list[int]]:
    """Certificate search on raw masks; None when b is not generatable.

    Vectors are consumed in ascending mask order with coefficients tried
    0, 1, 2, ...; the first certificate in that order is returned.  Three
    sound cuts keep the enumeration tractable without changing which
    certificate is found first: a branch dies when a residual component
    goes negative or is positive but uncovered by the remaining vectors;
    the last vector is closed in one step instead of a scan; and residuals
    already proven infeasible for a given suffix are memoized.
    """
    n = len(masks)
    suffix_cover = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_cover[i] = suffix_cover[i + 1] | masks[i]

    coeffs = [0] * n
    residual = list(b)
    bits_of = [[i for i in range(d) if (m >> i) & 1] for m in masks]
    dead: set[tuple[int, tuple[int, ...]]] = set()
    nodes = 0

    def search(idx: int) -> bool:
        nonlocal nodes
        nodes += 1
        rm = 0
        for i, c in enumerate(residual):
            if c:
                rm |= 1 << i
        if rm == 0:
            for j in range(idx, n):
                coeffs[j] = 0
            return True
        if idx == n or rm & ~suffix_cover[idx]:
            return False
        if idx == n - 1:
            # single vector left: the coefficient is forced componentwise
            bits = bits_of[idx]
            k = residual[bits[0]]
            if all(residual[i] == k for i in bits):
                coeffs[idx] = k
                return True
            return False
        key = (idx, tuple(residual))
        if key in dead:
            return False
        if nodes > _LP_ESCALATION:
            # hard instance: refute rationally infeasible branches outright
            suffix_cols = [
                [(m >> i) & 1 for i in range(d)] for m in masks[idx:]
            ]
            if not _rational_cone_feasible(suffix_cols, residual):
                if len(dead) < (1 << 21):
                    dead.add(key)
                return False
        bits = bits_of[idx]
        applied = 0
        found = False
        while True:
            coeffs[idx] = applied
            if search(idx + 1):
                found = True
                break
            negative = False
            for i in bits:
                residual[i] -= 1
                if residual[i] < 0:
                    negative = True
            applied += 1
            if negative:
                break
        if found:
            return True
        for i in bits:
            residual[i] += applied
        if len(dead) < (1 << 21):  # soft cap; beyond it we only lose speed
            dead.add(key)
        return False

    if search(0):
        return list(coeffs)
    return None


def in_int_cone(x: VecSet, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Certificate lam with sum(lam_i * x_i) == b, or None if none exists."""
    target = _check_target(x.dim, b)
    got = in_int_cone_masks(x.masks, x.dim, target)
    return tuple(got) if got is not None else None


def verify_certificate(x: VecSet, b: Sequence[int], coeffs: Sequence[int]) -> bool:
    """Substitution check: sum of coeffs[i] * x_i equals b exactly."""
    if len(coeffs) != len(x.masks) or any(c < 0 for c in coeffs):
        return False
    acc = [0] * x.dim
    for lam, m in zip(coeffs, x.masks):
        for i in range(x.dim):
            if (m >> i) & 1:
                acc[i] += lam
    return tuple(acc) == tuple(b)
