"""Bit-vector and vector-set primitives.

A vector from {0,1}^d is stored as a plain int mask: bit i-1 of the mask
(counting from the least significant bit) holds component i.  A candidate
generator set is a ``VecSet``: strictly increasing masks, no zero vector,
all sharing one dimension.  Component permutations are tuples ``perm`` of
length d with ``perm[i]`` the 0-based image of position i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations as _permutations
from typing import Iterable, Sequence

from .errors import InvalidInputError

#: Hard cap so every mask fits comfortably in one machine word.
MAX_DIM = 24


def check_dim(d: int) -> int:
    if not isinstance(d, int) or d < 1 or d > MAX_DIM:
        raise InvalidInputError(f"dimension must be an int in [1, {MAX_DIM}], got {d!r}")
    return d


def make_vec(d: int, components: Sequence[int]) -> int:
    """Encode a 0/1 component sequence (component 1 first) as a mask."""
    check_dim(d)
    if len(components) != d:
        raise InvalidInputError(f"expected {d} components, got {len(components)}")
    mask = 0
    for i, c in enumerate(components):
        if c not in (0, 1):
            raise InvalidInputError(f"component {i + 1} is {c!r}, expected 0 or 1")
        if c:
            mask |= 1 << i
    return mask


def vec_components(d: int, mask: int) -> tuple[int, ...]:
    """Inverse of :func:`make_vec`."""
    check_dim(d)
    if not 0 <= mask < (1 << d):
        raise InvalidInputError(f"mask {mask} out of range for dimension {d}")
    return tuple((mask >> i) & 1 for i in range(d))


@dataclass(frozen=True)
class VecSet:
    """A finite set of distinct nonzero vectors of one dimension.

    ``masks`` is kept sorted ascending; this order is the canonical
    processing order everywhere (membership certificates, matrix columns,
    search candidates).
    """

    dim: int
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        check_dim(self.dim)
        top = 1 << self.dim
        prev = 0
        for m in self.masks:
            if not isinstance(m, int) or m <= 0 or m >= top:
                raise InvalidInputError(f"mask {m!r} invalid for dimension {self.dim}")
            if m <= prev:
                raise InvalidInputError("masks must be strictly increasing (distinct)")
            prev = m

    @classmethod
    def from_masks(cls, d: int, masks: Iterable[int]) -> "VecSet":
        return cls(d, tuple(sorted(masks)))

    @classmethod
    def from_components(cls, d: int, vectors: Iterable[Sequence[int]]) -> "VecSet":
        return cls.from_masks(d, (make_vec(d, v) for v in vectors))

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.masks)

    def __contains__(self, mask: int) -> bool:
        return mask in self.masks

    def without(self, mask: int) -> "VecSet":
        if mask not in self.masks:
            raise InvalidInputError(f"mask {mask} not a member")
        return VecSet(self.dim, tuple(m for m in self.masks if m != mask))

    def with_mask(self, mask: int) -> "VecSet":
        return VecSet.from_masks(self.dim, self.masks + (mask,))


def sum_masks(masks: Iterable[int], d: int) -> tuple[int, ...]:
    counts = [0] * d
    for m in masks:
        i = 0
        while m:
            if m & 1:
                counts[i] += 1
            m >>= 1
            i += 1
    return tuple(counts)


def sum_set(x: VecSet) -> tuple[int, ...]:
    """Component sum of the set: counts[i-1] = #members with component i set."""
    return sum_masks(x.masks, x.dim)


def check_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    d = len(perm)
    check_dim(d)
    if sorted(perm) != list(range(d)):
        raise InvalidInputError(f"{perm!r} is not a permutation of 0..{d - 1}")
    return tuple(perm)


def identity_perm(d: int) -> tuple[int, ...]:
    check_dim(d)
    return tuple(range(d))


def apply_perm(perm: Sequence[int], mask: int) -> int:
    """Permute components: bit i of the input lands on bit perm[i]."""
    d = len(perm)
    if not 0 <= mask < (1 << d):
        raise InvalidInputError(f"mask {mask} does not fit dimension {d}")
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[i]
        mask >>= 1
        i += 1
    return out


def apply_perm_set(perm: Sequence[int], x: VecSet) -> VecSet:
    if len(perm) != x.dim:
        raise InvalidInputError(f"permutation length {len(perm)} != dimension {x.dim}")
    return VecSet.from_masks(x.dim, (apply_perm(perm, m) for m in x.masks))


def compose_perms(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Composition with apply_perm(compose_perms(p, q), x) == apply_perm(p, apply_perm(q, x))."""
    if len(p) != len(q):
        raise InvalidInputError("permutation lengths differ")
    return tuple(p[q[i]] for i in range(len(q)))


def all_perms(d: int):
    """All d! permutations of 0..d-1 (iterator)."""
    check_dim(d)
    return _permutations(range(d))


def enumeration_budget(v: int, kmin: int, kmax: int) -> int:
    """Number of k-subsets of a v-element universe for k in [kmin, kmax].

    Exact big-integer arithmetic; this is the set count a cardinality-bounded
    sweep has to examine.
    """
    if not (isinstance(v, int) and v >= 1):
        raise InvalidInputError(f"universe size must be a positive int, got {v!r}")
    if not (0 <= kmin <= kmax <= v):
        raise InvalidInputError(f"invalid range [{kmin}, {kmax}] for universe of {v}")
    return sum(math.comb(v, k) for k in range(kmin, kmax + 1))


def nonzero_masks(d: int) -> list[int]:
    """The full candidate universe {1, ..., 2^d - 1} in ascending order."""
    check_dim(d)
    return list(range(1, 1 << d))
