"""Equivalence detection under component permutations.

Two vector sets are isomorphic when some permutation of the d component
positions maps one onto the other.  Three tools with different cost/power
trade-offs live here:

* ``canonical_form`` - the lexicographically minimal sorted mask tuple over
  all d! permutations; equal forms iff isomorphic.  Factorial enumeration,
  guarded to d <= 10.
* ``signature_key`` - canonical form of the (popcount-1 layer, popcount-2
  layer) pair, a coarser permutation-invariant key used to bucket a visited
  store; full canonical comparison resolves membership inside a bucket.
* ``isomorphic_vectors`` - the O(d) weak test: two candidate vectors extend
  a partial set to isomorphic states when their popcounts match and they
  agree on every position some chosen vector has already pinned (the
  boolean array of pinned positions is ``FixedPerms`` in the search).
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

from .core import VecSet, check_dim
from .errors import UnsupportedDimensionError

#: canonical_form / signature_key refuse factorial enumeration above this.
CANONICAL_DIM_MAX = 10
#: permutation tables are precomputed and cached up to this dimension.
_TABLE_DIM_MAX = 7

_table_cache: dict[int, list[list[int]]] = {}

CanonicalKey = tuple[int, ...]
SignatureKey = tuple[tuple[int, ...], tuple[int, ...]]


def _perm_tables(d: int) -> list[list[int]]:
    """mask -> permuted mask lookup for every permutation (cached, d <= 7)."""
    tables = _table_cache.get(d)
    if tables is None:
        tables = []
        for perm in permutations(range(d)):
            t = [0] * (1 << d)
            for m in range(1 << d):
                y = 0
                mm = m
                i = 0
                while mm:
                    if mm & 1:
                        y |= 1 << perm[i]
                    mm >>= 1
                    i += 1
                t[m] = y
            tables.append(t)
        _table_cache[d] = tables
    return tables


def _check_guard(d: int) -> None:
    check_dim(d)
    if d > CANONICAL_DIM_MAX:
        raise UnsupportedDimensionError(
            f"canonical enumeration guarded to d <= {CANONICAL_DIM_MAX}, got {d}"
        )


def layer(x: VecSet, k: int) -> VecSet:
    """Members of X with exactly k set components."""
    if k < 0 or k > x.dim:
        return VecSet(x.dim, ())
    return VecSet(x.dim, tuple(m for m in x.masks if m.bit_count() == k))


def canonical_masks(masks: Sequence[int], d: int) -> CanonicalKey:
    """Minimal sorted mask tuple over all d! component permutations."""
    _check_guard(d)
    if not masks:
        return ()
    best: tuple[int, ...] | None = None
    if d <= _TABLE_DIM_MAX:
        for t in _perm_tables(d):
            key = tuple(sorted(t[m] for m in masks))
            if best is None or key < best:
                best = key
    else:
        for perm in permutations(range(d)):
            imgs = []
            for m in masks:
                y = 0
                mm = m
                i = 0
                while mm:
                    if mm & 1:
                        y |= 1 << perm[i]
                    mm >>= 1
                    i += 1
                imgs.append(y)
            key = tuple(sorted(imgs))
            if best is None or key < best:
                best = key
    return best


def canonical_form(x: VecSet) -> CanonicalKey:
    """Orbit representative of the whole set under component permutations."""
    return canonical_masks(x.masks, x.dim)


def signature_key(x: VecSet) -> SignatureKey:
    """Canonical key of the (layer 1, layer 2) pair under one permutation.

    Both layers are permuted jointly, so the key is permutation-invariant;
    distinct sets may share it (it ignores layers above 2), which is why it
    only buckets and never replaces full canonical comparison.
    """
    _check_guard(x.dim)
    d = x.dim
    ones = [m for m in x.masks if m.bit_count() == 1]
    twos = [m for m in x.masks if m.bit_count() == 2]
    if not ones and not twos:
        return ((), ())
    best: SignatureKey | None = None
    if d <= _TABLE_DIM_MAX:
        for t in _perm_tables(d):
            key = (
                tuple(sorted(t[m] for m in ones)),
                tuple(sorted(t[m] for m in twos)),
            )
            if best is None or key < best:
                best = key
    else:
        for perm in permutations(range(d)):
            def shuffle(ms):
                out = []
                for m in ms:
                    y = 0
                    mm = m
                    i = 0
                    while mm:
                        if mm & 1:
                            y |= 1 << perm[i]
                        mm >>= 1
                        i += 1
                    out.append(y)
                return tuple(sorted(out))

            key = (shuffle(ones), shuffle(twos))
            if best is None or key < best:
                best = key
    return best


FixedPerms = tuple[bool, ...]


def empty_fixed_perms(d: int) -> FixedPerms:
    check_dim(d)
    return (False,) * d


def update_fixed_perms(fp: FixedPerms, mask: int) -> FixedPerms:
    """Pin every position where the newly chosen vector has a 1.  O(d)."""
    d = len(fp)
    if not 0 <= mask < (1 << d):
        raise ValueError(f"mask {mask} does not fit dimension {d}")
    return tuple(fp[i] or bool((mask >> i) & 1) for i in range(d))


def fixed_perms_of(masks: Iterable[int], d: int) -> FixedPerms:
    fp = empty_fixed_perms(d)
    for m in masks:
        fp = update_fixed_perms(fp, m)
    return fp


def isomorphic_vectors(x: int, y: int, fp: FixedPerms) -> bool:
    """Weak equivalence of two candidate extensions given pinned positions.

    True iff popcounts match and x, y agree on every pinned position; then a
    permutation fixing all pinned positions maps one onto the other while
    mapping the already-chosen set onto itself.
    """
    if x.bit_count() != y.bit_count():
        return False
    for i, pinned in enumerate(fp):
        if pinned and ((x >> i) & 1) != ((y >> i) & 1):
            return False
    return True


class VisitedStore:
    """Insert-once store of canonical keys with a hard capacity.

    ``bucketed=True`` groups keys under their signature key; membership is
    always decided by the full canonical key, so both layouts prune
    identically.  On overflow the store stops absorbing and reports itself
    degraded; the search engine then falls back to weak pruning only, which
    costs time, never correctness.
    """

    def __init__(self, capacity: int = 1 << 24, bucketed: bool = False):
        self.capacity = capacity
        self.bucketed = bucketed
        self.degraded = False
        self._flat: set[CanonicalKey] = set()
        self._buckets: dict[SignatureKey, set[CanonicalKey]] = {}
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def seen_or_add(self, key: CanonicalKey, sig: SignatureKey | None = None) -> bool:
        """True when the key was already present; inserts it otherwise."""
        if self.degraded:
            return False
        if self.bucketed:
            bucket = self._buckets.setdefault(sig if sig is not None else (), set())
            if key in bucket:
                return True
            if self._size >= self.capacity:
                self.degraded = True
                return False
            bucket.add(key)
        else:
            if key in self._flat:
                return True
            if self._size >= self.capacity:
                self.degraded = True
                return False
            self._flat.add(key)
        self._size += 1
        return False
