import random

import pytest

from nicg_lab.core import VecSet, apply_perm_set
from nicg_lab.errors import UnsupportedDimensionError
from nicg_lab.isomorphism import (
    VisitedStore,
    canonical_form,
    canonical_masks,
    empty_fixed_perms,
    fixed_perms_of,
    isomorphic_vectors,
    layer,
    signature_key,
    update_fixed_perms,
)

from oracles import brute_canonical


def _vs(d, vectors):
    return VecSet.from_components(d, vectors)


def test_layer_selection():
    x = _vs(4, [(1, 0, 0, 0), (1, 1, 1, 0)])
    assert layer(x, 1) == _vs(4, [(1, 0, 0, 0)])
    assert layer(x, 3) == _vs(4, [(1, 1, 1, 0)])
    assert layer(x, 0) == VecSet(4, ())
    y = _vs(3, [(1, 1, 0), (0, 1, 1)])
    assert layer(y, 2) == y


def test_canonical_form_identifies_isomorphic_pairs():
    a = _vs(3, [(1, 1, 0), (0, 1, 0)])
    b = _vs(3, [(0, 1, 1), (0, 1, 0)])
    assert canonical_form(a) == canonical_form(b)
    c = _vs(4, [(1, 0, 0, 0), (1, 1, 1, 0)])
    d = _vs(4, [(1, 0, 0, 0), (1, 1, 0, 1)])
    assert canonical_form(c) == canonical_form(d)


def test_canonical_form_orbit_constant_and_matches_oracle():
    rng = random.Random(3)
    for _ in range(100):
        d = rng.randint(1, 5)
        size = rng.randint(0, min(5, (1 << d) - 1))
        x = VecSet.from_masks(d, rng.sample(range(1, 1 << d), size))
        key = canonical_form(x)
        assert key == brute_canonical(x.masks, d)
        p = list(range(d))
        rng.shuffle(p)
        assert canonical_form(apply_perm_set(p, x)) == key


def test_canonical_form_idempotent_representative():
    rng = random.Random(8)
    for _ in range(50):
        d = rng.randint(1, 5)
        size = rng.randint(1, min(5, (1 << d) - 1))
        x = VecSet.from_masks(d, rng.sample(range(1, 1 << d), size))
        key = canonical_form(x)
        assert canonical_masks(key, d) == key


def test_canonical_guard():
    with pytest.raises(UnsupportedDimensionError):
        canonical_masks((1,), 11)


def test_signature_key_on_layer_equal_pairs():
    c = _vs(4, [(1, 0, 0, 0), (1, 1, 1, 0)])
    d = _vs(4, [(1, 0, 0, 0), (1, 1, 0, 1)])
    # layer pair is ({(1,0,0,0)}, {}) for both
    assert signature_key(c) == signature_key(d)
    assert signature_key(c)[1] == ()


def test_signature_key_invariance_and_empty():
    rng = random.Random(21)
    for _ in range(60):
        d = rng.randint(2, 5)
        size = rng.randint(0, min(6, (1 << d) - 1))
        x = VecSet.from_masks(d, rng.sample(range(1, 1 << d), size))
        p = list(range(d))
        rng.shuffle(p)
        assert signature_key(apply_perm_set(p, x)) == signature_key(x)
    no_low_layers = _vs(3, [(1, 1, 1)])
    assert signature_key(no_low_layers) == ((), ())


def test_signature_coarsens_canonical():
    rng = random.Random(33)
    for _ in range(80):
        d = rng.randint(2, 5)
        size = rng.randint(1, min(5, (1 << d) - 1))
        x = VecSet.from_masks(d, rng.sample(range(1, 1 << d), size))
        p = list(range(d))
        rng.shuffle(p)
        y = apply_perm_set(p, x)
        assert canonical_form(x) == canonical_form(y)
        assert signature_key(x) == signature_key(y)


def test_update_fixed_perms():
    fp = empty_fixed_perms(4)
    fp1 = update_fixed_perms(fp, 0b0101)
    assert fp1 == (True, False, True, False)
    assert update_fixed_perms(fp1, 0b0101) == fp1
    assert update_fixed_perms((True, False), 0b10) == (True, True)


def test_isomorphic_vectors_examples():
    assert not isomorphic_vectors(0b01, 0b10, (True, True))
    assert isomorphic_vectors(0b01, 0b01, (True, True))
    assert isomorphic_vectors(0b001, 0b010, (False, False, False))
    assert not isomorphic_vectors(0b011, 0b001, (False, False, False))


def test_isomorphic_vectors_equivalence_relation():
    rng = random.Random(12)
    for _ in range(200):
        d = rng.randint(2, 6)
        fp = tuple(rng.random() < 0.5 for _ in range(d))
        xs = [rng.randrange(1 << d) for _ in range(3)]
        x, y, z = xs
        assert isomorphic_vectors(x, x, fp)
        assert isomorphic_vectors(x, y, fp) == isomorphic_vectors(y, x, fp)
        if isomorphic_vectors(x, y, fp) and isomorphic_vectors(y, z, fp):
            assert isomorphic_vectors(x, z, fp)


def test_weak_equivalence_extension_soundness():
    rng = random.Random(99)
    checked = 0
    while checked < 150:
        d = rng.randint(2, 4)
        size = rng.randint(0, min(4, (1 << d) - 3))
        masks = rng.sample(range(1, 1 << d), size + 2)
        x = VecSet.from_masks(d, masks[:size])
        cand_x, cand_y = masks[size], masks[size + 1]
        fp = fixed_perms_of(x.masks, d)
        if not isomorphic_vectors(cand_x, cand_y, fp):
            continue
        checked += 1
        assert canonical_form(x.with_mask(cand_x)) == canonical_form(
            x.with_mask(cand_y)
        )


def test_visited_store_flat_and_bucketed():
    store = VisitedStore(capacity=100)
    assert not store.seen_or_add((1, 2))
    assert store.seen_or_add((1, 2))
    assert len(store) == 1

    bucketed = VisitedStore(capacity=100, bucketed=True)
    sig = ((1,), ())
    assert not bucketed.seen_or_add((1, 2), sig)
    assert bucketed.seen_or_add((1, 2), sig)
    assert not bucketed.seen_or_add((1, 3), sig)
    assert len(bucketed) == 2


def test_visited_store_overflow_degrades():
    store = VisitedStore(capacity=2)
    assert not store.seen_or_add((1,))
    assert not store.seen_or_add((2,))
    assert not store.seen_or_add((3,))  # over capacity: not stored
    assert store.degraded
    # degraded stores never claim a key was seen
    assert not store.seen_or_add((1,))
