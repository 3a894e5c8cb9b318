import math
import random

import pytest

from nicg_lab.core import (
    VecSet,
    all_perms,
    apply_perm,
    apply_perm_set,
    compose_perms,
    enumeration_budget,
    identity_perm,
    make_vec,
    sum_set,
    vec_components,
)
from nicg_lab.errors import InvalidInputError
from nicg_lab.reference import known_witness


def test_make_vec_encoding():
    m = make_vec(3, [1, 1, 0])
    assert vec_components(3, m) == (1, 1, 0)
    assert m == 0b011


def test_make_vec_zero_allowed_standalone():
    assert make_vec(3, [0, 0, 0]) == 0


def test_make_vec_length_mismatch():
    with pytest.raises(InvalidInputError):
        make_vec(2, [1, 0, 1])


def test_make_vec_bad_component():
    with pytest.raises(InvalidInputError):
        make_vec(2, [1, 2])


def test_vecset_rejects_zero_and_duplicates():
    with pytest.raises(InvalidInputError):
        VecSet.from_masks(3, [0, 1])
    with pytest.raises(InvalidInputError):
        VecSet(3, (2, 2))
    with pytest.raises(InvalidInputError):
        VecSet.from_masks(3, [1, 1])
    with pytest.raises(InvalidInputError):
        VecSet.from_masks(2, [5])


def test_vecset_sorted_and_dim_cap():
    x = VecSet.from_masks(3, [5, 1, 2])
    assert x.masks == (1, 2, 5)
    with pytest.raises(InvalidInputError):
        VecSet.from_masks(25, [1])


def test_sum_set_examples():
    assert sum_set(VecSet(3, ())) == (0, 0, 0)
    x = VecSet.from_components(3, [(1, 1, 0), (0, 1, 0)])
    assert sum_set(x) == (1, 2, 0)
    assert sum_set(known_witness(4)) == (4, 4, 3, 3)


def test_apply_perm_identity():
    rng = random.Random(11)
    for _ in range(50):
        d = rng.randint(1, 8)
        m = rng.randrange(1 << d)
        assert apply_perm(identity_perm(d), m) == m


def test_apply_perm_component_relabeling():
    # swap components 1 and 3: (1,1,0) -> (0,1,1), (0,1,0) unchanged
    perm = (2, 1, 0)
    x = VecSet.from_components(3, [(1, 1, 0), (0, 1, 0)])
    y = apply_perm_set(perm, x)
    assert y == VecSet.from_components(3, [(0, 1, 1), (0, 1, 0)])


def test_apply_perm_group_action():
    rng = random.Random(23)
    for _ in range(200):
        d = rng.randint(2, 7)
        p = list(range(d))
        q = list(range(d))
        rng.shuffle(p)
        rng.shuffle(q)
        m = rng.randrange(1 << d)
        assert apply_perm(compose_perms(p, q), m) == apply_perm(p, apply_perm(q, m))
        assert apply_perm(p, m).bit_count() == m.bit_count()


def test_sum_set_permutation_covariance():
    rng = random.Random(5)
    for _ in range(50):
        d = rng.randint(1, 6)
        size = rng.randint(0, min(5, (1 << d) - 1))
        x = VecSet.from_masks(d, rng.sample(range(1, 1 << d), size))
        p = list(range(d))
        rng.shuffle(p)
        permuted = sum_set(apply_perm_set(p, x))
        original = sum_set(x)
        assert all(permuted[p[i]] == original[i] for i in range(d))


def test_all_perms_count():
    assert len(list(all_perms(4))) == 24


def _comb_factorial(v, k):
    return math.factorial(v) // (math.factorial(k) * math.factorial(v - k))


def test_enumeration_budget_paper_values():
    # independent factorial-ratio arithmetic for the frozen values
    assert sum(_comb_factorial(31, k) for k in (6, 7, 8)) == 11_254_581
    assert enumeration_budget(31, 6, 8) == 11_254_581
    assert sum(_comb_factorial(28, k) for k in range(4, 9)) == 4_787_640
    assert enumeration_budget(28, 4, 8) == 4_787_640


def test_enumeration_budget_binary_interval():
    # exact arithmetic: C(31,7) + C(31,8); differs from the figure the
    # source table prints for this count, which does not check out
    assert enumeration_budget(31, 7, 8) == 2_629_575 + 7_888_725 == 10_518_300


def test_enumeration_budget_full_range_is_power_of_two():
    for v in (1, 5, 17, 30):
        assert enumeration_budget(v, 0, v) == 2**v


def test_enumeration_budget_invalid_ranges():
    with pytest.raises(InvalidInputError):
        enumeration_budget(10, -1, 5)
    with pytest.raises(InvalidInputError):
        enumeration_budget(10, 6, 5)
    with pytest.raises(InvalidInputError):
        enumeration_budget(10, 0, 11)
