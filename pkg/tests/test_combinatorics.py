import math
import random

import pytest

from haarsym.combinatorics import (
    canonical_pair_partition,
    compose,
    cycle_count,
    cycle_type,
    cycle_types,
    cycles,
    double_factorial,
    enumerate_pair_partitions,
    enumerate_permutations,
    fixed_pair_partitions,
    identity_permutation,
    inverse,
    is_constant_on_blocks,
    is_permutation,
    loops,
    permutation_from_cycle_type,
    permute_partition,
)
from haarsym.errors import SizeCapError


def test_compose_inverse_roundtrip():
    rng = random.Random(3)
    for k in (1, 2, 5, 8):
        for _ in range(20):
            p = list(range(k))
            rng.shuffle(p)
            p = tuple(p)
            assert is_permutation(p)
            assert compose(p, inverse(p)) == identity_permutation(k)
            assert compose(inverse(p), p) == identity_permutation(k)


def test_compose_order():
    # compose(p, q) applies q first: (p.q)(i) = p[q[i]]
    p = (1, 2, 0)
    q = (0, 2, 1)
    assert compose(p, q) == tuple(p[q[i]] for i in range(3))


def test_cycle_structure():
    assert cycle_count(identity_permutation(5)) == 5
    assert cycle_count((1, 2, 3, 4, 0)) == 1
    assert cycle_type((1, 0, 2, 4, 3)) == (2, 2, 1)
    parts = cycles((1, 0, 2, 4, 3))
    assert sorted(x for c in parts for x in c) == list(range(5))


def test_cycle_type_roundtrip():
    for k in range(1, 7):
        for ct in cycle_types(k):
            assert sum(ct) == k
            assert cycle_type(permutation_from_cycle_type(ct)) == ct


def test_cycle_type_counts():
    # number of partitions of k
    expected = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11}
    for k, count in expected.items():
        assert len(cycle_types(k)) == count


def test_enumerate_permutations_count_and_cap():
    for k in (1, 2, 3, 5):
        assert len(list(enumerate_permutations(k))) == math.factorial(k)
    with pytest.raises(SizeCapError):
        list(enumerate_permutations(50))


def test_double_factorial():
    assert [double_factorial(m) for m in (-1, 1, 3, 5, 7)] == [1, 1, 3, 15, 105]


def test_pair_partition_enumeration():
    for l in (1, 2, 3, 4):
        parts = enumerate_pair_partitions(l)
        assert len(parts) == double_factorial(2 * l - 1)
        assert len(set(parts)) == len(parts)
        for m in parts:
            flat = sorted(x for block in m for x in block)
            assert flat == list(range(2 * l))
            assert all(a < b for a, b in m)
            assert list(m) == sorted(m)


def test_canonical_pair_partition():
    assert canonical_pair_partition([(3, 2), (1, 0)]) == ((0, 1), (2, 3))


def test_loops_small_cases():
    m_id = ((0, 1), (2, 3))
    m_cross = ((0, 2), (1, 3))
    m_nest = ((0, 3), (1, 2))
    assert loops(m_id, m_id) == 2
    assert loops(m_id, m_cross) == 1
    assert loops(m_id, m_nest) == 1
    assert loops(m_cross, m_nest) == 1


def test_is_constant_on_blocks():
    m = ((0, 1), (2, 3))
    assert is_constant_on_blocks((4, 4, 7, 7), m)
    assert not is_constant_on_blocks((4, 5, 7, 7), m)


def test_fixed_pair_partitions_brute():
    for k in (2, 4, 6):
        parts = enumerate_pair_partitions(k // 2)
        for s in enumerate_permutations(k):
            brute = sum(1 for m in parts if permute_partition(s, m) == m)
            assert fixed_pair_partitions(s) == brute
