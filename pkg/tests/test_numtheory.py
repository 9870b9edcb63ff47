from math import comb, factorial

import pytest
from gmpy2 import mpq

from moduli_euler.numtheory import (
    _descending,
    Partition,
    bernoulli,
    binomial,
    divisors,
    mobius,
    n_min,
    partition_count,
    partitions_of,
    specht_dim,
    z_factor,
)


@pytest.mark.parametrize("r, value", [(0, 1), (2, mpq(1, 6)), (3, 0), (4, mpq(-1, 30)), (12, mpq(-691, 2730))])
def test_bernoulli_values(r, value):
    assert bernoulli(r) == value


def test_bernoulli_recurrence_to_200():
    for r in range(1, 201):
        assert sum(comb(r + 1, j) * bernoulli(j) for j in range(r + 1)) == 0


def test_bernoulli_rejects_negative():
    with pytest.raises(ValueError):
        bernoulli(-1)


@pytest.mark.parametrize("n, mu", [(1, 1), (2, -1), (4, 0), (6, 1), (30, -1), (12, 0)])
def test_mobius_values(n, mu):
    assert mobius(n) == mu


def test_mobius_sums_over_divisors():
    for n in range(1, 10_001):
        assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)


def test_divisors():
    assert divisors(12) == (1, 2, 3, 4, 6, 12)
    assert divisors(1) == (1,)
    with pytest.raises(ValueError):
        divisors(0)


def test_binomial_extension():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(-1, 3) == -1
    assert binomial(4, -1) == 0


def test_partitions_small():
    assert partitions_of(0) == [Partition()]
    assert len(partitions_of(4)) == 5
    assert len(partitions_of(10)) == 42
    assert partitions_of(3) == [Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))]


def test_partition_counts_agree_with_dynamic_program():
    for n in range(61):
        assert sum(1 for _ in _descending(n)) == partition_count(n)
    for n in range(25):
        parts = partitions_of(n)
        assert len(set(parts)) == len(parts) == partition_count(n)
        assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in parts)


def test_partition_normalises_and_validates():
    assert Partition((1, 3, 2)) == (3, 2, 1)
    assert Partition((3, 1)).conjugate() == (2, 1, 1)
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_hook_dimensions():
    for n in range(1, 15):
        for m in range(1, n + 1):
            assert specht_dim((n - m + 1,) + (1,) * (m - 1)) == comb(n - 1, m - 1)
    assert specht_dim((2,) + (1,) * 10) == 11
    assert specht_dim((1,)) == 1


def test_sum_of_squared_dimensions():
    for n in range(1, 15):
        assert sum(specht_dim(lam) ** 2 for lam in partitions_of(n)) == factorial(n)


def test_class_sizes_sum_to_group_order():
    for n in range(1, 12):
        assert sum(mpq(factorial(n), z_factor(mu)) for mu in partitions_of(n)) == factorial(n)


@pytest.mark.parametrize("g, n", [(1, 11), (2, 10), (3, 8), (4, 7), (5, 5), (6, 4), (7, 2), (8, 1), (9, 0), (20, 0)])
def test_n_min(g, n):
    assert n_min(g) == n
