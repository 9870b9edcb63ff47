"""Exact integer and rational primitives: Bernoulli numbers, Moebius function,
divisors, partitions and hook-length dimensions."""

from __future__ import annotations

import threading
from functools import lru_cache
from math import comb, factorial, prod

from gmpy2 import mpq

Rational = mpq

__all__ = [
    "Rational",
    "Partition",
    "bernoulli",
    "mobius",
    "divisors",
    "binomial",
    "partitions_of",
    "iter_partitions",
    "partition_count",
    "specht_dim",
    "z_factor",
    "n_min",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Being a tuple, it hashes and compares like one, so partitions can key
    dictionaries directly.
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def rows(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


_bern_lock = threading.Lock()
_bern: list[mpq] = [mpq(1)]


def bernoulli(r: int) -> mpq:
    """Bernoulli number B_r with B_1 = -1/2 (only r >= 2 matters downstream)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r < len(_bern):
        return _bern[r]
    with _bern_lock:
        # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
        for m in range(len(_bern), r + 1):
            if m >= 3 and m % 2 == 1:
                _bern.append(mpq(0))
                continue
            s = sum(comb(m + 1, j) * _bern[j] for j in range(m))
            _bern.append(-s / (m + 1))
    return _bern[r]


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    f = _factor(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("divisors are defined for n >= 1")
    divs = [1]
    for p, e in _factor(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n (n may be negative: upper-index extension)."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k) if k <= n else 0
    # C(n, k) = (-1)^k C(k - n - 1, k)
    return (-1) ** k * comb(k - n - 1, k)


def _descending(n: int):
    """Partitions of n in reverse lexicographic order, without recursion."""
    if n == 0:
        yield ()
        return
    a = [n]
    while True:
        yield tuple(a)
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        a[-1] -= 1
        k, rem = a[-1], ones + 1
        while rem > k:
            a.append(k)
            rem -= k
        a.append(rem)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, lexicographically descending: (n), (n-1,1), ..., (1^n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(iter_partitions(n))


def iter_partitions(n: int):
    """Lazy version of :func:`partitions_of`."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    make = tuple.__new__
    for p in _descending(n):
        yield make(Partition, p)


def partition_count(n: int) -> int:
    """p(n) by the standard coin-change dynamic program."""
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def specht_dim(shape) -> int:
    """Dimension of the irreducible S_|shape| module V_shape (hook length formula)."""
    lam = Partition(shape)
    if not lam:
        raise ValueError("shape must be nonempty")
    conj = lam.conjugate()
    hooks = prod(
        lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])
    )
    return factorial(lam.size) // hooks


def z_factor(shape) -> int:
    """z_mu = prod_j j^{m_j} m_j!, the centralizer order of cycle type mu."""
    return prod(j**m * factorial(m) for j, m in Partition(shape).multiplicities().items())


def n_min(g: int) -> int:
    """Smallest n for which point counts of M_{g,n} fail to be polynomial."""
    if g < 1:
        raise ValueError("g must be at least 1")
    return max(-((3 * g - 25) // 2), 0)
