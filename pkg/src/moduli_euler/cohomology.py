"""Dimensions and characters of weight-13 cohomology of M̄_{g,n}.

Every class is pushed forward from a boundary stratum M̄_{1,A∪p} x M̄_{g-1,Aᶜ∪p'}
and indexed by a pair B ⊆ A with |B| = 10.  The cohomology always carries a
tensor factor LS12 (Tate twist of the weight-12 cusp-form motive) whose
dimension is :data:`LS12_DIM`; the characters below omit it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .numtheory import Partition
from .symfunc import SymFunc, schur_to_p

__all__ = [
    "LS12_DIM",
    "ZIndex",
    "is_stable",
    "zindex_count",
    "iter_zindices",
    "dim_h13",
    "char_h13",
    "basis_genus1",
    "genus1_count",
    "genus1_character",
    "excess",
    "NON_TATE_GENUS1_TYPES",
    "min_table_excess",
]

# H^11(M̄_{1,11}) is 2-dimensional (one holomorphic, one antiholomorphic form);
# its Tate twist multiplies every H^13 dimension by 2.
LS12_DIM = 2


@dataclass(frozen=True, order=True)
class ZIndex:
    """A pair B ⊆ A ⊆ {1..n} with |B| = 10, both stored sorted."""

    B: tuple[int, ...]
    A: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.B) != 10:
            raise ValueError("B must have exactly 10 elements")
        if not set(self.B) <= set(self.A):
            raise ValueError("B must be contained in A")
        if any(not 1 <= x <= self.n for x in self.A):
            raise ValueError("elements must lie in 1..n")

    @property
    def complement(self) -> tuple[int, ...]:
        a = set(self.A)
        return tuple(x for x in range(1, self.n + 1) if x not in a)


def is_stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 0 and 2 * g - 2 + n > 0


def iter_zindices(n: int, min_complement: int = 0):
    """All ZIndex pairs for n points with |Aᶜ| >= min_complement."""
    points = range(1, n + 1)
    for size in range(10, n - min_complement + 1):
        for A in combinations(points, size):
            for B in combinations(A, 10):
                yield ZIndex(B, A, n)


def zindex_count(n: int) -> int:
    """Number of pairs B ⊆ A ⊆ {1..n} with |B| = 10."""
    return sum(comb(n, m) * comb(m, 10) for m in range(10, n + 1))


def dim_h13(g: int, n: int, with_status: bool = False):
    """dim H^13(M̄_{g,n}); unstable (g,n) give 0 with status "unstable"."""
    if not is_stable(g, n):
        value, status = 0, "unstable"
    elif g == 0 or n < 10:
        value, status = 0, "ok"
    elif g == 1:
        value, status = LS12_DIM * genus1_count(n), "ok"
    else:
        value, status = LS12_DIM * zindex_count(n), "ok"
    return (value, status) if with_status else value


def _times_h(f, *degrees, cap):
    for d in degrees:
        if d:
            f = f * schur_to_p((d,), cap)
    return f


def char_h13(g: int, n: int, cap: int | None = None) -> SymFunc:
    """sum_{m=10}^n s_{1^10} s_{m-10} s_{n-m}: the S_n character for g >= 2."""
    if g < 2:
        raise ValueError("char_h13 covers g >= 2; use genus1_character for g = 1")
    cap = n if cap is None else cap
    total = SymFunc.zero(cap)
    for m in range(10, n + 1):
        total = total + _times_h(schur_to_p((1,) * 10, cap), m - 10, n - m, cap=cap)
    return total


def basis_genus1(n: int) -> list[ZIndex]:
    """Basis of H^{12,1}(M̄_{1,n}): |Aᶜ| >= 3, or |Aᶜ| = 2 with min(Aᶜ) < min(B)."""
    if n < 12:
        return []
    out = []
    for z in iter_zindices(n, min_complement=2):
        comp = z.complement
        if len(comp) >= 3 or comp[0] < z.B[0]:
            out.append(z)
    return out


def genus1_count(n: int) -> int:
    """|basis_genus1(n)| without building it: every 12-set contributes 11 pairs
    with |Aᶜ| = 2 (its smallest element must sit in Aᶜ)."""
    if n < 12:
        return 0
    return 11 * comb(n, 12) + sum(comb(n, m) * comb(m, 10) for m in range(10, n - 2))


def genus1_character(n: int, cap: int | None = None) -> SymFunc:
    """Character of H^{12,1}(M̄_{1,n}) (again without the LS12 factor)."""
    cap = n if cap is None else cap
    total = SymFunc.zero(cap)
    if n < 12:
        return total
    total = total + _times_h(schur_to_p((2,) + (1,) * 10, cap), n - 12, cap=cap)
    for k in range(10, n - 2):
        total = total + _times_h(schur_to_p((1,) * 10, cap), k - 10, n - k, cap=cap)
    return total


def excess(g: int, n: int, shape) -> int:
    """3g + n + (number of rows of shape)."""
    return 3 * g + n + len(Partition(shape))


# isotypic types of the non-Tate part of H*(M̄_{1,m}), m <= 14
NON_TATE_GENUS1_TYPES = {
    11: [Partition((1,) * 11)],
    12: [Partition((2,) + (1,) * 10)],
    13: [
        Partition((4,) + (1,) * 9),
        Partition((2, 2) + (1,) * 9),
        Partition((2,) + (1,) * 11),
        Partition((3,) + (1,) * 10),
    ],
    14: [
        Partition((5,) + (1,) * 9),
        Partition((4,) + (1,) * 10),
        Partition((3,) + (1,) * 11),
        Partition((4, 2) + (1,) * 8),
        Partition((3, 2) + (1,) * 9),
        Partition((2, 2) + (1,) * 10),
    ],
}


def min_table_excess() -> int:
    return min(excess(1, m, lam) for m, shapes in NON_TATE_GENUS1_TYPES.items() for lam in shapes)
