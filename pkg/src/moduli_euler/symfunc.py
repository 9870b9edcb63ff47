"""Truncated symmetric functions in the power-sum basis.

A :class:`SymFunc` keeps only monomials p_mu of weighted degree |mu| <= p_cap.
Monomials are packed into integers with a mixed radix (digit j holds the
exponent of p_j, radix p_cap // j + 1), so multiplying monomials is integer
addition and never carries as long as the product stays within p_cap.
Terms are bucketed by weighted degree, which makes truncation free.
"""

from __future__ import annotations

import re
import threading
from functools import lru_cache
from fractions import Fraction
from math import factorial

from gmpy2 import mpq

from .numtheory import Partition, partitions_of, z_factor

__all__ = [
    "SymFunc",
    "SchurExpansion",
    "character",
    "schur_to_p",
    "p_to_schur",
    "sf_add",
    "sf_mul",
    "sign_substitute",
    "frobenius",
]


class _Layout:
    """Integer packing of power-sum monomials for a fixed p_cap."""

    def __init__(self, cap: int):
        self.cap = cap
        self.stride = [0] * (cap + 2)
        self.stride[1] = 1
        for j in range(1, cap + 1):
            self.stride[j + 1] = self.stride[j] * (cap // j + 1)
        self._decoded: dict[int, Partition] = {0: Partition()}
        self._lock = threading.Lock()

    def encode(self, parts) -> int:
        return sum(self.stride[j] for j in parts)

    def decode(self, code: int) -> Partition:
        hit = self._decoded.get(code)
        if hit is not None:
            return hit
        parts = []
        rest = code
        for j in range(self.cap, 0, -1):
            e, rest = divmod(rest, self.stride[j])
            parts.extend([j] * e)
        lam = Partition(parts)
        with self._lock:
            self._decoded[code] = lam
        return lam

    def exponent(self, code: int, j: int) -> int:
        return (code // self.stride[j]) % (self.cap // j + 1)


@lru_cache(maxsize=None)
def _layout(cap: int) -> _Layout:
    return _Layout(cap)


_SCALARS = (int, type(mpq()), Fraction)


def _as_scalar(c):
    return c if isinstance(c, type(mpq())) else mpq(c)


class SymFunc:
    """Element of the power-sum ring truncated at weighted degree p_cap.

    Treat instances as immutable values.
    """

    __slots__ = ("cap", "_b")

    def __init__(self, cap: int, buckets=None):
        self.cap = cap
        self._b = buckets if buckets is not None else [{} for _ in range(cap + 1)]

    # construction
    @classmethod
    def zero(cls, cap: int) -> "SymFunc":
        return cls(cap)

    @classmethod
    def constant(cls, c, cap: int) -> "SymFunc":
        out = cls(cap)
        c = _as_scalar(c)
        if c:
            out._b[0][0] = c
        return out

    @classmethod
    def one(cls, cap: int) -> "SymFunc":
        return cls.constant(1, cap)

    @classmethod
    def p(cls, j: int, cap: int, coeff=1) -> "SymFunc":
        """The power sum p_j (zero if j exceeds the cap)."""
        out = cls(cap)
        if j <= cap:
            out._b[j][_layout(cap).stride[j]] = _as_scalar(coeff)
        return out

    @classmethod
    def from_terms(cls, terms, cap: int) -> "SymFunc":
        """Build from a mapping partition -> coefficient; overweight terms drop."""
        lay = _layout(cap)
        out = cls(cap)
        for parts, c in terms.items():
            w = sum(parts)
            if w > cap or not c:
                continue
            code = lay.encode(parts)
            b = out._b[w]
            b[code] = b.get(code, 0) + _as_scalar(c)
        out._prune()
        return out

    def _prune(self) -> "SymFunc":
        for i, b in enumerate(self._b):
            if any(not v for v in b.values()):
                self._b[i] = {k: v for k, v in b.items() if v}
        return self

    def _like(self) -> "SymFunc":
        return SymFunc(self.cap)

    # inspection
    def terms(self) -> dict[Partition, mpq]:
        """Nonzero coefficients keyed by partition, graded-lexicographic order."""
        lay = _layout(self.cap)
        out = {}
        for b in self._b:
            for lam, c in sorted(((lay.decode(k), v) for k, v in b.items()), reverse=True):
                out[lam] = c
        return out

    def coefficient(self, parts) -> mpq:
        lam = Partition(parts)
        if lam.size > self.cap:
            return mpq(0)
        return self._b[lam.size].get(_layout(self.cap).encode(lam), mpq(0))

    def constant_term(self) -> mpq:
        return self._b[0].get(0, mpq(0))

    def homogeneous(self, n: int) -> "SymFunc":
        out = self._like()
        if 0 <= n <= self.cap:
            out._b[n] = dict(self._b[n])
        return out

    def degrees(self) -> list[int]:
        return [w for w, b in enumerate(self._b) if b]

    def nterms(self) -> int:
        return sum(len(b) for b in self._b)

    def __bool__(self) -> bool:
        return any(self._b)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymFunc):
            return self.cap == other.cap and self._b == other._b
        if isinstance(other, (int, type(mpq()))):
            return self == SymFunc.constant(other, self.cap)
        return NotImplemented

    __hash__ = None

    # arithmetic
    def _check(self, other: "SymFunc") -> None:
        if other.cap != self.cap:
            raise ValueError(f"p_cap mismatch: {self.cap} vs {other.cap}")

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.constant(other, self.cap)
        self._check(other)
        out = []
        for a, b in zip(self._b, other._b):
            if not b:
                out.append(dict(a))
                continue
            if not a:
                out.append(dict(b))
                continue
            s = dict(a)
            for k, v in b.items():
                t = s.get(k)
                if t is None:
                    s[k] = v
                else:
                    t += v
                    if t:
                        s[k] = t
                    else:
                        del s[k]
            out.append(s)
        return SymFunc(self.cap, out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc(self.cap, [{k: -v for k, v in b.items()} for b in self._b])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SymFunc":
        c = _as_scalar(c)
        if not c:
            return self._like()
        return SymFunc(self.cap, [{k: v * c for k, v in b.items()} for b in self._b])

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            if isinstance(other, _SCALARS):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        cap = self.cap
        A, B = self._b, other._b
        out = [{} for _ in range(cap + 1)]
        for wa in range(cap + 1):
            da = A[wa]
            if not da:
                continue
            for wb in range(cap - wa + 1):
                db = B[wb]
                if not db:
                    continue
                o = out[wa + wb]
                get = o.get
                for ka, ca in da.items():
                    for kb, cb in db.items():
                        k = ka + kb
                        o[k] = get(k, 0) + ca * cb
        return SymFunc(cap, out)._prune()

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c):
        return self.scale(1 / _as_scalar(c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = SymFunc.one(self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # substitutions
    def sign_substitute(self) -> "SymFunc":
        """p_j -> -p_j for every j."""
        lay = _layout(self.cap)
        out = self._like()
        for w, b in enumerate(self._b):
            out._b[w] = {k: (-v if len(lay.decode(k)) % 2 else v) for k, v in b.items()}
        return out

    def frobenius(self, k: int) -> "SymFunc":
        """p_j -> p_{jk}; terms pushed past p_cap are dropped."""
        if k < 1:
            raise ValueError("k must be positive")
        lay = _layout(self.cap)
        out = self._like()
        for w, b in enumerate(self._b):
            if w * k > self.cap:
                break
            out._b[w * k] = {
                lay.encode([j * k for j in lay.decode(code)]): v for code, v in b.items()
            }
        return out

    def derivative(self, j: int, times: int = 1) -> "SymFunc":
        """(d/dp_j)^times."""
        lay = _layout(self.cap)
        out = self._like()
        if j > self.cap:
            return out
        drop = j * times
        step = lay.stride[j] * times
        for w in range(drop, self.cap + 1):
            nb = {}
            for code, v in self._b[w].items():
                e = lay.exponent(code, j)
                if e >= times:
                    nb[code - step] = v * (factorial(e) // factorial(e - times))
            out._b[w - drop] = nb
        return out

    def only_p1(self) -> "SymFunc":
        """Specialise p_d = 0 for d >= 2 (the dimension shadow of a character)."""
        out = self._like()
        for w, b in enumerate(self._b):
            if w in b:
                out._b[w] = {w: b[w]}
        return out

    def dimension(self, n: int) -> mpq:
        """n! times the p_1^n coefficient: the dimension of the degree-n piece."""
        if n > self.cap:
            raise ValueError("degree above p_cap")
        return self._b[n].get(n, mpq(0)) * factorial(n)

    def map_coefficients(self, fn) -> "SymFunc":
        return SymFunc(self.cap, [{k: fn(v) for k, v in b.items()} for b in self._b])._prune()

    def with_cap(self, cap: int) -> "SymFunc":
        """Re-encode at another p_cap (dropping overweight terms)."""
        return SymFunc.from_terms(self.terms(), cap)

    def __repr__(self) -> str:
        if not self:
            return "0"
        pieces = []
        for lam, c in self.terms().items():
            mono = "*".join(f"p{j}" for j in lam) or "1"
            pieces.append(f"{c}*{mono}")
        return " + ".join(pieces)


def sf_add(a: SymFunc, b: SymFunc) -> SymFunc:
    return a + b


def sf_mul(a: SymFunc, b: SymFunc) -> SymFunc:
    return a * b


def sign_substitute(f: SymFunc) -> SymFunc:
    return f.sign_substitute()


def frobenius(f: SymFunc, k: int) -> SymFunc:
    return f.frobenius(k)


@lru_cache(maxsize=None)
def character(shape: tuple, cycle_type: tuple) -> int:
    """chi^shape(cycle_type) by the Murnaghan-Nakayama rule on beta-sets."""
    if not cycle_type:
        return 0 if shape else 1
    r, rest = cycle_type[0], cycle_type[1:]
    k = len(shape)
    beta = [shape[i] + k - 1 - i for i in range(k)]
    occupied = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in occupied:
            continue
        height = sum(1 for x in beta if nb < x < b)
        moved = sorted((occupied - {b}) | {nb}, reverse=True)
        m = len(moved)
        lam = tuple(x - (m - 1 - i) for i, x in enumerate(moved))
        lam = tuple(p for p in lam if p > 0)
        total += (-1) ** height * character(lam, rest)
    return total


@lru_cache(maxsize=None)
def _schur_terms(shape: Partition) -> dict:
    n = shape.size
    return {
        mu: mpq(character(tuple(shape), tuple(mu)), z_factor(mu)) for mu in partitions_of(n)
    }


def schur_to_p(shape, cap: int | None = None) -> SymFunc:
    """Power-sum expansion s_shape = sum_mu chi^shape(mu) p_mu / z_mu."""
    lam = Partition(shape)
    cap = lam.size if cap is None else cap
    if lam.size > cap:
        raise ValueError("shape larger than p_cap")
    if not lam:
        return SymFunc.one(cap)
    return SymFunc.from_terms(_schur_terms(lam), cap)


class SchurExpansion(dict):
    """Mapping partition -> rational coefficient in the Schur basis."""

    def to_p(self, cap: int) -> SymFunc:
        out = SymFunc.zero(cap)
        for lam, c in self.items():
            out = out + schur_to_p(lam, cap).scale(c)
        return out

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.values())

    def dimension(self) -> int:
        from .numtheory import specht_dim

        total = mpq(0)
        for lam, c in self.items():
            total += c * (specht_dim(lam) if lam else 1)
        return total

    def render(self) -> str:
        """Canonical text, e.g. ``-2*s[2,1,1] + s[3]``; terms ascend by partition."""
        items = [(lam, c) for lam, c in sorted(self.items()) if c]
        if not items:
            return "0"
        out = ""
        for i, (lam, c) in enumerate(items):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = f"s[{','.join(map(str, lam))}]"
            if mag != 1:
                body = f"{_fmt_rational(mag)}*{body}"
            if i == 0:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    __str__ = render

    @classmethod
    def parse(cls, text: str) -> "SchurExpansion":
        """Inverse of :meth:`render` (whitespace tolerant)."""
        text = text.strip()
        out = cls()
        if text in ("", "0"):
            return out
        pattern = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?s\[([0-9,\s]*)\]")
        pos = 0
        for m in pattern.finditer(text):
            if text[pos:m.start()].strip():
                raise ValueError(f"cannot parse Schur expansion near {text[pos:m.start()]!r}")
            pos = m.end()
            sign, coeff, parts = m.groups()
            c = mpq(coeff) if coeff else mpq(1)
            if sign == "-":
                c = -c
            lam = Partition(int(x) for x in parts.split(",") if x.strip())
            out[lam] = out.get(lam, mpq(0)) + c
        if text[pos:].strip():
            raise ValueError(f"trailing text in Schur expansion: {text[pos:]!r}")
        return cls({k: v for k, v in out.items() if v})


def _fmt_rational(c) -> str:
    c = mpq(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def p_to_schur(f: SymFunc) -> SchurExpansion:
    """Schur coefficients <f, s_lambda> = sum_mu f_mu chi^lambda(mu)."""
    out = SchurExpansion()
    for mu, c in f.terms().items():
        for lam in partitions_of(mu.size):
            chi = character(tuple(lam), tuple(mu))
            if chi:
                out[lam] = out.get(lam, mpq(0)) + c * chi
    return SchurExpansion({k: v for k, v in out.items() if v})
