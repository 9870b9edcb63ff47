"""Truncated power series in u over a coefficient ring, and polynomials in w
truncated at w_cap.

Coefficient rings are duck-typed: exact rationals (``gmpy2.mpq``),
:class:`~moduli_euler.symfunc.SymFunc`, or :class:`WPoly` over either.
Dropping w-degrees above w_cap is sound because w only occurs with
nonnegative exponents and T_{<=Gamma} with Gamma <= w_cap never reads them.
"""

from __future__ import annotations

from gmpy2 import mpq

from .symfunc import SymFunc

__all__ = [
    "W_CAP",
    "WPoly",
    "USeries",
    "us_add",
    "us_mul",
    "us_scale",
    "us_exp",
    "us_log",
    "us_invert",
    "truncate_w",
]

W_CAP = 10
_MPQ = type(mpq())


def _zero_like(x):
    if isinstance(x, (SymFunc, WPoly)):
        return x._like()
    return mpq(0)


def _scalar_value(x):
    """The rational value of a constant ring element, else None."""
    if isinstance(x, (_MPQ, int)):
        return mpq(x)
    if isinstance(x, SymFunc):
        if any(x._b[1:]):
            return None
        return x.constant_term()
    if isinstance(x, WPoly):
        if any(x.c[1:]):
            return None
        return _scalar_value(x.c[0])
    return None


def _addmul(acc, a, b):
    """acc + a*b, updating ``acc`` in place when it is a fresh mutable accumulator."""
    if isinstance(acc, SymFunc) and isinstance(a, SymFunc) and isinstance(b, SymFunc):
        _sf_addmul(acc, a, b)
        return acc
    if isinstance(acc, WPoly) and isinstance(a, WPoly) and isinstance(b, WPoly):
        cap = acc.cap
        for i, ai in enumerate(a.c):
            if not ai:
                continue
            for j in range(cap - i + 1):
                bj = b.c[j]
                if bj:
                    acc.c[i + j] = _addmul(acc.c[i + j], ai, bj)
        return acc
    return acc + a * b


def _sf_addmul(acc: SymFunc, a: SymFunc, b: SymFunc, max_weight: int | None = None) -> None:
    cap = acc.cap if max_weight is None else min(acc.cap, max_weight)
    A, B, O = a._b, b._b, acc._b
    for wa in range(cap + 1):
        da = A[wa]
        if not da:
            continue
        for wb in range(cap - wa + 1):
            db = B[wb]
            if not db:
                continue
            o = O[wa + wb]
            get = o.get
            for ka, ca in da.items():
                for kb, cb in db.items():
                    k = ka + kb
                    o[k] = get(k, 0) + ca * cb


def _finish(x):
    if isinstance(x, SymFunc):
        return x._prune()
    if isinstance(x, WPoly):
        x.c = [_finish(v) for v in x.c]
        return x
    return x


class WPoly:
    """Polynomial in w with coefficients in a ring, truncated above w^cap."""

    __slots__ = ("cap", "c")

    def __init__(self, coeffs, cap: int = W_CAP, zero=None):
        coeffs = list(coeffs)[: cap + 1]
        if zero is None:
            zero = _zero_like(coeffs[0]) if coeffs else mpq(0)
        coeffs += [_zero_like(zero) for _ in range(cap + 1 - len(coeffs))]
        self.cap = cap
        self.c = coeffs

    @classmethod
    def constant(cls, x, cap: int = W_CAP) -> "WPoly":
        return cls([x], cap)

    def _like(self) -> "WPoly":
        return WPoly([], self.cap, zero=self.c[0])

    def coefficient(self, i: int):
        return self.c[i] if 0 <= i <= self.cap else _zero_like(self.c[0])

    def __bool__(self) -> bool:
        return any(bool(x) for x in self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, WPoly):
            return self.cap == other.cap and all(a == b for a, b in zip(self.c, other.c))
        return self == WPoly.constant(other + _zero_like(self.c[0]), self.cap)

    __hash__ = None

    def _check(self, other: "WPoly") -> None:
        if other.cap != self.cap:
            raise ValueError(f"w_cap mismatch: {self.cap} vs {other.cap}")

    def __add__(self, other):
        if not isinstance(other, WPoly):
            out = list(self.c)
            out[0] = out[0] + other
            return WPoly(out, self.cap)
        self._check(other)
        return WPoly([a + b for a, b in zip(self.c, other.c)], self.cap)

    __radd__ = __add__

    def __neg__(self):
        return WPoly([-a for a in self.c], self.cap)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> "WPoly":
        return WPoly([a * k for a in self.c], self.cap)

    def __mul__(self, other):
        if not isinstance(other, WPoly):
            return self.scale(other)
        self._check(other)
        acc = self._like()
        return _finish(_addmul(acc, self, other))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = self._like() + 1
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, gamma: int):
        """T_{<=gamma}: sum of the coefficients of w^0 .. w^gamma."""
        if not 0 <= gamma <= self.cap:
            raise ValueError(f"gamma must lie in 0..{self.cap}")
        total = _zero_like(self.c[0])
        for a in self.c[: gamma + 1]:
            total = total + a
        return total

    def map(self, fn) -> "WPoly":
        return WPoly([fn(a) for a in self.c], self.cap)

    def with_cap(self, cap: int) -> "WPoly":
        return WPoly(self.c[: cap + 1], cap, zero=self.c[0])

    def __repr__(self) -> str:
        parts = [f"({a})*w^{i}" for i, a in enumerate(self.c) if a]
        return " + ".join(parts) or "0"


class USeries:
    """Power series in u truncated after u^u_cap (list of u_cap + 1 coefficients)."""

    __slots__ = ("c",)

    def __init__(self, coeffs, u_cap: int | None = None, zero=None):
        coeffs = list(coeffs)
        if u_cap is not None:
            if zero is None:
                zero = _zero_like(coeffs[0]) if coeffs else mpq(0)
            coeffs = coeffs[: u_cap + 1]
            coeffs += [_zero_like(zero) for _ in range(u_cap + 1 - len(coeffs))]
        self.c = coeffs

    @property
    def u_cap(self) -> int:
        return len(self.c) - 1

    @classmethod
    def zero(cls, u_cap: int, zero=None) -> "USeries":
        return cls([], u_cap, zero=mpq(0) if zero is None else zero)

    @classmethod
    def constant(cls, x, u_cap: int) -> "USeries":
        return cls([x], u_cap)

    def _zero_coeff(self):
        return _zero_like(self.c[0])

    def __getitem__(self, i: int):
        return self.c[i]

    def coefficient(self, i: int):
        return self.c[i] if 0 <= i <= self.u_cap else self._zero_coeff()

    def __bool__(self) -> bool:
        return any(bool(x) for x in self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, USeries):
            return NotImplemented
        return len(self.c) == len(other.c) and all(a == b for a, b in zip(self.c, other.c))

    __hash__ = None

    def valuation(self) -> int | None:
        for i, a in enumerate(self.c):
            if a:
                return i
        return None

    def _check(self, other: "USeries") -> None:
        if len(other.c) != len(self.c):
            raise ValueError(f"u_cap mismatch: {self.u_cap} vs {other.u_cap}")

    def __add__(self, other):
        if not isinstance(other, USeries):
            out = list(self.c)
            out[0] = out[0] + other
            return USeries(out)
        self._check(other)
        return USeries([a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        return USeries([-a for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> "USeries":
        """Multiply every coefficient by a constant (scalar or ring element)."""
        return USeries([a * k for a in self.c])

    def __mul__(self, other):
        if not isinstance(other, USeries):
            return self.scale(other)
        self._check(other)
        n = self.u_cap
        zero = _zero_like(_probe_product(self.c[0], other.c[0]))
        out = [_fresh(zero) for _ in range(n + 1)]
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j in range(n - i + 1):
                b = other.c[j]
                if b:
                    out[i + j] = _addmul(out[i + j], a, b)
        return USeries([_finish(x) for x in out])

    def __rmul__(self, other):
        return self.scale(other)

    def shift(self, k: int) -> "USeries":
        """Multiply by u^k (k may be negative only if the low terms vanish)."""
        z = self._zero_coeff()
        if k >= 0:
            return USeries([_fresh(z) for _ in range(k)] + self.c[: len(self.c) - k])
        if any(self.c[:-k]):
            raise ValueError("division by u of a series with nonzero low-order terms")
        return USeries(self.c[-k:] + [_fresh(z) for _ in range(-k)])

    def div_u(self) -> "USeries":
        """Divide by u; the top coefficient becomes unknown and is set to 0."""
        return self.shift(-1)

    def map(self, fn) -> "USeries":
        return USeries([fn(a) for a in self.c])

    def truncate_w(self, gamma: int) -> "USeries":
        return self.map(lambda a: a.truncate(gamma))

    def exp(self) -> "USeries":
        if _scalar_value(self.c[0]) != 0:
            raise ValueError("exp needs a series with zero constant term")
        n = self.u_cap
        zero = self._zero_coeff()
        weighted = [None] + [a * k if a else a for k, a in enumerate(self.c) if k > 0]
        out = [_fresh(zero) + 1] + [None] * n
        for m in range(1, n + 1):
            acc = _fresh(zero)
            for k in range(1, m + 1):
                g = weighted[k]
                f = out[m - k]
                if g and f:
                    acc = _addmul(acc, g, f)
            out[m] = _finish(acc) * mpq(1, m)
        return USeries(out)

    def log(self) -> "USeries":
        if _scalar_value(self.c[0]) != 1:
            raise ValueError("log needs a series with constant term 1")
        n = self.u_cap
        zero = self._zero_coeff()
        out = [_fresh(zero)] + [None] * n
        for m in range(1, n + 1):
            acc = _fresh(zero)
            for k in range(1, m):
                g = out[k]
                f = self.c[m - k]
                if g and f:
                    acc = _addmul(acc, g * k, f)
            out[m] = (self.c[m] * m - _finish(acc)) * mpq(1, m)
        return USeries(out)

    def invert(self) -> "USeries":
        c0 = _scalar_value(self.c[0])
        if not c0:
            raise ValueError("series with non-invertible constant term")
        inv0 = 1 / c0
        n = self.u_cap
        zero = self._zero_coeff()
        out = [_fresh(zero) + inv0] + [None] * n
        for m in range(1, n + 1):
            acc = _fresh(zero)
            for k in range(1, m + 1):
                a = self.c[k]
                h = out[m - k]
                if a and h:
                    acc = _addmul(acc, a, h)
            out[m] = _finish(acc) * (-inv0)
        return USeries(out)

    def __repr__(self) -> str:
        parts = [f"({a})*u^{i}" for i, a in enumerate(self.c) if a]
        return " + ".join(parts) or "0"


def _probe_product(a, b):
    """Zero of the ring where a*b lives (the richer of the two rings)."""
    if isinstance(a, WPoly):
        return a
    if isinstance(b, WPoly):
        return b
    if isinstance(a, SymFunc):
        return a
    return b


def _fresh(zero):
    if isinstance(zero, SymFunc):
        return SymFunc(zero.cap)
    if isinstance(zero, WPoly):
        return WPoly([], zero.cap, zero=zero.c[0])
    return mpq(0)


def us_add(a: USeries, b: USeries) -> USeries:
    return a + b


def us_mul(a: USeries, b: USeries) -> USeries:
    return a * b


def us_scale(a: USeries, k) -> USeries:
    return a.scale(k)


def us_exp(a: USeries) -> USeries:
    return a.exp()


def us_log(a: USeries) -> USeries:
    return a.log()


def us_invert(a: USeries) -> USeries:
    return a.invert()


def truncate_w(a, gamma: int):
    """T_{<=gamma} on a WPoly or coefficientwise on a series over WPoly."""
    return a.truncate_w(gamma) if isinstance(a, USeries) else a.truncate(gamma)


def scalar_series(values, u_cap: int) -> USeries:
    """USeries over the rationals from a list of numbers."""
    return USeries([mpq(v) for v in values], u_cap)

