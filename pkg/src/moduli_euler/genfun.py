"""Generating functions for weight 11 and weight 13 Euler characteristics.

Conventions
-----------
* ``e_l = l u^l E_l = sum_{d|l} mu(l/d) u^(l-d)`` is a unit series, so every
  negative power of u is rewritten through ``q_l = l u^l / e_l = 1/E_l``.
* ``log U_l(X) = A_l(X) + B_l(X) = sum_j c_{l,j}(u) X^j`` with scalar series
  ``c_{l,j}``; A and B are kept apart so they can be inspected separately.
  Explicitly, with beta_r = B_r / (r (r-1)):

      A:  c_1 = log((1-u^l) e_l) + q/2,
          c_j = -q^(j-1) / (j (j-1)) + q^j / (2j)                 (j >= 2)
      B:  c_j = -sum_{r even} beta_r C(r+j-2, j) q^(r-1+j)

  Since val(q) = l and val(e_l - 1) >= l/2, only l <= 2 u_cap can contribute;
  every candidate l is checked by its actual valuation.
* Y = prod_l U_l(X_l(p)) with X_l(p) = (1/l) sum_{d|l} mu(l/d) p_d, so
  Y(p + c) / Y(p) = exp(sum_l V_l(X_l(p) + X_l(c)) - V_l(X_l(p))).

Weight 13 via shift operators
-----------------------------
Under p_j -> j d/dp_j the complete sum sum_n h_n becomes the translation
p_j -> p_j + 1, and sum_k e_k t^k becomes p_j -> p_j + (-1)^(j-1) t^j.  Hence
every D_k is a finite combination of translations (possibly depending on a
formal parameter t) and low-order derivatives.  Applying such an operator to
Y and dividing by Y gives

    Y^-1 Sh(c) d^M Y = [Y(p+c)/Y(p)] * Bell_M(log Y at p+c),

which never needs Y beyond the output p-weight.  The literal route
(:func:`apply_dk` on truncated X_k and Y) is kept as an oracle for small caps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from gmpy2 import mpq

from .numtheory import Partition, bernoulli, divisors, mobius
from .series import W_CAP, USeries, WPoly, _fresh, _sf_addmul, _zero_like
from .symfunc import SymFunc, schur_to_p

__all__ = [
    "GenfunContext",
    "a_ell",
    "b_ell",
    "u_ell",
    "chi11_scalar",
    "leading_series",
    "chi11_equivariant",
    "x2",
    "x11",
    "x13",
    "apply_dk",
    "big_y",
    "chi13_equivariant",
    "chi13_direct",
    "extract",
]


# scalar series helpers (plain lists of mpq, length u_cap + 1)

def _smul(a, b, n):
    out = [mpq(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        for j in range(n - i + 1):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _sadd(a, b):
    return [x + y for x, y in zip(a, b)]


def _sscale(a, k):
    return [x * k for x in a]


def _geometric(step, n, sign=1):
    """1 / (1 - sign*u^step) as a list."""
    out = [mpq(0)] * (n + 1)
    for i in range(0, n + 1, step):
        out[i] = mpq(sign) ** (i // step)
    return out


def _monomial(k, n, c=1):
    out = [mpq(0)] * (n + 1)
    if k <= n:
        out[k] = mpq(c)
    return out


@dataclass
class GenfunContext:
    """Caps shared by every series of one computation.

    ``u_cap`` bounds u-degrees, ``p_cap`` bounds the weighted p-degree, and
    ``w_cap`` the auxiliary variable (w for weight 11, t for weight 13).
    """

    u_cap: int
    p_cap: int = 0
    w_cap: int = W_CAP
    _coeffs: dict = field(default_factory=dict, repr=False, compare=False)
    _units: dict = field(default_factory=dict, repr=False, compare=False)

    # unit series e_l and its inverse powers

    def unit_series(self, ell: int) -> tuple:
        hit = self._units.get(ell)
        if hit is not None:
            return hit
        out = [mpq(0)] * (self.u_cap + 1)
        for d in divisors(ell):
            if ell - d <= self.u_cap:
                out[ell - d] += mobius(ell // d)
        self._units[ell] = tuple(out)
        return self._units[ell]

    def unit_valuation(self, ell: int) -> int:
        """u-valuation of e_l - 1 (a large number if it vanishes below the cap)."""
        e = self.unit_series(ell)
        for i in range(1, len(e)):
            if e[i]:
                return i
        return self.u_cap + 1

    def _q_powers(self, ell: int) -> list:
        """q^m = (l u^l)^m e_l^-m for m with l*m <= u_cap."""
        n = self.u_cap
        e = self.unit_series(ell)
        nz = [(k, c) for k, c in enumerate(e) if k and c]
        powers = [_monomial(0, n)]
        inv = _monomial(0, n)
        m = 1
        while ell * m <= n:
            top = n - ell * m
            nxt = [mpq(0)] * (top + 1)
            for i in range(top + 1):
                acc = inv[i]
                for k, c in nz:
                    if k > i:
                        break
                    acc -= c * nxt[i - k]
                nxt[i] = acc
            inv = nxt + [mpq(0)] * (n - top)
            coef = mpq(ell) ** m
            powers.append([mpq(0)] * (ell * m) + [x * coef for x in nxt])
            m += 1
        return powers

    def coefficient_lists(self, ell: int) -> tuple[dict, dict]:
        """(A-part, B-part): dicts j -> scalar list c_{l,j}; zero lists omitted."""
        hit = self._coeffs.get(ell)
        if hit is not None:
            return hit
        n = self.u_cap
        q = self._q_powers(ell)
        a: dict[int, list] = {}
        b: dict[int, list] = {}
        e = list(self.unit_series(ell))
        one_minus = _sadd(_monomial(0, n), _monomial(ell, n, -1))
        log_part = USeries(_smul(one_minus, e, n)).log().c
        if len(q) > 1:
            a[1] = _sadd(log_part, _sscale(q[1], mpq(1, 2)))
        else:
            a[1] = list(log_part)
        j = 2
        while j - 1 < len(q):
            c = _sscale(q[j - 1], mpq(-1, j * (j - 1)))
            if j < len(q):
                c = _sadd(c, _sscale(q[j], mpq(1, 2 * j)))
            a[j] = c
            j += 1
        for j in range(1, len(q)):
            acc = [mpq(0)] * (n + 1)
            r = 2
            while r - 1 + j < len(q):
                beta = bernoulli(r) / (r * (r - 1))
                acc = _sadd(acc, _sscale(q[r - 1 + j], -beta * comb(r + j - 2, j)))
                r += 2
            if any(acc):
                b[j] = acc
        a = {j: c for j, c in a.items() if any(c)}
        self._coeffs[ell] = (a, b)
        return a, b

    def combined_lists(self, ell: int) -> dict:
        a, b = self.coefficient_lists(ell)
        out = {j: list(c) for j, c in a.items()}
        for j, c in b.items():
            out[j] = _sadd(out[j], c) if j in out else list(c)
        return out

    def ells(self) -> list[int]:
        """Every l whose factor U_l differs from 1 below the cap."""
        return [
            ell
            for ell in range(1, 2 * self.u_cap + 2)
            if min(ell, self.unit_valuation(ell)) <= self.u_cap and self.combined_lists(ell)
        ]

    # evaluation of sum_j c_j X^j

    def evaluate(self, lists: dict, X, deriv: int = 0, powers=None) -> USeries:
        """sum_j c_j(u) (d/dX)^deriv X^j at a u-independent ring element X."""
        n = self.u_cap
        zero = _zero_like(X)
        jmax = max(lists, default=0)
        if powers is None:
            powers = _powers(X, jmax)
        out = [_fresh(zero) for _ in range(n + 1)]
        for j, c in lists.items():
            if j < deriv:
                continue
            ff = factorial(j) // factorial(j - deriv)
            P = powers[j - deriv]
            if not P:
                continue
            for i, ci in enumerate(c):
                if ci:
                    out[i] = out[i] + P * (ci * ff)
        return USeries(out)


def _powers(X, jmax):
    out = [_fresh(_zero_like(X)) + 1]
    for _ in range(jmax):
        out.append(out[-1] * X)
    return out


def a_ell(ctx: GenfunContext, ell: int, X) -> USeries:
    """A_l(X, u) as a u-series over the ring of X."""
    return ctx.evaluate(ctx.coefficient_lists(ell)[0], X)


def b_ell(ctx: GenfunContext, ell: int, X) -> USeries:
    """B_l(X, u) = B(-E_l + X) - B(-E_l)."""
    return ctx.evaluate(ctx.coefficient_lists(ell)[1], X)


def u_ell(ctx: GenfunContext, ell: int, X) -> USeries:
    return ctx.evaluate(ctx.combined_lists(ell), X).exp()


# weight 11

def w_argument(ell: int, w_cap: int = W_CAP) -> WPoly:
    """W_l = (1/l) sum_{d|l} mu(l/d) (1 - w^d)."""
    c = [mpq(0)] * (w_cap + 1)
    for d in divisors(ell):
        mu = mobius(ell // d)
        c[0] += mu
        if d <= w_cap:
            c[d] -= mu
    return WPoly([x / ell for x in c], w_cap)


def chi11_scalar(ctx: GenfunContext, gamma: int = 10) -> USeries:
    """Z = -u T_{<=gamma}(prod_l U_l(W_l) - 1); Z_g is half of chi_11(M_g).

    The coefficient of u^g is exact for g <= ctx.u_cap.
    """
    log_sum = None
    for ell in ctx.ells():
        term = ctx.evaluate(ctx.combined_lists(ell), w_argument(ell, ctx.w_cap))
        log_sum = term if log_sum is None else log_sum + term
    product = log_sum.exp().truncate_w(gamma)
    return -(product - 1).shift(1)


def leading_series(ctx: GenfunContext, gamma: int = 10) -> USeries:
    """L = -u T_{<=gamma}(B_1(1-w, u)), the leading part of Z."""
    X = w_argument(1, ctx.w_cap)
    return -b_ell(ctx, 1, X).truncate_w(gamma).shift(1)


def p_argument(ell: int, cap: int, only_p1: bool = False) -> SymFunc:
    """X_l(p) = (1/l) sum_{d|l} mu(l/d) p_d."""
    out = SymFunc.zero(cap)
    for d in divisors(ell):
        if only_p1 and d > 1:
            continue
        mu = mobius(ell // d)
        if mu:
            out = out + SymFunc.p(d, cap, mpq(mu, ell))
    return out


def chi11_equivariant(ctx: GenfunContext, gamma: int = 10, only_p1: bool = False) -> USeries:
    """Half the S_n-equivariant weight 11 characteristic, graded by u^(g+n).

    Computes -u T_{<=gamma}(prod_l U_l(X_l(-p) + W_l) / U_l(X_l(-p)) - 1).
    With ``only_p1`` every p_d with d >= 2 is set to zero, which keeps exactly
    the information needed for ordinary (non-equivariant) dimensions.
    """
    cap = ctx.p_cap
    delta = None
    for ell in ctx.ells():
        base = -p_argument(ell, cap, only_p1)
        W = w_argument(ell, ctx.w_cap)
        shifted = WPoly([base + W.c[0]] + [SymFunc.constant(x, cap) for x in W.c[1:]], ctx.w_cap)
        lists = ctx.combined_lists(ell)
        term = ctx.evaluate(lists, shifted) - ctx.evaluate(lists, WPoly.constant(base, ctx.w_cap))
        delta = term if delta is None else delta + term
    ratio = delta.exp().truncate_w(gamma)
    return -(ratio - 1).shift(1)


# character series X_2, X_11, X_13 (hbar read as u)

def _h_all(cap):
    out = SymFunc.zero(cap)
    for n in range(cap + 1):
        out = out + schur_to_p((n,), cap) if n else out + 1
    return out


def _h_upto(cap, top):
    out = SymFunc.zero(cap)
    for n in range(min(top, cap) + 1):
        out = out + (schur_to_p((n,), cap) if n else SymFunc.one(cap))
    return out


def _hbar_series(cap, u_cap, by_genus) -> USeries:
    return USeries([by_genus(g) for g in range(u_cap + 1)])


def _graded_frobenius2(f: USeries) -> USeries:
    n = f.u_cap
    out = [_fresh(f.c[0]) for _ in range(n + 1)]
    for g, c in enumerate(f.c):
        if 2 * g <= n:
            out[2 * g] = c.frobenius(2)
    return USeries(out)


def x2(ctx: GenfunContext) -> USeries:
    """Character of H^2 of the compactified spaces, graded by hbar^g."""
    cap, n = ctx.p_cap, ctx.u_cap
    H = _h_all(cap)
    p1 = SymFunc.p(1, cap)
    h2 = schur_to_p((2,), cap) if cap >= 2 else SymFunc.zero(cap)
    zero = SymFunc.zero(cap)

    def term(g):
        out = zero
        if g >= 3:
            out = out + H
        if g >= 2:
            out = out + p1 * H
        if g >= 2:
            out = out + H
        if g == 1:
            out = out + (H - 1)
        if g == 0:
            out = out + p1 * (H - _h_upto(cap, 2)) - h2 * (H - _h_upto(cap, 1))
        return out

    f = _hbar_series(cap, n, lambda g: H if g >= 1 else H - _h_upto(cap, 1))
    plethysm = (f * f + _graded_frobenius2(f)) * mpq(1, 2)
    return _hbar_series(cap, n, term) + plethysm


def _hook(m, cap):
    return schur_to_p((m,) + (1,) * 10, cap)


def x11(ctx: GenfunContext) -> USeries:
    cap = ctx.p_cap
    body = SymFunc.zero(cap)
    for size in range(11, cap + 1):
        body = body + _hook(size - 10, cap)
    return USeries([SymFunc.zero(cap), body * -2], ctx.u_cap)


def x13(ctx: GenfunContext) -> USeries:
    cap, n = ctx.p_cap, ctx.u_cap
    if cap < 10:
        return USeries.zero(n, SymFunc.zero(cap))
    e10 = schur_to_p((1,) * 10, cap)
    H = _h_all(cap)
    all_pairs = e10 * H * H
    g1 = e10 * H * (H - _h_upto(cap, 2))
    if cap >= 12:
        g1 = g1 + schur_to_p((2,) + (1,) * 10, cap) * H

    def term(g):
        if g >= 2:
            return all_pairs * -2
        if g == 1:
            return g1 * -2
        return SymFunc.zero(cap)

    return _hbar_series(cap, n, term)


def apply_dk(xk: USeries, target: USeries) -> USeries:
    """Apply X_k with hbar -> u and p_j -> j d/dp_j to a u-series over SymFunc."""
    n = target.u_cap
    cap = target.c[0].cap
    out = USeries.zero(n, SymFunc.zero(cap))
    for a, coeff in enumerate(xk.c):
        if a > n or not coeff:
            continue
        for mu, c in coeff.terms().items():
            if mu.size > cap:
                continue
            hit = target
            for j, e in mu.multiplicities().items():
                hit = hit.map(lambda f, j=j, e=e: f.derivative(j, e).scale(mpq(j) ** e))
            out = out + hit.shift(a).scale(c)
    return out


def big_y(ctx: GenfunContext) -> USeries:
    """Y = prod_l U_l(X_l(p)) over SymFunc(p_cap)."""
    total = None
    for ell in ctx.ells():
        term = ctx.evaluate(ctx.combined_lists(ell), p_argument(ell, ctx.p_cap))
        total = term if total is None else total + term
    return total.exp()


def chi13_direct(ctx: GenfunContext) -> USeries:
    """Literal evaluation of the weight 13 formula with truncated X_k and Y.

    Exact only when p_cap >= 2*(u_cap + 1) (so Y is complete); the result has
    u_cap one lower than ``ctx`` because of the division by u.
    """
    Y = big_y(ctx)
    Yinv = Y.invert()
    d13 = apply_dk(x13(ctx), Y)
    d2 = apply_dk(x2(ctx), Y)
    d11 = apply_dk(x11(ctx), Y)
    d11d2 = apply_dk(x11(ctx), d2)
    first = Yinv * d13
    second = (Yinv * d11d2 - Yinv * d11 * Yinv * d2).div_u()
    total = first + second
    total = USeries(total.c[:-1])
    return total.map(SymFunc.sign_substitute)


# weight 13 via shift operators

Key = tuple  # (a, b, tau, select, derivs)


class ShiftOperator:
    """Finite sum of coef(u) * Sh(c) * d^derivs with c_j = a + 2b[j even] - tau t^j.

    ``select`` records how the t-dependence is consumed: ("coef", k) reads the
    coefficient of t^k, ("trunc", G) sums coefficients of t^0..t^G.
    """

    def __init__(self, terms: dict, n: int):
        self.terms = {k: v for k, v in terms.items() if any(v)}
        self.n = n

    @classmethod
    def unit(cls, n, key=(0, 0, 0, None, ()), coef=None):
        return cls({key: coef if coef is not None else _monomial(0, n)}, n)

    def __add__(self, other):
        out = {k: list(v) for k, v in self.terms.items()}
        for k, v in other.terms.items():
            out[k] = _sadd(out[k], v) if k in out else list(v)
        return ShiftOperator(out, self.n)

    def __neg__(self):
        return ShiftOperator({k: _sscale(v, -1) for k, v in self.terms.items()}, self.n)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ShiftOperator):
            if isinstance(other, list):
                return ShiftOperator(
                    {k: _smul(v, other, self.n) for k, v in self.terms.items()}, self.n
                )
            return ShiftOperator({k: _sscale(v, mpq(other)) for k, v in self.terms.items()}, self.n)
        out: dict = {}
        for (a1, b1, t1, s1, d1), v1 in self.terms.items():
            for (a2, b2, t2, s2, d2), v2 in other.terms.items():
                if t1 + t2 > 1 or (s1 and s2):
                    raise ValueError("at most one factor may carry the t-translation")
                key = (a1 + a2, b1 + b2, t1 + t2, s1 or s2, tuple(sorted(d1 + d2)))
                prod_ = _smul(v1, v2, self.n)
                out[key] = _sadd(out[key], prod_) if key in out else prod_
        return ShiftOperator(out, self.n)

    __rmul__ = __mul__


class _Operators:
    """The D_k as shift operators (D_11 without its leading factor u)."""

    def __init__(self, n: int, gamma: int = 10):
        U = lambda k, c=1: _monomial(k, n, c)  # noqa: E731
        one = ShiftOperator.unit(n)
        H = ShiftOperator.unit(n, (1, 0, 0, None, ()))
        H_even = ShiftOperator.unit(n, (0, 1, 0, None, ()))
        d1 = ShiftOperator.unit(n, (0, 0, 0, None, (1,)))
        d2 = ShiftOperator.unit(n, (0, 0, 0, None, (2,)))
        h2 = (d1 * d1 + d2 * 2) * mpq(1, 2)
        geo = _geometric(1, n)
        geo2 = _geometric(2, n)

        def e_hat(k, a):
            return ShiftOperator.unit(n, (a, 0, 1, ("coef", k), ()), U(0, (-1) ** k))

        f = H * geo - one - d1
        p2f = H_even * geo2 - one - d2 * 2
        self.d2 = (
            H * _smul(U(3), geo, n)
            + d1 * H * _smul(U(2), geo, n)
            + H * _smul(U(2), geo, n)
            + (H - one) * U(1)
            + (f * f + p2f) * mpq(1, 2)
            + d1 * (H - one - d1 - h2)
            - h2 * (H - one - d1)
        )
        trunc = ShiftOperator.unit(n, (1, 0, 1, ("trunc", gamma), ()))
        self.d11_over_u = (trunc - one) * -2
        self.d13 = e_hat(10, 2) * _smul(U(2), geo, n) * -2 + (
            e_hat(10, 2) - e_hat(10, 1) * (one + d1 + h2) + d1 * e_hat(11, 1) - e_hat(12, 1)
        ) * U(1, -2)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


class _ShiftEngine:
    """Evaluates Y^-1 * (shift operator) * Y in the ring WPoly_t(SymFunc)."""

    def __init__(self, ctx: GenfunContext):
        self.ctx = ctx
        self.cap = ctx.p_cap
        self.tcap = ctx.w_cap
        self.n = ctx.u_cap
        self.ells = ctx.ells()
        self._args: dict = {}
        self._powers: dict = {}
        self._ratio: dict = {}
        self._dlog: dict = {}

    def _ring(self, sf: SymFunc) -> WPoly:
        return WPoly([sf], self.tcap)

    def argument(self, ell, shift) -> WPoly:
        """X_l(p + c) for the translation c encoded by (a, b, tau)."""
        key = (ell,) + shift
        hit = self._args.get(key)
        if hit is not None:
            return hit
        a, b, tau = shift
        base = p_argument(ell, self.cap)
        const = mpq(0)
        if ell == 1:
            const += a
        if ell == 2:
            const += b
        coeffs = [base + const] + [SymFunc.zero(self.cap) for _ in range(self.tcap)]
        if tau:
            for d in divisors(ell):
                mu = mobius(ell // d)
                if mu and d <= self.tcap:
                    coeffs[d] = coeffs[d] + mpq(-mu * tau, ell)
        out = WPoly(coeffs, self.tcap)
        self._args[key] = out
        return out

    def powers(self, ell, shift):
        key = (ell,) + shift
        hit = self._powers.get(key)
        if hit is None:
            jmax = max(self.ctx.combined_lists(ell), default=0)
            hit = _powers(self.argument(ell, shift), jmax)
            self._powers[key] = hit
        return hit

    def _affected(self, s1, s2):
        return [
            ell for ell in self.ells
            if (ell == 1 and s1[0] != s2[0]) or (ell == 2 and s1[1] != s2[1]) or s1[2] != s2[2]
        ]

    def log_difference(self, s_from, s_to) -> USeries:
        total = USeries.zero(self.n, self._ring(SymFunc.zero(self.cap)))
        for ell in self._affected(s_from, s_to):
            lists = self.ctx.combined_lists(ell)
            total = total + (
                self.ctx.evaluate(lists, self.argument(ell, s_to), powers=self.powers(ell, s_to))
                - self.ctx.evaluate(lists, self.argument(ell, s_from), powers=self.powers(ell, s_from))
            )
        return total

    def ratio(self, shift) -> USeries:
        """Y(p + c) / Y(p)."""
        hit = self._ratio.get(shift)
        if hit is not None:
            return hit
        a, b, tau = shift
        anchor = (1, 0, 1) if tau else (0, 0, 0)
        if shift == anchor or not tau:
            out = self.log_difference((0, 0, 0), shift).exp()
        else:
            out = self.ratio(anchor) * self.log_difference(anchor, shift).exp()
        self._ratio[shift] = out
        return out

    def dlog(self, shift, derivs) -> USeries:
        """d^derivs log Y evaluated at p + c."""
        key = (shift, derivs)
        hit = self._dlog.get(key)
        if hit is not None:
            return hit
        m = len(derivs)
        total = USeries.zero(self.n, self._ring(SymFunc.zero(self.cap)))
        for ell in self.ells:
            factor = mpq(1)
            for d in derivs:
                if ell % d:
                    factor = mpq(0)
                    break
                factor *= mpq(mobius(ell // d), ell)
            if not factor:
                continue
            lists = self.ctx.combined_lists(ell)
            term = self.ctx.evaluate(
                lists, self.argument(ell, shift), deriv=m, powers=self.powers(ell, shift)
            )
            total = total + term.scale(factor)
        self._dlog[key] = total
        return total

    def bell(self, shift, derivs) -> USeries:
        """Y(q)^-1 d^derivs Y(q) at q = p + c."""
        one = USeries.constant(self._ring(SymFunc.one(self.cap)), self.n)
        if not derivs:
            return one
        total = None
        for blocks in _set_partitions(list(derivs)):
            term = None
            for block in blocks:
                factor = self.dlog(shift, tuple(sorted(block)))
                term = factor if term is None else term * factor
            total = term if total is None else total + term
        return total

    def apply(self, op: ShiftOperator) -> USeries:
        """Y^-1 op Y as a u-series over SymFunc (t consumed by each selector)."""
        groups: dict = {}
        for (a, b, tau, select, derivs), coef in op.terms.items():
            groups.setdefault(((a, b, tau), select), []).append((derivs, coef))
        out = USeries.zero(self.n, SymFunc.zero(self.cap))
        for (shift, select), items in sorted(groups.items(), key=repr):
            inner = None
            for derivs, coef in items:
                piece = self.bell(shift, derivs) * USeries(coef)
                inner = piece if inner is None else inner + piece
            out = out + _select_product(self.ratio(shift), inner, select, self.cap)
        return out


def _select_product(A: USeries, B: USeries, select, cap) -> USeries:
    """Consume the t-variable of the product A*B without forming all of it."""
    n = A.u_cap
    if select is None:
        wanted = lambda s: (0,)  # noqa: E731
    elif select[0] == "coef":
        wanted = lambda s, k=select[1]: (k - s,)  # noqa: E731
    else:
        wanted = lambda s, G=select[1]: range(G - s + 1)  # noqa: E731
    out = [SymFunc(cap) for _ in range(n + 1)]
    for i, a in enumerate(A.c):
        if not a:
            continue
        for j in range(n - i + 1):
            b = B.c[j]
            if not b:
                continue
            o = out[i + j]
            for s, a_s in enumerate(a.c):
                if not a_s:
                    continue
                for t in wanted(s):
                    if 0 <= t <= b.cap:
                        b_t = b.c[t]
                        if b_t:
                            _sf_addmul(o, a_s, b_t)
    return USeries([x._prune() for x in out])


def chi13_equivariant(ctx: GenfunContext) -> USeries:
    """Half the S_n-equivariant weight 13 characteristic, graded by u^(g+n).

    ``ctx.w_cap`` must be at least 12 (the t-parameter reaches e_12).
    """
    if ctx.w_cap < 12:
        raise ValueError("weight 13 needs the auxiliary cap >= 12")
    engine = _ShiftEngine(ctx)
    ops = _Operators(ctx.u_cap)
    phi13 = engine.apply(ops.d13)
    phi2 = engine.apply(ops.d2)
    phi11 = engine.apply(ops.d11_over_u)
    phi11_2 = engine.apply(ops.d11_over_u * ops.d2)
    total = phi13 + phi11_2 - phi11 * phi2
    return total.map(lambda f: f.sign_substitute().scale(mpq(1, 2)))


def extract(series: USeries, g: int, n: int) -> SymFunc:
    """The (g, n) piece: degree-n part of the u^(g+n) coefficient."""
    return series.coefficient(g + n).homogeneous(n)
