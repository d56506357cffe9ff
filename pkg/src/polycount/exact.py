"""Exact sign decisions for sums of rational multiples of prime powers.

A quantity is a list of terms (c, y) meaning  sum c * p**y  with rational
c and rational y.  Write y = n + j/D with 0 <= j < D; since x^D - p is
irreducible (Eisenstein), the numbers p**(j/D) for 0 <= j < D are
linearly independent over Q.  So the sum is zero exactly when every
residue class j has a vanishing rational coefficient, and otherwise its
sign is found by interval evaluation at growing precision.
"""

import math
from fractions import Fraction

from mpmath import iv, mp

_MAX_BITS = 1 << 14


def _floor_frac(y):
    n = math.floor(y)
    return n, y - n


def normalize(terms, p):
    """Group terms by the fractional part of the exponent; rational parts are exact."""
    groups = {}
    for c, y in terms:
        c = Fraction(c)
        if c == 0:
            continue
        n, frac = _floor_frac(Fraction(y))
        val = c * (Fraction(p) ** n)
        groups[frac] = groups.get(frac, Fraction(0)) + val
    return {k: v for k, v in groups.items() if v != 0}


def _interval_sign(groups, p):
    bits = 128
    while bits <= _MAX_BITS:
        iv.prec = bits
        total = iv.mpf(0)
        for frac, coef in groups.items():
            term = iv.mpf(coef.numerator) / iv.mpf(coef.denominator)
            if frac:
                term = term * iv.exp(iv.log(iv.mpf(p)) * iv.mpf(frac.numerator) / iv.mpf(frac.denominator))
            total = total + term
        if total.a > 0:
            return 1
        if total.b < 0:
            return -1
        bits *= 2
    raise ArithmeticError("sign undecided at maximal precision")


def sign(terms, p):
    groups = normalize(terms, p)
    if not groups:
        return 0
    if set(groups) == {Fraction(0)}:
        v = groups[Fraction(0)]
        return (v > 0) - (v < 0)
    return _interval_sign(groups, p)


def qpow(q, p, x):
    """q**x as a single term (1, exponent in base p)."""
    e = round(math.log(q, p))
    if p ** e != q:
        raise ValueError("q is not a power of p")
    return (Fraction(1), Fraction(x) * e)


def to_float(terms, p, digits=30):
    mp.dps = digits
    total = mp.mpf(0)
    for c, y in terms:
        c = Fraction(c)
        total += mp.mpf(c.numerator) / c.denominator * mp.power(p, mp.mpf(Fraction(y).numerator) / Fraction(y).denominator)
    return total


def sqrt_power_le(q, d, rhs):
    """Decide q**(2*sqrt(d)) <= rhs exactly (rhs rational).

    When d is a perfect square this is integer arithmetic.  Otherwise
    q**(2 sqrt d) is transcendental, so equality is impossible and an
    interval evaluation settles the comparison.
    """
    rhs = Fraction(rhs)
    if rhs <= 0:
        return False
    s = math.isqrt(d)
    if s * s == d:
        return Fraction(q) ** (2 * s) <= rhs
    bits = 128
    while bits <= _MAX_BITS:
        iv.prec = bits
        lhs = iv.exp(iv.log(iv.mpf(q)) * 2 * iv.sqrt(iv.mpf(d)))
        r = iv.mpf(rhs.numerator) / iv.mpf(rhs.denominator)
        if lhs.b < r.a:
            return True
        if lhs.a > r.b:
            return False
        bits *= 2
    raise ArithmeticError("comparison undecided at maximal precision")


class PSum:
    """An exact sum  sum c * p**y  over rational c and y."""

    __slots__ = ("p", "terms")

    def __init__(self, p, terms=None):
        self.p = p
        self.terms = {}
        for y, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                y = Fraction(y)
                self.terms[y] = self.terms.get(y, Fraction(0)) + c
        self.terms = {y: c for y, c in self.terms.items() if c}

    @classmethod
    def const(cls, p, c):
        return cls(p, {0: c})

    @classmethod
    def qpow(cls, q, p, x):
        e = 0
        t = q
        while t % p == 0:
            t //= p
            e += 1
        if t != 1:
            raise ValueError("q is not a power of p")
        return cls(p, {Fraction(x) * e: 1})

    def _lift(self, other):
        if isinstance(other, PSum):
            if other.p != self.p:
                raise ValueError("different bases")
            return other
        return PSum.const(self.p, other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for y, c in other.terms.items():
            t[y] = t.get(y, Fraction(0)) + c
        return PSum(self.p, t)

    __radd__ = __add__

    def __neg__(self):
        return PSum(self.p, {y: -c for y, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        t = {}
        for y1, c1 in self.terms.items():
            for y2, c2 in other.terms.items():
                t[y1 + y2] = t.get(y1 + y2, Fraction(0)) + c1 * c2
        return PSum(self.p, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PSum):
            if len(other.terms) == 1:
                (y, c), = other.terms.items()
                return self * PSum(self.p, {-y: 1 / c})
            v = other.rational()
            if v is None:
                raise ValueError("division by an irrational sum")
            other = v
        return self * PSum.const(self.p, 1 / Fraction(other))

    def rational(self):
        """The exact value if it is rational, else None."""
        g = normalize([(c, y) for y, c in self.terms.items()], self.p)
        if not g:
            return Fraction(0)
        if set(g) == {Fraction(0)}:
            return g[Fraction(0)]
        return None

    def sign(self):
        return sign([(c, y) for y, c in self.terms.items()], self.p)

    def __float__(self):
        return float(to_float([(c, y) for y, c in self.terms.items()], self.p))

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def same_value(self, other):
        return (self - other).sign() == 0

    def display(self):
        v = self.rational()
        if v is not None:
            return str(v)
        return f"{float(self):.10g}"

    def __repr__(self):
        return f"PSum({self.display()})"
