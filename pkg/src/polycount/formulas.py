"""Closed-form counts and bounds for decomposable polynomials.

All values are exact: integers, Fractions, or PSum expressions when an
exponent of q is not an integer.  Counts refer to polynomials of degree
d with arbitrary leading and constant coefficients, which is q(q-1)
times the number of monic original ones.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import UsageError
from .exact import PSum
from .field import FieldElement, FieldSpec, is_prime, prime_factors, prime_power
from .vecfield import VecField


def smallest_prime_divisor(n):
    return min(prime_factors(n))


def valuation(n, p):
    v = 0
    while n and n % p == 0:
        n //= p
        v += 1
    return v


def _nu2(n):
    return valuation(n, 2)


def _field(q):
    if isinstance(q, FieldSpec):
        return q
    p, e = prime_power(q)
    return FieldSpec(p, e)


def _pe(q):
    if isinstance(q, FieldSpec):
        return q.p, q.e
    return prime_power(q)


def _Q(q, x):
    p, _ = _pe(q)
    return PSum.qpow(q, p, x)


@dataclass(frozen=True)
class CensusFormulaInputs:
    q: int
    p: int
    e: int
    d: int
    l: int
    l2: int
    s: int
    c: int


def formula_inputs(q, d):
    if d < 4 or is_prime(d):
        raise UsageError(f"d = {d} is not composite")
    p, e = prime_power(q)
    l = smallest_prime_divisor(d)
    mids = [k for k in range(2, d) if d % k == 0]
    l2 = 1 if d == l * l else mids[1]
    s = d // (l * l)
    c = Fraction((d - l * l2) * (l2 - l), l * l2)
    assert c.denominator == 1
    return CensusFormulaInputs(q, p, e, d, l, l2, s, int(c))


def alpha(q, d):
    if d < 2:
        raise UsageError("d must be >= 2")
    if is_prime(d):
        return 0
    l = smallest_prime_divisor(d)
    if d == l * l:
        return q ** (2 * l - 1) * (q - 1)
    return 2 * q ** (l + d // l - 1) * (q - 1)


def beta(q, d):
    fi = formula_inputs(q, d)
    l = fi.l
    if d in (l * l, l ** 3, l * fi.l2):
        return Fraction(0)
    return Fraction(1, q ** fi.c) / (1 - Fraction(1, q))


def beta_star(q, d):
    fi = formula_inputs(q, d)
    return Fraction(q) ** (-fi.l - d // fi.l + fi.s + 3)


def dim_decomposables(d):
    """l + d/l, or None for prime d (no decomposables)."""
    if d < 2:
        raise UsageError("d must be >= 2")
    if is_prime(d):
        return None
    l = smallest_prime_divisor(d)
    return l + d // l


def frobenius_count(q, d):
    """#D_d restricted to f' = 0; zero when p does not divide d (or d is prime)."""
    p, _ = prime_power(q)
    if d % p or is_prime(d):
        return 0
    return q ** (d // p) * (q - 1)


def total_polys(q, d):
    """Size of P^=_d: all polynomials of degree exactly d."""
    return q ** d * (q - 1)


# Bluher root statistics -------------------------------------------------

@dataclass(frozen=True)
class BluherStats:
    q: int
    r: int
    c: int
    z: int
    gamma: int
    c0: int
    c1: int
    c2: int
    cZplus1: int

    def as_dict(self):
        return {0: self.c0, 1: self.c1, 2: self.c2, self.z + 1: self.cZplus1}

    def closure_ok(self):
        total = self.c0 + self.c1 + self.c2 + self.cZplus1
        roots = self.c1 + 2 * self.c2 + (self.z + 1) * self.cZplus1
        return total == self.q - 1 and 2 + roots == self.q


def bluher_counts(q, dExp):
    p, e = _pe(q)
    q = p ** e
    if dExp < 1:
        raise UsageError("dExp must be >= 1")
    c = math.gcd(dExp, e)
    z = p ** c
    gamma = 1 if (q % 2 == 0 and (e // c) % 2 == 1) else 0
    c1 = q // z - gamma
    cz = q // (z ** 3 - z)
    twice = q - 2 - c1 - (z + 1) * cz
    assert twice % 2 == 0
    c2 = twice // 2
    c0 = 1 + c2 + z * cz
    return BluherStats(q, p ** dExp, c, z, gamma, c0, c1, c2, cz)


def _elem_index(F, u):
    if isinstance(u, FieldElement):
        return u.idx
    return F.element(u).idx


def count_T(q, dExp, u):
    """Number of nonzero t with t^(r+1) - u t + u = 0, by scanning the field."""
    F = _field(q)
    u = _elem_index(F, u)
    if u == 0:
        raise UsageError("count_T needs u != 0")
    r = F.p ** dExp
    n = 0
    for t in range(1, F.q):
        val = F.add(F.sub(F.pow(t, r + 1), F.mul(u, t)), u)
        n += val == 0
    return n


def count_S(q, dExp, v, w):
    """Number of nonzero s with s^(r+1) - v s - w = 0."""
    F = _field(q)
    v, w = _elem_index(F, v), _elem_index(F, w)
    if w == 0:
        raise UsageError("count_S needs w != 0")
    r = F.p ** dExp
    n = 0
    for s in range(1, F.q):
        n += F.sub(F.sub(F.pow(s, r + 1), F.mul(v, s)), w) == 0
    return n


def brute_bluher(q, dExp):
    """Tally {i: #u with exactly i nonzero roots of t^(r+1) - u t + u}."""
    F = _field(q)
    V = VecField(F)
    r = F.p ** dExp
    t = np.arange(1, F.q, dtype=np.int64)
    tr1 = V.pow(t, r + 1)
    tally = {}
    for u in range(1, F.q):
        uu = np.full_like(t, u)
        val = V.add(V.sub(tr1, V.mul(uu, t)), uu)
        k = int(np.count_nonzero(val == 0))
        tally[k] = tally.get(k, 0) + 1
    return tally


def s_zero_count(q, dExp, w):
    """#S(0, w): b roots when w is a (q-1)/b-th power residue class, else none."""
    F = _field(q)
    w = _elem_index(F, w)
    if w == 0:
        raise UsageError("s_zero_count needs w != 0")
    r = F.p ** dExp
    b = math.gcd(F.q - 1, r + 1)
    return b if F.pow(w, (F.q - 1) // b) == 1 else 0


@dataclass(frozen=True)
class GcdStructure:
    b: int
    lam: int
    mu: int
    delta: int
    epsilon: int
    alphaV: int
    betaV: int
    z: int


def gcd_structure(q, dExp):
    p, e = _pe(q)
    q = p ** e
    r = p ** dExp
    c = math.gcd(dExp, e)
    z = p ** c
    b = math.gcd(q - 1, r + 1)
    delta, epsilon = _nu2(dExp), _nu2(e)
    alphaV, betaV = _nu2(r * r - 1), _nu2(q - 1)
    lam = 2 if delta < epsilon else 1
    mu = 1 if alphaV > betaV else 0
    if math.gcd(r - 1, q - 1) != z - 1:
        raise AssertionError("gcd(r - 1, q - 1) != z - 1")
    if b * (z - 1) != (z ** lam - 1) * 2 ** mu:
        raise AssertionError("b does not match (z^lam - 1) 2^mu / (z - 1)")
    return GcdStructure(b, lam, mu, delta, epsilon, alphaV, betaV, z)


# Intersections of two splits --------------------------------------------

@dataclass(frozen=True)
class IntersectionValue:
    """Exact value, or a [lower, upper] bracket when only bounds are known.

    ``frobenius_free`` says the count excludes Frobenius compositions.
    """
    kind: str
    exact: object = None
    lower: object = None
    upper: object = None
    frobenius_free: bool = False
    source: str = ""

    def contains(self, t):
        if self.kind == "exact":
            return t == self.exact
        if self.lower is not None and Fraction(t) < self.lower:
            return False
        if self.upper is not None and Fraction(t) > self.upper:
            return False
        return True


def _common_factor(q, p):
    """1 - q^-1 (1 + q^(-p+2) (1-q^-1)^2 / (1-q^-p))."""
    Q = Fraction(q)
    return 1 - (1 + Q ** (2 - p) * (1 - 1 / Q) ** 2 / (1 - Q ** (-p))) / Q


def ffc_exact(q, l, m):
    """#(D_{d,l} cap D_{d,m}) for p not dividing lm."""
    p, _ = prime_power(q)
    if not m > l >= 2:
        raise UsageError("need m > l >= 2")
    if (l * m) % p == 0:
        raise UsageError("exact formula needs p not dividing l*m")
    i = math.gcd(l, m)
    s = m // l
    Q = Fraction(q)
    if m % l == 0:
        return int(Q ** (2 * l + s - 1) * (1 - 1 / Q))
    delta = 1 if l // i == 2 else 0
    return int(Q ** (2 * i) * (Q ** (s + 1) + (1 - delta) * (Q * Q - Q)) * (1 - 1 / Q))


def ffchar_upper(q, l, m):
    """Upper bound on the non-Frobenius intersection, l prime dividing m, p | lm."""
    p, _ = prime_power(q)
    Q = Fraction(q)
    if l % p:
        return Q ** (m + -(-l // p)) * (1 - 1 / Q)
    c = -(-(m - l + 1) // l)
    return Q ** (m + l - c + -(-c // p)) * (1 - 1 / Q)


def ffcharb_lower(q, l, m):
    """Lower bound on the non-Frobenius intersection, or None if no case applies."""
    p, _ = prime_power(q)
    Q = Fraction(q)
    base = Q ** (2 * l + m // l - 1) * (1 - 1 / Q)
    if p != l and m % p == 0:
        v = valuation(m, p)
        pv = p ** v
        k = m // l
        if (pv - 1) % l:
            return base * (1 - Q ** (-k)) * _common_factor(q, p)
        mu = math.gcd(pv - 1, l)
        rs = (pv - 1) // mu
        tail = (Q ** (-k - rs + 2) * (1 - 1 / Q) ** 2 * (1 - Q ** (-rs * (mu - 1)))
                / (1 - Q ** (-rs)) * (1 + Q ** (-rs * (p - 2))))
        return base * (_common_factor(q, p) * (1 - Q ** (-k)) - tail)
    if p == l and (m // p) % p and all(r >= p for r in prime_factors(m)):
        return Q ** (2 * p + m // p - 1) * (1 - 1 / Q) ** 2 * (1 - Q ** (1 - p))
    return None


def divb_upper(q, l, m):
    """Upper bound when gcd(l, m) = 1 and p | m."""
    p, _ = prime_power(q)
    s = m // l
    Q = Fraction(q)
    return (Q ** (s + 3) - Q ** (s // p + 3)) * (1 - 1 / Q)


def intersection_count_exact(q, l, m):
    """t for the splits (l, m), exactly when a formula applies, else bounds.

    When p divides lm the value counts non-Frobenius polynomials only.
    """
    p, _ = prime_power(q)
    if not m > l >= 2:
        raise UsageError("need m > l >= 2")
    if (l * m) % p:
        return IntersectionValue("exact", exact=ffc_exact(q, l, m), source="tame")
    if math.gcd(l, m) == 1:
        if l % p == 0:
            return IntersectionValue("exact", exact=0, frobenius_free=True, source="p | l")
        return IntersectionValue("bounds", lower=0, upper=divb_upper(q, l, m),
                                 frobenius_free=True, source="p | m coprime")
    if is_prime(l) and m % l == 0:
        return IntersectionValue("bounds", lower=ffcharb_lower(q, l, m),
                                 upper=ffchar_upper(q, l, m), frobenius_free=True,
                                 source="l | m wild")
    return IntersectionValue("unknown", frobenius_free=True, source="no formula")


# Equal-degree collisions in a wild split ---------------------------------

def lower_bound_wild(q, dExp, a, m):
    """Lower bound on the non-Frobenius part of D_{d,l}, l = a p^dExp, d = l m."""
    p, e = prime_power(q)
    if a % p == 0 or a < 1 or dExp < 1 or m < 2:
        raise UsageError("need p not dividing a, dExp >= 1, m >= 2")
    r = p ** dExp
    l = a * r
    Q = Fraction(q)
    c = math.gcd(dExp, e)
    z = p ** c
    mu = math.gcd(r - 1, m)
    rs = (r - 1) // mu
    head = Q ** (l + m) * (1 - 1 / Q)
    if r == m:
        inner = (Fraction(1, 2) + (1 + 1 / Q) / (2 * z + 2) + 1 / (2 * Q)
                 - Q ** (-l) * (1 - Q ** (1 - p)) / (1 - Q ** (-p))
                 - Q ** (1 - p) * (1 - 1 / Q) / (1 - Q ** (-p)))
        return head * (1 - 1 / Q) * inner
    main = _common_factor(q, p) * (1 - Q ** (-l))
    if mu == 1:
        return head * main
    qce = Fraction(1, z)  # q^(-c/e) = p^-c
    tail = (Q ** (-l - rs + 2) * qce * (1 - 1 / Q) ** 2 * (1 - Q ** (-rs * (mu - 1)))
            / ((1 - qce) * (1 - Q ** (-rs))) * (1 + Q ** (-rs * (p - 2))))
    return head * (main - tail)


def wild_shape_of(q, l):
    """(dExp, a) with l = a p^dExp and p not dividing a."""
    p, _ = prime_power(q)
    v = valuation(l, p)
    return v, l // p ** v


# Leaves of the case tree -------------------------------------------------

LEAVES = ("I.A", "I.B", "II.A.i", "II.A.ii", "II.B.i.a", "II.B.i.b",
          "II.B.ii.a", "II.B.ii.b.alpha", "II.B.ii.b.beta")
UPPER_ONE = {"I.A", "I.B", "II.B.i.b", "II.B.ii.b.beta"}


def classify_leaf(q, d):
    p, _ = prime_power(q)
    l = smallest_prime_divisor(d)
    if d == l * l:
        return "I.A" if p != l else "I.B"
    if d % p:
        return "II.A.i" if d % (l * l) else "II.A.ii"
    if d % (l * l):
        return "II.B.i.a" if p != l else "II.B.i.b"
    if p != l:
        return "II.B.ii.a"
    return "II.B.ii.b.alpha" if d % p ** 3 else "II.B.ii.b.beta"


def leaf_lower_ratio(q, d):
    """Lower bound on #D/alpha at the leaf of (q, d), as a PSum."""
    p, _ = prime_power(q)
    l = smallest_prime_divisor(d)
    leaf = classify_leaf(q, d)
    one = PSum.const(p, 1)
    Q = lambda x: _Q(q, x)
    dl, dll = Fraction(d, l), Fraction(d, l * l)
    if leaf == "I.A":
        return one
    if leaf == "I.B":
        return (Fraction(1, 2) * (1 + Fraction(1, p + 1)) * (one - Q(-2))) + Q(-p)
    if leaf == "II.A.i":
        return one - PSum.const(p, beta_star(q, d))
    if leaf == "II.A.ii":
        return one - Q(-dl + l + dll - 1) / 2
    if leaf == "II.B.i.a":
        return one - (Q(-1) + Q(1 - p) + Q(-dl - l + dll + 3)) / 2
    if leaf == "II.B.i.b":
        return one - (Q(-1) - Q(-p)) / 2
    if leaf == "II.B.ii.a":
        return one - (Q(-1) + Q(1 - p) - Q(-p) + Q(1 - l)) / 2
    if leaf == "II.B.ii.b.alpha":
        inner = (PSum.const(p, Fraction(3, 2)) + Fraction(1, 2 * p + 2) - Q(-1)
                 - Q(-2) / 2 * (1 + Fraction(1, p + 1))
                 - Q(1 - p) / (one - Q(-p)))
        return inner / 2
    return one - Q(-1) - Q(1 - p)


def leaf_secondary_ratio(q, d):
    """The weaker closed form quoted next to 1 - beta* at leaf II.A.i."""
    l = smallest_prime_divisor(d)
    return PSum.const(_pe(q)[0], 1) - _Q(q, -Fraction(d, l) - l + Fraction(d, l * l) + 3)


def com_ratio(q, p):
    """#D/alpha lower bound for d = p^2 (exact when p = 2)."""
    Q = Fraction(q)
    return Fraction(1, 2) * (1 + Fraction(1, p + 1)) * (1 - Q ** -2) + Q ** (-p)
