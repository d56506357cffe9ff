"""Dickson polynomials and distinct-degree collisions.

Builders produce a ``CollisionTuple`` (f, g, h, gStar, hStar) with
g o h = gStar o hStar = f, deg h = deg gStar = l and deg g = deg hStar = m.
The First Case is the exponential family built from x^k w^l, the Second
Case the Dickson family.  The shift parameter of both families is called
``shift`` here; ``a`` is reserved for the cofactor of a wild left degree.
"""

import math
from dataclasses import dataclass

from .decompose import NormalDecomposition, brute_decompose, tame_decompose
from .errors import DomainError, UsageError
from .field import FieldElement
from .poly import (Poly, compose, derivative, encode_int, frobenius_poly,
                   poly_pth_root)


def dickson(n, z):
    """T_n(x, z) via T_0 = 2, T_1 = x, T_n = x T_{n-1} - z T_{n-2}."""
    if n < 0:
        raise UsageError("Dickson index must be >= 0")
    F = z.field
    t0 = Poly.constant(F, 2)
    if n == 0:
        return t0
    x = Poly.x(F)
    t1 = x
    for _ in range(n - 1):
        t0, t1 = t1, x * t1 - t0.scale(z)
    return t1


def _lin(F, c):
    """x + c."""
    return Poly(F, [c, 1])


@dataclass(frozen=True)
class CollisionTuple:
    f: Poly
    g: Poly
    h: Poly
    gStar: Poly
    hStar: Poly
    split: tuple

    def __post_init__(self):
        for comp in (self.f, self.g, self.h, self.gStar, self.hStar):
            if not (comp.is_monic() and comp.is_original()):
                raise AssertionError("collision components must be monic and original")
        if compose(self.g, self.h) != self.f or compose(self.gStar, self.hStar) != self.f:
            raise AssertionError("the two compositions do not agree with f")

    def decompositions(self):
        return NormalDecomposition(self.g, self.h), NormalDecomposition(self.gStar, self.hStar)


@dataclass(frozen=True)
class FirstCaseParams:
    w: Poly
    shift: FieldElement
    k: int
    s: int
    unique: bool = True


@dataclass(frozen=True)
class SecondCaseParams:
    z: FieldElement
    shift: FieldElement


@dataclass(frozen=True)
class RecoveryFailed:
    reason: str

    def __bool__(self):
        return False


def _coprime_split(l, m):
    if not (m > l >= 2):
        raise UsageError("need m > l >= 2")
    if math.gcd(l, m) != 1:
        raise UsageError("need gcd(l, m) = 1")


def first_case_build(l, m, params):
    w, a = params.w, params.shift
    F = w.field
    _coprime_split(l, m)
    s, k = divmod(m, l)
    if not w.is_monic() or w.degree != s:
        raise UsageError(f"w must be monic of degree {s}")
    if F.p and l % F.p == 0:
        raise DomainError("first case needs p not dividing l")
    x = Poly.x(F)
    if (w.scale(k) + (x * derivative(w)).scale(l)).is_zero():
        raise DomainError("first case needs k*w + l*x*w' != 0")
    xl = Poly.monomial(F, l)
    al = a ** l
    wl = w ** l
    c = (a ** (k * l)) * wl(al)
    core = Poly.monomial(F, k * l) * compose(wl, xl)
    f = compose(compose(_lin(F, -c), core), _lin(F, a))
    g = compose(compose(_lin(F, -c), Poly.monomial(F, k) * wl), _lin(F, al))
    h = compose(compose(_lin(F, -al), xl), _lin(F, a))
    b = (a ** k) * w(al)
    g_star = compose(compose(_lin(F, -c), xl), _lin(F, b))
    h_star = compose(compose(_lin(F, -b), Poly.monomial(F, k) * compose(w, xl)), _lin(F, a))
    return CollisionTuple(f, g, h, g_star, h_star, (l, m))


def _lth_root_monic(W, l, s):
    """Monic w of degree s with w^l = W (p not dividing l), or None."""
    F = W.field
    if W.degree != l * s or not W.is_monic():
        return None
    linv = F.inv(F.from_int(l))
    w = [0] * s + [1]
    for t in range(1, s + 1):
        known = (Poly.from_indices(F, w) ** l).idx(l * s - t)
        w[s - t] = F.mul(F.sub(W.idx(l * s - t), known), linv)
    wp = Poly.from_indices(F, w)
    return wp if wp ** l == W else None


def _witness(f, g, h, l, k, s):
    F = f.field
    a = h.coeff(l - 1) / l
    al = a ** l
    shifted = compose(g, _lin(F, -al))
    u = shifted - Poly.constant(F, shifted.coeff(0))
    if any(u.idx(i) for i in range(k)):
        return None
    W = Poly.from_indices(F, u.indices[k:])
    w = _lth_root_monic(W, l, s)
    if w is None:
        return None
    try:
        t = first_case_build(l, l * s + k, FirstCaseParams(w, a, k, s))
    except (DomainError, UsageError):
        return None
    if t.f != f:
        return None
    return FirstCaseParams(w, a, k, s)


def first_case_recover(f, l):
    """Recover (w, shift) of a First Case collision from f alone."""
    F = f.field
    d = f.degree
    if d is None or not f.is_monic() or not f.is_original():
        return RecoveryFailed("input must be monic and original")
    if l < 2 or d % l:
        return RecoveryFailed(f"{l} does not divide deg f = {d}")
    m = d // l
    if m <= l or math.gcd(l, m) != 1:
        return RecoveryFailed("degrees do not form a coprime split with m > l")
    if l % F.p == 0:
        return RecoveryFailed("first case needs p not dividing l")
    s, k = divmod(m, l)
    if m % F.p:
        t = tame_decompose(f, m)
        if t is None:
            return RecoveryFailed(f"f has no decomposition with deg h = {l}")
        wit = _witness(f, t.g, t.h, l, k, s)
        return wit if wit is not None else RecoveryFailed("cofactor is not of the form x^k w^l")
    found = []
    for dec in brute_decompose(f, m):
        wit = _witness(f, dec.g, dec.h, l, k, s)
        if wit is not None:
            found.append(wit)
    if not found:
        return RecoveryFailed("no first case witness")
    found.sort(key=lambda w: (w.shift.idx, encode_int(w.w) if w.w.degree > 0 else 0))
    best = found[0]
    return FirstCaseParams(best.w, best.shift, k, s, unique=len(found) == 1)


def second_case_build(l, m, params):
    z, a = params.z, params.shift
    F = z.field
    _coprime_split(l, m)
    if (l * m) % F.p == 0:
        raise DomainError("second case needs p not dividing l*m")
    if not z:
        raise DomainError("second case needs z != 0")
    n = l * m
    tn_a = dickson(n, z)(a)
    tl_a = dickson(l, z)(a)
    tm_a = dickson(m, z)(a)
    f = compose(compose(_lin(F, -tn_a), dickson(n, z)), _lin(F, a))
    g = compose(compose(_lin(F, -tn_a), dickson(m, z ** l)), _lin(F, tl_a))
    h = compose(compose(_lin(F, -tl_a), dickson(l, z)), _lin(F, a))
    g_star = compose(compose(_lin(F, -tn_a), dickson(l, z ** m)), _lin(F, tm_a))
    h_star = compose(compose(_lin(F, -tm_a), dickson(m, z)), _lin(F, a))
    return CollisionTuple(f, g, h, g_star, h_star, (l, m))


def second_case_recover(f):
    F = f.field
    n = f.degree
    if n is None or n < 2 or not f.is_monic() or not f.is_original():
        return RecoveryFailed("input must be monic original of degree >= 2")
    if n % F.p == 0:
        return RecoveryFailed("second case needs p not dividing deg f")
    a = f.coeff(n - 1) / n
    z = ((a * a) * (n * (n - 1) // 2) - f.coeff(n - 2)) / n
    if not z:
        return RecoveryFailed("z = 0: not a Dickson form")
    rebuilt = compose(compose(_lin(F, -dickson(n, z)(a)), dickson(n, z)), _lin(F, a))
    if rebuilt != f:
        return RecoveryFailed("rebuilt Dickson form differs from f")
    return SecondCaseParams(z, a)


FIRST_ONLY = "FirstOnly"
SECOND_ONLY = "SecondOnly"
BOTH = "Both"
NEITHER = "Neither"


def mutual_exclusion_check(l, tup):
    first = bool(first_case_recover(tup.f, l))
    second = bool(second_case_recover(tup.f))
    if first and second:
        if l != 2:
            raise AssertionError("a collision is in both cases with l >= 3")
        return BOTH
    if first:
        return FIRST_ONLY
    if second:
        return SECOND_ONLY
    return NEITHER


def lxw_sides(w, k, l):
    """Truth values of both sides of the degenerate-witness equivalence."""
    F = w.field
    p = F.p
    s = w.degree
    m = l * s + k
    x = Poly.x(F)
    left = l % p != 0 and (w.scale(k) + (x * derivative(w)).scale(l)).is_zero()
    r = s % p
    right = False
    if m % p == 0 and all(w.idx(i) == 0 for i in range(r)):
        rest = Poly.from_indices(F, w.indices[r:])
        right = derivative(rest).is_zero()
    return left, right


def degenerate_witness_test(w, k, l):
    """The monic u with w = x^r u^p when k*w + l*x*w' = 0 and p does not divide l, else None."""
    F = w.field
    if not w.is_monic():
        raise UsageError("w must be monic")
    if not 1 <= k < l:
        raise UsageError("need 1 <= k < l")
    left, _ = lxw_sides(w, k, l)
    if not left:
        return None
    r = w.degree % F.p
    rest = Poly.from_indices(F, w.indices[r:])
    return poly_pth_root(rest)


def frobenius_collision(h, j):
    """The two normal decompositions of x^(p^j) o h = phi_j(h) o x^(p^j)."""
    F = h.field
    if j < 1:
        raise UsageError("j must be >= 1")
    if not (h.is_monic() and h.is_original()) or h.degree < 2:
        raise UsageError("h must be monic original of degree >= 2")
    xp = Poly.monomial(F, F.p ** j)
    left = NormalDecomposition(xp, h)
    right = NormalDecomposition(frobenius_poly(h, j), xp)
    if left.compose() != right.compose():
        raise AssertionError("Frobenius identity violated")
    return left, right
