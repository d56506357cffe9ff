"""Decomposition of monic original polynomials.

``tame_decompose`` handles left degrees coprime to p (at most one normal
decomposition per split), ``wild_decompose`` is the coefficient-comparison
algorithm for p | deg g, and ``brute_decompose`` is the exhaustive
completeness oracle.  Throughout, f = g o h with deg g = l and
deg h = m, so d = l*m.
"""

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .errors import BudgetExceeded, UsageError
from .field import FieldElement
from .poly import Poly, compose, encode_int, poly_pth_root, taylor_constants

DEFAULT_BUDGET = 1 << 28


@dataclass(frozen=True)
class NormalDecomposition:
    g: Poly
    h: Poly

    def __post_init__(self):
        if self.g.field != self.h.field:
            raise UsageError("components over different fields")
        if not (self.h.is_monic() and self.h.is_original()):
            raise UsageError("right component must be monic and original")
        if self.g.degree is None or self.g.degree < 2 or self.h.degree < 2:
            raise UsageError("both components need degree >= 2")

    @classmethod
    def checked(cls, g, h, f):
        dec = cls(g, h)
        if compose(g, h) != f:
            raise AssertionError("decomposition does not compose to f")
        return dec

    def compose(self):
        return compose(self.g, self.h)

    def sort_key(self):
        return (encode_int(self.h), self.g.sort_key())

    def is_frobenius(self):
        """True when g is x^p composed with something, i.e. g' = 0."""
        from .poly import derivative
        return derivative(self.g).is_zero()


def _sorted(decs):
    return tuple(sorted(set(decs), key=NormalDecomposition.sort_key))


def _check_monic_original(f):
    if f.degree is None or not f.is_monic() or not f.is_original():
        raise UsageError("input must be a monic original polynomial")


def divisors(n):
    return [e for e in range(1, n + 1) if n % e == 0]


# -- tame ------------------------------------------------------------------------

def _power_coeff(base, n, j):
    return (base ** n).idx(j)


def tame_decompose(f, m):
    """The unique normal (g, h) with deg g = m, or None.  Requires p not dividing m."""
    _check_monic_original(f)
    F = f.field
    d = f.degree
    if m < 2 or m >= d or d % m:
        raise UsageError(f"left degree {m} is not a proper divisor of {d}")
    if m % F.p == 0:
        raise UsageError(f"left degree {m} is divisible by the characteristic")
    mb = d // m
    minv = F.inv(F.from_int(m))
    h = [0] * mb + [1]
    for k in range(1, mb):
        top = Poly.from_indices(F, h)
        known = _power_coeff(top, m, d - k)
        h[mb - k] = F.mul(F.sub(f.idx(d - k), known), minv)
    hp = Poly.from_indices(F, h)
    g = taylor_constants(f, hp)
    if g is None or compose(g, hp) != f:
        return None
    return NormalDecomposition(g, hp)


# -- brute force --------------------------------------------------------------------

def monic_originals(F, n):
    """All monic original polynomials of degree n, in encoding order."""
    q = F.q
    for code in range(q ** (n - 1)):
        cs = [0]
        c = code
        for _ in range(n - 1):
            c, r = divmod(c, q)
            cs.append(r)
        cs.append(1)
        yield Poly.from_indices(F, cs)


def brute_decompose(f, m, budget=DEFAULT_BUDGET):
    """Every normal (g, h) with deg g = m, by scanning all monic original h."""
    _check_monic_original(f)
    F = f.field
    d = f.degree
    if m < 1 or d % m:
        raise UsageError(f"left degree {m} does not divide {d}")
    mb = d // m
    need = F.q ** (mb - 1)
    if need > budget:
        raise BudgetExceeded(f"brute force needs q^(d/m-1) = {need} candidates, budget {budget}",
                             need, budget)
    out = []
    if m < 2 or mb < 2:
        return ()
    for h in monic_originals(F, mb):
        g = taylor_constants(f, h)
        if g is not None and g.degree == m:
            out.append(NormalDecomposition(g, h))
    return _sorted(out)


# -- wild ------------------------------------------------------------------------------

@dataclass(frozen=True)
class WildParams:
    dExp: int
    r: int
    a: int
    l: int
    m: int
    kappa: Optional[int] = None
    i0: Optional[Fraction] = None
    c: int = 0
    z: int = 0
    sigma: int = 1


@dataclass(frozen=True)
class WildOutcome:
    failure: bool
    decompositions: tuple = ()
    params: Optional[WildParams] = None
    reason: str = ""
    trace: tuple = dc_field(default=(), compare=False)

    def __iter__(self):
        if self.failure:
            raise UsageError("a Failure outcome carries no decompositions")
        return iter(self.decompositions)

    def __len__(self):
        return 0 if self.failure else len(self.decompositions)


def wild_shape(F, l):
    """(dExp, r, a) with l = a * r, r = p^dExp, p not dividing a."""
    p = F.p
    dExp, a = 0, l
    while a % p == 0:
        a //= p
        dExp += 1
    return dExp, p ** dExp, a


def i0_value(kappa, m, d, r):
    return Fraction(kappa * m - d, r - 1) + m


def condition_pc(g, h):
    """The non-degeneracy condition under which the wild algorithm must succeed.

    Returns False also when (g, h) is not of the admissible shape
    (h_{m-1} != 0, p not dividing a*kappa).
    """
    F = g.field
    l, m = g.degree, h.degree
    d = l * m
    dExp, r, a = wild_shape(F, l)
    if dExp == 0 or h.idx(m - 1) == 0:
        return False
    kappa = max((i for i in range(l) if g.idx(i)), default=0)
    if kappa == 0 or kappa % F.p == 0:
        return False
    i0 = i0_value(kappa, m, d, r)
    if i0.denominator == 1 and 1 <= i0 < m:
        c = math.gcd(dExp, F.e)
        base = F.div(F.neg(F.mul(F.from_int(kappa), g.idx(kappa))), F.from_int(a))
        if F.pow(base, (F.q - 1) // (F.p ** c - 1)) == 1:
            return False
    return True


class _Fail(Exception):
    pass


class _Empty(Exception):
    pass


def wild_decompose(f, l):
    """Run the wild coefficient-comparison algorithm at left degree l (p | l)."""
    _check_monic_original(f)
    F = f.field
    p = F.p
    d = f.degree
    if l < 1 or d % l:
        raise UsageError(f"left degree {l} does not divide {d}")
    if l % p:
        raise UsageError(f"left degree {l} is not divisible by p = {p}")
    m = d // l
    if m < 2:
        raise UsageError("right component must have degree >= 2")
    trace = []
    try:
        return _wild(f, l, m, trace)
    except _Fail as exc:
        dExp, r, a = wild_shape(F, l)
        return WildOutcome(True, (), WildParams(dExp, r, a, l, m), str(exc), tuple(trace))


def _wild(f, l, m, trace):
    F = f.field
    p, q = F.p, F.q
    d = l * m
    dExp, r, a = wild_shape(F, l)
    c = math.gcd(dExp, F.e)
    z = p ** c

    # step 1
    j = max((i for i in range(1, d) if f.idx(i) and i % p), default=None)
    if j is None:
        fs = poly_pth_root(f)
        ls = l // p
        trace.append(f"step 1: no coefficient at an index prime to p; recurse on f^(1/p) with l* = {ls}")
        if ls % p == 0:
            sub = _wild(fs, ls, m, trace)
            if sub.failure:
                return sub
            pairs = [(dd.g, dd.h) for dd in sub.decompositions]
        elif ls == 1:
            pairs = [(Poly.x(F), fs)]
        else:
            t = tame_decompose(fs, ls)
            pairs = [] if t is None else [(t.g, t.h)]
        xp = Poly.monomial(F, p)
        decs = [NormalDecomposition.checked(compose(xp, gs), hs, f) for gs, hs in pairs]
        params = WildParams(dExp, r, a, l, m, c=c, z=z, sigma=max(1, len(decs)))
        return WildOutcome(False, _sorted(decs), params, "frobenius recursion", tuple(trace))

    # step 2
    if m % p:
        if j % m:
            raise _Fail(f"step 2: m = {m} does not divide j = {j}")
        kappa = j // m
    else:
        if (j + 1) % m:
            raise _Fail(f"step 2: m = {m} does not divide j+1 = {j + 1}")
        kappa = (j + 1) // m
    if kappa % p == 0:
        raise _Fail(f"step 2: p divides kappa = {kappa}")
    i0 = i0_value(kappa, m, d, r)
    trace.append(f"step 2: j = {j}, kappa = {kappa}, i0 = {i0}")
    km = kappa * m
    kap = F.from_int(kappa)
    a_el = F.from_int(a)

    def known(gk, h, jj):
        top = Poly.from_indices(F, h)
        v = top ** l
        if gk:
            v = v + (top ** kappa).scale(FieldElement(F, gk))
        return v.idx(jj)

    def e1(gk, h, i):
        jj = (kappa - 1) * m + i
        denom = F.mul(kap, gk)
        if denom == 0:
            raise _Empty()
        h[i] = F.div(F.sub(f.idx(jj), known(gk, h, jj)), denom)

    def e2(gk, h, i):
        jj = d - r * (m - i)
        y = F.div(F.sub(f.idx(jj), known(gk, h, jj)), a_el)
        root = F.frob(y, -dExp)
        if F.pow(root, r) != y:
            raise _Empty()
        h[i] = root

    def e3(gk, h, i):
        jj = (kappa - 1) * m + i
        rhs = F.sub(f.idx(jj), known(gk, h, jj))
        kg = F.mul(kap, gk)
        sols = [s for s in range(q) if F.add(F.mul(a_el, F.pow(s, r)), F.mul(kg, s)) == rhs]
        if len(sols) != 1:
            raise _Fail(f"E3 at x^{jj} has {len(sols)} solutions")
        h[i] = sols[0]

    candidates = []     # list of (g_kappa, h coefficient list)
    sigma = 1
    try:
        h = [0] * m + [1]
        if km >= d - r + 2:
            trace.append("step 3")
            gk = f.idx(km)
            for i in range(m - 1, 0, -1):
                e1(gk, h, i)
            candidates.append((gk, h))
        elif km == d - r + 1:
            trace.append("step 4")
            gk = f.idx(km)
            e3(gk, h, m - 1)
            for i in range(m - 2, 0, -1):
                e1(gk, h, i)
            candidates.append((gk, h))
        elif km == d - r:
            fk, fk1 = f.idx(km), f.idx(km - 1)
            S = [s for s in range(1, q)
                 if F.sub(F.sub(F.mul(a_el, F.pow(s, r + 1)), F.mul(fk, s)), fk1) == 0]
            sigma = len(S)
            trace.append(f"step 5: S has {len(S)} elements")
            for s in S:
                hs = [0] * m + [1]
                hs[m - 1] = s
                gk = F.sub(fk, F.mul(a_el, F.pow(s, r)))
                try:
                    for i in range(m - 2, 0, -1):
                        e1(gk, hs, i)
                except _Empty:
                    continue
                candidates.append((gk, hs))
        else:
            trace.append("step 6")
            e2(0, h, m - 1)
            if m % r:
                gk = F.sub(f.idx(km), known(0, h, km))
            else:
                denom = F.mul(kap, h[m - 1])
                if denom == 0:
                    raise _Empty()
                gk = F.div(F.sub(f.idx(km - 1), known(0, h, km - 1)), denom)
            i = m - 2
            while i >= 1 and i > i0:
                e2(gk, h, i)
                i -= 1
            if i0.denominator == 1 and i0 >= 1:
                e3(gk, h, int(i0))
                i = int(i0) - 1
            while i >= 1:
                e1(gk, h, i)
                i -= 1
            candidates.append((gk, h))
    except _Empty:
        candidates = []

    # steps 7 and 8
    decs = []
    for gk, hc in candidates:
        hp = Poly.from_indices(F, hc)
        g = taylor_constants(f, hp)
        if g is not None and g.degree == l and compose(g, hp) == f:
            decs.append(NormalDecomposition(g, hp))
    params = WildParams(dExp, r, a, l, m, kappa, i0, c, z, sigma)
    trace.append(f"steps 7-8: {len(decs)} verified")
    return WildOutcome(False, _sorted(decs), params, "", tuple(trace))


# -- all splits --------------------------------------------------------------------

UNKNOWN = "unknown"


@dataclass(frozen=True)
class SplitResult:
    decompositions: tuple
    method: str
    complete: bool = True


def decompose_all(f, budget=DEFAULT_BUDGET):
    """Map each proper divisor e of deg f to the normal decompositions with deg g = e.

    Wild splits use the wild algorithm; brute force settles the split
    whenever it fits the budget, because the wild algorithm only covers
    decompositions with h_{m-1} != 0.  A split that cannot be settled is
    reported with ``complete=False`` (method "unknown" when nothing
    at all is known).
    """
    _check_monic_original(f)
    F = f.field
    d = f.degree
    out = {}
    for e in divisors(d):
        if e in (1, d):
            continue
        if e % F.p:
            t = tame_decompose(f, e)
            out[e] = SplitResult(() if t is None else (t,), "tame")
            continue
        w = wild_decompose(f, e)
        need = F.q ** (d // e - 1)
        if need <= budget:
            b = brute_decompose(f, e, budget)
            if not w.failure and not set(w.decompositions) <= set(b):
                raise AssertionError("wild output is not a subset of the brute-force set")
            out[e] = SplitResult(b, "wild+brute" if not w.failure else "brute")
        elif w.failure:
            out[e] = SplitResult((), UNKNOWN, complete=False)
        else:
            out[e] = SplitResult(w.decompositions, "wild", complete=False)
    return out
