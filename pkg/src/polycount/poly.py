"""Dense univariate polynomials over a FieldSpec.

Coefficients are kept as a trimmed tuple of field indices, constant
term first.  The zero polynomial has degree ``None``: comparisons such
as ``f.degree < 3`` then raise instead of silently succeeding, so every
algorithm has to handle zero explicitly.
"""

import re

from .errors import DomainError, UsageError
from .field import FieldElement, FieldSpec, log_p, parse_element

ZERO_DEGREE = None


def _trimmed(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


class Poly:
    __slots__ = ("field", "_c")

    def __init__(self, field, coeffs=()):
        if not isinstance(field, FieldSpec):
            raise UsageError("Poly needs a FieldSpec")
        cs = [field.element(c).idx for c in coeffs]
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_c", _trimmed(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def from_indices(cls, field, idx):
        """Build from raw field indices without conversion."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "_c", _trimmed(list(idx)))
        return obj

    @classmethod
    def x(cls, field):
        return cls.from_indices(field, (0, 1))

    @classmethod
    def monomial(cls, field, k, c=1):
        c = field.element(c).idx
        return cls.from_indices(field, (0,) * k + (c,))

    @classmethod
    def constant(cls, field, c):
        return cls.from_indices(field, (field.element(c).idx,))

    # -- accessors ----------------------------------------------------------------

    @property
    def indices(self):
        return self._c

    @property
    def coeffs(self):
        return tuple(FieldElement(self.field, c) for c in self._c)

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else ZERO_DEGREE

    def idx(self, i):
        return self._c[i] if 0 <= i < len(self._c) else 0

    def coeff(self, i):
        return FieldElement(self.field, self.idx(i))

    def lc(self):
        if not self._c:
            raise DomainError("zero polynomial has no leading coefficient")
        return FieldElement(self.field, self._c[-1])

    def is_zero(self):
        return not self._c

    def is_monic(self):
        return bool(self._c) and self._c[-1] == 1

    def is_original(self):
        return self.idx(0) == 0

    def is_constant(self):
        return len(self._c) <= 1

    # -- arithmetic -----------------------------------------------------------------

    def _check(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise UsageError("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return Poly.constant(self.field, other)
        raise UsageError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        other = self._check(other)
        F = self.field
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = F.add(out[i], y)
        return Poly.from_indices(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly.from_indices(F, [F.neg(c) for c in self._c])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        F = self.field
        c = F.element(c).idx
        return Poly.from_indices(F, [F.mul(c, x) for x in self._c])

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._check(other)
        F = self.field
        a, b = self._c, other._c
        if not a or not b:
            return Poly.from_indices(F, ())
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly.from_indices(F, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise UsageError("negative power of a polynomial")
        result = Poly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        F = self.field
        rem = list(self._c)
        db = len(other._c) - 1
        inv = F.inv(other._c[-1])
        quo = [0] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = F.mul(rem[i], inv)
            if c:
                quo[i - db] = c
                for j, y in enumerate(other._c):
                    rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, y))
        return Poly.from_indices(F, quo), Poly.from_indices(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate at a field element, or compose when given a Poly."""
        if isinstance(x, Poly):
            return compose(self, x)
        F = self.field
        xi = F.element(x).idx
        acc = 0
        for c in reversed(self._c):
            acc = F.add(F.mul(acc, xi), c)
        return FieldElement(F, acc)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self._c))

    def sort_key(self):
        return (len(self._c), self._c[::-1])

    def __repr__(self):
        return f"Poly({format_poly(self)!r} over GF({self.field.q}))"

    def __str__(self):
        return format_poly(self)


class LinearUnit:
    """v = a*x + b with a != 0."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        if a.field != b.field:
            raise UsageError("a and b must share a field")
        if not a:
            raise DomainError("linear unit needs a != 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("LinearUnit is immutable")

    def as_poly(self):
        return Poly(self.a.field, [self.b, self.a])

    def inverse(self):
        ai = self.a.inverse()
        return LinearUnit(ai, -(self.b * ai))

    def __eq__(self, other):
        return isinstance(other, LinearUnit) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"LinearUnit({self.a}, {self.b})"


def _same_field(*ps):
    F = ps[0].field
    for p in ps[1:]:
        if p.field != F:
            raise UsageError("polynomials over different fields")
    return F


def compose(g, h):
    """g(h) by Horner's rule in h."""
    F = _same_field(g, h)
    if g.is_zero():
        return g
    result = Poly.from_indices(F, (g._c[-1],))
    for c in reversed(g._c[:-1]):
        result = result * h
        if c:
            result = result + Poly.from_indices(F, (c,))
    return result


def derivative(f):
    F = f.field
    p = F.p
    out = []
    for i in range(1, len(f._c)):
        k = i % p
        out.append(F.mul(F.from_int(k), f._c[i]) if k else 0)
    return Poly.from_indices(F, out)


def normalize_decomposition(g, h):
    """Move (g, h) to (g*, h*) with h* monic original and g* o h* = g o h."""
    F = _same_field(g, h)
    if h.is_constant():
        raise UsageError("right component must be nonconstant")
    a = h.lc().inverse()
    b = -(a * h.coeff(0))
    h_star = h.scale(a) + Poly.constant(F, b)
    g_star = compose(g, LinearUnit(a, b).inverse().as_poly())
    return g_star, h_star


def second_normalize(f):
    """Return (f o (x - shift), shift) with vanishing x^(d-1) coefficient."""
    F = f.field
    d = f.degree
    if d is None or d < 1:
        raise UsageError("second_normalize needs a nonconstant polynomial")
    if d % F.p == 0:
        raise DomainError(f"characteristic {F.p} divides degree {d}")
    shift = f.coeff(d - 1) / (f.lc() * d)
    lin = Poly(F, [-shift, 1])
    return compose(f, lin), shift


def taylor_in_base(f, h):
    """Remainders (t_0, t_1, ...) with f = sum t_i h^i and deg t_i < deg h."""
    _same_field(f, h)
    if h.is_constant():
        raise UsageError("base polynomial must be nonconstant")
    out = []
    rest = f
    while not rest.is_zero():
        rest, r = divmod(rest, h)
        out.append(r)
    if not out:
        out.append(f)
    return out


def taylor_constants(f, h):
    """The coefficient list of g with f = g o h, or None if no such g exists."""
    ts = taylor_in_base(f, h)
    cs = []
    for t in ts:
        if t.degree is not None and t.degree > 0:
            return None
        cs.append(t.idx(0))
    return Poly.from_indices(f.field, cs)


def poly_pth_root(f):
    F = f.field
    if not derivative(f).is_zero():
        raise DomainError("polynomial is not a p-th power (nonzero derivative)")
    p = F.p
    return Poly.from_indices(F, [F.frob(f.idx(i * p), -1) for i in range((len(f._c) + p - 1) // p)])


def is_frobenius_composition(f):
    return derivative(f).is_zero()


def frobenius_poly(h, j):
    F = h.field
    return Poly.from_indices(F, [F.frob(c, j) for c in h._c])


def x_power(F, r):
    log_p(r, F.p)
    return Poly.monomial(F, r)


# -- canonical packed encoding ------------------------------------------------------

def _width(q, d):
    return ((q ** max(d - 1, 0) - 1).bit_length() + 7) // 8


def encode_int(f):
    F = f.field
    q = F.q
    n = 0
    for c in reversed(f._c[1:-1]):
        n = n * q + c
    return n


def encode_canonical(f):
    d = f.degree
    if d is None or not f.is_monic() or not f.is_original():
        raise UsageError("encode_canonical needs a monic original polynomial")
    return encode_int(f).to_bytes(_width(f.field.q, d), "little")


def decode_int(F, d, n):
    q = F.q
    cs = [0]
    for _ in range(d - 1):
        n, r = divmod(n, q)
        cs.append(r)
    if n:
        raise UsageError("encoding out of range for this degree")
    cs.append(1)
    return Poly.from_indices(F, cs)


def decode_canonical(F, d, data):
    if d < 1:
        raise UsageError("degree must be >= 1")
    if len(data) != _width(F.q, d):
        raise UsageError("encoding has the wrong width")
    return decode_int(F, d, int.from_bytes(data, "little"))


# -- text format ---------------------------------------------------------------------

_TERM = re.compile(r"^(?:(\[[^\]]*\]|\d+)\s*(?:\*\s*)?)?(x(?:\s*\^\s*(\d+))?)?$")


def _split_terms(text):
    terms = []
    depth = 0
    cur = ""
    sign = 1
    start = 0
    for pos, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            terms.append((sign, cur.strip(), start))
            cur, sign, start = "", (1 if ch == "+" else -1), pos + 1
            continue
        if depth == 0 and ch in "+-":
            if ch == "-":
                sign = -sign
            start = pos + 1
            continue
        cur += ch
    if cur.strip():
        terms.append((sign, cur.strip(), start))
    return terms


def parse_poly(F, text):
    """Parse e.g. "x^9+x^5-x^4+x^3+x^2", "2*x^3+[1,1]*x+1"."""
    src = str(text).replace("−", "-").replace("**", "^")
    if not src.strip():
        raise UsageError("empty polynomial")
    if src.strip() == "0":
        return Poly(F, ())
    acc = {}
    for sign, term, pos in _split_terms(src):
        m = _TERM.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise UsageError(f"cannot parse term {term!r} at position {pos}")
        coef = parse_element(F, m.group(1)) if m.group(1) else F.one()
        if m.group(2) is None:
            k = 0
        else:
            k = int(m.group(3)) if m.group(3) else 1
        if sign < 0:
            coef = -coef
        acc[k] = acc.get(k, F.zero()) + coef
    if not acc:
        raise UsageError(f"no terms in {text!r}")
    cs = [0] * (max(acc) + 1)
    for k, c in acc.items():
        cs[k] = c.idx
    return Poly.from_indices(F, cs)


def format_poly(f):
    F = f.field
    if f.is_zero():
        return "0"
    parts = []
    for k in range(len(f._c) - 1, -1, -1):
        c = f._c[k]
        if not c:
            continue
        cs = F.format_index(c)
        if k == 0:
            parts.append(cs)
            continue
        mon = "x" if k == 1 else f"x^{k}"
        parts.append(mon if c == 1 else f"{cs}*{mon}")
    return "+".join(parts)
