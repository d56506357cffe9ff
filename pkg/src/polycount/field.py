"""Finite fields GF(p^e).

Elements are stored as integer indices ``sum(coords[i] * p**i)`` where
``coords`` is the coordinate vector with respect to the power basis of
the modulus.  The index is a bijection onto the coordinate vectors, so
``FieldElement.coords`` is always available; the integer form only
exists to make table lookups cheap.

All integer-level arithmetic lives on ``FieldSpec`` (``add``, ``mul``,
...).  ``FieldElement`` is a thin value wrapper for user-facing code.
"""

import itertools
import math
import re

from .errors import DomainError, UsageError

MAX_Q = 1 << 20
_TABLE_Q = 1 << 16     # log/exp tables up to this size
_ADD_TABLE_Q = 1 << 10


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q):
    """Return (p, e) with q = p**e, or raise UsageError."""
    if q < 2:
        raise UsageError(f"{q} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise UsageError(f"{q} is not a prime power")
    p = fs[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# -- polynomials over Z/p as coefficient lists, constant term first ----------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, n, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        n >>= 1
    return result


def is_irreducible(coeffs, p):
    """Ben-Or test for a monic polynomial over Z/p (constant term first)."""
    m = _trim([c % p for c in coeffs])
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    xp = [0, 1]
    for _ in range(n // 2):
        xp = _ppowmod(xp, p, m, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(m, _trim(diff), p)) > 1:
            return False
    return True


def default_modulus(p, e):
    """Lexicographically smallest monic irreducible of degree e (constant term first)."""
    if e == 1:
        return (0, 1)
    for lower in itertools.product(range(p), repeat=e):
        cand = list(lower) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")


class FieldSpec:
    """GF(p^e) with an explicit monic irreducible modulus."""

    def __init__(self, p, e=1, modulus=None):
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        if e < 1:
            raise UsageError("extension degree must be >= 1")
        if p ** e > MAX_Q:
            raise UsageError(f"field size {p}^{e} exceeds {MAX_Q}")
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise UsageError("modulus must be monic of degree e")
        if any(not 0 <= c < p for c in modulus):
            raise UsageError("modulus coefficients must lie in [0, p)")
        if e > 1 and not is_irreducible(modulus, p):
            raise UsageError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self._cache = {}

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"FieldSpec({self.p})"
        return f"FieldSpec({self.p}, {self.e}, modulus={self.modulus})"

    def designator(self):
        if self.e == 1:
            return str(self.p)
        return f"{self.p}^{self.e}/" + ",".join(map(str, self.modulus))

    # -- coordinates ----------------------------------------------------------

    def coords(self, a):
        p = self.p
        out = []
        for _ in range(self.e):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_coords(self, cs):
        if len(cs) > self.e:
            raise UsageError(f"too many coordinates for GF({self.q})")
        a = 0
        for c in reversed(list(cs)):
            a = a * self.p + (int(c) % self.p)
        return a

    def _cmul(self, a, b):
        p = self.p
        prod = _pmul(self.coords(a), self.coords(b), p)
        return self.from_coords(_pmod(prod, self.modulus, p) + [])

    # -- lazily built tables --------------------------------------------------

    def _logexp(self):
        t = self._cache.get("logexp")
        if t is None and self.q <= _TABLE_Q:
            q = self.q
            g = self.primitive_element()
            exp = [0] * (2 * (q - 1))
            log = [0] * q
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = self._cmul(x, g)
            exp[q - 1:] = exp[:q - 1]
            t = (exp, log)
            self._cache["logexp"] = t
        return t

    def _addtab(self):
        t = self._cache.get("add")
        if t is None:
            q, p = self.q, self.p
            rows = []
            digs = [self.coords(a) for a in range(q)]
            for a in range(q):
                da = digs[a]
                rows.append([self.from_coords([(x + y) % p for x, y in zip(da, digs[b])])
                             for b in range(q)])
            negs = [self.from_coords([(-x) % p for x in digs[a]]) for a in range(q)]
            t = (rows, negs)
            self._cache["add"] = t
        return t

    def primitive_element(self):
        g = self._cache.get("prim")
        if g is not None:
            return g
        q = self.q
        if q == 2:
            g = 1
        else:
            fs = prime_factors(q - 1)
            for cand in range(2 if self.e == 1 else self.p, q):
                if all(self._cpow(cand, (q - 1) // r) != 1 for r in fs):
                    g = cand
                    break
        self._cache["prim"] = g
        return g

    def _cpow(self, a, n):
        result = 1
        while n:
            if n & 1:
                result = self._cmul(result, a)
            a = self._cmul(a, a)
            n >>= 1
        return result

    # -- integer-level arithmetic ---------------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.q <= _ADD_TABLE_Q:
            return self._addtab()[0][a][b]
        p = self.p
        return self.from_coords([(x + y) % p for x, y in zip(self.coords(a), self.coords(b))])

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        if self.q <= _ADD_TABLE_Q:
            return self._addtab()[1][a]
        return self.from_coords([(-x) % self.p for x in self.coords(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return a * b % self.p
        t = self._logexp()
        if t is not None:
            exp, log = t
            return exp[log[a] + log[b]]
        return self._cmul(a, b)

    def inv(self, a):
        if a == 0:
            raise DomainError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        t = self._logexp()
        if t is not None:
            exp, log = t
            return exp[(self.q - 1 - log[a]) % (self.q - 1)]
        return self._cpow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.e == 1:
            return pow(a, n, self.p)
        t = self._logexp()
        if t is not None:
            exp, log = t
            return exp[log[a] * n % (self.q - 1)]
        return self._cpow(a, n)

    def frob(self, a, j=1):
        """a^(p^j), with j taken modulo e (negative j gives the inverse map)."""
        j %= self.e
        if j == 0 or a == 0:
            return a
        return self.pow(a, self.p ** j)

    def from_int(self, n):
        """The prime-subfield element n mod p."""
        return n % self.p

    # -- element views ----------------------------------------------------------

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise UsageError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, (list, tuple)):
            if len(value) > self.e:
                raise UsageError(f"too many coordinates for GF({self.q})")
            return FieldElement(self, self.from_coords(value))
        if isinstance(value, str):
            return parse_element(self, value)
        raise UsageError(f"cannot convert {value!r} to a field element")

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def gen(self):
        """The class of x modulo the modulus (equals 0 - (-c0) in a prime field)."""
        if self.e == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self):
        return [FieldElement(self, a) for a in range(self.q)]

    def format_index(self, a):
        if self.e == 1:
            return str(a)
        return "[" + ",".join(map(str, self.coords(a))) + "]"


class FieldElement:
    """Immutable element of a FieldSpec."""

    __slots__ = ("field", "idx")

    def __init__(self, field, idx):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "idx", idx)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coords(self):
        return tuple(self.field.coords(self.idx))

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError("operands belong to different fields")
            return other.idx
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.idx, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.idx, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.idx))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.idx, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.idx, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.idx))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.idx))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow(self.idx, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.idx))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.idx == other.idx
        if isinstance(other, int):
            return self.idx == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.idx))

    def __bool__(self):
        return self.idx != 0

    def __lt__(self, other):
        return self.idx < other.idx

    def __repr__(self):
        return f"FieldElement({self.field.format_index(self.idx)} in GF({self.field.q}))"

    def __str__(self):
        return self.field.format_index(self.idx)


# -- the operation set ----------------------------------------------------------

def _same(x, y):
    if x.field != y.field:
        raise UsageError("operands belong to different fields")
    return x.field


def ff_add(x, y):
    return FieldElement(_same(x, y), x.field.add(x.idx, y.idx))


def ff_neg(x):
    return FieldElement(x.field, x.field.neg(x.idx))


def ff_mul(x, y):
    return FieldElement(_same(x, y), x.field.mul(x.idx, y.idx))


def ff_inv(x):
    return FieldElement(x.field, x.field.inv(x.idx))


def ff_pow(x, n):
    return FieldElement(x.field, x.field.pow(x.idx, n))


def frobenius(x, j):
    """x^(p^j); j is reduced modulo e, so negative j inverts."""
    return FieldElement(x.field, x.field.frob(x.idx, j))


def log_p(r, p):
    """k with r = p^k, or raise UsageError."""
    if r < 1:
        raise UsageError(f"{r} is not a power of {p}")
    k = 0
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise UsageError(f"not a power of {p}")
    return k


def pth_power_root(x, r):
    """The unique y with y^r = x, for r a power of the characteristic."""
    k = log_p(r, x.field.p)
    return frobenius(x, -k)


def power_residue_test(x, k):
    if not x:
        raise UsageError("power_residue_test needs x != 0")
    if k < 1:
        raise UsageError("k must be >= 1")
    q = x.field.q
    return x.field.pow(x.idx, (q - 1) // math.gcd(q - 1, k)) == 1


def eval_indices(field, coeffs, x):
    """Horner evaluation on integer indices, constant term first."""
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


def roots_in_field(coeffs):
    """All roots in F_q of the polynomial with the given coefficients (constant first)."""
    coeffs = list(coeffs)
    if not coeffs:
        raise UsageError("zero polynomial has every element as a root")
    field = coeffs[0].field
    idx = [field.element(c).idx for c in coeffs]
    while idx and idx[-1] == 0:
        idx.pop()
    if not idx:
        raise UsageError("zero polynomial has every element as a root")
    return {FieldElement(field, x) for x in range(field.q) if eval_indices(field, idx, x) == 0}


# -- text formats -----------------------------------------------------------------

_DESIG = re.compile(r"^\s*(\d+)(?:\s*\^\s*(\d+))?\s*(?:/\s*([\d,\s]+))?\s*$")


def parse_field(text):
    """Parse "p", "q", "p^e" or "p^e/c0,c1,...,1"."""
    m = _DESIG.match(str(text))
    if not m:
        raise UsageError(f"bad field designator {text!r}")
    base = int(m.group(1))
    if m.group(2) is not None:
        p, e = base, int(m.group(2))
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
    else:
        p, e = prime_power(base)
    modulus = None
    if m.group(3):
        modulus = [int(c) for c in m.group(3).replace(" ", "").split(",") if c]
    return FieldSpec(p, e, modulus)


def parse_element(field, text):
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise UsageError(f"bad element literal {text!r}")
        body = text[1:-1].strip()
        digits = [int(c) for c in body.split(",")] if body else []
        if len(digits) > field.e:
            raise UsageError(f"too many coordinates in {text!r}")
        if any(not 0 <= d < field.p for d in digits):
            raise UsageError(f"coordinates must lie in [0, {field.p})")
        return FieldElement(field, field.from_coords(digits))
    try:
        return FieldElement(field, field.from_int(int(text)))
    except ValueError:
        raise UsageError(f"bad element literal {text!r}") from None
