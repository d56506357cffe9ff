"""Exhaustive census of decomposable polynomials over a finite field.

Every monic original composition g o h of degree d is enumerated split by
split (deg g = e for each divisor 1 < e < d).  Coefficients are handled as
coordinate vectors over F_p, so for a batch of right components h the
compositions with all g form one matrix product:

    f = h^e + sum_i g_i h^i   is F_p-linear in the coordinates of g.

The d-1 free coefficients of f are packed into one int64 key
(base-q digits), and deduplication is a sort.  Counts over all degree-d
polynomials are the monic original counts times q(q-1).
"""

import math
import multiprocessing
import os
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, UsageError
from .field import FieldSpec, is_prime, prime_power
from .formulas import alpha, beta, beta_star, classify_leaf

DEFAULT_COMPOSITIONS = 1 << 28
DEFAULT_BYTES = 1 << 31
_ROWS = 1 << 18          # keys produced per work unit
_KEY_BYTES = 8


def default_budget():
    env = os.environ.get("POLYCOUNT_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"POLYCOUNT_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_COMPOSITIONS


@dataclass
class CensusOptions:
    workers: int = 1
    budget: int = None
    byte_budget: int = DEFAULT_BYTES
    splits: tuple = None          # restrict to these left degrees
    intersections: bool = True

    def compositions_budget(self):
        return default_budget() if self.budget is None else self.budget


@dataclass
class SplitStats:
    e: int                 # deg g
    m: int                 # deg h
    compositions: int      # monic original pairs enumerated
    distinct: int          # distinct monic original f
    frobenius: int         # of which f' = 0
    histogram: dict        # preimage count -> number of f

    def count(self, q):
        return self.distinct * q * (q - 1)

    def collisions(self):
        return sum(n for k, n in self.histogram.items() if k >= 2)


@dataclass
class PairStats:
    l: int
    m: int
    both: int              # monic original f in D_{d,l} and D_{d,m}
    both_nonfrobenius: int


@dataclass
class CensusReport:
    q: int
    d: int
    field: str
    monic_total: int
    total: int
    frobenius: int
    splits: list
    pairs: list
    alpha: int
    beta: object
    beta_star: object
    leaf: str
    bounds: list = dc_field(default_factory=list)
    seconds: float = 0.0
    workers: int = 1

    @property
    def scale(self):
        return self.q * (self.q - 1)

    def split(self, e):
        for s in self.splits:
            if s.e == e:
                return s
        raise KeyError(e)

    def pair(self, l, m):
        for t in self.pairs:
            if {t.l, t.m} == {l, m}:
                return t
        raise KeyError((l, m))

    def ratio(self):
        return Fraction(self.total, self.alpha) if self.alpha else None

    def passed(self):
        return all(b.passed for b in self.bounds)

    def failures(self):
        return [b for b in self.bounds if not b.passed]


def _splits(d):
    return [e for e in range(2, d) if d % e == 0]


def work_estimate(q, d, splits=None):
    """(compositions, bytes) needed to enumerate the given splits."""
    splits = _splits(d) if splits is None else splits
    comp = sum(q ** (e - 1) * q ** (d // e - 1) for e in splits)
    return comp, comp * _KEY_BYTES


def check_budget(q, d, options=None, splits=None):
    options = options or CensusOptions()
    comp, nbytes = work_estimate(q, d, splits)
    budget = options.compositions_budget()
    if comp > budget:
        parts = " + ".join(f"{q}^{e - 1 + d // e - 1}" for e in (splits or _splits(d)))
        raise BudgetExceeded(f"census ({q},{d}) needs {parts} = {comp} compositions "
                             f"> budget {budget}", comp, budget)
    if nbytes > options.byte_budget:
        raise BudgetExceeded(f"census ({q},{d}) needs {comp} keys * {_KEY_BYTES} B = "
                             f"{nbytes} bytes > budget {options.byte_budget}",
                             nbytes, options.byte_budget)
    if q ** (d - 1) >= 1 << 63:
        raise BudgetExceeded(f"packed keys for ({q},{d}) need q^{d - 1} >= 2^63",
                             q ** (d - 1), 1 << 63)
    return comp


class _Engine:
    def __init__(self, F, d):
        self.F, self.d = F, d
        self.p, self.k, self.q = F.p, F.e, F.q
        p, k = self.p, self.k
        self.W = np.array([p ** (k * j + t) for j in range(d - 1) for t in range(k)],
                          dtype=np.int64)
        self.float_keys = self.q ** (d - 1) < 1 << 53
        self.Wf = self.W.astype(np.float64)
        # basis_mul[t] maps coordinates of c to those of y^t * c
        self.basis_mul = []
        for t in range(k):
            rows = [F.coords(F.mul(p ** t, p ** s)) for s in range(k)]
            self.basis_mul.append(np.array(rows, dtype=np.float64))
        if k > 1:
            q = self.q
            self.weights = p ** np.arange(k, dtype=np.int64)
            self.coord_tab = np.array([F.coords(a) for a in range(q)], dtype=np.int64)
            exp, log = F._logexp()
            self.exp = np.array(exp, dtype=np.int64)
            self.log = np.array(log, dtype=np.int64)
        self._gcache = None

    def digits(self, lo, hi, nfree):
        idx = np.arange(lo, hi, dtype=np.int64)
        pw = self.p ** np.arange(nfree * self.k, dtype=np.int64)
        return ((idx[:, None] // pw) % self.p).reshape(len(idx), nfree, self.k)

    def mul(self, A, B):
        """Product of batched polynomials in coordinates, (N,na,k) x (N,nb,k)."""
        N, na, k = A.shape
        nb = B.shape[1]
        if k == 1:
            C = np.zeros((N, na + nb - 1), dtype=np.int64)
            a, b = A[:, :, 0], B[:, :, 0]
            for i in range(na):
                C[:, i:i + nb] += a[:, i:i + 1] * b
            return (C % self.p)[:, :, None]
        # extension field: multiply element indices through log tables
        ia, ib = A @ self.weights, B @ self.weights
        la, lb = self.log[ia], self.log[ib]
        C = np.zeros((N, na + nb - 1, k), dtype=np.int64)
        for i in range(na):
            nz = ia[:, i:i + 1] != 0
            prod = np.where(nz & (ib != 0), self.exp[la[:, i:i + 1] + lb], 0)
            C[:, i:i + nb] += self.coord_tab[prod]
        return C % self.p

    def h_batch(self, lo, hi, m):
        N = hi - lo
        H = np.zeros((N, m + 1, self.k), dtype=np.int64)
        H[:, 1:m] = self.digits(lo, hi, m - 1)
        H[:, m, 0] = 1
        return H

    def _rows(self, e, m, hlo, hhi):
        """For a batch of h: coordinates of h^e and of y^t h^i (i < e) at x^1..x^(d-1)."""
        d, k, p = self.d, self.k, self.p
        H = self.h_batch(hlo, hhi, m)
        N = hhi - hlo
        C = (d - 1) * k
        powers = [None, H]
        for _ in range(e - 1):
            powers.append(self.mul(powers[-1], H))
        J = (e - 1) * k
        B = np.zeros((N, J, C), dtype=np.float32)
        for i in range(1, e):
            Hi = powers[i][:, 1:d]
            pad = np.zeros((N, d - 1, k), dtype=np.float64)
            pad[:, :Hi.shape[1]] = Hi
            for t in range(k):
                rows = pad if t == 0 else np.remainder(pad @ self.basis_mul[t], p)
                B[:, (i - 1) * k + t, :] = rows.reshape(N, C)
        E = powers[e][:, 1:d].reshape(N, C)
        return E, B

    def _pack(self, digits):
        if self.float_keys:
            return (digits.astype(np.float64) @ self.Wf).astype(np.int64)
        return digits.astype(np.int64) @ self.W

    def keys(self, e, m, hlo, hhi, glo, ghi):
        E, B = self._rows(e, m, hlo, hhi)
        if self.p == 2:
            return self._xor_keys(E, B, glo, ghi)
        N, J, C = B.shape
        if self._gcache is None or self._gcache[0] != (e, glo, ghi):
            G = self.digits(glo, ghi, e - 1).reshape(ghi - glo, J).astype(np.float32)
            self._gcache = ((e, glo, ghi), G)
        G = self._gcache[1]
        # small integers throughout, so float32 products are exact
        f = G @ B.transpose(1, 0, 2).reshape(J, N * C)
        f = f.reshape(ghi - glo, N, C)
        f += E[None].astype(np.float32)
        np.fmod(f, self.p, out=f)
        return self._pack(f.reshape(-1, C))

    def _xor_keys(self, E, B, glo, ghi):
        """Characteristic 2: packing is F_2-linear, so keys combine by XOR."""
        N, J, C = B.shape
        R = self._pack(B.reshape(N * J, C)).reshape(N, J)
        base = self._pack(E)
        width = (ghi - glo).bit_length() - 1
        for j in range(width, J):
            if glo >> j & 1:
                base ^= R[:, j]
        S = base[:, None]
        for j in range(width):
            S = np.concatenate([S, S ^ R[:, j:j + 1]], axis=1)
        return S.ravel()

    def units(self, e):
        m = self.d // e
        ng, nh = self.q ** (e - 1), self.q ** (m - 1)
        gblock = min(ng, _ROWS)
        hblock = max(1, _ROWS // gblock)
        out = []
        for glo in range(0, ng, gblock):
            for hlo in range(0, nh, hblock):
                out.append((e, m, hlo, min(nh, hlo + hblock), glo, min(ng, glo + gblock)))
        return out

    def frobenius_keys(self):
        """Sorted keys of all monic original f in F_q[x^p] of degree d."""
        q, p, d = self.q, self.p, self.d
        pos = [j for j in range(1, d) if j % p == 0]
        keys = np.zeros(1, dtype=np.int64)
        for j in pos:
            keys = (keys[:, None] + np.arange(q, dtype=np.int64)[None, :] * q ** (j - 1)).ravel()
        return np.sort(keys)

    def frobenius_count(self, sorted_keys):
        """How many entries of a sorted key array lie in F_q[x^p]."""
        if len(sorted_keys) == 0 or self.d % self.p:
            return 0
        fk = self.frobenius_keys()
        at = np.searchsorted(sorted_keys, fk)
        at = np.minimum(at, len(sorted_keys) - 1)
        return int(np.count_nonzero(sorted_keys[at] == fk))


def _dedup_sorted(raw):
    """Distinct keys of a sorted array and their multiplicities."""
    n = len(raw)
    if n == 0:
        return raw, np.zeros(0, dtype=np.int32)
    flags = np.empty(n, dtype=bool)
    flags[0] = True
    np.not_equal(raw[1:], raw[:-1], out=flags[1:])
    starts = np.flatnonzero(flags)
    del flags
    counts = np.diff(np.append(starts, n)).astype(np.int32)
    return raw[starts], counts


def _merge(results):
    """Merge (keys, counts) pairs from several workers; order independent."""
    keys = np.concatenate([r[0] for r in results])
    counts = np.concatenate([r[1] for r in results])
    order = np.argsort(keys, kind="stable")
    keys, counts = keys[order], counts[order]
    if len(keys) == 0:
        return keys, counts
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    return keys[starts], np.add.reduceat(counts, starts).astype(np.int32)


def _run_units(eng, units):
    total = sum((u[3] - u[2]) * (u[5] - u[4]) for u in units)
    raw = np.empty(total, dtype=np.int64)
    pos = 0
    for u in units:
        k = eng.keys(*u)
        raw[pos:pos + len(k)] = k
        pos += len(k)
    raw.sort()
    return _dedup_sorted(raw)


def _worker(args):
    p, e, modulus, d, units = args
    return _run_units(_Engine(FieldSpec(p, e, modulus), d), units)


def _enumerate_splits(F, d, splits, workers):
    """{e: (sorted distinct keys, multiplicities)} for every split."""
    eng = _Engine(F, d)
    out = {}
    pool = None
    try:
        for e in splits:
            units = eng.units(e)
            if workers <= 1 or len(units) < 2:
                out[e] = _run_units(eng, units)
                continue
            if pool is None:
                pool = multiprocessing.get_context("fork").Pool(workers)
            shards = [units[i::workers] for i in range(workers)]
            jobs = [(F.p, F.e, F.modulus, d, sh) for sh in shards if sh]
            out[e] = _merge(pool.map(_worker, jobs))
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return eng, out


def sorted_intersection(a, b):
    """Common elements of two sorted arrays of distinct keys."""
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    at = np.minimum(np.searchsorted(b, a), len(b) - 1)
    return a[b[at] == a]


def sorted_union(a, b):
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 0:
        return a
    at = np.minimum(np.searchsorted(a, b), len(a) - 1)
    out = np.concatenate([a, b[a[at] != b]])
    out.sort(kind="stable")
    return out


def _as_field(q):
    if isinstance(q, FieldSpec):
        return q
    p, e = prime_power(q)
    return FieldSpec(p, e)


def enumerate_decomposables(q, d, options=None):
    """Exact census of decomposable polynomials of degree d over F_q."""
    options = options or CensusOptions()
    F = _as_field(q)
    q = F.q
    if d < 2:
        raise UsageError("d must be >= 2")
    if q > 1 << 16:
        raise UsageError("census needs q <= 2^16")
    splits = list(options.splits) if options.splits else _splits(d)
    for e in splits:
        if d % e or not 1 < e < d:
            raise UsageError(f"{e} is not a proper divisor of {d}")
    t0 = time.perf_counter()
    stats, pairs = [], []
    union_total = frob_total = 0
    if splits:
        check_budget(q, d, options, splits)
        eng, merged = _enumerate_splits(F, d, splits, options.workers)
        uniq = {}
        for e in splits:
            keys, counts = merged.pop(e)
            uniq[e] = keys
            hist = np.unique(counts, return_counts=True)
            stats.append(SplitStats(e, d // e, int(counts.sum(dtype=np.int64)), len(keys),
                                    eng.frobenius_count(keys),
                                    {int(a): int(b) for a, b in zip(*hist)}))
            del counts
        if options.intersections:
            for e in splits:
                if e < d // e and d // e in uniq:
                    both = sorted_intersection(uniq[e], uniq[d // e])
                    nf = len(both) - eng.frobenius_count(both)
                    pairs.append(PairStats(e, d // e, len(both), nf))
        union = None
        for e in sorted(uniq, key=lambda e: -len(uniq[e])):
            union = uniq.pop(e) if union is None else sorted_union(union, uniq.pop(e))
        union_total = len(union)
        frob_total = eng.frobenius_count(union)
        del union
    elapsed = time.perf_counter() - t0
    composite = not is_prime(d)
    scale = q * (q - 1)
    return CensusReport(
        q=q, d=d, field=F.designator(), monic_total=union_total,
        total=union_total * scale, frobenius=frob_total * scale,
        splits=stats, pairs=pairs, alpha=alpha(q, d),
        beta=beta(q, d) if composite else None,
        beta_star=beta_star(q, d) if composite else None,
        leaf=classify_leaf(q, d) if composite else None,
        seconds=elapsed, workers=options.workers)


def enumerate_intersection(q, d, l, options=None):
    """#(D_{d,l} cap D_{d,d/l}) without Frobenius compositions, over all degree-d f."""
    options = options or CensusOptions()
    m = d // l
    if d % l or not 1 < l < d or l == m:
        raise UsageError("need a proper split l != d/l")
    opts = CensusOptions(options.workers, options.budget, options.byte_budget,
                         splits=(min(l, m), max(l, m)))
    rep = enumerate_decomposables(q, d, opts)
    pair = rep.pair(l, m)
    return pair.both_nonfrobenius * rep.scale


def intersection_monic(q, d, l, options=None):
    """Monic original members of the non-Frobenius intersection."""
    F = _as_field(q)
    return enumerate_intersection(F, d, l, options) // (F.q * (F.q - 1))


def truncate_ratio(count, alpha_value, places=4):
    """count/alpha truncated (not rounded) to a fixed number of decimals."""
    if not alpha_value:
        return None
    scaled = Fraction(count, alpha_value) * 10 ** places
    whole = math.floor(scaled)
    s = str(whole).rjust(places + 1, "0")
    return f"{s[:-places]}.{s[-places:]}"


def verify_bounds(q, d, options=None, report=None):
    """Census plus a verdict for every applicable inequality."""
    from .bounds import evaluate_bounds
    if report is None:
        report = enumerate_decomposables(q, d, options)
    report.bounds = evaluate_bounds(report)
    return report


def _s(x):
    return None if x is None else str(x)


def report_to_dict(report, timing=False):
    """JSON-ready view of a report; exact numbers become strings."""
    out = {
        "q": _s(report.q), "d": _s(report.d), "field": report.field,
        "count": _s(report.total), "monic_original_count": _s(report.monic_total),
        "alpha": _s(report.alpha), "ratio": _s(report.ratio()),
        "ratio_decimal": truncate_ratio(report.total, report.alpha),
        "beta": _s(report.beta), "beta_star": _s(report.beta_star),
        "leaf": report.leaf, "frobenius": _s(report.frobenius),
        "splits": [{
            "left_degree": _s(s.e), "right_degree": _s(s.m),
            "compositions": _s(s.compositions), "distinct": _s(s.distinct),
            "count": _s(s.count(report.q)), "frobenius": _s(s.frobenius),
            "collisions": _s(s.collisions()),
            "multiplicity": {str(k): _s(v) for k, v in sorted(s.histogram.items())},
        } for s in report.splits],
        "intersections": [{
            "l": _s(t.l), "m": _s(t.m),
            "count": _s(t.both * report.scale),
            "count_nonfrobenius": _s(t.both_nonfrobenius * report.scale),
        } for t in report.pairs],
        "bounds": [{
            "name": b.name, "lhs": b.lhs, "relation": b.relation, "rhs": b.rhs,
            "passed": b.passed,
        } for b in report.bounds],
    }
    if timing:
        out["seconds"] = f"{report.seconds:.3f}"
        out["workers"] = _s(report.workers)
    return out


CSV_HEADER = "q,d,count,alpha,ratio"


def csv_row(report):
    ratio = truncate_ratio(report.total, report.alpha)
    return f"{report.q},{report.d},{report.total},{report.alpha},{'' if ratio is None else ratio}"
