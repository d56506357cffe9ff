"""Acceptance criteria 1-9.  Each test prints a single PASS/FAIL line."""

import functools
import math
import random
import time

import pytest

from conftest import VERDICTS
from polycount.census import CensusOptions, enumerate_decomposables, enumerate_intersection, verify_bounds
from polycount.decompose import brute_decompose, condition_pc, decompose_all, monic_originals, wild_decompose
from polycount.errors import BudgetExceeded
from polycount.field import is_prime, parse_field, prime_power
from polycount.formulas import (alpha, bluher_counts, brute_bluher, intersection_count_exact)
from polycount.poly import Poly, compose, derivative, parse_poly
from polycount.ritt import (BOTH, SECOND_ONLY, FIRST_ONLY, FirstCaseParams, SecondCaseParams,
                            dickson, first_case_build, first_case_recover,
                            mutual_exclusion_check, second_case_build, second_case_recover)

GRID_Q = (2, 3, 4, 5, 7, 8, 9)
GRID_D = tuple(d for d in range(4, 17) if not is_prime(d))


def verdict(n, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title}" + (f" -- {detail}" if detail else "")
    VERDICTS.append(line)
    print(line)
    assert ok, line


@functools.lru_cache(maxsize=None)
def report(q, d):
    try:
        return verify_bounds(q, d)
    except BudgetExceeded:
        return None


# 1 ---------------------------------------------------------------------------

TABLE = {(2, 4): 6, (2, 8): 36, (2, 12): 236, (2, 16): 762, (2, 20): 3264, (2, 24): 14264,
         (3, 9): 414, (4, 4): 132, (8, 4): 2408, (9, 9): 450792, (4, 12): 100848}
STRETCH = {(8, 12): 30382016, (2, 36): 821600}


def test_criterion_1_census_ground_truth():
    bad, slow = [], []
    for (q, d), want in {**TABLE, **STRETCH}.items():
        t0 = time.perf_counter()
        got = enumerate_decomposables(q, d).total
        dt = time.perf_counter() - t0
        if got != want:
            bad.append(f"({q},{d}) {got} != {want}")
        limit = 600 if (q, d) in STRETCH else 60
        if dt > limit:
            slow.append(f"({q},{d}) {dt:.0f}s")
    verdict(1, "census ground truth, 11 rows + 2 stretch rows", not bad and not slow,
            "; ".join(bad + slow) or "all 13 exact")


# 2 ---------------------------------------------------------------------------

def test_criterion_2_exact_formula_cases():
    bad = []
    for q, d, want in [(3, 4, 54), (5, 4, 500), (2, 9, alpha(2, 9))]:
        got = enumerate_decomposables(q, d).total
        if got != want or got != alpha(q, d):
            bad.append(f"({q},{d}) {got} != {want}")
    for q in (3, 5):
        want = alpha(q, 8) * (2 * q - 1) // (2 * q)     # alpha (1 - q^{-1}/2), l = 2
        got = enumerate_decomposables(q, 8).total
        if got != want:
            bad.append(f"({q},8) {got} != {want}")
    verdict(2, "#D = alpha at l^2 and alpha(1 - q^-(l-1)^2/2) at l^3", not bad, "; ".join(bad))


# 3 ---------------------------------------------------------------------------

LISTED = [("x^3+x", "x^3-x", "x^3-x", "x^3+x", "x^9-x"),
          ("x^3+x^2", "x^3-x^2-x", "x^3-x^2+x", "x^3+x^2", "x^9+x^5-x^4+x^3+x^2"),
          ("x^3+x^2+x", "x^3-x^2", "x^3-x^2", "x^3+x^2-x", "x^9+x^5+x^4+x^3-x^2"),
          ("x^3+x^2+x", "x^3-x^2+x", "x^3-x^2+x", "x^3+x^2+x", "x^9+x^5+x")]


def test_criterion_3_degree_9_collisions():
    F = parse_field("3")
    P = lambda s: parse_poly(F, s)
    expected = {P(f): {(P(g), P(h)), (P(g2), P(h2))} for g, h, g2, h2, f in LISTED}
    plain, frob = {}, {}
    for f in monic_originals(F, 9):
        decs = decompose_all(f)[3].decompositions
        if len(decs) >= 2:
            target = frob if derivative(f).is_zero() else plain
            target[f] = {(x.g, x.h) for x in decs}
    hist = enumerate_decomposables(3, 9).split(3).histogram
    ok = plain == expected and len(frob) == 8 and all(len(v) == 2 for v in frob.values()) \
        and hist.get(2) == 12 and set(hist) <= {1, 2}
    verdict(3, "F_3 degree 9: 4 listed collisions + 8 Frobenius collisions", ok,
            f"{len(plain)} non-Frobenius, {len(frob)} Frobenius")


# 4 ---------------------------------------------------------------------------

def test_criterion_4_wild_algorithm():
    bad = []
    checked = 0
    for q, d, l in [(2, 4, 2), (2, 8, 2), (3, 9, 3), (4, 4, 2)]:
        F = parse_field(str(q))
        r = F.p ** (max(k for k in range(1, 8) if l % F.p ** k == 0))
        cache = {}
        for g in monic_originals(F, l):
            for h in monic_originals(F, d // l):
                f = compose(g, h)
                if f not in cache:
                    out = wild_decompose(f, l)
                    if not out.failure:
                        got = {(x.g, x.h) for x in out}
                        if not got <= {(x.g, x.h) for x in brute_decompose(f, l)}:
                            bad.append(f"({q},{d},{l}) unsound at {f}")
                        if len(got) > r + 1:
                            bad.append(f"({q},{d},{l}) {len(got)} > r+1")
                    cache[f] = out
                if condition_pc(g, h):
                    checked += 1
                    out = cache[f]
                    if out.failure or (g, h) not in {(x.g, x.h) for x in out}:
                        bad.append(f"({q},{d},{l}) misses {g} o {h}")
    verdict(4, "wild algorithm complete on condition-pc pairs, sound, <= r+1", not bad,
            "; ".join(bad[:5]) or f"{checked} pc pairs")


# 5 ---------------------------------------------------------------------------

def test_criterion_5_bluher():
    bad = []
    qs = [q for q in range(2, 344) if len({p for p in range(2, q + 1) if q % p == 0 and is_prime(p)}) == 1]
    for q in qs:
        for dExp in (1, 2, 3):
            st = bluher_counts(q, dExp)
            want = {k: v for k, v in st.as_dict().items() if v}
            if not st.closure_ok() or brute_bluher(q, dExp) != want:
                bad.append(f"({q},{dExp})")
    s = bluher_counts(125, 1)
    if (s.c0, s.c1, s.c2, s.cZplus1) != (52, 25, 46, 1):
        bad.append("(125,1) values")
    verdict(5, "Bluher counts = brute tallies, q <= 343, dExp <= 3", not bad,
            ", ".join(bad) or f"{len(qs) * 3} cases")


# 6 ---------------------------------------------------------------------------

def test_criterion_6_ritt_round_trips():
    rng = random.Random(20240601)
    fields = [parse_field(s) for s in ("5", "7", "9")]
    bad, n1, n2 = [], 0, 0
    while n1 < 500:
        F = rng.choice(fields)
        p = F.p
        l = rng.choice([l for l in (2, 3, 4, 5) if l % p])
        m = rng.choice([m for m in range(l + 1, 12) if math.gcd(l, m) == 1 and m % p])
        s, k = divmod(m, l)
        w = Poly.from_indices(F, [rng.randrange(F.q) for _ in range(s)] + [1])
        a = F.elements()[rng.randrange(F.q)]
        x = Poly.x(F)
        if (w.scale(k) + (x * derivative(w)).scale(l)).is_zero():
            continue
        t = first_case_build(l, m, FirstCaseParams(w, a, k, s))
        r = first_case_recover(t.f, l)
        if not r or (r.w, r.shift) != (w, a):
            bad.append(f"first {F.q} {l} {m}")
        if (l * m) % p == 0:
            pass
        elif mutual_exclusion_check(l, t) not in ((FIRST_ONLY, BOTH) if l == 2 else (FIRST_ONLY,)):
            bad.append(f"first classify {F.q} {l} {m}")
        n1 += 1
    while n2 < 500:
        F = rng.choice(fields)
        p = F.p
        l = rng.choice([l for l in (2, 3, 4, 5) if l % p])
        m = rng.choice([m for m in range(l + 1, 12) if math.gcd(l, m) == 1 and m % p])
        z = F.elements()[rng.randrange(1, F.q)]
        a = F.elements()[rng.randrange(F.q)]
        t = second_case_build(l, m, SecondCaseParams(z, a))
        r = second_case_recover(t.f)
        if not r or (r.z, r.shift) != (z, a):
            bad.append(f"second {F.q} {l} {m}")
        c = mutual_exclusion_check(l, t)
        if c != (BOTH if l == 2 else SECOND_ONLY):
            bad.append(f"second classify {F.q} {l} {m}: {c}")
        n2 += 1
    verdict(6, "500 + 500 Ritt builds recover their parameters; Both only at l = 2", not bad,
            "; ".join(bad[:5]))


# 7 ---------------------------------------------------------------------------

def test_criterion_7_dickson_identities():
    bad = 0
    for q in (2, 3, 4, 5, 7, 8, 9):
        F = parse_field(str(q))
        p = F.p
        for z in F.elements():
            for l in range(1, 25):
                for m in range(1, 24 // l + 1):
                    T = dickson(l * m, z)
                    bad += compose(dickson(m, z ** l), dickson(l, z)) != T
                    bad += compose(dickson(l, z ** m), dickson(m, z)) != T
            for d in range(0, 25):
                for t in F.elements():
                    bad += dickson(d, z).scale(t ** d) != compose(dickson(d, z * t * t), Poly(F, [0, t]))
                if d >= 1:
                    bad += dickson(d, z * z)(2 * z) != 2 * z ** d
            j = 1
            while p ** j <= 24:
                bad += dickson(p ** j, z) != Poly.monomial(F, p ** j)
                j += 1
    verdict(7, "Dickson composition, scaling, char-p collapse, fixed value", bad == 0,
            f"{bad} mismatches" if bad else "q <= 9, lm <= 24")


# 8 ---------------------------------------------------------------------------

def test_criterion_8_bound_verification():
    fails, refused, n = [], [], 0
    for d in GRID_D:
        for q in GRID_Q:
            rep = report(q, d)
            if rep is None:
                refused.append(f"({q},{d})")
                continue
            n += 1
            fails += [f"({q},{d}) {b.name}" for b in rep.bounds if not b.passed]
    chain = report(3, 9)
    chain_ok = all(b.passed for b in chain.bounds if b.name.startswith("chain"))
    detail = f"{n} cases" + (f", refused {', '.join(refused)}" if refused else "")
    if fails:
        detail += f"; {len(fails)} failing: " + "; ".join(fails)
    verdict(8, "every applicable bound holds on the grid, chain 288 < 306 < 414 < 486",
            not fails and chain_ok, detail)


# 9 ---------------------------------------------------------------------------

def test_criterion_9_intersections():
    bad, n_exact, n_bounds, unknown = [], 0, 0, []
    for q, d, l in [(5, 6, 2), (5, 8, 2), (7, 6, 2)]:
        iv = intersection_count_exact(q, l, d // l)
        got = enumerate_intersection(q, d, l)
        if iv.kind != "exact" or got != iv.exact:
            bad.append(f"({q},{d},{l}) {got} vs {iv.exact}")
    # (3,8,2): p does not divide d, exact formula
    iv = intersection_count_exact(3, 2, 4)
    if enumerate_intersection(3, 8, 2) != iv.exact:
        bad.append("(3,8,2)")
    for d in GRID_D:
        for q in GRID_Q:
            rep = report(q, d)
            if rep is None:
                continue
            for pr in rep.pairs:
                iv = intersection_count_exact(q, pr.l, pr.m)
                t = (pr.both_nonfrobenius if iv.frobenius_free else pr.both) * rep.scale
                if iv.kind == "exact":
                    n_exact += 1
                    if t != iv.exact:
                        bad.append(f"({q},{d},{pr.l}) {t} != {iv.exact}")
                elif iv.kind == "bounds":
                    n_bounds += 1
                    if not iv.contains(t):
                        bad.append(f"({q},{d},{pr.l}) {t} outside [{iv.lower}, {iv.upper}]")
                else:
                    unknown.append(f"({q},{d},{pr.l})")
    for q in (2, 4):
        t1 = report(q, 12).pair(2, 6).both_nonfrobenius
        if t1 > 2 * q ** 4:
            bad.append(f"t1({q},12) = {t1} > {2 * q ** 4}")
    detail = f"{n_exact} exact, {n_bounds} bracketed"
    if unknown:
        detail += f", no formula for {', '.join(unknown)}"
    verdict(9, "intersection formulas and brackets match enumeration", not bad,
            "; ".join(bad[:5]) or detail)
