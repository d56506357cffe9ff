import itertools
import math

import pytest
from hypothesis import given, strategies as st

from polycount.decompose import monic_originals
from polycount.errors import DomainError, UsageError
from polycount.field import parse_field
from polycount.poly import Poly, compose, derivative, parse_poly
from polycount.ritt import (BOTH, FIRST_ONLY, SECOND_ONLY, FirstCaseParams, SecondCaseParams,
                            degenerate_witness_test, dickson, first_case_build,
                            first_case_recover, frobenius_collision, lxw_sides,
                            mutual_exclusion_check, second_case_build, second_case_recover)

F3, F4, F5, F7 = (parse_field(s) for s in "3457")


def P(F, s):
    return parse_poly(F, s)


def test_dickson_small():
    z = F7.element(3)
    assert dickson(2, z) == P(F7, "x^2") - Poly.constant(F7, 2 * z)
    assert dickson(3, z) == P(F7, "x^3") - P(F7, "x").scale(3 * z)
    assert dickson(5, F7.one())(F7.element(2)) == 2
    assert dickson(0, z) == Poly.constant(F7, 2)


def first(F, l, m, w, a):
    s, k = divmod(m, l)
    return first_case_build(l, m, FirstCaseParams(P(F, w), F.element(a), k, s))


def test_first_case_examples():
    t = first(F5, 2, 3, "x", 0)
    assert t.f == P(F5, "x^6") and (t.g, t.h) == (P(F5, "x^3"), P(F5, "x^2"))
    assert (t.gStar, t.hStar) == (P(F5, "x^2"), P(F5, "x^3"))
    t = first(F5, 2, 3, "x+1", 0)
    assert t.f == P(F5, "x^6+2*x^4+x^2")
    assert t.g == P(F5, "x^3+2*x^2+x") and t.h == P(F5, "x^2")
    assert t.gStar == P(F5, "x^2") and t.hStar == P(F5, "x^3+x")
    first(F3, 2, 3, "x+1", 1)


def test_first_case_rejects_degenerate_witness():
    # k*w + l*x*w' = x + 2x = 0 over GF(3)
    with pytest.raises(DomainError):
        first(F3, 2, 3, "x", 1)


def test_first_case_recover_examples():
    r = first_case_recover(first(F5, 2, 3, "x+1", 0).f, 2)
    assert (r.w, r.shift) == (P(F5, "x+1"), 0)
    r = first_case_recover(P(F5, "x^6"), 2)
    assert (r.w, r.shift) == (P(F5, "x"), 0)
    t = second_case_build(3, 4, SecondCaseParams(F5.element(2), F5.element(1)))
    assert not first_case_recover(t.f, 3)


def test_second_case_examples():
    t = second_case_build(2, 3, SecondCaseParams(F5.one(), F5.zero()))
    T6 = dickson(6, F5.one())
    assert t.f == T6 - Poly.constant(F5, T6.coeff(0))
    assert (second_case_recover(t.f).z, second_case_recover(t.f).shift) == (1, 0)
    with pytest.raises(DomainError):
        second_case_build(2, 3, SecondCaseParams(F5.zero(), F5.zero()))
    t = second_case_build(2, 3, SecondCaseParams(F7.element(2), F7.one()))
    r = second_case_recover(t.f)
    assert (r.z, r.shift) == (2, 1)
    assert not second_case_recover(P(F7, "x^6"))
    with pytest.raises(DomainError):
        second_case_build(2, 5, SecondCaseParams(F5.one(), F5.zero()))


def test_mutual_exclusion_examples():
    t = second_case_build(3, 4, SecondCaseParams(F5.element(2), F5.zero()))
    assert mutual_exclusion_check(3, t) == SECOND_ONLY
    t = second_case_build(2, 3, SecondCaseParams(F7.element(3), F7.element(2)))
    assert mutual_exclusion_check(2, t) == BOTH
    t = first(F7, 3, 4, "x+2", 1)
    assert mutual_exclusion_check(3, t) == FIRST_ONLY


def test_degenerate_witness_examples():
    assert degenerate_witness_test(P(F3, "x"), 1, 2) == P(F3, "1")
    assert degenerate_witness_test(P(F5, "x+1"), 1, 2) is None


@pytest.mark.parametrize("F", [parse_field("2"), F3])
def test_lxw_sides_agree_exhaustive(F):
    for l in range(2, 6):
        for k in range(1, l):
            for s in range(0, 4):
                if math.gcd(l, l * s + k) != 1:
                    continue
                for cs in itertools.product(range(F.q), repeat=s):
                    w = Poly.from_indices(F, list(cs) + [1])
                    left, right = lxw_sides(w, k, l)
                    if l % F.p:
                        assert left == right


def test_frobenius_collision_examples():
    left, right = frobenius_collision(P(F3, "x^2+x"), 1)
    assert (right.g, right.h) == (P(F3, "x^2+x"), P(F3, "x^3"))
    a = F4.gen()
    h = Poly(F4, [0, a, 1])
    _, right = frobenius_collision(h, 1)
    assert right.g == Poly(F4, [0, a * a, 1])
    l2, r2 = frobenius_collision(P(F3, "x^3"), 1)
    assert (l2.g, l2.h) == (r2.g, r2.h)


FIELDS9 = [parse_field(str(q)) for q in (2, 3, 4, 5, 7, 8, 9)]


@pytest.mark.parametrize("F", FIELDS9, ids=lambda F: f"q{F.q}")
def test_dickson_identities_exhaustive(F):
    p = F.p
    for z in F.elements():
        for l in range(1, 25):
            for m in range(1, 25 // l + 1):
                if l * m > 24:
                    continue
                lhs = compose(dickson(m, z ** l), dickson(l, z))
                assert lhs == dickson(l * m, z) == compose(dickson(l, z ** m), dickson(m, z))
        j = 1
        while p ** j <= 24:
            assert dickson(p ** j, z) == Poly.monomial(F, p ** j)
            j += 1
        for n in range(p, 25, p):
            assert derivative(dickson(n, z)).is_zero()
        for d in range(1, 13):
            assert dickson(d, z * z)(2 * z) == 2 * z ** d


@given(st.sampled_from(FIELDS9), st.data())
def test_dickson_scaling(F, data):
    t = F.elements()[data.draw(st.integers(0, F.q - 1))]
    z = F.elements()[data.draw(st.integers(0, F.q - 1))]
    d = data.draw(st.integers(0, 12))
    lhs = dickson(d, z).scale(t ** d)
    rhs = compose(dickson(d, z * t * t), Poly(F, [0, t]))
    assert lhs == rhs


def _gcd(a, b):
    while not b.is_zero():
        a, b = b, a % b
    return a


@pytest.mark.parametrize("F", [F5, F7])
def test_dickson_derivative_squarefree(F):
    for n in range(2, 11):
        if n % F.p == 0:
            continue
        for z in F.elements()[1:]:
            dt = derivative(dickson(n, z))
            ddt = derivative(dt)
            if not ddt.is_zero():
                assert _gcd(dt, ddt).degree == 0


@given(st.sampled_from([F5, F7, parse_field("9")]), st.data())
def test_builders_roundtrip(F, data):
    p = F.p
    l = data.draw(st.sampled_from([l for l in (2, 3, 4) if l % p]))
    m = data.draw(st.sampled_from([m for m in range(l + 1, 9) if math.gcd(l, m) == 1 and m % p]))
    s, k = divmod(m, l)
    cs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=s, max_size=s))
    w = Poly.from_indices(F, cs + [1])
    a = F.elements()[data.draw(st.integers(0, F.q - 1))]
    x = Poly.x(F)
    if (w.scale(k) + (x * derivative(w)).scale(l)).is_zero():
        with pytest.raises(DomainError):
            first_case_build(l, m, FirstCaseParams(w, a, k, s))
        return
    t = first_case_build(l, m, FirstCaseParams(w, a, k, s))
    r = first_case_recover(t.f, l)
    assert (r.w, r.shift) == (w, a)
    if (l * m) % p:
        z = F.elements()[data.draw(st.integers(1, F.q - 1))]
        t2 = second_case_build(l, m, SecondCaseParams(z, a))
        r2 = second_case_recover(t2.f)
        assert (r2.z, r2.shift) == (z, a)
        assert mutual_exclusion_check(l, t2) in ((BOTH,) if l == 2 else (SECOND_ONLY,))


def test_first_case_recover_flags_nonunique_when_p_divides_m():
    # p = 3 divides m = 3: several witnesses may exist
    t = first(F5.__class__(3), 2, 3, "x+1", 0)
    r = first_case_recover(t.f, 2)
    assert r
    assert isinstance(r.unique, bool)
