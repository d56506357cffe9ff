import itertools

import pytest
from hypothesis import given, strategies as st

from polycount.errors import DomainError, UsageError
from polycount.field import parse_field
from polycount.poly import (Poly, compose, decode_canonical, derivative, encode_canonical,
                            encode_int, format_poly, frobenius_poly, is_frobenius_composition,
                            normalize_decomposition, parse_poly, poly_pth_root,
                            second_normalize, taylor_constants, taylor_in_base)
from strategies import field_and_poly, fields, monic_original, polys

F2, F3, F4, F5 = (parse_field(s) for s in "2345")


def P(F, s):
    return parse_poly(F, s)


@pytest.mark.parametrize("g,h,f", [
    ("x^2+x", "x^2", "x^4+x^2"),
    ("x^3+x", "x^3-x", "x^9-x"),
    ("x^3+x^2", "x^3-x^2-x", "x^9+x^5-x^4+x^3+x^2"),
])
def test_compose_examples(g, h, f):
    assert compose(P(F3, g), P(F3, h)) == P(F3, f)


def test_compose_mixed_fields():
    with pytest.raises(UsageError):
        compose(P(F3, "x^2"), P(F5, "x^2"))


def test_derivative_examples():
    assert derivative(P(F3, "x^9-x")) == P(F3, "-1")
    assert derivative(P(F5, "x^5")).is_zero()
    assert derivative(P(F3, "x^3+x^2")) == P(F3, "2*x")


def test_zero_degree_sentinel():
    z = Poly(F3, ())
    assert z.is_zero()
    assert z.degree is None or z.degree < 0


def test_normalize_decomposition_example():
    g, h = P(F5, "x^2"), P(F5, "2*x^2+1")
    gs, hs = normalize_decomposition(g, h)
    assert hs.is_monic() and hs.is_original()
    assert compose(gs, hs) == compose(g, h)
    g1, h1 = P(F5, "x^2+x"), P(F5, "x^2+3*x")
    assert normalize_decomposition(g1, h1) == (g1, h1)
    with pytest.raises(UsageError):
        normalize_decomposition(g, P(F5, "3"))


def test_second_normalize():
    f, shift = second_normalize(P(F5, "x^4+2*x^3"))
    assert shift == 3
    assert f.coeff(3) == 0
    g, s0 = second_normalize(P(F5, "x^4+x"))
    assert s0 == 0 and g == P(F5, "x^4+x")
    with pytest.raises(DomainError):
        second_normalize(P(F3, "x^9+x"))


def test_taylor_examples():
    h = P(F5, "x^2+3*x")
    f = h * h + h.scale(2)
    assert [format_poly(t) for t in taylor_in_base(f, h)] == ["0", "2", "1"]
    g = taylor_constants(P(F3, "x^9+x^5+x"), P(F3, "x^3-x^2+x"))
    assert g == P(F3, "x^3+x^2+x")
    ts = taylor_in_base(P(F5, "x^3+1"), P(F5, "x^2"))
    assert ts[1] == P(F5, "x")


def test_pth_root():
    assert poly_pth_root(P(F3, "x^9")) == P(F3, "x^3")
    assert poly_pth_root(P(F3, "x^6+x^3+1")) == P(F3, "x^2+x+1")
    with pytest.raises(DomainError):
        poly_pth_root(P(F2, "x^2+x"))


def test_frobenius_predicates():
    assert not is_frobenius_composition(P(F3, "x^9-x"))
    assert is_frobenius_composition(P(F3, "x^9"))
    a = F4.gen()
    h = Poly(F4, [1, a])
    assert frobenius_poly(h, 1) == Poly(F4, [1, a + 1])
    h3 = P(F3, "x^2+2*x")
    assert frobenius_poly(h3, 1) == h3


def test_encode_example():
    f = P(F3, "x^3+2*x")
    assert encode_int(f) == 2
    assert decode_canonical(F3, 3, encode_canonical(f)) == f
    assert set(encode_canonical(P(F3, "x^5"))) <= {0}
    with pytest.raises(UsageError):
        encode_canonical(P(F3, "x^3+1"))


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_encoding_bijection_exhaustive(q, d):
    F = parse_field(str(q))
    seen = set()
    for cs in itertools.product(range(q), repeat=d - 1):
        f = Poly.from_indices(F, (0,) + cs + (1,))
        code = encode_canonical(f)
        assert decode_canonical(F, d, code) == f
        seen.add(code)
    assert len(seen) == q ** (d - 1)


@given(field_and_poly(0, 5))
def test_parse_format_roundtrip(Fp):
    F, f = Fp
    assert parse_poly(F, format_poly(f)) == f


@given(fields, st.data())
def test_compose_associative(F, data):
    f = data.draw(polys(F, 0, 3))
    g = data.draw(polys(F, 0, 3))
    h = data.draw(polys(F, 0, 3))
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(fields, st.data())
def test_chain_rule(F, data):
    g = data.draw(polys(F, 0, 4))
    h = data.draw(polys(F, 0, 4))
    assert derivative(compose(g, h)) == compose(derivative(g), h) * derivative(h)


@given(fields, st.data())
def test_taylor_reconstructs(F, data):
    f = data.draw(polys(F, 0, 8))
    h = data.draw(polys(F, 1, 3))
    ts = taylor_in_base(f, h)
    acc = Poly(F, ())
    for t in reversed(ts):
        acc = acc * h + t
    assert acc == f
    assert all(t.is_zero() or t.degree < h.degree for t in ts)


@given(fields, st.data())
def test_normalize_idempotent(F, data):
    g = data.draw(polys(F, 1, 3))
    h = data.draw(polys(F, 1, 3))
    gs, hs = normalize_decomposition(g, h)
    assert compose(gs, hs) == compose(g, h)
    assert normalize_decomposition(gs, hs) == (gs, hs)


@given(fields, st.data())
def test_frobenius_identity(F, data):
    h = data.draw(polys(F, 1, 4))
    j = data.draw(st.integers(1, 3))
    xp = Poly.monomial(F, F.p ** j)
    assert compose(xp, h) == compose(frobenius_poly(h, j), xp)


@given(fields, st.data())
def test_encode_roundtrip_random(F, data):
    d = data.draw(st.integers(1, 10))
    f = data.draw(monic_original(F, d))
    assert decode_canonical(F, d, encode_canonical(f)) == f
