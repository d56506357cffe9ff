import itertools

import pytest
from hypothesis import given, strategies as st

from polycount.errors import UsageError
from polycount.field import (FieldSpec, frobenius, is_irreducible, parse_element,
                             parse_field, prime_power, pth_power_root, roots_in_field)
from strategies import fields


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(UsageError):
        prime_power(12)


@pytest.mark.parametrize("text,q,e", [("5", 5, 1), ("8", 8, 3), ("3^2", 9, 2), ("2^2/1,1,1", 4, 2)])
def test_parse_field(text, q, e):
    F = parse_field(text)
    assert (F.q, F.e) == (q, e)


@pytest.mark.parametrize("text", ["6", "x", "4/1,0,1", "2^2/1,1"])
def test_parse_field_rejects(text):
    with pytest.raises(UsageError):
        parse_field(text)


def test_gf4_generator_relation():
    F = parse_field("4")
    a = F.gen()
    assert a * a == a + 1


@given(fields, st.data())
def test_field_axioms(F, data):
    el = st.integers(0, F.q - 1).map(lambda i: F.element(list(F.coords(i))))
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert x ** (F.q - 1) == 1


@given(fields, st.data())
def test_frobenius_is_additive_and_inverts(F, data):
    x = F.elements()[data.draw(st.integers(0, F.q - 1))]
    y = F.elements()[data.draw(st.integers(0, F.q - 1))]
    assert frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1)
    assert pth_power_root(x ** F.p, F.p) == x
    assert frobenius(x, F.e) == x


def test_moduli_of_gf8_all_irreducible_and_isomorphic_counts():
    for mod in [(1, 1, 0, 1), (1, 0, 1, 1)]:
        assert is_irreducible(mod, 2)
        F = FieldSpec(2, 3, mod)
        # every element is a root of x^8 - x
        assert len(roots_in_field([F.zero(), F.element(-1)] + [F.zero()] * 6 + [F.one()])) == 8


def test_parse_element_coordinates():
    F = parse_field("9")
    x = parse_element(F, "[1,2]")
    assert tuple(x.coords) == (1, 2)
    with pytest.raises(UsageError):
        parse_element(F, "[1,2,0]")
    with pytest.raises(UsageError):
        parse_element(F, "[3]")


def test_roots_in_field_small():
    F = parse_field("5")
    # x^2 - 1
    assert {r.idx for r in roots_in_field([F.element(-1), F.zero(), F.one()])} == {1, 4}


def test_element_count_exhaustive_inverses():
    for F in map(parse_field, ["4", "8", "9"]):
        prods = {F.mul(a, F.inv(a)) for a in range(1, F.q)}
        assert prods == {1}
        assert len({F.mul(a, b) for a, b in itertools.product(range(1, F.q), [F.gen().idx])}) == F.q - 1
