"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from polycount.field import FieldSpec
from polycount.poly import Poly

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)]

fields = st.sampled_from(SMALL).map(lambda pe: FieldSpec(*pe))


@st.composite
def polys(draw, F, min_deg=0, max_deg=6):
    n = draw(st.integers(min_deg, max_deg))
    cs = draw(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n))
    lead = draw(st.integers(1 if min_deg > 0 else 0, F.q - 1))
    return Poly.from_indices(F, cs + [lead])


@st.composite
def monic_original(draw, F, deg):
    cs = draw(st.lists(st.integers(0, F.q - 1), min_size=deg - 1, max_size=deg - 1))
    return Poly.from_indices(F, [0] + cs + [1])


@st.composite
def field_and_poly(draw, min_deg=0, max_deg=6):
    F = draw(fields)
    return F, draw(polys(F, min_deg, max_deg))
