from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from abcover.covers import Cover, enumerate_covers
from abcover.newton import NewtonPolygon, PolygonError, newton_polygon

COVERS = [cv for g in range(2, 7) for cv in enumerate_covers(g)]


def test_genus12_two_slope_polygon():
    cv = Cover.cyclic(35, 1, 20)
    want = NewtonPolygon.two_slope(5, 12, 12)
    for p in (3, 47, 17, 103):
        assert newton_polygon(cv, p) == want


def test_constructors():
    assert NewtonPolygon.supersingular(3).slope_list() == [Fraction(1, 2)] * 6
    o = NewtonPolygon.ordinary(2)
    assert o.is_ordinary() and not o.is_supersingular() and o.genus == 2
    assert str(NewtonPolygon.two_slope(1, 3, 3)) == "{1/3 x3, 2/3 x3}"


def test_invalid_polygons():
    with pytest.raises(PolygonError):
        NewtonPolygon(((1, 3, 3),))  # not symmetric
    with pytest.raises(PolygonError):
        NewtonPolygon(((1, 3, 2), (2, 3, 2)))  # breakpoint at 2/3
    with pytest.raises(PolygonError):
        NewtonPolygon(((3, 2, 2), (-1, 2, 2)))


def test_vertices_and_ordinate():
    np_ = NewtonPolygon.two_slope(1, 3, 3)
    assert np_.vertices() == [(0, 0), (3, 1), (6, 3)]
    assert np_.ordinate(Fraction(3, 2)) == Fraction(1, 2)
    with pytest.raises(PolygonError):
        np_.ordinate(7)


def test_json_roundtrip_and_direct_sum():
    a, b = NewtonPolygon.two_slope(1, 3, 3), NewtonPolygon.supersingular(2)
    s = a.direct_sum(b)
    assert s.genus == 5 and NewtonPolygon.from_json(s.to_json()) == s


@given(st.sampled_from(COVERS), st.integers(min_value=1, max_value=10**5))
def test_symmetry_and_height(cover, r):
    if gcd(r, cover.exponent) != 1:
        return
    np_ = newton_polygon(cover, r)
    assert np_.height == 2 * cover.genus
    mult = np_.multiplicities()
    for s, k in mult.items():
        assert mult.get(1 - s, 0) == k
    assert sum(s * k for s, k in mult.items()) == cover.genus


@given(st.sampled_from(COVERS), st.integers(min_value=1, max_value=10**5))
def test_trivial_residue_is_ordinary(cover, k):
    # r = 1 fixes every character, so every orbit is a singleton
    assert newton_polygon(cover, 1).is_ordinary()
