from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from abcover.arith import primes_upto
from abcover.covers import Cover
from abcover.density import (
    CongruenceSet, DensityError, conjecture13_check, exists_cover_with, genus_density, genus_residue_sets,
    has_property, property_residues, union_density,
)
from abcover.newton import NewtonPolygon, newton_polygon


def _brute_union(sets):
    L = 1
    for s in sets:
        L = L * s.modulus // gcd(L, s.modulus)
    units = [r for r in range(L) if gcd(r, L) == 1]
    hit = sum(1 for r in units if any(r in s for s in sets))
    return Fraction(hit, len(units))


@st.composite
def congruence_sets(draw):
    m = draw(st.sampled_from([3, 4, 5, 7, 8, 9, 12, 15, 20, 21, 24, 28, 35, 36]))
    units = [r for r in range(m) if gcd(r, m) == 1]
    res = draw(st.lists(st.sampled_from(units), min_size=1, max_size=len(units), unique=True))
    return CongruenceSet(m, tuple(res))


@given(st.lists(congruence_sets(), min_size=1, max_size=4))
def test_union_matches_brute_force(sets):
    res = union_density(sets)
    assert res.mode == "exact"
    assert res.value == _brute_union(sets)


@given(st.lists(congruence_sets(), min_size=2, max_size=4))
def test_greedy_bound_is_lower(sets):
    exact = _brute_union(sets)
    low = union_density(sets, cap=max(s.modulus for s in sets))
    assert low.value <= exact
    assert low.mode in ("exact", "lower_bound")


def test_union_examples():
    assert union_density([CongruenceSet(8, (7,)), CongruenceSet(3, (2,))]).value == Fraction(5, 8)
    assert union_density([CongruenceSet(5, (1, 2, 3, 4))]).value == 1
    with pytest.raises(DensityError):
        union_density([CongruenceSet(35, (1,))], cap=10)


def test_congruence_set_checks():
    s = CongruenceSet(12, (11, 5, 5))
    assert s.residues == (5, 11) and s.density() == Fraction(1, 2)
    assert 17 in s and 13 not in s
    with pytest.raises(DensityError):
        CongruenceSet(12, (2,))


def test_property_residues_two_slope():
    cv = Cover.cyclic(35, 1, 20)
    target = NewtonPolygon.two_slope(5, 12, 12)
    res = property_residues(cv, lambda c, r: newton_polygon(c, r) == target)
    assert res.modulus == 35 and res.residues == (3, 12, 17, 33)


def test_genus5_superspecial_density():
    listed = [CongruenceSet(m, (m - 1,)) for m in (8, 11, 12, 15, 20)]
    listed += [CongruenceSet(15, (11,)), CongruenceSet(20, (11,))]
    assert genus_density(5, "ssp").value == union_density(listed).value == Fraction(97, 160)


def test_has_property_names():
    cv = Cover.cyclic(20, 1, 9)
    assert has_property(cv, 11, "ssp") and has_property(cv, 11, "ss")
    assert has_property(cv, 1, "ordinary")
    with pytest.raises(DensityError):
        has_property(cv, 11, "bogus")


def test_exists_cover_with_pointwise():
    sets = genus_residue_sets(6, "ss")
    for p in primes_upto(2000)[10:]:
        want = any(p % s.modulus in s.residues for _, s in sets if s.modulus % p)
        assert exists_cover_with(6, "ss", p) == want


def test_conjecture_small_genus():
    out = conjecture13_check(9)
    assert out["np_violations"] == 0 and out["eo_violations"] == 0 and not out["partial"]
    assert conjecture13_check(5)["np_violations"] > 0
