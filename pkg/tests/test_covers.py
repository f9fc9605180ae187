from fractions import Fraction
from math import gcd, lcm

import pytest

from abcover.covers import AbelianGroup, Cover, CoverError, RamificationType, enumerate_covers, groups_of_order


def _brute_ramification(g):
    """Independent enumeration of (group, ramification orders) pairs of genus g.

    Works directly with pairs of elements of Z/c x Z/d and the Smith-form
    generation test: (c,0), (0,d), a0, a1 generate Z^2 / lattice iff the gcd of
    all 2x2 minors is 1.
    """
    found = {}
    for m in range(2, 84 * (g - 1) + 1):
        for d in range(1, m + 1):
            if m % d or (m // d) % d:
                continue
            c = m // d
            divs = [o for o in range(2, c + 1) if c % o == 0]
            target = m + 2 - 2 * g
            triples = [(a, b, e) for a in divs for b in divs for e in divs if m // a + m // b + m // e == target]
            if not triples:
                continue
            els = [(x, y) for x in range(c) for y in range(d)]
            order = {(x, y): lcm(c // gcd(x, c), d // gcd(y, d)) for x, y in els}
            by_order = {}
            for el in els:
                by_order.setdefault(order[el], []).append(el)
            for o0, o1, oi in triples:
                for a0 in by_order.get(o0, []):
                    for a1 in by_order.get(o1, []):
                        ai = ((-a0[0] - a1[0]) % c, (-a0[1] - a1[1]) % d)
                        if order[ai] != oi:
                            continue
                        cols = [(c, 0), (0, d), a0, a1]
                        minors = 0
                        for i in range(4):
                            for j in range(i + 1, 4):
                                minors = gcd(minors, cols[i][0] * cols[j][1] - cols[i][1] * cols[j][0])
                        if minors == 1:
                            found.setdefault((c, d), set()).add(tuple(sorted((o0, o1, oi), reverse=True)))
    return found


@pytest.mark.parametrize("g", [2, 3, 4, 5, 6])
def test_enumeration_matches_brute_force(g):
    mine = {}
    for cv in enumerate_covers(g):
        mine.setdefault((cv.group.c, cv.group.d), set()).add((cv.ram.c0, cv.ram.c1, cv.ram.cinf))
    assert mine == _brute_ramification(g)


@pytest.mark.parametrize("g", [2, 3, 4, 5, 6, 7, 8])
def test_enumerated_covers_are_distinct_and_valid(g):
    covers = enumerate_covers(g)
    assert len(set(covers)) == len(covers)
    assert len({cv.canonical for cv in covers}) == len(covers)
    for cv in covers:
        assert cv.genus == g
        assert cv.canonical.canonical == cv.canonical
        # Riemann-Hurwitz with the inertia orders
        n = cv.degree
        assert 2 * g - 2 == -2 * n + sum(n - n // o for o in cv.ram.orders)
        assert Cover.from_json(cv.to_json()) == cv


def test_genus_five_example():
    cv = Cover.cyclic(20, 1, 9)
    assert cv.genus == 5
    assert str(cv) == "Z/20 [20, 20, 2, 1] (1,9,10) g=5"
    assert cv.canonical in set(enumerate_covers(5))


def test_cyclic_sorting_and_exponent():
    cv = Cover.cyclic(35, 1, 20)
    assert cv.ram.orders == (35, 7, 5)
    assert cv.exponent == 35 and cv.genus == 12


def test_groups_of_order():
    assert [g.to_json() for g in groups_of_order(12)] == [[12, 1], [6, 2]]
    assert [g.to_json() for g in groups_of_order(7)] == [[7, 1]]


def test_invalid_inertia_rejected():
    G = AbelianGroup(6)
    with pytest.raises(CoverError):
        Cover(G, RamificationType(6, 6, 3, 1), ((1, 0), (1, 0), (1, 0)))
    with pytest.raises(CoverError):
        Cover.cyclic(6, 2, 2)  # does not generate
    with pytest.raises(CoverError):
        enumerate_covers(1)


def test_stated_genus_checked():
    data = Cover.cyclic(7, 1, 1).to_json()
    data["genus"] = 4
    with pytest.raises(CoverError):
        Cover.from_json(data)


def test_noncyclic_group():
    covers = [cv for cv in enumerate_covers(4) if not cv.group.is_cyclic]
    assert covers
    for cv in covers:
        G = cv.group
        assert G.generates(cv.inertia[:2])
        assert G.exponent == G.c and G.c % G.d == 0
        assert Fraction(G.order, G.exponent) == G.d
