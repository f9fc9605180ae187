from itertools import product

import pytest
from hypothesis import given, strategies as st

from abcover import zeta
from abcover.newton import NewtonPolygon


def _affine_brute(m, a0, a1, p):
    """Points with x not in {0, 1} on y^m = x^a0 (1-x)^a1 over F_p, by enumeration."""
    powers = {}
    for y in range(1, p):
        v = pow(y, m, p)
        powers[v] = powers.get(v, 0) + 1
    return sum(powers.get(pow(x, a0, p) * pow(1 - x, a1, p) % p, 0) for x in range(2, p))


@given(st.integers(2, 20), st.integers(1, 19), st.integers(1, 19), st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23]))
def test_prime_field_affine_count(m, a0, a1, p):
    a0, a1 = a0 % m, a1 % m
    if m % p == 0 or 0 in (a0, a1, (a0 + a1) % m):
        return
    n = zeta.count_points(m, a0, a1, p, 1)
    assert n - sum(zeta.fiber_counts(m, a0, a1, p)) == _affine_brute(m, a0, a1, p)


def _has_root(f, p):
    return any(sum(c * pow(x, k, p) for k, c in enumerate(f)) % p == 0 for x in range(p))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_irreducible_small_degree(p):
    # degree 2 and 3: irreducible iff no roots
    for deg in (2, 3):
        for low in product(range(p), repeat=deg):
            f = list(low) + [1]
            assert zeta.is_irreducible(f, p) == (not _has_root(f, p))


def test_primitive_polynomial_generates():
    for p, deg in [(2, 5), (3, 4), (7, 2), (13, 3)]:
        f = zeta.find_primitive_poly(p, deg)
        assert zeta.is_primitive(f, p)
        F = zeta.FiniteField.build(p, deg)
        assert sorted(F.exp.tolist()) == list(range(1, p**deg))
        assert F.log[1] == 0


def test_field_budget():
    with pytest.raises(zeta.OracleError):
        zeta.FiniteField.build(101, 4)


def test_seed_independence():
    counts = {zeta.count_points(7, 1, 2, 3, 3, seed=s) for s in (1, 2, 3)}
    assert len(counts) == 1


def test_elliptic_example():
    assert zeta.count_points(3, 1, 1, 2, 1) == 3
    L = zeta.l_polynomial(zeta.PointCounts(2, (3,), 1))
    assert L.coeffs == (1, 0, 2)
    assert zeta.np_from_lpoly(L) == NewtonPolygon.supersingular(1)


def test_inconsistent_counts_rejected():
    with pytest.raises(zeta.OracleError):
        zeta.PointCounts(5, (40,), 1)  # Weil bound
    with pytest.raises(zeta.OracleError):
        zeta.l_polynomial(zeta.PointCounts(3, (4, 10), 1))  # second count disagrees


def test_genus_five_supersingular():
    rep = zeta.oracle_compare(20, 1, 9, 11)
    assert rep.counts[0] == 12
    assert rep.match and rep.polygon.is_supersingular()


def test_oracle_rejects_bad_input():
    with pytest.raises(zeta.OracleError):
        zeta.count_points(10, 1, 2, 5)
    with pytest.raises(zeta.OracleError):
        zeta.count_points(6, 3, 3, 5)
    with pytest.raises(zeta.OracleError):
        zeta.count_points(6, 1, 2, 4)


def test_power_sums_reproduce_counts():
    rep = zeta.oracle_compare(7, 1, 2, 2, max_i=5)
    for k, n in enumerate(rep.counts, start=1):
        assert rep.lpoly.power_sum(k) == 2**k + 1 - n
