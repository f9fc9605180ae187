"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

The lines are printed at the end of the pytest run (see conftest.py) and when
this file is executed directly.
"""

import functools
import time
from fractions import Fraction
from math import gcd

import pytest

from abcover import theory
from abcover.arith import lcm, primes_upto
from abcover.chars import signature_table
from abcover.covers import Cover, enumerate_covers
from abcover.density import exists_cover_with, genus_density
from abcover.eo import FinalType, dieudonne_maps, final_type, stable_f_image
from abcover.moduli import classify, eo_stratum_dim, np_stratum_dim
from abcover.newton import NewtonPolygon, newton_polygon
from abcover.zeta import oracle_compare

RESULTS: dict[int, str] = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                line = f"FAIL criterion {number:2d}: {title} ({type(exc).__name__}: {str(exc).splitlines()[0][:200] if str(exc) else ''})"
                RESULTS[number] = line
                print(line)
                raise
            secs = time.perf_counter() - start
            line = f"PASS criterion {number:2d}: {title} [{secs:.1f}s]" + (f" {detail}" if detail else "")
            RESULTS[number] = line
            print(line)
        return run
    return wrap


def _listed_superspecial(p):
    return any(p % m == m - 1 for m in (8, 11, 12, 15, 20)) or p % 15 == 11 or p % 20 == 11


@criterion(1, "genus-5 superspecial primes below 10^4 agree with the listed congruences")
def test_c01_superspecial_genus5():
    L = 20 * lcm(*{cv.degree for cv in enumerate_covers(5)})
    checked = 0
    for p in primes_upto(10**4):
        if L % p == 0:
            continue
        assert exists_cover_with(5, "ssp", p) == _listed_superspecial(p), f"disagreement at p = {p}"
        checked += 1
    return f"{checked} primes"


@criterion(2, "Z/35 (1,20,14) has slopes 5/12, 7/12 at p = 3, 47, 17, 103")
def test_c02_two_slope_genus12():
    cv = Cover.cyclic(35, 1, 20)
    assert cv.genus == 12
    want = NewtonPolygon.two_slope(5, 12, 12)
    for p in (3, 47, 17, 103):
        assert newton_polygon(cv, p) == want, p


@criterion(3, "stratum dimensions: supersingular floor(g^2/4), superspecial 0, ordinary codim 0")
def test_c03_strata():
    for g in range(2, 21):
        assert np_stratum_dim(NewtonPolygon.supersingular(g)) == g * g // 4
        assert eo_stratum_dim(FinalType((0,) * g)) == 0
        assert classify(NewtonPolygon.ordinary(g)).codim == 0
        assert classify(FinalType(tuple(range(1, g + 1)))).codim == 0


def _sweep_pairs():
    for ell in (7, 11, 13, 17, 19, 23):
        for n in (1, 2, 3, 4):
            if gcd(n, ell) == 1:
                yield ell, n


@criterion(4, "order-g primes give slopes alpha/g, (g-alpha)/g with total multiplicity 2ng")
def test_c04_order_g_slopes():
    count = 0
    for ell, n in _sweep_pairs():
        pred = theory.predicted_slopes(ell)
        for p in theory.least_primes(ell, n, "order_g"):
            poly = theory.slopes_at(ell, n, p)
            assert set(poly.multiplicities()) == set(pred.slopes), (ell, n, p)
            assert poly.height == 2 * n * pred.g
            count += 1
    return f"{count} cases"


@criterion(5, "order-2g primes give supersingular polygons of genus ng")
def test_c05_order_2g_supersingular():
    count = 0
    for ell, n in _sweep_pairs():
        g = (ell - 1) // 2
        for p in theory.least_primes(ell, n, "order_2g"):
            assert theory.slopes_at(ell, n, p) == NewtonPolygon.supersingular(n * g), (ell, n, p)
            count += 1
    return f"{count} cases"


def _excess_range():
    for ell in primes_upto(101):
        if ell > 3:
            for n in range(1, 13):
                if gcd(n, ell) == 1:
                    yield ell, n


@criterion(6, "quadratic-excess identity for 3 < l <= 101, n <= 12, 1 <= r <= n")
def test_c06_quadratic_excess_identity():
    count = 0
    for ell, n in _excess_range():
        for r in range(1, n + 1):
            assert theory.verify_lemma42(ell, n, r), (ell, n, r)
            count += 1
    return f"{count} triples"


@criterion(7, "closed-form signatures agree with Chevalley-Weil on the same sweep")
def test_c07_signatures():
    count = 0
    for ell, n in _excess_range():
        params = theory.ConstructionParams(ell, n)
        table = signature_table(theory.construct_cover(params))
        for j in range(1, params.degree):
            if j % ell == 0:
                continue
            direct = table[(j, 0)]
            assert theory.closed_form_signature(j, params) == direct, (ell, n, j)
            assert theory.interval_signature(j, params) == direct, (ell, n, j)
            count += 1
    return f"{count} characters"


@criterion(8, "point-counting Newton polygon equals Shimura-Taniyama for cyclic covers")
def test_c08_oracle():
    seen, count = set(), 0
    for m in range(2, 21):
        for a0 in range(1, m):
            for a1 in range(a0, m):
                if (a0 + a1) % m == 0 or gcd(gcd(a0, a1), m) != 1:
                    continue
                cv = Cover.cyclic(m, a0, a1)
                if not 1 <= cv.genus <= 5 or (cv.group, cv.inertia) in seen:
                    continue
                seen.add((cv.group, cv.inertia))
                for p in primes_upto(13):
                    if m % p:
                        rep = oracle_compare(m, a0, a1, p)
                        assert rep.match, (m, a0, a1, p, str(rep.polygon), str(rep.expected))
                        count += 1
    assert count >= 10
    return f"{count} comparisons"


@pytest.mark.xfail(strict=True, reason="delta_nu(11) is exactly 7/8; the strict bound 0.875 is not exceeded")
@criterion(9, "densities for 9 <= g <= 12 exceed 0.7 (ss), 0.2 (ssp), 0.875 (nu)")
def test_c09_density_bounds():
    thresholds = {"ss": Fraction(7, 10), "ssp": Fraction(1, 5), "nu": Fraction(7, 8)}
    failures = []
    for g in (9, 10, 11, 12):
        for prop, bound in thresholds.items():
            res = genus_density(g, prop)
            assert res.mode in ("exact", "lower_bound")
            if not res.value > bound:
                failures.append(f"delta_{prop}({g}) = {res.value} ({res.mode}) not > {bound}")
    assert not failures, "; ".join(failures)


@criterion(10, "inclusion-exclusion: {5} gives 2/5, the 49-prime set exceeds 0.9999")
def test_c10_inclusion_exclusion():
    assert theory.inclusion_excl_density([5]) == Fraction(2, 5)
    S = theory.LIMSUP_SET
    assert len(S) == 49
    assert theory.inclusion_excl_density(S, check=False) > Fraction(9999, 10000)
    violations = theory.compatibility_violations(S)
    sub = theory.compatible_subset(S)
    assert theory.inclusion_excl_density(sub) > Fraction(9999, 10000)
    return f"({len(violations)} pairwise violations in the set; compatible {len(sub)}-subset also > 0.9999)"


@criterion(11, "g = 419 certificate: slopes 193/419, 226/419, unlikely")
def test_c11_denominator_419():
    cert = theory.large_denominator_certificate(419, 1)
    assert {Fraction(cert.alpha, 419), Fraction(419 - cert.alpha, 419)} == {Fraction(193, 419), Fraction(226, 419)}
    assert cert.report.unlikely


@criterion(12, "invariant suite over every cover of genus <= 8 and every unit residue")
def test_c12_invariants():
    pairs = 0
    for g in range(2, 9):
        for cv in enumerate_covers(g):
            table = signature_table(cv)
            assert sum(table.values()) == g and len(table) == 2 * g
            e = cv.exponent
            for r in range(1, e):
                if gcd(r, e) != 1:
                    continue
                poly = newton_polygon(cv, r)
                mult = poly.multiplicities()
                assert all(mult.get(1 - s) == k for s, k in mult.items())
                assert sum(s * k for s, k in mult.items()) == g
                maps = dieudonne_maps(cv, r)
                ft = final_type(maps)
                assert all(0 <= b - a <= 1 for a, b in zip((0,) + ft.nu, ft.nu))
                if ft.is_superspecial():
                    assert poly.is_supersingular()
                assert len(stable_f_image(maps)) == poly.multiplicity(0)
                pairs += 1
    return f"{pairs} (cover, residue) pairs"


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    for t in tests:
        try:
            t()
        except BaseException:
            pass
    sys.exit(0 if all(line.startswith("PASS") for line in RESULTS.values()) else 1)
