from math import gcd

import pytest
from hypothesis import given, strategies as st

from abcover.arith import (
    NumberTheoryError, crt_lift, divisors, factorize, frobenius_orbits, is_prime,
    jacobi, legendre, mult_order, next_prime, primes_upto, totient,
)


def _naive_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_primes_upto_matches_trial_division():
    assert primes_upto(500) == [n for n in range(501) if _naive_prime(n)]


@given(st.integers(min_value=-10, max_value=10**5))
def test_is_prime(n):
    assert is_prime(n) == _naive_prime(n)


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@given(st.integers(min_value=1, max_value=10**6))
def test_factorize_roundtrip(n):
    f = factorize(n)
    prod = 1
    for q, k in f.items():
        assert is_prime(q)
        prod *= q**k
    assert prod == n


@given(st.integers(min_value=1, max_value=3000))
def test_totient_and_divisors(n):
    assert totient(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


@given(st.integers(min_value=-50, max_value=50), st.sampled_from(primes_upto(200)[1:]))
def test_legendre_euler_criterion(a, ell):
    e = pow(a, (ell - 1) // 2, ell)
    assert legendre(a, ell) == (0 if a % ell == 0 else (1 if e == 1 else -1))


def test_legendre_rejects_composite_and_two():
    for bad in (2, 9, 15, 1):
        with pytest.raises(NumberTheoryError):
            legendre(3, bad)
    with pytest.raises(NumberTheoryError):
        jacobi(3, 10)


@given(st.integers(min_value=2, max_value=400), st.integers(min_value=1, max_value=400))
def test_mult_order(n, a):
    if gcd(a, n) != 1:
        with pytest.raises(NumberTheoryError):
            mult_order(a, n)
        return
    k = mult_order(a, n)
    assert pow(a, k, n) == 1 % n
    assert all(pow(a, j, n) != 1 for j in range(1, k))


@given(st.integers(min_value=2, max_value=200), st.integers(min_value=1, max_value=200))
def test_frobenius_orbits_partition(m, r):
    if gcd(r, m) != 1:
        return
    orbits = frobenius_orbits(m, r)
    flat = sorted(j for o in orbits for j in o)
    assert flat == list(range(1, m))
    for o in orbits:
        assert o[0] == min(o)
        assert all(o[(i + 1) % len(o)] == o[i] * r % m for i in range(len(o)))


def test_orbits_at_35():
    assert frobenius_orbits(35, 3)[0] == (1, 3, 9, 27, 11, 33, 29, 17, 16, 13, 4, 12)


def test_crt_lift():
    x = crt_lift([(2, 3), (3, 5), (2, 7)])
    assert (x.value, x.modulus) == (23, 105)
    with pytest.raises(NumberTheoryError):
        crt_lift([(1, 4), (2, 6)])


def test_next_prime():
    assert next_prime(13) == 17 and next_prime(1) == 2
