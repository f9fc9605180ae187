"""Exact modular arithmetic used throughout the package.

Everything here works on Python integers, so moduli may be arbitrarily large
(the density code routinely builds least common multiples well past 64 bits).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

Orbit = tuple[int, ...]

# Deterministic Miller-Rabin: the first 13 primes as bases are correct for all
# n < 3_317_044_064_679_887_385_961_981.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


class NumberTheoryError(ValueError):
    """Raised on invalid modular-arithmetic input (non-units, bad primes, ...)."""


@dataclass(frozen=True, order=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise NumberTheoryError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value % modulus, modulus)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Deterministic below 3.3e24; above that the same 13 bases plus a handful of
    extra ones are used, which is probabilistic but has no known failures.
    """
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES
    if n >= _MR_DETERMINISTIC_LIMIT:
        bases = _MR_BASES + (43, 47, 53, 59, 61, 67, 71)
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(n: int, what: str = "argument") -> None:
    if not is_prime(n):
        raise NumberTheoryError(f"{what} must be prime, got {n}")


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    n += 1
    while not is_prime(n):
        n += 1
    return n


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation; meant for the small numbers this package sees."""
    if n < 1:
        raise NumberTheoryError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    while q * q <= n:
        for step in (q, q + 2):
            while n % step == 0:
                out[step] = out.get(step, 0) + 1
                n //= step
        q += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for q in factorize(n):
        result -= result // q
    return result


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, k in factorize(n).items():
        divs = [d * q**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, via quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise NumberTheoryError(f"Jacobi symbol needs odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, ell: int) -> int:
    """Legendre symbol (a/ell) for an odd prime ell."""
    if ell == 2 or ell < 3:
        raise NumberTheoryError(f"Legendre symbol needs an odd prime, got {ell}")
    require_prime(ell, "ell")
    return jacobi(a, ell)


def mult_order(a: int, n: int) -> int:
    """Multiplicative order of a modulo n (n = 1 gives 1)."""
    if n < 1:
        raise NumberTheoryError(f"modulus must be positive, got {n}")
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise NumberTheoryError(f"{a} is not a unit modulo {n}")
    a %= n
    order = totient(n)
    for q in factorize(order):
        while order % q == 0 and pow(a, order // q, n) == 1:
            order //= q
    return order


def inverse_mod(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise NumberTheoryError(f"{a} is not invertible modulo {n}")
    return pow(a, -1, n) if n > 1 else 0


def frobenius_orbits(m: int, r: int) -> list[Orbit]:
    """Cycles of j -> r*j on the nonzero residues modulo m.

    Each orbit starts at its smallest element and follows the action; orbits
    are sorted by their first element.
    """
    if m < 2:
        raise NumberTheoryError(f"modulus must be at least 2, got {m}")
    if gcd(r, m) != 1:
        raise NumberTheoryError(f"{r} is not a unit modulo {m}")
    r %= m
    seen = bytearray(m)
    orbits = []
    for start in range(1, m):
        if seen[start]:
            continue
        orbit = []
        j = start
        while not seen[j]:
            seen[j] = 1
            orbit.append(j)
            j = j * r % m
        orbits.append(tuple(orbit))
    return orbits


def crt_lift(residues) -> Residue:
    """Solve x = v_i (mod m_i) for a consistent system with arbitrary moduli.

    ``residues`` is an iterable of ``(value, modulus)`` pairs. Raises on the
    first pair that contradicts the constraints accumulated so far.
    """
    value, modulus = 0, 1
    for v, m in residues:
        if m < 1:
            raise NumberTheoryError(f"modulus must be positive, got {m}")
        v %= m
        g = gcd(modulus, m)
        if (v - value) % g:
            raise NumberTheoryError(
                f"inconsistent congruences: x = {value} mod {modulus} and x = {v} mod {m}"
            )
        # value + modulus * t = v (mod m)  ->  t = (v - value)/g * inv(modulus/g) mod m/g
        step = m // g
        t = ((v - value) // g) * inverse_mod(modulus // g, step) % step if step > 1 else 0
        value += modulus * t
        modulus *= step
        value %= modulus
    return Residue(value, modulus)
