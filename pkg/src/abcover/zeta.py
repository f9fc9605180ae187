"""Point counting on y^m = x^a0 (1-x)^a1 and the p-adic Newton polygon of its zeta function.

This is an independent check of the character-theoretic Newton polygon.  The
field with p^i elements is built from a primitive polynomial found by seeded
random search, so every nonzero element is a power of x and the affine count
reduces to discrete-log arithmetic.  Above the branch points the smooth model
has gcd(a_b, m) geometric points; the rational ones are counted directly:

* above 0 and 1 the local branches are indexed by d-th roots of unity,
  d = gcd(a_b, m), so gcd(d, q - 1) of them are rational;
* above infinity they are indexed by roots of z^d = (-1)^a1 with
  d = gcd(a0 + a1, m).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import kernels
from .arith import factorize, is_prime
from .covers import Cover
from .newton import NewtonPolygon, newton_polygon

FIELD_BUDGET = 2 * 10**6
DEFAULT_SEED = 20240601


class OracleError(ValueError):
    pass


# ------------------------------------------------------------------ F_p[x]


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _polymod(f: list[int], g: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    _trim(f)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        coef = f[-1] * inv % p
        shift = len(f) - len(g)
        for k, c in enumerate(g):
            f[shift + k] = (f[shift + k] - coef * c) % p
        _trim(f)
    return f


def _polymulmod(a: list[int], b: list[int], g: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _polymod(out, g, p)


def _polypowmod(base: list[int], e: int, g: list[int], p: int) -> list[int]:
    result, base = [1], _polymod(base, g, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, g, p)
        base = _polymulmod(base, base, g, p)
        e >>= 1
    return result


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _x_pow_q_minus_x(k: int, f: list[int], p: int) -> list[int]:
    h = _polypowmod([0, 1], p**k, f, p)
    h = h + [0] * max(0, 2 - len(h))
    h[1] = (h[1] - 1) % p
    return _trim(h)


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic f (coefficients low to high) over F_p."""
    n = len(f) - 1
    if n < 1 or f[-1] % p != 1:
        return False
    if n == 1:
        return True
    if _x_pow_q_minus_x(n, f, p):
        return False
    for q in factorize(n):
        h = _x_pow_q_minus_x(n // q, f, p)
        if len(_polygcd(f, h, p)) != 1:
            return False
    return True


def is_primitive(f: list[int], p: int) -> bool:
    """Irreducible and x generates the multiplicative group of F_p[x]/(f)."""
    if not is_irreducible(f, p):
        return False
    order = p ** (len(f) - 1) - 1
    for q in factorize(order):
        if _polypowmod([0, 1], order // q, f, p) == [1]:
            return False
    return True


def find_primitive_poly(p: int, degree: int, seed: int = DEFAULT_SEED) -> list[int]:
    """Seeded random search; returns monic coefficients low to high."""
    rng = random.Random(f"{seed}:{p}:{degree}")
    for _ in range(100000):
        f = [rng.randrange(p) for _ in range(degree)] + [1]
        if f[0] and is_primitive(f, p):
            return f
    raise OracleError(f"no primitive polynomial of degree {degree} over F_{p} found")


@dataclass(frozen=True)
class FiniteField:
    """F_q with q = p^degree, elements as base-p codes, with log tables."""

    p: int
    degree: int
    poly: tuple[int, ...]
    exp: np.ndarray
    log: np.ndarray
    zech: np.ndarray

    @classmethod
    def build(cls, p: int, degree: int, seed: int = DEFAULT_SEED) -> "FiniteField":
        if p**degree > FIELD_BUDGET:
            raise OracleError(f"field of size {p}^{degree} exceeds the budget {FIELD_BUDGET}")
        poly = find_primitive_poly(p, degree, seed)
        exp_, log_ = kernels.field_tables(p, degree, poly[:-1])
        zech = kernels.one_minus_logs(p, degree, np.asarray(exp_, dtype=np.int64), np.asarray(log_, dtype=np.int64))
        return cls(p, degree, tuple(poly), np.asarray(exp_), np.asarray(log_), np.asarray(zech, dtype=np.int64))

    @property
    def q(self) -> int:
        return self.p**self.degree


# ------------------------------------------------------------ point counts


def _roots_count(d: int, minus: bool, q: int) -> int:
    """#{z in F_q : z^d = 1} or, with ``minus``, #{z : z^d = -1}."""
    h = gcd(d, q - 1)
    if not minus or q % 2 == 0:
        return h
    # -1 = w^((q-1)/2); z = w^k solves z^d = -1 iff h | (q-1)/2
    return h if ((q - 1) // 2) % h == 0 else 0


def fiber_counts(m: int, a0: int, a1: int, q: int) -> tuple[int, int, int]:
    """Rational points of the smooth model above 0, 1 and infinity."""
    d0, d1, dinf = gcd(a0, m), gcd(a1, m), gcd(a0 + a1, m)
    return _roots_count(d0, False, q), _roots_count(d1, False, q), _roots_count(dinf, a1 % 2 == 1, q)


def count_points(m: int, a0: int, a1: int, p: int, i: int = 1, seed: int = DEFAULT_SEED,
                 field: FiniteField | None = None) -> int:
    """Rational points over F_{p^i} of the smooth projective model of y^m = x^a0 (1-x)^a1."""
    if not is_prime(p):
        raise OracleError(f"{p} is not prime")
    if m % p == 0:
        raise OracleError(f"p = {p} divides m = {m}")
    if a0 % m == 0 or a1 % m == 0 or (a0 + a1) % m == 0:
        raise OracleError("every branch exponent must be nonzero modulo m")
    F = field if field is not None else FiniteField.build(p, i, seed)
    q = F.q
    d = gcd(m, q - 1)
    affine = d * kernels.count_affine(F.zech, a0 % (q - 1), a1 % (q - 1), d)
    return affine + sum(fiber_counts(m, a0, a1, q))


@dataclass(frozen=True)
class PointCounts:
    p: int
    counts: tuple[int, ...]
    genus: int

    def __post_init__(self):
        for i, n in enumerate(self.counts, start=1):
            q = self.p**i
            if (n - q - 1) ** 2 > 4 * self.genus**2 * q:
                raise OracleError(f"N_{i} = {n} violates the Weil bound for genus {self.genus}")


# ------------------------------------------------------------- L-polynomial


@dataclass(frozen=True)
class LPolynomial:
    p: int
    coeffs: tuple[int, ...]

    @property
    def genus(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def check(self, tol: float = 1e-3) -> None:
        c, g, p = self.coeffs, self.genus, self.p
        if c[0] != 1:
            raise OracleError("constant term must be 1")
        for i in range(g + 1):
            if c[2 * g - i] != p ** (g - i) * c[i]:
                raise OracleError(f"functional equation fails at degree {i}")
        if g:
            roots = np.roots([float(x) for x in reversed(c)])
            # reciprocal roots have absolute value sqrt(p), so roots have 1/sqrt(p)
            if np.any(np.abs(np.abs(roots) * np.sqrt(p) - 1) > tol * 10):
                raise OracleError("roots are not on the circle |T| = p^(-1/2)")

    def power_sum(self, k: int) -> int:
        """sum alpha^k over reciprocal roots, by Newton's identities."""
        e = [(-1) ** j * c for j, c in enumerate(self.coeffs)]
        s: list[int] = [0]
        for n in range(1, k + 1):
            total = (-1) ** (n - 1) * n * e[n] if n < len(e) else 0
            for j in range(1, n):
                ej = e[j] if j < len(e) else 0
                total += (-1) ** (j - 1) * ej * s[n - j]
            s.append(total)
        return s[k]


def l_polynomial(counts: PointCounts) -> LPolynomial:
    """Assemble L(T) from N_1..N_g and complete it with the functional equation.

    Extra counts beyond N_g are checked against the assembled polynomial.
    """
    g, p = counts.genus, counts.p
    if len(counts.counts) < g:
        raise OracleError(f"need {g} counts, got {len(counts.counts)}")
    S = [p**k + 1 - n for k, n in enumerate(counts.counts, start=1)]
    e = [1]
    for k in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * S[i - 1] for i in range(1, k + 1))
        if acc % k:
            raise OracleError(f"non-integral coefficient at degree {k}; counts are inconsistent")
        e.append(acc // k)
    c = [(-1) ** k * e[k] for k in range(g + 1)]
    c += [p ** (g - i) * c[i] for i in range(g - 1, -1, -1)]
    L = LPolynomial(p, tuple(c))
    L.check()
    for k in range(g + 1, len(S) + 1):
        if L.power_sum(k) != S[k - 1]:
            raise OracleError(f"N_{k} disagrees with the polynomial assembled from N_1..N_{g}")
    return L


def _valuation(x: int, p: int) -> int | None:
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def np_from_lpoly(L: LPolynomial) -> NewtonPolygon:
    """Lower convex hull of (i, v_p(c_i)), slopes read left to right."""
    pts = [(i, _valuation(c, L.p)) for i, c in enumerate(L.coeffs)]
    pts = [(i, v) for i, v in pts if v is not None]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes: dict[Fraction, int] = {}
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y2 - y1, x2 - x1)
        slopes[s] = slopes.get(s, 0) + (x2 - x1)
    return NewtonPolygon.from_slopes(slopes)


# ------------------------------------------------------------------ report


@dataclass(frozen=True)
class OracleReport:
    m: int
    a0: int
    a1: int
    p: int
    seed: int
    counts: tuple[int, ...]
    lpoly: LPolynomial
    polygon: NewtonPolygon
    expected: NewtonPolygon

    @property
    def match(self) -> bool:
        return self.polygon == self.expected

    def to_json(self) -> dict:
        return {
            "m": self.m, "a0": self.a0, "a1": self.a1, "p": self.p, "seed": self.seed,
            "counts": list(self.counts), "lpoly": list(self.lpoly.coeffs),
            "np": self.polygon.to_json(), "st_np": self.expected.to_json(), "match": self.match,
        }


def oracle_compare(m: int, a0: int, a1: int, p: int, max_i: int | None = None,
                   seed: int = DEFAULT_SEED) -> OracleReport:
    """Count points, build L(T), and compare its Newton polygon with Shimura-Taniyama."""
    cover = Cover.cyclic(m, a0, a1)
    g = cover.genus
    top = g if max_i is None else max(max_i, g)
    counts = tuple(count_points(m, a0, a1, p, i, seed) for i in range(1, top + 1))
    L = l_polynomial(PointCounts(p, counts, g))
    return OracleReport(m, a0, a1, p, seed, counts, L, np_from_lpoly(L), newton_polygon(cover, p % m))
