"""Quadratic excess, the cyclic construction with two-slope Newton polygons,
and the supersingular / large-denominator consequences.

For a prime l > 3 and n coprime to l, the cyclic cover of degree nl with
inertia (1, (n-k)l - 4, kl + 3), k = -3/l mod n, has genus n(l-1)/2.  When p
has order g = (l-1)/2 modulo l (and its order mod n is coprime to g) its
Newton polygon has the two slopes alpha/g and (g-alpha)/g, alpha counting
quadratic residues in (0, l/4) u (l/3, l/2) u (2l/3, 3l/4).  When p has order
2g the polygon is supersingular.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd

from .arith import frobenius_orbits, is_prime, legendre, mult_order, next_prime
from .covers import Cover
from .moduli import StratumReport, classify
from .newton import NewtonPolygon, newton_polygon


class TheoryError(ValueError):
    pass


def _require_ell(ell: int) -> None:
    if ell <= 3 or not is_prime(ell):
        raise TheoryError(f"need a prime l > 3, got {ell}")


# ------------------------------------------------------------ quadratic excess


@lru_cache(maxsize=256)
def _legendre_prefix(ell: int) -> tuple[int, ...]:
    """prefix[k] = sum of (m/ell) for 0 <= m <= k, for 0 <= k < ell."""
    out, run = [], 0
    for m in range(ell):
        run += legendre(m, ell)
        out.append(run)
    return tuple(out)


def _prefix(ell: int, n: int) -> int:
    # the symbol sums to zero over a period, so the prefix is periodic
    return _legendre_prefix(ell)[n % ell]


def quadratic_excess(a, b, ell: int) -> int:
    """Residues minus nonresidues mod ``ell`` among integers strictly between a and b."""
    if ell < 3 or not is_prime(ell):
        raise TheoryError(f"need an odd prime, got {ell}")
    a, b = Fraction(a), Fraction(b)
    lo, hi = floor(a) + 1, ceil(b) - 1
    if lo > hi:
        return 0
    return _prefix(ell, hi) - _prefix(ell, lo - 1)


def verify_lemma42(ell: int, n: int, r: int) -> bool:
    """Check (-1/l) q(lr/4n, lr/n) = sum_{i=1..3} q(l(in - r)/4n, il/4)."""
    _require_ell(ell)
    if n < 1 or not 1 <= r <= n:
        raise TheoryError(f"need 1 <= r <= n, got r={r}, n={n}")
    lhs = legendre(-1, ell) * quadratic_excess(Fraction(ell * r, 4 * n), Fraction(ell * r, n), ell)
    rhs = sum(
        quadratic_excess(Fraction(ell * (i * n - r), 4 * n), Fraction(i * ell, 4), ell) for i in (1, 2, 3)
    )
    return lhs == rhs


# ---------------------------------------------------------------- construction


@dataclass(frozen=True)
class ConstructionParams:
    ell: int
    n: int = 1
    k: int = field(default=-1)

    def __post_init__(self):
        _require_ell(self.ell)
        if self.n < 1 or gcd(self.n, self.ell) != 1:
            raise TheoryError(f"n must be a positive integer coprime to {self.ell}, got {self.n}")
        k = (-3 * pow(self.ell, -1, self.n)) % self.n if self.n > 1 else 0
        if self.k not in (-1, k):
            raise TheoryError(f"k must be {k} for l={self.ell}, n={self.n}")
        object.__setattr__(self, "k", k)

    @property
    def g(self) -> int:
        return (self.ell - 1) // 2

    @property
    def degree(self) -> int:
        return self.n * self.ell

    @property
    def inertia(self) -> tuple[int, int, int]:
        n, ell, k = self.n, self.ell, self.k
        return 1, (n - k) * ell - 4, k * ell + 3


def construct_cover(params: ConstructionParams | int, n: int | None = None) -> Cover:
    """The cyclic cover y^{nl} = x (1-x)^{(n-k)l - 4}; accepts params or (l, n)."""
    if not isinstance(params, ConstructionParams):
        params = ConstructionParams(params, 1 if n is None else n)
    a0, a1, ainf = params.inertia
    cover = Cover.cyclic(params.degree, a0, a1, ainf)
    if cover.genus != params.n * params.g:
        raise TheoryError(f"construction produced genus {cover.genus}, expected {params.n * params.g}")
    return cover


def construction_signature(params: ConstructionParams, j: int) -> int:
    """Signature at character j of the constructed cover, with inertia in construction order."""
    m = params.degree
    nums = [j * a % m for a in params.inertia]
    if 0 in nums:
        return 0
    return 2 - sum(nums) // m


# ------------------------------------------------------------- slope formula


@dataclass(frozen=True)
class SlopePrediction:
    alpha: int
    g: int

    @property
    def slopes(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.alpha, self.g), Fraction(self.g - self.alpha, self.g)

    def polygon(self, n: int = 1) -> NewtonPolygon:
        """The predicted polygon of the genus-ng construction."""
        if 2 * self.alpha == self.g:
            return NewtonPolygon.supersingular(n * self.g)
        return NewtonPolygon.two_slope(self.alpha, self.g, n * self.g)


def alpha_count(ell: int) -> int:
    """Quadratic residues mod l in (0, l/4), (l/3, l/2) and (2l/3, 3l/4)."""
    _require_ell(ell)
    bounds = [(Fraction(0), Fraction(ell, 4)), (Fraction(ell, 3), Fraction(ell, 2)),
              (Fraction(2 * ell, 3), Fraction(3 * ell, 4))]
    total = 0
    for lo, hi in bounds:
        for m in range(floor(lo) + 1, ceil(hi)):
            if legendre(m, ell) == 1:
                total += 1
    return total


def predicted_slopes(ell: int) -> SlopePrediction:
    return SlopePrediction(alpha_count(ell), (ell - 1) // 2)


# ----------------------------------------------------- closed-form signatures


def interval_index(i: int, params: ConstructionParams) -> tuple[int, int]:
    """Integer interval [lo, hi] attached to 0 <= i < 6n."""
    ell, n = params.ell, params.n
    if not 0 <= i < 6 * n:
        raise TheoryError(f"interval index must lie in [0, {6 * n - 1}], got {i}")
    if i % 2 == 0:
        lo = floor(Fraction(ell * i, 6)) + 1
        hi = floor(Fraction(ell * (Fraction(i, 2) + ceil(Fraction(i + 1, 6))), 4))
    else:
        lo = floor(Fraction(ell * (Fraction(i - 1, 2) + ceil(Fraction(i, 6))), 4)) + 1
        hi = floor(Fraction(ell * (i + 1), 6))
    return lo, hi


def interval_partition(params: ConstructionParams) -> list[tuple[int, int]]:
    return [interval_index(i, params) for i in range(6 * params.n)]


def _check_j(j: int, params: ConstructionParams) -> None:
    if not 1 <= j < params.degree:
        raise TheoryError(f"j must lie in [1, {params.degree - 1}], got {j}")
    if j % params.ell == 0:
        raise TheoryError(f"j = {j} is a multiple of l = {params.ell}; the signature there is 0")


def closed_form_signature(j: int, params: ConstructionParams) -> int:
    """Signature via the ceiling/floor formula over the interval containing j."""
    _check_j(j, params)
    n, k = params.n, params.k
    for i, (lo, hi) in enumerate(interval_partition(params)):
        if lo <= j <= hi:
            up = -((-(j * k + (i + 2) // 2)) // n)
            down = (j * k + (i + 1) // 2 + i // 6) // n
            return up - down
    raise TheoryError(f"j = {j} lies in no interval")


def _open_union(params: ConstructionParams, a: int) -> list[tuple[Fraction, Fraction]]:
    ell, n = params.ell, params.n
    L = Fraction(ell)
    if 3 * a <= n - 1:
        return [(0, 3 * a * L / 4), (a * L, L * (n + 3 * a) / 4),
                (L * (n + 3 * a) / 3, L * (2 * n + 3 * a) / 4),
                (L * (2 * n + 3 * a) / 3, L * (3 * n + 3 * a) / 4)]
    if 3 * a <= 2 * n - 1:
        return [(0, L * (3 * a - n) / 4), (L * (3 * a - n) / 3, 3 * L * a / 4),
                (a * L, L * (n + 3 * a) / 4), (L * (n + 3 * a) / 3, L * (2 * n + 3 * a) / 4)]
    return [(0, L * (3 * a - 2 * n) / 4), (L * (3 * a - 2 * n) / 3, L * (3 * a - n) / 4),
            (L * (3 * a - n) / 3, 3 * L * a / 4), (a * L, L * (n + 3 * a) / 4)]


def interval_signature(j: int, params: ConstructionParams) -> int:
    """Signature via open-interval membership, by the class a of j/l mod n."""
    _check_j(j, params)
    n = params.n
    a = j * pow(params.ell, -1, n) % n if n > 1 else 0
    return int(any(lo < j < hi for lo, hi in _open_union(params, a)))


# --------------------------------------------------------------- hypotheses


def theorem15_hypotheses(ell: int, n: int, p: int) -> str:
    """Classify p as "order_g", "order_2g" or "fails" for the (l, n) construction."""
    _require_ell(ell)
    if n < 1 or gcd(n, ell) != 1:
        raise TheoryError(f"n must be positive and coprime to {ell}")
    if not is_prime(p) or gcd(p, n * ell) != 1:
        return "fails"
    g = (ell - 1) // 2
    if gcd(mult_order(p, n), g) != 1:
        return "fails"
    order = mult_order(p, ell)
    if order == g:
        return "order_g"
    if order == 2 * g:
        return "order_2g"
    return "fails"


def least_primes(ell: int, n: int, kind: str, count: int = 2, start: int = 2) -> list[int]:
    """The ``count`` smallest primes p >= start classified as ``kind``."""
    if kind not in ("order_g", "order_2g"):
        raise TheoryError(f"kind must be order_g or order_2g, got {kind!r}")
    out, p = [], start - 1
    while len(out) < count:
        p = next_prime(p)
        if theorem15_hypotheses(ell, n, p) == kind:
            out.append(p)
    return out


def orbit_structure_check(ell: int, n: int, p: int) -> bool:
    """Do the orbits of multiplication by p on Z/nl match the residue-class description?

    Away from multiples of l, the orbit of a is predicted to be every b with the
    same Legendre symbol as a and b = a p^k mod n for some k; its size is then a
    multiple of g.
    """
    if theorem15_hypotheses(ell, n, p) != "order_g":
        raise TheoryError(f"p = {p} does not satisfy the order-g hypotheses for l={ell}, n={n}")
    m, g = n * ell, (ell - 1) // 2
    for orbit in frobenius_orbits(m, p % m):
        a = orbit[0]
        if a % ell == 0:
            continue
        classes = {a * pow(p, k, n) % n if n > 1 else 0 for k in range(mult_order(p, n))}
        chi = legendre(a, ell)
        predicted = {b for b in range(1, m) if b % ell and (b % n if n > 1 else 0) in classes
                     and legendre(b, ell) == chi}
        if set(orbit) != predicted or len(orbit) % g:
            return False
    return True


def slopes_at(ell: int, n: int, p: int) -> NewtonPolygon:
    """Newton polygon of the (l, n) construction at p, by Shimura-Taniyama."""
    cover = construct_cover(ConstructionParams(ell, n))
    return newton_polygon(cover, p % cover.exponent)


def doubling_pair(ell: int, p: int) -> tuple[NewtonPolygon, NewtonPolygon]:
    """Polygons of the n = 1 and n = 2 constructions at a residue p.

    When p is a nonzero square mod l the second is the first doubled.
    """
    _require_ell(ell)
    if p % 2 == 0 or p % ell == 0 or legendre(p, ell) != 1:
        raise TheoryError(f"p = {p} must be odd and a nonzero square modulo {ell}")
    return slopes_at(ell, 1, p), slopes_at(ell, 2, p)


# --------------------------------------------------------- large denominators


@dataclass(frozen=True)
class DenominatorCertificate:
    g: int
    n: int
    alpha: int
    polygon: NewtonPolygon
    report: StratumReport
    floor_gf: int
    bound_codim: int

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "alpha": self.alpha,
            "slopes": [f"{self.alpha}/{self.g}", f"{self.g - self.alpha}/{self.g}"],
            "polygon": self.polygon.to_json(),
            "stratum": self.report.to_json(),
            "floor_gf": self.floor_gf,
            "bound_codim": self.bound_codim,
        }


def floor_g_threshold(g: int) -> int:
    """Certified floor of (g - 2 sqrt(2g+1) log(2g+1)) / 2."""
    from mpmath import iv, mpf

    iv.prec = 200
    x = iv.mpf(2 * g + 1)
    val = (iv.mpf(g) - 2 * iv.sqrt(x) * iv.log(x)) / 2
    lo, hi = floor(mpf(val.a)), floor(mpf(val.b))
    if lo != hi:
        raise TheoryError(f"interval {val} straddles an integer; raise the precision")
    return int(lo)


def two_slope_codim(g: int, a: int) -> int:
    """Codimension in A_g of the two-slope stratum a/g, (g-a)/g when gcd(a, g) = 1."""
    if gcd(a, g) != 1:
        raise TheoryError(f"closed form needs gcd(a, g) = 1, got a={a}, g={g}")
    return (g + g * a + a - 1) // 2


def large_denominator_certificate(g: int, n: int = 1) -> DenominatorCertificate:
    """Two-slope polygon of denominator g for a Sophie Germain prime g > 363, shown unlikely."""
    if not (is_prime(g) and is_prime(2 * g + 1)):
        raise TheoryError(f"{g} is not a Sophie Germain prime")
    if g <= 363:
        raise TheoryError(f"the certificate needs g > 363, got {g}")
    ell = 2 * g + 1
    if n < 1 or gcd(n, ell) != 1:
        raise TheoryError(f"n must be positive and coprime to {ell}")
    pred = predicted_slopes(ell)
    poly = NewtonPolygon.two_slope(pred.alpha, g, n * g)
    report = classify(poly)
    a = min(pred.alpha, g - pred.alpha)
    fl = floor_g_threshold(g)
    if not 0 < fl < a:
        raise TheoryError(f"character-sum bound violated: floor {fl}, a = {a}")
    bound = two_slope_codim(g, fl) if gcd(fl, g) == 1 else None
    if bound is None or bound <= 3 * g - 3:
        raise TheoryError(f"comparison polygon is not unlikely for g = {g}")
    if not report.unlikely:
        raise TheoryError(f"polygon for g = {g} is not unlikely")
    return DenominatorCertificate(g, n, pred.alpha, poly, report, fl, bound)


# ---------------------------------------------------------- inclusion-exclusion


def compatibility_violations(primes) -> list[str]:
    """Pairs breaking g_i != 2 g_j + 1 or g_i | g_j - 1, and non Sophie Germain entries."""
    primes = list(primes)
    out = []
    if len(set(primes)) != len(primes):
        out.append("repeated entries")
    for q in primes:
        if q == 2 or not (is_prime(q) and is_prime(2 * q + 1)):
            out.append(f"{q} is not an odd Sophie Germain prime")
    for a in primes:
        for b in primes:
            if a == b:
                continue
            if a == 2 * b + 1:
                out.append(f"{a} = 2*{b} + 1")
            if (b - 1) % a == 0:
                out.append(f"{a} divides {b} - 1")
    return out


def inclusion_excl_density(primes, check: bool = True) -> Fraction:
    """Density of p with order 2 g_i mod 2 g_i + 1 for some i.

    The alternating sum over subsets collapses to 1 - prod(1 - (g_i - 1)/(2 g_i)).
    With ``check`` the compatibility conditions are enforced.
    """
    primes = list(primes)
    if check:
        bad = compatibility_violations(primes)
        if bad:
            raise TheoryError("incompatible prime set: " + "; ".join(bad))
    miss = Fraction(1)
    for q in primes:
        miss *= 1 - Fraction(q - 1, 2 * q)
    return 1 - miss


# ------------------------------------------------------------ supersingular search


@dataclass(frozen=True)
class SupersingularSearch:
    p: int
    ell: int | None
    genus: int | None
    near_misses: tuple[tuple[int, int], ...] = ()

    @property
    def found(self) -> bool:
        return self.ell is not None

    def to_json(self) -> dict:
        return {"p": self.p, "ell": self.ell, "genus": self.genus, "found": self.found,
                "near_misses": [{"ell": e, "order": o} for e, o in self.near_misses]}


def supersingular_genus_for_prime(p: int, bound: int) -> SupersingularSearch:
    """Least prime l <= bound, l = 1 mod 4 and l = 1 mod p, on which p has order (l-1)/2.

    The l = 1 mod 4p sieve only makes p a square mod l; the order is checked
    explicitly, and the resulting cover is confirmed supersingular at p.
    """
    if p < 3 or not is_prime(p):
        raise TheoryError(f"need an odd prime, got {p}")
    misses = []
    for ell in range(4 * p + 1, bound + 1, 4 * p):
        if not is_prime(ell):
            continue
        order = mult_order(p, ell)
        if order != (ell - 1) // 2:
            misses.append((ell, order))
            continue
        poly = slopes_at(ell, 1, p)
        if not poly.is_supersingular():
            raise TheoryError(f"construction at l = {ell}, p = {p} is not supersingular: {poly}")
        return SupersingularSearch(p, ell, (ell - 1) // 2, tuple(misses))
    return SupersingularSearch(p, None, None, tuple(misses))


# The set used for the lim sup bound; see compatibility_violations for its defects.
LIMSUP_SET = (
    3, 5, 29, 41, 53, 83, 89, 113, 131, 173, 179, 191, 233, 239, 251, 281, 293, 359, 419, 431, 443,
    491, 509, 593, 641, 653, 659, 683, 719, 743, 761, 809, 911, 953, 1013, 1019, 1031, 1049, 1103,
    1223, 1229, 1289, 1409, 1439, 1451, 1481, 1499, 1511, 1559,
)


def compatible_subset(primes) -> tuple[int, ...]:
    """A subset with no violations, found by repeatedly dropping the worst offender."""
    keep = list(primes)
    while True:
        bad = _offenders(keep)
        if not bad:
            return tuple(keep)
        worst = max(bad, key=lambda q: (bad[q], -q))
        keep.remove(worst)


def _offenders(primes) -> dict[int, int]:
    counts: dict[int, int] = {}
    for a in primes:
        for b in primes:
            if a != b and (a == 2 * b + 1 or (b - 1) % a == 0):
                counts[a] = counts.get(a, 0) + 1
                counts[b] = counts.get(b, 0) + 1
    return counts

