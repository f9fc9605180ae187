"""Congruence conditions on p and natural densities of their unions.

For a fixed cover every invariant depends only on p modulo the group exponent
e, so a property cuts out a set of unit residues mod e.  The density of primes
lying in the union of such sets (over many covers with different exponents)
is, by Dirichlet, the proportion of units modulo L = lcm(e_i) in the union.

``union_density`` computes that proportion exactly without touching all of
(Z/L)^x when it can:

* sets are shrunk to their conductor, merged by modulus and split into
  components with disjoint prime support (independent by CRT);
* a prime shared between moduli is peeled off by specialising every set at
  each unit residue modulo its prime power, with memoisation of identical
  specialised systems;
* small systems are scanned directly by a compiled kernel.

When the work exceeds ``cap`` it falls back to a greedy sub-union whose exact
density is a certified lower bound.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

import numpy as np

from . import kernels
from .arith import factorize, lcm, totient
from .covers import Cover, enumerate_covers
from .eo import eo_type
from .moduli import classify
from .newton import newton_polygon

DEFAULT_CAP = 10**8
LEAF_SIZE = 1 << 21

PROPERTIES = ("ss", "ssp", "nu", "eu", "2nu", "2eu", "ordinary")


class DensityError(ValueError):
    pass


@dataclass(frozen=True)
class CongruenceSet:
    """Unit residues modulo ``modulus``, sorted and deduplicated."""

    modulus: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise DensityError(f"modulus must be positive, got {self.modulus}")
        res = tuple(sorted({r % self.modulus for r in self.residues}))
        for r in res:
            if gcd(r, self.modulus) != 1:
                raise DensityError(f"{r} is not a unit modulo {self.modulus}")
        object.__setattr__(self, "residues", res)

    def __contains__(self, p: int) -> bool:
        return p % self.modulus in self.residues

    def __len__(self):
        return len(self.residues)

    def density(self) -> Fraction:
        return Fraction(len(self.residues), totient(self.modulus))

    def lift(self, modulus: int) -> "CongruenceSet":
        if modulus % self.modulus:
            raise DensityError(f"{modulus} is not a multiple of {self.modulus}")
        keep = set(self.residues)
        return CongruenceSet(
            modulus, tuple(r for r in range(modulus) if gcd(r, modulus) == 1 and r % self.modulus in keep)
        )

    def mask(self) -> bytes:
        m = bytearray(self.modulus)
        for r in self.residues:
            m[r] = 1
        return bytes(m)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "residues": list(self.residues)}


@dataclass(frozen=True)
class DensityResult:
    value: Fraction
    mode: str
    effective_modulus: int
    covers_used: int
    work: int = 0
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "float": float(self.value),
            "mode": self.mode,
            "modulus": self.effective_modulus,
            "covers_used": self.covers_used,
            "work": self.work,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------- properties


def has_property(cover: Cover, r: int, prop) -> bool:
    if callable(prop):
        return bool(prop(cover, r))
    if prop in ("ss", "nu", "2nu", "ordinary"):
        np_ = newton_polygon(cover, r)
        if prop == "ss":
            return np_.is_supersingular()
        if prop == "ordinary":
            return np_.is_ordinary()
        report = classify(np_)
        return report.unlikely if prop == "nu" else report.two_unlikely
    if prop in ("ssp", "eu", "2eu"):
        ft, _ = eo_type(cover, r)
        if prop == "ssp":
            return ft.is_superspecial()
        report = classify(ft)
        return report.unlikely if prop == "eu" else report.two_unlikely
    raise DensityError(f"unknown property {prop!r}; expected one of {PROPERTIES} or a callable")


def property_residues(cover: Cover, prop) -> CongruenceSet:
    """Units r mod the exponent for which the property holds at primes p = r."""
    if not callable(prop):
        return _property_residues_cached(cover, prop)
    e = cover.exponent
    return CongruenceSet(e, tuple(r for r in range(1, e) if gcd(r, e) == 1 and has_property(cover, r, prop)))


@lru_cache(maxsize=8192)
def _property_residues_cached(cover: Cover, prop: str) -> CongruenceSet:
    e = cover.exponent
    units = [r for r in range(e) if gcd(r, e) == 1]
    return CongruenceSet(e, tuple(r for r in units if has_property(cover, r, prop)))


# ---------------------------------------------------------- union machinery

_System = tuple  # tuple of (modulus, mask bytes), normalised and sorted
_FULL = "full"


class _BudgetExceeded(Exception):
    pass


@lru_cache(maxsize=None)
def _unit_mask(n: int) -> bytes:
    return bytes(1 if gcd(r, n) == 1 else 0 for r in range(n))


def _conductor(e: int, mask: bytes) -> tuple[int, bytes]:
    """Smallest modulus e' | e such that membership only depends on r mod e'."""
    changed = True
    while changed and e > 1:
        changed = False
        for q in factorize(e):
            f = e // q
            seen: dict[int, int] = {}
            ok = True
            for r in range(e):
                if gcd(r, e) != 1:
                    continue
                v = mask[r]
                if seen.setdefault(r % f, v) != v:
                    ok = False
                    break
            if ok:
                new = bytearray(f)
                for s, v in seen.items():
                    new[s] = v
                e, mask = f, bytes(new)
                changed = True
                break
    return e, mask


def _lift_mask(mask: bytes, e: int, big: int) -> bytearray:
    units = _unit_mask(big)
    return bytearray(1 if units[r] and mask[r % e] else 0 for r in range(big))


def _normalise(system) -> _System | str:
    work: dict[int, bytearray] = {}
    for e, mask in system:
        if e == 1:
            if mask[0]:
                return _FULL
            continue
        if not any(mask):
            continue
        e, mask = _conductor(e, mask)
        if e == 1:
            return _FULL
        if e in work:
            cur = work[e]
            for i, v in enumerate(mask):
                if v:
                    cur[i] = 1
        else:
            work[e] = bytearray(mask)
    # fold sets whose modulus divides another's into the larger one
    for e in sorted(work, reverse=True):
        for f in sorted(work):
            if f < e and e % f == 0 and f in work and e in work:
                lifted = _lift_mask(bytes(work.pop(f)), f, e)
                cur = work[e]
                for i, v in enumerate(lifted):
                    if v:
                        cur[i] = 1
    out = []
    for e, mask in work.items():
        if bytes(mask) == _unit_mask(e):
            return _FULL
        out.append((e, bytes(mask)))
    return tuple(sorted(out))


def _components(system: _System) -> list[_System]:
    """Split into groups of sets whose moduli share no prime."""
    parent = list(range(len(system)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for i, (e, _) in enumerate(system):
        for q in factorize(e):
            if q in owner:
                parent[find(i)] = find(owner[q])
            else:
                owner[q] = i
    groups: dict[int, list] = {}
    for i, item in enumerate(system):
        groups.setdefault(find(i), []).append(item)
    return [tuple(g) for g in groups.values()]


class _UnionEvaluator:
    def __init__(self, cap: int):
        self.cap = cap
        self.work = 0
        self.memo: dict = {}

    def charge(self, amount: int) -> None:
        self.work += amount
        if self.work > self.cap:
            raise _BudgetExceeded

    def density(self, system) -> Fraction:
        system = _normalise(system)
        if system == _FULL:
            return Fraction(1)
        if not system:
            return Fraction(0)
        if system in self.memo:
            return self.memo[system]
        comps = _components(system)
        if len(comps) > 1:
            miss = prod((1 - self._connected(c) for c in comps), start=Fraction(1))
            value = 1 - miss
        else:
            value = self._connected(system)
        self.memo[system] = value
        return value

    def _connected(self, system: _System) -> Fraction:
        if len(system) == 1:
            e, mask = system[0]
            return Fraction(sum(mask), totient(e))
        if system in self.memo:
            return self.memo[system]
        L = lcm(*(e for e, _ in system))
        if L <= LEAF_SIZE:
            value = self._scan(system, L)
        else:
            value = self._peel(system, L)
        self.memo[system] = value
        return value

    def _scan(self, system: _System, L: int) -> Fraction:
        self.charge(L)
        rad = prod(factorize(L))
        moduli = [e for e, _ in system]
        masks = [np.frombuffer(m, dtype=np.uint8) for _, m in system]
        unit = np.frombuffer(_unit_mask(rad), dtype=np.uint8)
        hits = kernels.count_union(L, moduli, masks, rad, unit)
        return Fraction(hits, totient(L))

    def _pick_prime(self, system: _System) -> int:
        shared = Counter(q for e, _ in system for q in factorize(e))
        best, score = None, None
        for q, count in shared.items():
            if count < 2:
                continue
            Q = max(q ** factorize(e).get(q, 0) for e, _ in system)
            s = (count / totient(Q), q)
            if score is None or s > score:
                best, score = q, s
        return best

    def _peel(self, system: _System, L: int) -> Fraction:
        q = self._pick_prime(system)
        Q = max(q ** factorize(e).get(q, 0) for e, _ in system)
        branches: Counter = Counter()
        plans = []
        for e, mask in system:
            a = factorize(e).get(q, 0)
            if a == 0:
                plans.append((e, mask, None))
                continue
            qa = q**a
            rest = e // qa
            # index of the residue mod e with given components mod qa and mod rest
            lift = [[(x * rest * pow(rest, -1, qa) + s * qa * pow(qa, -1, rest)) % e if rest > 1 else x % e
                     for s in range(rest)] for x in range(qa)]
            plans.append((rest, mask, (qa, lift)))
        for x in range(Q):
            if x % q == 0:
                continue
            spec = []
            for e, mask, plan in plans:
                if plan is None:
                    spec.append((e, mask))
                    continue
                qa, lift = plan
                row = lift[x % qa]
                spec.append((e, bytes(mask[row[s]] for s in range(e))))
                self.charge(e)
            branches[tuple(spec)] += 1
        total = sum(mult * self.density(spec) for spec, mult in branches.items())
        return Fraction(total, totient(Q))


def _exact_union(sets: list[CongruenceSet], cap: int) -> tuple[Fraction, int]:
    ev = _UnionEvaluator(cap)
    value = ev.density([(s.modulus, s.mask()) for s in sets])
    return value, ev.work


def union_density(sets, cap: int = DEFAULT_CAP, counts=None) -> DensityResult:
    """Density of primes in the union of the congruence sets.

    ``counts`` optionally gives, per set, how many covers it stands for
    (reported as ``covers_used``).
    """
    sets = list(sets)
    if not sets:
        raise DensityError("need at least one congruence set")
    counts = list(counts) if counts is not None else [1] * len(sets)
    if cap < min(s.modulus for s in sets):
        raise DensityError(f"cap {cap} is below the smallest modulus {min(s.modulus for s in sets)}")
    L = lcm(*(s.modulus for s in sets))
    try:
        value, work = _exact_union(sets, cap)
        return DensityResult(value, "exact", L, sum(counts), work)
    except _BudgetExceeded:
        pass
    return _greedy_lower_bound(sets, counts, cap)


def _greedy_lower_bound(sets, counts, cap) -> DensityResult:
    """Grow a sub-union greedily by exact marginal gain while it stays within cap."""
    by_mod: dict[int, list[int]] = {}
    for i, s in enumerate(sets):
        by_mod.setdefault(s.modulus, []).append(i)
    groups = []
    for e, idx in by_mod.items():
        res = tuple(r for i in idx for r in sets[i].residues)
        groups.append((CongruenceSet(e, res), sum(counts[i] for i in idx)))
    chosen: list = []
    value, total_work = Fraction(0), 0
    remaining = [g for g in groups if len(g[0])]
    while remaining:
        best = None
        for cand in remaining:
            trial = [c[0] for c in chosen] + [cand[0]]
            if lcm(*(s.modulus for s in trial)) > cap:
                continue
            try:
                v, w = _exact_union(trial, cap)
            except _BudgetExceeded:
                continue
            total_work += w
            if best is None or v > best[0]:
                best = (v, cand)
        if best is None or best[0] <= value:
            break
        value = best[0]
        chosen.append(best[1])
        remaining.remove(best[1])
    L = lcm(*(c[0].modulus for c in chosen)) if chosen else 1
    note = f"greedy sub-union of {len(chosen)} of {len(groups)} moduli"
    return DensityResult(value, "lower_bound", L, sum(c[1] for c in chosen), total_work, (note,))


def genus_residue_sets(g: int, prop) -> list[tuple[Cover, CongruenceSet]]:
    return [(c, property_residues(c, prop)) for c in enumerate_covers(g)]


def genus_density(g: int, prop, cap: int = DEFAULT_CAP) -> DensityResult:
    """Density of primes p admitting a genus-g three-point abelian cover with ``prop``."""
    if g < 2:
        raise DensityError(f"genus must be at least 2, got {g}")
    pairs = genus_residue_sets(g, prop)
    sets = [s for _, s in pairs]
    bad = sorted({q for c, _ in pairs for q in factorize(c.degree)})
    result = union_density(sets, cap)
    note = f"primes dividing a group order are excluded (finitely many): {bad}"
    return DensityResult(result.value, result.mode, result.effective_modulus,
                         sum(1 for s in sets if len(s)) if result.mode == "exact" else result.covers_used,
                         result.work, result.notes + (note,))


def exists_cover_with(g: int, prop, p: int) -> bool:
    """Whether some genus-g cover with p coprime to its degree has ``prop`` at p."""
    for cover, s in genus_residue_sets(g, prop):
        if cover.degree % p and p in s:
            return True
    return False


# ------------------------------------------------------------ conjecture scan


def conjecture13_check(g: int, budget: int = DEFAULT_CAP, list_limit: int = 10**6) -> dict:
    """Residue classes (avoiding 1 mod every exponent) lacking unlikely NP or EO covers.

    Counts are exact whenever the union machinery fits in ``budget``; the
    explicit list of violating classes is only produced when phi(L) is at most
    ``list_limit``.
    """
    if g < 2:
        raise DensityError(f"genus must be at least 2, got {g}")
    covers = enumerate_covers(g)
    exps = sorted({c.exponent for c in covers})
    L = lcm(*exps)
    phi = totient(L)
    ones = [CongruenceSet(e, (1,)) for e in exps]
    nu = [property_residues(c, "nu") for c in covers]
    eu = [property_residues(c, "eu") for c in covers]
    report = {"genus": g, "modulus": L, "units": phi, "partial": False}
    try:
        one_d, w1 = _exact_union(ones, budget)
        nu_d, w2 = _exact_union(nu + ones, budget)
        eu_d, w3 = _exact_union(eu + ones, budget)
        both_d, w4 = _exact_union(nu + eu + ones, budget)
    except _BudgetExceeded:
        report["partial"] = True
        return report
    scanned = phi * (1 - one_d)
    nu_in = phi * (nu_d - one_d)
    eu_in = phi * (eu_d - one_d)
    either_in = phi * (both_d - one_d)
    both_in = nu_in + eu_in - either_in
    report.update(
        scanned=int(scanned),
        np_violations=int(scanned - nu_in),
        eo_violations=int(scanned - eu_in),
        violations=int(scanned - both_in),
        work=w1 + w2 + w3 + w4,
    )
    if report["violations"] == 0:
        report["violating_classes"] = []
    elif phi <= list_limit:
        nu_sets = [(s.modulus, set(s.residues)) for s in nu]
        eu_sets = [(s.modulus, set(s.residues)) for s in eu]
        bad = []
        for r in range(1, L):
            if gcd(r, L) != 1 or any(r % e == 1 for e in exps):
                continue
            has_nu = any(r % e in s for e, s in nu_sets)
            has_eu = any(r % e in s for e, s in eu_sets)
            if not (has_nu and has_eu):
                bad.append(r)
        report["violating_classes"] = bad
        if len(bad) != report["violations"]:
            raise DensityError("explicit scan disagrees with the union count")
    return report
