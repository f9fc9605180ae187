"""Abelian covers of the projective line branched over 0, 1 and infinity.

A cover is described by its Galois group ``Z/c x Z/d`` (with ``d | c``), a
ramification type ``[c0, c1, cinf, s]`` and an inertia type ``(a0, a1, ainf)``
of group elements.  Elements are stored as coordinate pairs ``(x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations, product
from math import gcd

from .arith import divisors, lcm

Element = tuple[int, int]


class CoverError(ValueError):
    """Invalid group, ramification or inertia data."""


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """The group Z/c x Z/d with d | c; cyclic when d == 1."""

    c: int
    d: int = 1

    def __post_init__(self):
        if self.c < 1 or self.d < 1 or self.c % self.d:
            raise CoverError(f"need positive c, d with d | c, got ({self.c}, {self.d})")

    @property
    def order(self) -> int:
        return self.c * self.d

    @property
    def exponent(self) -> int:
        return self.c

    @property
    def is_cyclic(self) -> bool:
        return self.d == 1

    def elements(self) -> list[Element]:
        return [(x, y) for x in range(self.c) for y in range(self.d)]

    def element(self, x: int, y: int = 0) -> Element:
        return (x % self.c, y % self.d)

    def add(self, a: Element, b: Element) -> Element:
        return ((a[0] + b[0]) % self.c, (a[1] + b[1]) % self.d)

    def neg(self, a: Element) -> Element:
        return (-a[0] % self.c, -a[1] % self.d)

    def scale(self, k: int, a: Element) -> Element:
        return (k * a[0] % self.c, k * a[1] % self.d)

    def elem_order(self, a: Element) -> int:
        return lcm(self.c // gcd(a[0], self.c), self.d // gcd(a[1], self.d))

    def index_of(self, gens) -> int:
        """Index in G of the subgroup generated by ``gens``.

        G = Z^2 / (cZ x dZ), so the index is the gcd of the 2x2 minors of the
        matrix whose columns are (c,0), (0,d) and the generators.
        """
        cols = [(self.c, 0), (0, self.d)] + [tuple(g) for g in gens]
        h = 0
        for i in range(len(cols)):
            for j in range(i + 1, len(cols)):
                h = gcd(h, cols[i][0] * cols[j][1] - cols[i][1] * cols[j][0])
        return h

    def generates(self, gens) -> bool:
        return self.index_of(gens) == 1

    def automorphisms(self) -> list[tuple[Element, Element]]:
        return _automorphisms(self.c, self.d)

    def apply(self, aut: tuple[Element, Element], a: Element) -> Element:
        (u0, u1), (v0, v1) = aut
        return ((a[0] * u0 + a[1] * v0) % self.c, (a[0] * u1 + a[1] * v1) % self.d)

    def to_json(self) -> list[int]:
        return [self.c, self.d]


@lru_cache(maxsize=None)
def _automorphisms(c: int, d: int) -> list[tuple[Element, Element]]:
    """Images (phi(1,0), phi(0,1)) of the standard generators, by brute force."""
    group = AbelianGroup(c, d)
    elems = group.elements()
    second = [v for v in elems if group.elem_order(v) in divisors(d)] if d > 1 else [(0, 0)]
    auts = []
    for u in elems:
        if group.elem_order(u) != c:
            continue
        for v in second:
            if group.generates([u, v]):
                auts.append((u, v))
    return auts


@dataclass(frozen=True, order=True)
class RamificationType:
    c0: int
    c1: int
    cinf: int
    s: int

    def __post_init__(self):
        if min(self.c0, self.c1, self.cinf, self.s) < 1:
            raise CoverError(f"ramification data must be positive: {self.to_json()}")
        if not self.c0 >= self.c1 >= self.cinf:
            raise CoverError(f"need c0 >= c1 >= cinf, got {self.to_json()}")

    @property
    def orders(self) -> tuple[int, int, int]:
        return (self.c0, self.c1, self.cinf)

    @property
    def degree(self) -> int:
        return self.s * self.c0

    def to_json(self) -> list[int]:
        return [self.c0, self.c1, self.cinf, self.s]


def genus(group: AbelianGroup | int, ram: RamificationType) -> int:
    """Riemann-Hurwitz genus of a tame cover branched at three points."""
    m = group if isinstance(group, int) else group.order
    if m != ram.degree:
        raise CoverError(f"group order {m} does not match s*c0 = {ram.degree}")
    twice = 2 - 2 * m + sum(Fraction(m, c) * (c - 1) for c in ram.orders)
    if twice.denominator != 1 or twice % 2 or twice < 0:
        raise CoverError(f"ramification {ram.to_json()} gives non-integral or negative genus")
    return int(twice) // 2


def validate_inertia(group: AbelianGroup, ram: RamificationType, inertia) -> tuple[bool, str]:
    """Check the three inertia-type conditions; returns (ok, diagnostic)."""
    if len(inertia) != 3:
        return False, "inertia type needs exactly three elements"
    elems = [group.element(*a) for a in inertia]
    for name, a, c in zip(("a0", "a1", "ainf"), elems, ram.orders):
        if group.elem_order(a) != c:
            return False, f"order of {name}={list(a)} is {group.elem_order(a)}, expected {c}"
    total = group.add(group.add(elems[0], elems[1]), elems[2])
    if total != (0, 0):
        return False, f"a0 + a1 + ainf = {list(total)} is not zero"
    if not group.generates(elems):
        return False, f"inertia elements generate a subgroup of index {group.index_of(elems)}"
    if ram.degree != group.order:
        return False, f"s*c0 = {ram.degree} differs from |G| = {group.order}"
    return True, "ok"


@dataclass(frozen=True, order=True)
class Cover:
    group: AbelianGroup
    ram: RamificationType
    inertia: tuple[Element, Element, Element]
    genus: int = field(default=-1, compare=False)

    def __post_init__(self):
        inertia = tuple(self.group.element(*a) for a in self.inertia)
        object.__setattr__(self, "inertia", inertia)
        ok, why = validate_inertia(self.group, self.ram, inertia)
        if not ok:
            raise CoverError(why)
        g = genus(self.group, self.ram)
        if self.genus not in (-1, g):
            raise CoverError(f"stated genus {self.genus} differs from Riemann-Hurwitz {g}")
        object.__setattr__(self, "genus", g)

    @classmethod
    def cyclic(cls, m: int, a0: int, a1: int, ainf: int | None = None) -> "Cover":
        """Cyclic cover y^m = x^a0 (1-x)^a1, branch points relabelled so orders descend."""
        if ainf is None:
            ainf = -(a0 + a1)
        group = AbelianGroup(m)
        elems = [group.element(a) for a in (a0, a1, ainf)]
        elems.sort(key=lambda a: -group.elem_order(a))
        orders = [group.elem_order(a) for a in elems]
        ram = RamificationType(*orders, s=m // orders[0])
        return cls(group, ram, tuple(elems))

    @property
    def degree(self) -> int:
        return self.group.order

    @property
    def exponent(self) -> int:
        return self.group.exponent

    @cached_property
    def canonical(self) -> "Cover":
        return canonicalize(self)

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "ram": self.ram.to_json(),
            "inertia": [list(a) for a in self.inertia],
            "genus": self.genus,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cover":
        return cls(
            AbelianGroup(*data["group"]),
            RamificationType(*data["ram"]),
            tuple(tuple(a) for a in data["inertia"]),
            data.get("genus", -1),
        )

    def __str__(self):
        g = self.group
        grp = f"Z/{g.c}" if g.is_cyclic else f"Z/{g.c}xZ/{g.d}"
        if g.is_cyclic:
            inert = "(" + ",".join(str(a[0]) for a in self.inertia) + ")"
        else:
            inert = "(" + ",".join(f"({a[0]},{a[1]})" for a in self.inertia) + ")"
        return f"{grp} {self.ram.to_json()} {inert} g={self.genus}"


def _branch_permutations(orders) -> list[tuple[int, int, int]]:
    """Permutations of the three branch points that preserve their inertia orders."""
    return [p for p in permutations(range(3)) if all(orders[p[i]] == orders[i] for i in range(3))]


def equivalence_class(group: AbelianGroup, orders, inertia) -> set[tuple[Element, ...]]:
    """All inertia types equivalent to ``inertia`` under Aut(G) and relabelling."""
    perms = _branch_permutations(orders)
    out = set()
    for aut in group.automorphisms():
        images = [group.apply(aut, a) for a in inertia]
        for p in perms:
            out.add((images[p[0]], images[p[1]], images[p[2]]))
    return out


def canonicalize(cover: Cover) -> Cover:
    """Lexicographically least inertia type in the cover's equivalence class."""
    best = min(equivalence_class(cover.group, cover.ram.orders, cover.inertia))
    if best == cover.inertia:
        return cover
    return Cover(cover.group, cover.ram, best, cover.genus)


def ramification_types(g: int, group: AbelianGroup) -> list[RamificationType]:
    """Sorted order triples compatible with ``group`` that give genus ``g``."""
    m, c = group.order, group.exponent
    divs = [x for x in divisors(c) if x >= 2]
    out = []
    for c0 in divs:
        for c1 in divs:
            if c1 > c0 or lcm(c0, c1) != c:
                continue
            for cinf in divs:
                if cinf > c1:
                    continue
                twice = 2 - 2 * m + sum(Fraction(m, x) * (x - 1) for x in (c0, c1, cinf))
                if twice == 2 * g:
                    out.append(RamificationType(c0, c1, cinf, m // c0))
    return out


def groups_of_order(m: int) -> list[AbelianGroup]:
    """Two-generator abelian groups Z/c x Z/d of order m."""
    return [AbelianGroup(m // d, d) for d in divisors(m) if d * d <= m and (m // d) % d == 0]


def _covers_for(group: AbelianGroup, ram: RamificationType) -> list[Cover]:
    by_order: dict[int, list[Element]] = {}
    for a in group.elements():
        by_order.setdefault(group.elem_order(a), []).append(a)
    seen: set = set()
    found = []
    for a0, a1 in product(by_order.get(ram.c0, []), by_order.get(ram.c1, [])):
        ainf = group.neg(group.add(a0, a1))
        key = (a0, a1, ainf)
        if key in seen:
            continue
        if group.elem_order(ainf) != ram.cinf or not group.generates([a0, a1]):
            continue
        orbit = equivalence_class(group, ram.orders, key)
        seen |= orbit
        found.append(Cover(group, ram, min(orbit)))
    return found


def enumerate_covers(g: int, max_degree: int | None = None) -> list[Cover]:
    """Every abelian three-point cover of genus g, one per equivalence class.

    Riemann-Hurwitz gives |G| = 2(g-1)/E with E = 1 - 1/c0 - 1/c1 - 1/cinf >= 1/42,
    so scanning |G| <= 84(g-1) is complete.
    """
    if g < 2:
        raise CoverError(f"enumeration needs genus >= 2, got {g}")
    return list(_enumerate_cached(g, max_degree or 84 * (g - 1)))


@lru_cache(maxsize=32)
def _enumerate_cached(g: int, max_degree: int) -> tuple[Cover, ...]:
    found = []
    for m in range(2, max_degree + 1):
        for group in groups_of_order(m):
            for ram in ramification_types(g, group):
                found.extend(_covers_for(group, ram))
    found.sort(key=lambda cv: (cv.degree, cv.group, cv.ram, cv.inertia))
    return tuple(found)
