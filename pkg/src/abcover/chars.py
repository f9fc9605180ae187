"""Characters of the Galois group and the signature type.

The dual group of Z/c x Z/d is identified with the group itself: the character
t = (tx, ty) sends a = (ax, ay) to exp(2 pi i (tx*ax/c + ty*ay/d)).  All
arithmetic stays in integers by scaling pairings to a common denominator c.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .covers import AbelianGroup, Cover, CoverError, Element

Character = Element


def pairing_numerator(group: AbelianGroup, t: Character, a: Element) -> int:
    """Numerator n with pairing(t, a) = n / c, 0 <= n < c."""
    c, d = group.c, group.d
    return (t[0] * a[0] + t[1] * a[1] * (c // d)) % c


def pairing(group: AbelianGroup, t: Character, a: Element) -> Fraction:
    for v in (t, a):
        if not (0 <= v[0] < group.c and 0 <= v[1] < group.d):
            raise CoverError(f"{v} is not an element of Z/{group.c} x Z/{group.d}")
    return Fraction(pairing_numerator(group, t, a), group.c)


def signature(cover: Cover, t: Character) -> int:
    """Dimension (0 or 1) of the t-eigenspace of holomorphic differentials.

    Characters that pair trivially with some inertia generator factor through a
    genus-0 quotient and get 0.
    """
    t = cover.group.element(*t)
    if t == (0, 0):
        raise CoverError("signature is undefined on the trivial character")
    return _signature(cover, t)


def _signature(cover: Cover, t: Character) -> int:
    c = cover.group.c
    nums = [pairing_numerator(cover.group, t, a) for a in cover.inertia]
    if 0 in nums:
        return 0
    # -1 + sum <-n/c> = 2 - sum(n)/c, and sum(n) is c or 2c
    return 2 - sum(nums) // c


@lru_cache(maxsize=4096)
def signature_table(cover: Cover) -> dict[Character, int]:
    """Signature values on the relevant characters, keyed by character."""
    group = cover.group
    table = {}
    for t in group.elements():
        if t == (0, 0):
            continue
        if all(pairing_numerator(group, t, a) for a in cover.inertia):
            table[t] = _signature(cover, t)
    return table


def relevant_characters(cover: Cover) -> list[Character]:
    """Nontrivial characters pairing nontrivially with every inertia generator."""
    return sorted(signature_table(cover))


def s1(cover: Cover) -> set[Character]:
    return {t for t, v in signature_table(cover).items() if v == 1}


def act(group: AbelianGroup, r: int, t: Character) -> Character:
    return (r * t[0] % group.c, r * t[1] % group.d)


def character_orbits(cover: Cover, r: int) -> list[tuple[Character, ...]]:
    """Orbits of t -> r*t on the relevant characters, each started at its minimum."""
    group = cover.group
    if gcd(r, group.exponent) != 1:
        raise CoverError(f"{r} is not a unit modulo the exponent {group.exponent}")
    return _character_orbits(cover, r % group.exponent)


@lru_cache(maxsize=65536)
def _character_orbits(cover: Cover, r: int) -> list[tuple[Character, ...]]:
    group = cover.group
    seen = set()
    orbits = []
    for start in relevant_characters(cover):
        if start in seen:
            continue
        orbit = []
        t = start
        while t not in seen:
            seen.add(t)
            orbit.append(t)
            t = act(group, r, t)
        orbits.append(tuple(orbit))
    return orbits


def signature_json(cover: Cover) -> list[list]:
    """Sorted relevant characters with their signature values."""
    return [[list(t), v] for t, v in sorted(signature_table(cover).items())]
