"""Ekedahl-Oort types from the Frobenius/Verschiebung action on characters.

On the basis {e_t : t relevant} of H^1_dR, with f the signature type and r the
residue of p,

    F(e_t)   = e_{rt}  if f(-t) = 1, else 0
    V(e_{rt}) = e_t    if f(-t) = 0, else 0

so both operators send basis vectors to basis vectors or zero, and the
canonical filtration consists of coordinate subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chars import act, character_orbits, signature_table
from .covers import Cover


class EOError(ValueError):
    """Structural violation in the F/V data or the final type."""


@dataclass(frozen=True)
class DieudonneBasisMap:
    basis: frozenset
    F: dict
    V: dict
    orbits: tuple = ()

    def __post_init__(self):
        v_targets = set(self.V.values())
        for t in self.basis:
            # exactly one of F(e_t) != 0 and V(e_{rt}) = e_t
            if (t in self.F) == (t in v_targets):
                raise EOError(f"F and V both {'nonzero' if t in self.F else 'zero'} through e_{t}")
        if len(set(self.F.values())) != len(self.F) or len(set(self.V.values())) != len(self.V):
            raise EOError("F or V is not injective on basis vectors")
        if len(self.F) + len(self.V) != len(self.basis):
            raise EOError(
                f"|dom F| + |dom V| = {len(self.F)} + {len(self.V)} differs from {len(self.basis)}"
            )

    @property
    def genus(self) -> int:
        return len(self.basis) // 2

    def image_V(self, subset) -> frozenset:
        return frozenset(self.V[e] for e in subset if e in self.V)

    def preimage_F(self, subset) -> frozenset:
        return frozenset(e for e in self.basis if e not in self.F or self.F[e] in subset)


@dataclass(frozen=True)
class FinalType:
    nu: tuple[int, ...]

    def __post_init__(self):
        nu = tuple(self.nu)
        object.__setattr__(self, "nu", nu)
        prev = 0
        for i, v in enumerate(nu, start=1):
            if v - prev not in (0, 1) or v > i:
                raise EOError(f"invalid final type {list(nu)}")
            prev = v

    @property
    def genus(self) -> int:
        return len(self.nu)

    def is_superspecial(self) -> bool:
        return not any(self.nu)

    def is_ordinary(self) -> bool:
        return self.nu == tuple(range(1, self.genus + 1))

    @property
    def p_rank(self) -> int:
        """Largest i with nu_i = i."""
        return max((i for i in range(self.genus + 1) if i == 0 or self.nu[i - 1] == i), default=0)

    def __str__(self):
        return str(list(self.nu))


def dieudonne_maps(cover: Cover, r: int) -> DieudonneBasisMap:
    group = cover.group
    sig = signature_table(cover)
    orbits = character_orbits(cover, r)
    r %= group.exponent
    F, V = {}, {}
    for t in sig:
        rt = act(group, r, t)
        if sig[group.neg(t)] == 1:
            F[t] = rt
        else:
            V[rt] = t
    return DieudonneBasisMap(frozenset(sig), F, V, tuple(orbits))


def _min_rotation(word: str) -> str:
    return min(word[i:] + word[:i] for i in range(len(word))) if word else word


def eo_words(maps: DieudonneBasisMap) -> list[str]:
    """Cyclic f/v words, one per Frobenius orbit, in canonical rotation, sorted."""
    if not maps.orbits:
        raise EOError("maps carry no orbit data")
    words = ["".join("f" if t in maps.F else "v" for t in orb) for orb in maps.orbits]
    return sorted(_min_rotation(w) for w in words)


def canonical_filtration(maps: DieudonneBasisMap) -> list[frozenset]:
    """Coarsest flag stable under V(.) and F^{-1}(.), as a chain of coordinate sets."""
    family = {frozenset(), frozenset(maps.basis)}
    todo = list(family)
    while todo:
        w = todo.pop()
        for nxt in (maps.image_V(w), maps.preimage_F(w)):
            if nxt not in family:
                family.add(nxt)
                todo.append(nxt)
    chain = sorted(family, key=len)
    for small, big in zip(chain, chain[1:]):
        if not small < big:
            raise EOError("canonical filtration is not a chain")
    return chain


def final_type(maps: DieudonneBasisMap) -> FinalType:
    chain = canonical_filtration(maps)
    n = len(maps.basis)
    nu = [None] * (n + 1)
    for w in chain:
        nu[len(w)] = len(maps.image_V(w))
    for small, big in zip(chain, chain[1:]):
        a, b = len(small), len(big)
        lo, hi = nu[a], nu[b]
        if hi == lo:
            fill = [lo] * (b - a - 1)
        elif hi - lo == b - a:
            fill = list(range(lo + 1, hi))
        else:
            raise EOError(f"V neither vanishes nor is injective between dims {a} and {b}")
        nu[a + 1 : b] = fill
    return FinalType(tuple(nu[1 : n // 2 + 1]))


def is_superspecial(ft: FinalType) -> bool:
    return ft.is_superspecial()


def stable_f_image(maps: DieudonneBasisMap) -> frozenset:
    """Basis vectors whose forward F-trajectory never hits zero."""
    return frozenset(t for orb in maps.orbits if all(u in maps.F for u in orb) for t in orb)


def stable_v_image(maps: DieudonneBasisMap) -> frozenset:
    return frozenset(t for orb in maps.orbits if not any(u in maps.F for u in orb) for t in orb)


def eo_type(cover: Cover, r: int) -> tuple[FinalType, list[str]]:
    maps = dieudonne_maps(cover, r)
    return final_type(maps), eo_words(maps)

