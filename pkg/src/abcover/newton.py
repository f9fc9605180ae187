"""Newton polygons as slope multisets, and the Shimura-Taniyama computation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .chars import character_orbits, s1
from .covers import Cover


class PolygonError(ValueError):
    """A slope multiset that is not a symmetric Newton polygon."""


@dataclass(frozen=True)
class NewtonPolygon:
    """Slopes in [0, 1] stored as ascending (numerator, denominator, multiplicity)."""

    slopes: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        total = Counter()
        for num, den, mult in self.slopes:
            total[Fraction(num, den)] += mult
        canon = tuple((s.numerator, s.denominator, k) for s, k in sorted(total.items()) if k)
        object.__setattr__(self, "slopes", canon)
        self.validate()

    @classmethod
    def from_slopes(cls, slopes) -> "NewtonPolygon":
        """Build from an iterable of slopes (repeated) or a {slope: multiplicity} map."""
        counts = Counter(slopes) if not isinstance(slopes, dict) else Counter(slopes)
        return cls(tuple((Fraction(s).numerator, Fraction(s).denominator, k) for s, k in counts.items()))

    @classmethod
    def supersingular(cls, g: int) -> "NewtonPolygon":
        return cls(((1, 2, 2 * g),) if g else ())

    @classmethod
    def ordinary(cls, g: int) -> "NewtonPolygon":
        return cls(((0, 1, g), (1, 1, g)) if g else ())

    @classmethod
    def two_slope(cls, a: int, b: int, mult: int) -> "NewtonPolygon":
        """Slopes a/b and (b-a)/b, each with multiplicity ``mult``."""
        return cls(((a, b, mult), (b - a, b, mult)))

    def validate(self) -> None:
        mults = self.multiplicities()
        for s, k in mults.items():
            if not 0 <= s <= 1:
                raise PolygonError(f"slope {s} outside [0, 1]")
            if mults.get(1 - s, 0) != k:
                raise PolygonError(f"slope {s} has multiplicity {k} but {1 - s} has {mults.get(1 - s, 0)}")
            if k % s.denominator:
                raise PolygonError(f"slope {s} with multiplicity {k} gives a non-integral breakpoint")
        height = sum(mults.values())
        if height % 2 or sum(s * k for s, k in mults.items()) * 2 != height:
            raise PolygonError("slopes do not sum to half the height")

    def multiplicities(self) -> dict[Fraction, int]:
        return {Fraction(n, d): k for n, d, k in self.slopes}

    def multiplicity(self, slope) -> int:
        return self.multiplicities().get(Fraction(slope), 0)

    @property
    def height(self) -> int:
        return sum(k for _, _, k in self.slopes)

    @property
    def genus(self) -> int:
        return self.height // 2

    def slope_list(self) -> list[Fraction]:
        return [Fraction(n, d) for n, d, k in self.slopes for _ in range(k)]

    def is_supersingular(self) -> bool:
        return all((n, d) == (1, 2) for n, d, _ in self.slopes)

    def is_ordinary(self) -> bool:
        return all(d == 1 for _, d, _ in self.slopes)

    def direct_sum(self, other: "NewtonPolygon") -> "NewtonPolygon":
        return NewtonPolygon(self.slopes + other.slopes)

    __add__ = direct_sum

    def vertices(self) -> list[tuple[int, int]]:
        """Breakpoints of the lower convex polygon from (0,0) to (2g, g)."""
        pts = [(0, 0)]
        x, y = 0, Fraction(0)
        for n, d, k in self.slopes:
            x += k
            y += Fraction(n, d) * k
            if y.denominator != 1:
                raise PolygonError(f"breakpoint ({x}, {y}) is not integral")
            pts.append((x, int(y)))
        return pts

    def ordinate(self, x) -> Fraction:
        """Height of the polygon above abscissa x, for 0 <= x <= 2g."""
        x = Fraction(x)
        if not 0 <= x <= self.height:
            raise PolygonError(f"abscissa {x} outside [0, {self.height}]")
        y, pos = Fraction(0), 0
        for n, d, k in self.slopes:
            step = min(k, x - pos)
            if step <= 0:
                break
            y += Fraction(n, d) * step
            pos += step
        return y

    def to_json(self) -> dict:
        return {"genus": self.genus, "slopes": [list(s) for s in self.slopes]}

    @classmethod
    def from_json(cls, data: dict) -> "NewtonPolygon":
        return cls(tuple(tuple(s) for s in data["slopes"]))

    def __str__(self):
        return "{" + ", ".join(f"{n}/{d} x{k}" for n, d, k in self.slopes) + "}"


def polygon_points(np_: NewtonPolygon) -> list[tuple[int, int]]:
    return np_.vertices()


def orbit_slopes(cover: Cover, r: int) -> list[tuple[Fraction, int]]:
    """(slope, orbit size) for every Frobenius orbit on the relevant characters."""
    ones = s1(cover)
    return [(Fraction(sum(t in ones for t in orb), len(orb)), len(orb)) for orb in character_orbits(cover, r)]


def newton_polygon(cover: Cover, r: int) -> NewtonPolygon:
    """Shimura-Taniyama Newton polygon of the cover at primes p = r mod exponent."""
    counts: Counter = Counter()
    for slope, size in orbit_slopes(cover, r):
        counts[slope] += size
    return NewtonPolygon(tuple((s.numerator, s.denominator, k) for s, k in counts.items()))


def direct_sum(np1: NewtonPolygon, np2: NewtonPolygon) -> NewtonPolygon:
    return np1.direct_sum(np2)


def is_supersingular(np_: NewtonPolygon) -> bool:
    return np_.is_supersingular()


def is_ordinary(np_: NewtonPolygon) -> bool:
    return np_.is_ordinary()
