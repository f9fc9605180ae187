"""Dimensions of Newton and Ekedahl-Oort strata in A_g, and the unlikely test.

A stratum is *unlikely* when its codimension in A_g (dimension g(g+1)/2)
exceeds dim M_g = 3g - 3, and *2-unlikely* when it exceeds twice that.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import ceil

from .eo import FinalType
from .newton import NewtonPolygon


class ModuliError(ValueError):
    pass


@dataclass(frozen=True)
class StratumReport:
    kind: str
    genus: int
    stratum_dim: int
    ambient_dim: int
    codim: int
    mg_dim: int
    unlikely: bool
    two_unlikely: bool

    def to_json(self) -> dict:
        return asdict(self)


def np_stratum_dim(np_: NewtonPolygon) -> int:
    """#{(x, y) in Z^2 : y < x <= g, y >= polygon(x)}."""
    g = np_.genus
    total = 0
    for x in range(1, g + 1):
        total += max(0, x - ceil(np_.ordinate(x)))
    return total


def eo_stratum_dim(ft: FinalType) -> int:
    return sum(ft.nu)


def classify(xi: NewtonPolygon | FinalType, g: int | None = None) -> StratumReport:
    if isinstance(xi, NewtonPolygon):
        kind, dim, own_g = "np", np_stratum_dim(xi), xi.genus
    elif isinstance(xi, FinalType):
        kind, dim, own_g = "eo", eo_stratum_dim(xi), xi.genus
    else:
        raise ModuliError(f"cannot classify {type(xi).__name__}")
    g = own_g if g is None else g
    if g != own_g:
        raise ModuliError(f"object has genus {own_g}, asked to classify in genus {g}")
    if g < 2:
        raise ModuliError(f"dim M_g = 3g-3 needs g >= 2, got {g}")
    ambient = g * (g + 1) // 2
    codim = ambient - dim
    if codim < 0:
        raise ModuliError(f"stratum dimension {dim} exceeds dim A_g = {ambient}")
    mg = 3 * g - 3
    return StratumReport(kind, g, dim, ambient, codim, mg, codim > mg, codim > 2 * mg)
