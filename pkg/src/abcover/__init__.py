"""Newton polygons, Ekedahl-Oort types and prime densities for abelian covers
of the projective line branched at three points."""

from .covers import AbelianGroup, Cover, RamificationType, enumerate_covers
from .density import CongruenceSet, DensityResult, genus_density, union_density
from .eo import FinalType, eo_type
from .kernels import available_backends, use_backend
from .moduli import StratumReport, classify
from .newton import NewtonPolygon, newton_polygon

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "CongruenceSet",
    "Cover",
    "DensityResult",
    "FinalType",
    "NewtonPolygon",
    "RamificationType",
    "StratumReport",
    "available_backends",
    "classify",
    "enumerate_covers",
    "eo_type",
    "genus_density",
    "newton_polygon",
    "union_density",
    "use_backend",
]
