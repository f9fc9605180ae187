"""Hot loops, dispatched to the Cython extension when it is built.

The numpy versions in ``_pykernels`` are used when the extension is missing;
``use_backend`` switches explicitly (the benchmark and the kernel tests do).
"""

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not compiled
    _ckernels = None

_NAMES = ("count_union", "field_tables", "one_minus_logs", "count_affine")
BACKEND = ""


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def use_backend(name: str) -> None:
    global BACKEND
    impl = {"python": _pykernels, "cython": _ckernels}.get(name)
    if impl is None:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    for fn in _NAMES:
        globals()[fn] = getattr(impl, fn)
    BACKEND = name


def count_union(L, moduli, masks, rad, unit_mask): ...
def field_tables(p, degree, poly): ...
def one_minus_logs(p, degree, exp_, log_): ...
def count_affine(zech, a0, a1, d): ...


use_backend("cython" if _ckernels is not None else "python")
