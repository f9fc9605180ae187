"""Time each kernel under every available backend on identical inputs.

    python benchmarks/bench_kernels.py [--repeat N] [--json]
"""

import argparse
import json
import timeit

import numpy as np

from abcover import kernels
from abcover.density import _unit_mask
from abcover.zeta import find_primitive_poly


def _union_case():
    # moduli sharing small primes, L = lcm = 2^4 * 3^2 * 5 * 7 * 11 * 13
    rng = np.random.default_rng(0)
    moduli = [720, 1386, 2310, 4095, 3432]
    L = 720720
    masks = [(rng.random(e) < 0.1).astype(np.uint8) for e in moduli]
    rad = 2 * 3 * 5 * 7 * 11 * 13
    unit = np.frombuffer(_unit_mask(rad), dtype=np.uint8)
    return (L, moduli, masks, rad, unit)


def _field_case(p=13, degree=5):
    poly = find_primitive_poly(p, degree)
    return p, degree, poly[:-1]


def cases():
    p, degree, poly = _field_case()
    exp_, log_ = kernels._pykernels.field_tables(p, degree, poly)
    zech = kernels._pykernels.one_minus_logs(p, degree, exp_, log_)
    return {
        "count_union": _union_case(),
        "field_tables": (p, degree, poly),
        "one_minus_logs": (p, degree, exp_, log_),
        "count_affine": (zech, 1, 9, 4),
    }


def run(repeat: int) -> list[dict]:
    rows = []
    inputs = cases()
    for backend in kernels.available_backends():
        kernels.use_backend(backend)
        for name, args in inputs.items():
            fn = getattr(kernels, name)
            best = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
            rows.append({"backend": backend, "kernel": name, "seconds": best})
    kernels.use_backend(kernels.available_backends()[-1])
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    base = {r["kernel"]: r["seconds"] for r in rows if r["backend"] == "python"}
    print(f"{'kernel':16} {'backend':8} {'seconds':>10} {'speedup':>8}")
    for r in rows:
        print(f"{r['kernel']:16} {r['backend']:8} {r['seconds']:10.5f} {base[r['kernel']] / r['seconds']:8.1f}")


if __name__ == "__main__":
    main()
