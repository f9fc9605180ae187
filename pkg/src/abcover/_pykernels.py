"""Reference implementations of the compiled kernels (numpy where it helps).

These are the import-time fallback when the Cython extension is not built, and
the baseline the benchmark compares against.
"""

import numpy as np


def count_union(L, moduli, masks, rad, unit_mask):
    covered = np.zeros(L, dtype=bool)
    for e, mask in zip(moduli, masks):
        covered |= np.tile(np.asarray(mask, dtype=bool), L // e)
    units = np.tile(np.asarray(unit_mask, dtype=bool), L // rad)
    return int(np.count_nonzero(covered & units))


def _digits(codes, p, degree):
    return [(codes // p**j) % p for j in range(degree)]


def field_tables(p, degree, poly):
    q = p**degree
    codes = np.arange(q, dtype=np.int64)
    digits = _digits(codes, p, degree)
    top = digits[-1]
    # multiply every element by x at once, then walk the cycle through 1
    mulx = np.zeros(q, dtype=np.int64)
    for j in range(degree):
        lower = digits[j - 1] if j else 0
        mulx += ((lower - top * (int(poly[j]) % p)) % p) * p**j
    mulx = mulx.tolist()
    exp_ = [0] * (q - 1)
    log_ = np.full(q, -1, dtype=np.int64)
    code = 1
    for k in range(q - 1):
        exp_[k] = code
        code = mulx[code]
        if code == 1 and k < q - 2:
            raise ValueError("polynomial is not primitive")
    exp_ = np.array(exp_, dtype=np.int64)
    log_[exp_] = np.arange(q - 1, dtype=np.int64)
    if np.count_nonzero(log_ >= 0) != q - 1:
        raise ValueError("polynomial is not primitive")
    return exp_, log_


def one_minus_logs(p, degree, exp_, log_):
    digits = _digits(exp_, p, degree)
    out = np.zeros_like(exp_)
    for j, dig in enumerate(digits):
        flipped = (1 - dig) % p if j == 0 else (-dig) % p
        out += flipped * p**j
    zech = np.where(out == 0, -1, log_[out])
    return zech.astype(np.int64)


def count_affine(zech, a0, a1, d):
    k = np.arange(len(zech), dtype=np.int64)
    ok = (zech >= 0) & (((a0 * k + a1 * zech) % d) == 0)
    return int(np.count_nonzero(ok))
