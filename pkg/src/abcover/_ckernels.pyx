# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; see _pykernels for the reference versions."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport calloc, malloc, free

ctypedef long long i64


def count_union(i64 L, moduli, masks, i64 rad, unit_mask):
    """Number of r in [0, L) that are units mod ``rad`` and lie in some mask.

    ``masks[i]`` is a uint8 array of length ``moduli[i]``; ``unit_mask`` a uint8
    array of length ``rad``.
    """
    cdef const unsigned char[:] umask = np.ascontiguousarray(unit_mask, dtype=np.uint8)
    cdef const unsigned char[:] view
    cdef unsigned char *covered = <unsigned char *> calloc(L, 1)
    cdef i64 e, s, r, count = 0
    cdef const unsigned char *up
    cdef unsigned char *cp
    if covered == NULL:
        raise MemoryError()
    try:
        for i in range(len(moduli)):
            view = np.ascontiguousarray(masks[i], dtype=np.uint8)
            e = moduli[i]
            up = &view[0]
            # sequential OR block by block; every modulus divides L
            for r in range(0, L, e):
                cp = covered + r
                for s in range(e):
                    cp[s] |= up[s]
        # L is a multiple of rad; the inner loop vectorises
        up = &umask[0]
        for r in range(0, L, rad):
            cp = covered + r
            for s in range(rad):
                count += cp[s] & up[s]
    finally:
        free(covered)
    return count


def field_tables(int p, int degree, poly):
    """Powers of x modulo the monic primitive polynomial with low coefficients ``poly``.

    Elements are encoded as sum(c_k p^k). Returns (exp, log) with exp[k] the
    code of x^k for 0 <= k < q-1 and log[code] its exponent (log[0] = -1).
    Raises ValueError if x turns out not to have order q - 1.
    """
    cdef i64 q = 1
    cdef int j
    for j in range(degree):
        q *= p
    cdef cnp.ndarray[i64, ndim=1] exp_ = np.empty(q - 1, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] log_ = np.full(q, -1, dtype=np.int64)
    cdef int *coef = <int *> malloc(degree * sizeof(int))
    cdef int *red = <int *> malloc(degree * sizeof(int))
    cdef i64 *pw = <i64 *> malloc((degree + 1) * sizeof(i64))
    cdef i64 k, code, top
    try:
        for j in range(degree):
            red[j] = (p - (<int> poly[j] % p)) % p
            coef[j] = 0
        pw[0] = 1
        for j in range(degree):
            pw[j + 1] = pw[j] * p
        coef[0] = 1
        for k in range(q - 1):
            code = 0
            for j in range(degree):
                code += coef[j] * pw[j]
            if log_[code] != -1:
                raise ValueError("polynomial is not primitive")
            exp_[k] = code
            log_[code] = k
            # multiply by x: shift up, reduce x^degree = -sum f_j x^j
            top = coef[degree - 1]
            for j in range(degree - 1, 0, -1):
                coef[j] = (coef[j - 1] + top * red[j]) % p
            coef[0] = (top * red[0]) % p
    finally:
        free(coef)
        free(red)
        free(pw)
    return exp_, log_


def one_minus_logs(int p, int degree, cnp.ndarray[i64, ndim=1] exp_, cnp.ndarray[i64, ndim=1] log_):
    """zech[k] = log(1 - x^k), or -1 when x^k = 1."""
    cdef i64 n = exp_.shape[0], k, code, out, pw, digit, rest
    cdef int j
    cdef cnp.ndarray[i64, ndim=1] zech = np.empty(n, dtype=np.int64)
    for k in range(n):
        code = exp_[k]
        out = 0
        pw = 1
        rest = code
        for j in range(degree):
            digit = rest % p
            rest //= p
            if j == 0:
                digit = (1 - digit + p) % p
            else:
                digit = (p - digit) % p
            out += digit * pw
            pw *= p
        zech[k] = log_[out] if out else -1
    return zech


def count_affine(cnp.ndarray[i64, ndim=1] zech, i64 a0, i64 a1, i64 d):
    """#{k : x^k != 1, (a0*k + a1*log(1 - x^k)) = 0 mod d}."""
    cdef i64 n = zech.shape[0], k, total = 0, z
    for k in range(n):
        z = zech[k]
        if z < 0:
            continue
        if (a0 * k + a1 * z) % d == 0:
            total += 1
    return total
