# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython blade-product kernel: compiled twin of ``spingeo.kernels._pure``.

Works on array-of-terms inputs (uint64 blade keys, complex128 coefficients)
and accumulates into a dense scratch table of size 2**dim, which is cheap
for the dimensions this package targets (dim <= 16).
"""

import numpy as np

ctypedef unsigned long long u64


cdef inline int _popcount(u64 x) nogil:
    cdef int n = 0
    while x:
        x &= x - 1
        n += 1
    return n


cdef inline int _reorder_swaps(u64 a, u64 b) nogil:
    cdef int count = 0
    cdef u64 t = a >> 1
    while t:
        count += _popcount(t & b)
        t >>= 1
    return count


def reorder_swaps(u64 a, u64 b):
    return _reorder_swaps(a, b)


def blade_mul(u64 a, u64 b, u64 neg_mask):
    cdef int sign = -1 if _reorder_swaps(a, b) & 1 else 1
    if _popcount(a & b & neg_mask) & 1:
        sign = -sign
    return a ^ b, sign


def mul_terms_arrays(u64[::1] ka, double complex[::1] va,
                     u64[::1] kb, double complex[::1] vb,
                     int dim, u64 neg_mask, bint wedge):
    """Product of two term lists; returns (keys, values) with exact zeros kept.

    Semantics match ``_pure.mul_terms`` on the same inputs.
    """
    cdef Py_ssize_t na = ka.shape[0], nb = kb.shape[0]
    cdef Py_ssize_t i, j
    cdef u64 a, b, key
    cdef double complex c
    cdef int sign
    cdef Py_ssize_t size = 1 << dim

    scratch_arr = np.zeros(size, dtype=np.complex128)
    used_arr = np.zeros(size, dtype=np.uint8)
    cdef double complex[::1] scratch = scratch_arr
    cdef unsigned char[::1] used = used_arr

    for i in range(na):
        a = ka[i]
        for j in range(nb):
            b = kb[j]
            if wedge and (a & b):
                continue
            sign = -1 if _reorder_swaps(a, b) & 1 else 1
            if (not wedge) and (_popcount(a & b & neg_mask) & 1):
                sign = -sign
            key = a ^ b
            c = va[i] * vb[j]
            if sign < 0:
                c = -c
            scratch[key] = scratch[key] + c
            used[key] = 1

    keys_out = np.flatnonzero(used_arr).astype(np.uint64)
    vals_out = scratch_arr[keys_out]
    return keys_out, vals_out
