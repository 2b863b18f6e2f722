# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the hot loops of mexmoments.

Semantics must match mexmoments._pure exactly; tests/test_backends.py
runs both against each other.  The partition walk uses C integers only
(counts fit int64 for every reachable n); the series kernels loop in C
over Python integer objects, so exactness is preserved.
"""

from libc.stdlib cimport calloc, free

ENUMERATION_LIMIT = 300


cdef void _walk(int remaining, int max_part, int n, int s, int M,
                int *freq, long long *counts, Py_ssize_t width) noexcept nogil:
    cdef int part, a0, k
    if remaining == 0:
        for a0 in range(M):
            k = a0 + 1
            while k <= n and freq[k] >= s:
                k += M
            counts[a0 * width + k] += 1
        return
    part = remaining if remaining < max_part else max_part
    while part >= 1:
        freq[part] += 1
        _walk(remaining - part, part, n, s, M, freq, counts, width)
        freq[part] -= 1
        part -= 1


def mex_value_counts(int n, int s, int M):
    """Histogram the frequency-s mex statistics over all partitions of n.

    Same contract as mexmoments._pure.mex_value_counts.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if s < 1:
        raise ValueError("s must be >= 1")
    if M < 1:
        raise ValueError("M must be >= 1")
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"refusing to enumerate partitions of n={n} (limit {ENUMERATION_LIMIT})")

    cdef Py_ssize_t width = n + M + 1
    cdef long long *counts = <long long *>calloc(M * width, sizeof(long long))
    cdef int *freq = <int *>calloc(n + 2, sizeof(int))
    if counts == NULL or freq == NULL:
        free(counts)
        free(freq)
        raise MemoryError()
    try:
        with nogil:
            _walk(n, n, n, s, M, freq, counts, width)
        return [[counts[a0 * width + v] for v in range(width)] for a0 in range(M)]
    finally:
        free(counts)
        free(freq)


def cauchy_product(list a, list b):
    """Schoolbook product of two coefficient lists, truncated to the
    shorter length.  Exact for arbitrary Python integers."""
    cdef Py_ssize_t n = min(len(a), len(b))
    cdef Py_ssize_t i, j
    cdef list out = [0] * n
    cdef object ai, bj
    for i in range(n):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(n - i):
            bj = b[j]
            if bj != 0:
                out[i + j] = out[i + j] + ai * bj
    return out


def invert_unit_series(list a):
    """Coefficients of 1/a for a series with constant term +1 or -1."""
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m, idx, nsup
    cdef list out = [0] * n
    cdef object c0 = a[0]
    cdef object acc, ak
    cdef list sup_idx = []
    cdef list sup_val = []
    cdef Py_ssize_t k
    out[0] = c0
    for k in range(1, n):
        if a[k] != 0:
            sup_idx.append(k)
            sup_val.append(a[k])
    nsup = len(sup_idx)
    cdef bint negate = c0 == 1
    for m in range(1, n):
        acc = 0
        for idx in range(nsup):
            k = sup_idx[idx]
            if k > m:
                break
            acc = acc + sup_val[idx] * out[m - k]
        out[m] = -acc if negate else acc
    return out


def euler_product_coeffs(Py_ssize_t order):
    """Coefficients of prod_{k=1..order} (1 - q^k) truncated at ``order``."""
    cdef list c = [0] * (order + 1)
    cdef Py_ssize_t k, j
    c[0] = 1
    for k in range(1, order + 1):
        for j in range(order, k - 1, -1):
            c[j] = c[j] - c[j - k]
    return c


def sparse_dense_product(list sparse, list dense, Py_ssize_t length):
    """Multiply a sparse polynomial ((exponent, weight) pairs) by a dense
    series, truncated to ``length`` coefficients."""
    cdef list out = [0] * length
    cdef Py_ssize_t e, j, top
    cdef object w, x
    for e_w in sparse:
        e = e_w[0]
        w = e_w[1]
        if w == 0 or e >= length:
            continue
        top = length - e
        if w == 1:
            for j in range(top):
                x = dense[j]
                if x != 0:
                    out[e + j] = out[e + j] + x
        elif w == -1:
            for j in range(top):
                x = dense[j]
                if x != 0:
                    out[e + j] = out[e + j] - x
        else:
            for j in range(top):
                x = dense[j]
                if x != 0:
                    out[e + j] = out[e + j] + w * x
    return out
