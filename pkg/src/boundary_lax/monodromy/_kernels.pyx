# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice kernels: ordered products of cell exponentials and ordered pair sums."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, frexp, ldexp
from libc.string cimport memcpy

cnp.import_array()

cdef enum:
    TAYLOR_ORDER = 14


cdef void _matmul(const double* a, const double* b, double* out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double acc
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc += a[i * n + k] * b[k * n + j]
            out[i * n + j] = acc


cdef double _norm1(const double* a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double best = 0.0, col
    for j in range(n):
        col = 0.0
        for i in range(n):
            col += fabs(a[i * n + j])
        if col > best:
            best = col
    return best


cdef void _expm(const double* g, double* out, double* term, double* tmp, Py_ssize_t n) noexcept nogil:
    """Taylor series with scaling and squaring; norm reduced below 1/4 before summing."""
    cdef Py_ssize_t i, k, nn = n * n
    cdef int e = 0, s = 0
    cdef double nrm = _norm1(g, n), scale = 1.0
    if nrm > 0.25:
        frexp(nrm / 0.25, &e)
        s = e
        scale = ldexp(1.0, -s)
    for i in range(nn):
        out[i] = 0.0
        term[i] = 0.0
    for i in range(n):
        out[i * n + i] = 1.0
        term[i * n + i] = 1.0
    for k in range(1, TAYLOR_ORDER + 1):
        _matmul(term, g, tmp, n)
        for i in range(nn):
            term[i] = tmp[i] * (scale / k)
            out[i] += term[i]
    for k in range(s):
        _matmul(out, out, tmp, n)
        memcpy(out, tmp, nn * sizeof(double))


cdef void _pair_step(const double* cur, const double* prefix, double* out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t a, b, k
    cdef double acc
    for a in range(n):
        for b in range(n):
            acc = 0.0
            for k in range(n):
                acc += cur[a * n + k] * (prefix[k * n + b] + 0.5 * cur[k * n + b])
            out[a * n + b] += acc


def ordered_expm_product(gens):
    """``exp(G[M-1]) ... exp(G[0])`` for an (M, N, N) float64 stack."""
    cdef cnp.ndarray[cnp.float64_t, ndim=3, mode="c"] G = np.ascontiguousarray(gens, dtype=np.float64)
    if G.shape[1] != G.shape[2]:
        raise ValueError("expected an (M, N, N) stack of square matrices")
    cdef Py_ssize_t M = G.shape[0], n = G.shape[1], nn = n * n, c
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] acc = np.eye(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] work = np.empty(4 * nn)
    cdef double* pacc = &acc[0, 0]
    cdef double* pe = &work[0]
    cdef double* pterm = pe + nn
    cdef double* ptmp = pe + 2 * nn
    cdef double* pnext = pe + 3 * nn
    cdef double* pg
    if M == 0:
        return acc
    pg = &G[0, 0, 0]
    with nogil:
        for c in range(M):
            _expm(pg + c * nn, pe, pterm, ptmp, n)
            _matmul(pe, pacc, pnext, n)
            memcpy(pacc, pnext, nn * sizeof(double))
    return acc


def ordered_pair_sum(values, weights):
    """``sum_{i>j} w_i w_j X_i X_j + 1/2 sum_i w_i^2 X_i X_i``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=3, mode="c"] X = np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] w = np.ascontiguousarray(weights, dtype=np.float64)
    if X.shape[0] != w.shape[0]:
        raise ValueError("values and weights must agree on the lattice size")
    cdef Py_ssize_t M = X.shape[0], n = X.shape[1], nn = n * n, i, q
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] out = np.zeros((n, n))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] work = np.zeros(2 * nn)
    cdef double* po = &out[0, 0]
    cdef double* prefix = &work[0]
    cdef double* cur = prefix + nn
    cdef double* px
    if M == 0:
        return out
    px = &X[0, 0, 0]
    with nogil:
        for i in range(M):
            for q in range(nn):
                cur[q] = w[i] * px[i * nn + q]
            _pair_step(cur, prefix, po, n)
            for q in range(nn):
                prefix[q] += cur[q]
    return out
