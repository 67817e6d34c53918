# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror :mod:`rsdlab._purepy`."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, fabs

cnp.import_array()


def trunc_mul(const double[::1] a, const double[::1] b, Py_ssize_t n):
    cdef Py_ssize_t j, m, top
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef double aj
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] o = out
    # axpy form: o[j:] += a[j] * b[:n-j]; the inner loop vectorizes
    for j in range(min(na, n)):
        aj = a[j]
        if aj == 0.0:
            continue
        top = n - j if n - j < nb else nb
        for m in range(top):
            o[j + m] += aj * b[m]
    return out


def trunc_div(const double[::1] a, const double[::1] b, Py_ssize_t n):
    cdef Py_ssize_t i, j, hi
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef double acc, b0 = b[0]
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] q = out
    for i in range(n):
        acc = a[i] if i < na else 0.0
        hi = i if i < nb - 1 else nb - 1
        for j in range(1, hi + 1):
            acc -= b[j] * q[i - j]
        q[i] = acc / b0
    return out


def trunc_exp(const double[::1] a, Py_ssize_t n):
    # k e_k = sum_{j=1}^{k} j a_j e_{k-j}
    cdef Py_ssize_t k, j, hi
    cdef Py_ssize_t na = a.shape[0]
    cdef double acc
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] e = out
    if n == 0:
        return out
    e[0] = exp(a[0])
    for k in range(1, n):
        acc = 0.0
        hi = k if k < na - 1 else na - 1
        for j in range(1, hi + 1):
            acc += j * a[j] * e[k - j]
        e[k] = acc / k
    return out


def trunc_log(const double[::1] a, Py_ssize_t n):
    # a_0 l_k = a_k - (1/k) sum_{j=1}^{k-1} j l_j a_{k-j}
    cdef Py_ssize_t k, j, na = a.shape[0]
    cdef double acc, a0 = a[0]
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] l = out
    if n == 0:
        return out
    l[0] = log(a0)
    for k in range(1, n):
        acc = 0.0
        for j in range(1, k):
            if k - j < na:
                acc += j * l[j] * a[k - j]
        l[k] = ((a[k] if k < na else 0.0) - acc / k) / a0
    return out


def affine_compose(const double[::1] a, double shift, double scale, Py_ssize_t n):
    """Coefficients of a(shift + scale*s), Horner from the top coefficient."""
    cdef Py_ssize_t m, j, top
    cdef Py_ssize_t na = a.shape[0]
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] r = out
    if n == 0 or na == 0:
        return out
    top = 0
    for m in range(na - 1, -1, -1):
        # r <- r * (shift + scale s) + a_m ; r has at most top+1 live terms
        if top < n - 1:
            r[top + 1] = scale * r[top]
            j = top
        else:
            j = n - 1
        while j > 0:
            r[j] = shift * r[j] + scale * r[j - 1]
            j -= 1
        r[0] = shift * r[0] + a[m]
        if m < na - 1 and top < n - 1:
            top += 1
    return out


def segment_sums(const double[::1] values, const long long[::1] counts):
    cdef Py_ssize_t i, j, pos = 0, m = counts.shape[0]
    cdef double acc
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(m):
        acc = 0.0
        for j in range(counts[i]):
            acc += values[pos + j]
        pos += counts[i]
        o[i] = acc
    return out


def ks_statistic(const double[::1] a, const double[::1] b):
    """Sup distance between the empirical CDFs of two sorted samples."""
    cdef Py_ssize_t i = 0, j = 0, na = a.shape[0], nb = b.shape[0]
    cdef double d = 0.0, gap, x
    while i < na and j < nb:
        x = a[i] if a[i] <= b[j] else b[j]
        while i < na and a[i] <= x:
            i += 1
        while j < nb and b[j] <= x:
            j += 1
        gap = fabs(<double>i / na - <double>j / nb)
        if gap > d:
            d = gap
    return d
