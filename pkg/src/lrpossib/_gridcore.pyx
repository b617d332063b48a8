# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch log-likelihood kernels.

Mirror of _gridcore_py.py; keep formulas and operation order in sync so
the two backends agree bit for bit.  Loops drop the GIL so the optimizer
can fan grid chunks across a thread pool.
"""
from libc.math cimport log, INFINITY

import numpy as np

cdef double TWO_PI = 6.283185307179586476925287
cdef double SIMPLEX_TOL = 1e-12


cdef inline double _xlogy(double a, double b) nogil:
    if a == 0.0:
        return 0.0
    return a * log(b)


def binom_loglik(theta, double x, double n, double logc):
    cdef double[::1] t = np.ascontiguousarray(theta, dtype=np.float64)
    cdef Py_ssize_t i, size = t.shape[0]
    out = np.empty(size)
    cdef double[::1] o = out
    cdef double ti
    with nogil:
        for i in range(size):
            ti = t[i]
            if ti < 0.0 or ti > 1.0:
                o[i] = -INFINITY
            else:
                o[i] = _xlogy(x, ti) + _xlogy(n - x, 1.0 - ti) + logc
    return out


def poisson_loglik(theta, double x, double logc):
    cdef double[::1] t = np.ascontiguousarray(theta, dtype=np.float64)
    cdef Py_ssize_t i, size = t.shape[0]
    out = np.empty(size)
    cdef double[::1] o = out
    cdef double ti
    with nogil:
        for i in range(size):
            ti = t[i]
            if ti < 0.0:
                o[i] = -INFINITY
            else:
                o[i] = -ti + _xlogy(x, ti) + logc
    return out


def normal_loglik(mu, s2, double m, double s2x, double n):
    cdef double[::1] u = np.ascontiguousarray(mu, dtype=np.float64)
    cdef double[::1] v = np.ascontiguousarray(s2, dtype=np.float64)
    cdef Py_ssize_t i, size = u.shape[0]
    out = np.empty(size)
    cdef double[::1] o = out
    cdef double ui, vi
    with nogil:
        for i in range(size):
            ui = u[i]
            vi = v[i]
            if vi <= 0.0:
                o[i] = -INFINITY
            else:
                o[i] = -0.5 * n * log(TWO_PI * vi) - n * (s2x + (ui - m) * (ui - m)) / (2.0 * vi)
    return out


def trinom_loglik(t1, t3, double y1, double y2, double y3, double logc):
    cdef double[::1] a1 = np.ascontiguousarray(t1, dtype=np.float64)
    cdef double[::1] a3 = np.ascontiguousarray(t3, dtype=np.float64)
    cdef Py_ssize_t i, size = a1.shape[0]
    out = np.empty(size)
    cdef double[::1] o = out
    cdef double p1, p2, p3
    with nogil:
        for i in range(size):
            p1 = a1[i]
            p3 = a3[i]
            p2 = 1.0 - p1 - p3
            if p1 < -SIMPLEX_TOL or p3 < -SIMPLEX_TOL or p2 < -SIMPLEX_TOL:
                o[i] = -INFINITY
            else:
                if p1 < 0.0:
                    p1 = 0.0
                if p3 < 0.0:
                    p3 = 0.0
                if p2 < 0.0:
                    p2 = 0.0
                o[i] = _xlogy(y1, p1) + _xlogy(y2, p2) + _xlogy(y3, p3) + logc
    return out


def max_argmax(vals):
    cdef double[::1] v = np.ascontiguousarray(vals, dtype=np.float64)
    cdef Py_ssize_t i, size = v.shape[0]
    if size == 0:
        return -INFINITY, -1
    cdef double best = v[0]
    cdef Py_ssize_t arg = 0
    with nogil:
        for i in range(1, size):
            if v[i] > best:
                best = v[i]
                arg = i
    return best, arg
