# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch evaluation of the unscaled Leggett-Garg quantity.

Mirrors ``entropic_lg._kernels_py`` exactly; see that module for the
meaning of the arguments.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, fabs

cnp.import_array()

cdef double SHANNON_WINDOW = 1e-9


cdef inline double _term(double x, double alpha, bint shannon) noexcept nogil:
    if x <= 0.0:
        return 0.0
    if shannon:
        return -x * log(x)
    return exp(alpha * log(x))


def c_alpha_batch(const double[::1] p0,
                  const double[:, :, ::1] T10,
                  const double[:, :, ::1] T21,
                  const double[:, :, ::1] T20,
                  double alpha):
    cdef Py_ssize_t n = T10.shape[0], d = p0.shape[0]
    cdef Py_ssize_t i, k, l, m
    cdef bint shannon = fabs(alpha - 1.0) < SHANNON_WINDOW
    cdef double s01, s12, s02, s1, p1l, h01, h12, h02, h1
    cdef double[::1] p1 = np.empty(d)
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    if T21.shape[0] != n or T20.shape[0] != n:
        raise ValueError("batch sizes differ")
    if T10.shape[1] != d or T10.shape[2] != d or T21.shape[1] != d or T20.shape[1] != d:
        raise ValueError("dimension mismatch")
    with nogil:
        for i in range(n):
            s01 = 0.0
            s02 = 0.0
            for k in range(d):
                for l in range(d):
                    s01 += _term(p0[k] * T10[i, l, k], alpha, shannon)
                    s02 += _term(p0[k] * T20[i, l, k], alpha, shannon)
            s1 = 0.0
            s12 = 0.0
            for l in range(d):
                p1l = 0.0
                for k in range(d):
                    p1l = p1l + p0[k] * T10[i, l, k]
                p1[l] = p1l
                s1 += _term(p1l, alpha, shannon)
            for l in range(d):
                for m in range(d):
                    s12 += _term(p1[l] * T21[i, m, l], alpha, shannon)
            if shannon:
                out[i] = s02 + s1 - s12 - s01
            else:
                # the four -1 offsets cancel pairwise
                out[i] = (s02 + s1 - s12 - s01) / (1.0 - alpha)
    return out_arr
