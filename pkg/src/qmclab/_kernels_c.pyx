# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Sobol' Gray-code fill and Warnock L2 discrepancy.

Contracts mirror qmclab._kernels_py exactly; see that module for docs.
"""
import numpy as np

cimport cython
from libc.stdint cimport uint32_t, uint64_t

BACKEND = "cython"

cdef double SCALE = 2.0 ** -32


def sobol_fill(const uint32_t[:, ::1] directions, uint32_t[::1] state,
               index, double[:, ::1] out):
    cdef Py_ssize_t count = out.shape[0]
    cdef Py_ssize_t n = out.shape[1]
    cdef uint64_t i = <uint64_t> index
    cdef Py_ssize_t row, k
    cdef int c
    cdef uint64_t g
    for row in range(count):
        # position of the lowest zero bit of i selects the direction number
        g = i
        c = 0
        while g & 1:
            g >>= 1
            c += 1
        for k in range(n):
            state[k] ^= directions[k, c]
            out[row, k] = state[k] * SCALE
        i += 1


def l2_star_sq(const double[:, ::1] points):
    cdef Py_ssize_t N = points.shape[0]
    cdef Py_ssize_t n = points.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double prod, xik, xjk, m
    # Neumaier-compensated sums: the pairwise term has ~N^2 addends and a
    # naive accumulation error would swamp small discrepancies
    cdef double s1 = 0.0, c1 = 0.0
    cdef double s2 = 0.0, c2 = 0.0
    cdef double t, z

    for i in range(N):
        prod = 1.0
        for k in range(n):
            xik = points[i, k]
            prod *= 1.0 - xik
        t = s1 + prod
        if abs(s1) >= abs(prod):
            c1 += (s1 - t) + prod
        else:
            c1 += (prod - t) + s1
        s1 = t
        for j in range(i + 1, N):
            prod = 2.0
            for k in range(n):
                xik = points[i, k]
                xjk = points[j, k]
                m = xik if xik > xjk else xjk
                prod *= 1.0 - m
            t = s1 + prod
            if abs(s1) >= abs(prod):
                c1 += (s1 - t) + prod
            else:
                c1 += (prod - t) + s1
            s1 = t
        prod = 1.0
        for k in range(n):
            xik = points[i, k]
            prod *= 1.0 - xik * xik
        t = s2 + prod
        if abs(s2) >= abs(prod):
            c2 += (s2 - t) + prod
        else:
            c2 += (prod - t) + s2
        s2 = t

    cdef double term1 = (s1 + c1) / (<double> N * <double> N)
    cdef double term2 = (2.0 ** (1 - n) / <double> N) * (s2 + c2)
    cdef double term3 = 3.0 ** (-<double> n)
    return term1 - term2 + term3
