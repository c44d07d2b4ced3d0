# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Must stay result-compatible with ``_fallback``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin
from cpython.pycapsule cimport PyCapsule_GetPointer
from numpy.random cimport bitgen_t

cnp.import_array()


def grid_argmax(double[::1] a_re, double[::1] a_im, double[::1] b_re, double[::1] b_im,
                double[::1] eta, Py_ssize_t m, double[::1] phis, double[::1] chis):
    cdef Py_ssize_t n = eta.shape[0], ni = phis.shape[0], nj = chis.shape[0]
    cdef Py_ssize_t i, j, k, bi = 0, bj = 0
    cdef double best = -1.0, p, c, s, cc, sc, xr, xi, pr
    cdef double[::1] cphi = np.cos(phis), sphi = np.sin(phis)
    cdef double[::1] cchi = np.cos(chis), schi = np.sin(chis)
    with nogil:
        for i in range(ni):
            c = cphi[i]
            s = sphi[i]
            for j in range(nj):
                cc = cchi[j]
                sc = schi[j]
                p = 0.0
                for k in range(n):
                    xr = a_re[k] * c + (b_re[k] * cc + b_im[k] * sc) * s
                    xi = a_im[k] * c + (b_im[k] * cc - b_re[k] * sc) * s
                    pr = xr * xr + xi * xi
                    if k < m:
                        p += eta[k] * pr
                    else:
                        p += eta[k] * (1.0 - pr)
                if p > best:
                    best = p
                    bi = i
                    bj = j
    return best, bi, bj


def tally(bit_generator, Py_ssize_t trials, double[::1] cum, double[::1] prob):
    cdef Py_ssize_t n = cum.shape[0], t, k
    cdef double u
    cdef cnp.int64_t[:, ::1] counts = np.zeros((n, 2), dtype=np.int64)
    cdef bitgen_t *rng = <bitgen_t *> PyCapsule_GetPointer(bit_generator.capsule, "BitGenerator")
    with bit_generator.lock, nogil:
        for t in range(trials):
            u = rng.next_double(rng.state)
            k = 0
            while k < n - 1 and u >= cum[k]:
                k += 1
            u = rng.next_double(rng.state)
            if u < prob[k]:
                counts[k, 0] += 1
            else:
                counts[k, 1] += 1
    return np.asarray(counts)
