# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dominance kernels. Same signatures as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def dominance_masks(const double[:, ::1] P):
    """Efficient and weakly efficient masks of the rows of ``P`` (minimization)."""
    cdef Py_ssize_t n = P.shape[0], k = P.shape[1]
    cdef Py_ssize_t j, q, c
    cdef double a, b
    cdef bint le, some, every
    eff_arr = np.ones(n, dtype=np.uint8)
    weak_arr = np.ones(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] eff = eff_arr
    cdef cnp.uint8_t[::1] weak = weak_arr
    for j in range(n):
        for q in range(n):
            if q == j:
                continue
            le = True
            some = False
            every = True
            for c in range(k):
                a = P[q, c]
                b = P[j, c]
                if a > b:
                    le = False
                    break
                if a < b:
                    some = True
                else:
                    every = False
            if not le:
                continue
            if some:
                eff[j] = 0
                if every:
                    weak[j] = 0
                    break
    return eff_arr.astype(bool), weak_arr.astype(bool)


def fdh_member(const double[:, ::1] images, const double[:, ::1] queries, double slack):
    """For each query row, whether some image row is <= query + slack componentwise."""
    cdef Py_ssize_t n = images.shape[0], nq = queries.shape[0], k = images.shape[1]
    cdef Py_ssize_t i, j, c
    cdef bint ok
    out_arr = np.zeros(nq, dtype=np.uint8)
    cdef cnp.uint8_t[::1] out = out_arr
    for j in range(nq):
        for i in range(n):
            ok = True
            for c in range(k):
                if images[i, c] > queries[j, c] + slack:
                    ok = False
                    break
            if ok:
                out[j] = 1
                break
    return out_arr.astype(bool)
