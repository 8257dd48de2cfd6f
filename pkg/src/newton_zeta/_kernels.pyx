# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in _kernels_py (same signatures and results)."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef cnp.int64_t i64


def box_residues(c, d, long long D, vmask, bint open_mode):
    cdef i64[:, ::1] cc = np.ascontiguousarray(c, dtype=np.int64)
    cdef i64[::1] dd = np.ascontiguousarray(d, dtype=np.int64)
    cdef cnp.uint8_t[::1] vm = np.ascontiguousarray(vmask, dtype=np.uint8)
    cdef Py_ssize_t k = dd.shape[0]
    hist_arr = np.zeros(D, dtype=np.int64)
    cdef i64[::1] hist = hist_arr
    if k == 0:
        hist[0] = 1
        return hist_arr
    cdef i64 *y = <i64 *> malloc(k * sizeof(i64))
    cdef i64 *lam = <i64 *> malloc(k * sizeof(i64))
    cdef Py_ssize_t i, j
    cdef i64 psi
    cdef bint ok
    with nogil:
        for i in range(k):
            y[i] = 0
            lam[i] = 0
        while True:
            ok = True
            psi = 0
            for i in range(k):
                if open_mode and lam[i] == 0:
                    ok = False
                if vm[i]:
                    psi += lam[i]
            if ok:
                hist[(D - psi % D) % D] += 1
            # odometer step on y, updating lam incrementally
            j = k - 1
            while j >= 0:
                y[j] += 1
                if y[j] < dd[j]:
                    for i in range(k):
                        lam[i] = (lam[i] + cc[i, j]) % D
                    break
                for i in range(k):
                    lam[i] = ((lam[i] - cc[i, j] * (dd[j] - 1)) % D + D) % D
                y[j] = 0
                j -= 1
            if j < 0:
                break
    free(y)
    free(lam)
    return hist_arr


def torus_scan(exps, coef_logs, long long q, long long p, exp_tab, add_tab):
    cdef i64[:, ::1] ex = np.ascontiguousarray(np.asarray(exps, dtype=np.int64) % (q - 1))
    cdef i64[:, ::1] cl = np.ascontiguousarray(coef_logs, dtype=np.int64)
    cdef i64[::1] et = np.ascontiguousarray(exp_tab, dtype=np.int64)
    cdef bint prime = add_tab is None
    cdef i64[:, ::1] at
    if prime:
        at = np.zeros((1, 1), dtype=np.int64)
    else:
        at = np.ascontiguousarray(add_tab, dtype=np.int64)
    cdef Py_ssize_t m = ex.shape[0], dim = ex.shape[1], r = cl.shape[0]
    cdef i64 qm1 = q - 1
    cdef i64 *mono = <i64 *> malloc((m + 1) * sizeof(i64))
    cdef i64 *lg = <i64 *> malloc((dim + 1) * sizeof(i64))
    cdef Py_ssize_t t, row, j
    cdef i64 acc, val, c
    cdef long long z0 = 0, o0 = 0, allz = 0
    cdef bint all_zero
    with nogil:
        for t in range(m):
            mono[t] = 0
        for j in range(dim):
            lg[j] = 0
        while True:
            all_zero = True
            for row in range(r):
                acc = 0
                for t in range(m):
                    c = cl[row, t]
                    if c < 0:
                        continue
                    val = et[(mono[t] + c) % qm1]
                    if prime:
                        acc = (acc + val) % p
                    else:
                        acc = at[acc, val]
                if row == 0:
                    if acc == 0:
                        z0 += 1
                    elif acc == 1:
                        o0 += 1
                if acc != 0:
                    all_zero = False
            if all_zero:
                allz += 1
            j = dim - 1
            while j >= 0:
                lg[j] += 1
                if lg[j] < qm1:
                    for t in range(m):
                        mono[t] = (mono[t] + ex[t, j]) % qm1
                    break
                for t in range(m):
                    mono[t] = ((mono[t] - ex[t, j] * (qm1 - 1)) % qm1 + qm1) % qm1
                lg[j] = 0
                j -= 1
            if j < 0:
                break
    free(mono)
    free(lg)
    return z0, o0, allz
