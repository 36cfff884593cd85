# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Same signatures and results as ``_pykernels``."""

import numpy as np
from libc.math cimport floor, fabs


def first_fit(weights, perm, double capacity):
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef long long[::1] p = np.ascontiguousarray(perm, dtype=np.int64)
    cdef Py_ssize_t n = p.shape[0]
    bin_of_arr = np.full(w.shape[0], -1, dtype=np.int64)
    fills_arr = np.zeros(max(n, 1), dtype=np.float64)
    cdef long long[::1] bin_of = bin_of_arr
    cdef double[::1] fills = fills_arr
    cdef Py_ssize_t nbins = 0, t, k
    cdef long long item
    cdef double x
    for t in range(n):
        item = p[t]
        x = w[item]
        for k in range(nbins):
            if fills[k] + x <= capacity:
                fills[k] += x
                bin_of[item] = k
                break
        else:
            fills[nbins] = x
            bin_of[item] = nbins
            nbins += 1
    return bin_of_arr, fills_arr[:nbins].copy()


def perm_diff(a, b):
    cdef long long[::1] target = np.ascontiguousarray(a, dtype=np.int64)
    cur_arr = np.array(b, dtype=np.int64)
    cdef long long[::1] cur = cur_arr
    cdef Py_ssize_t n = cur.shape[0], i
    pos_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] pos = pos_arr
    out_arr = np.empty((n, 2), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef Py_ssize_t m = 0
    cdef long long j, vi, ai
    for i in range(n):
        pos[cur[i]] = i
    for i in range(n):
        ai = target[i]
        if cur[i] != ai:
            j = pos[ai]
            vi = cur[i]
            cur[i] = ai
            cur[j] = vi
            pos[vi] = j
            pos[ai] = i
            out[m, 0] = i
            out[m, 1] = j
            m += 1
    return out_arr[:m].copy()


def apply_swaps(perm, swaps):
    out_arr = np.array(perm, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long[:, ::1] s = np.ascontiguousarray(np.asarray(swaps, dtype=np.int64).reshape(-1, 2))
    cdef Py_ssize_t t
    cdef long long tmp
    for t in range(s.shape[0]):
        tmp = out[s[t, 0]]
        out[s[t, 0]] = out[s[t, 1]]
        out[s[t, 1]] = tmp
    return out_arr


def subset_sum_counts(values, Py_ssize_t k):
    cdef long long[::1] v = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t total = 0, i, j, s
    for i in range(v.shape[0]):
        total += v[i]
    table_arr = np.zeros((k + 1, total + 1), dtype=np.int64)
    cdef long long[:, ::1] table = table_arr
    table[0, 0] = 1
    cdef long long x
    for i in range(v.shape[0]):
        x = v[i]
        for j in range(k, 0, -1):
            for s in range(total, x - 1, -1):
                table[j, s] += table[j - 1, s - x]
    return table_arr[k].copy()


def star_discrepancy_grid(points, Py_ssize_t grid):
    cdef double[:, ::1] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = pts.shape[0], d = pts.shape[1]
    cdef Py_ssize_t size = grid ** d, i, k, f, stride, flat, digit
    cdef long long c
    cdef bint inside
    hist_arr = np.zeros(size, dtype=np.float64)
    cdef double[::1] hist = hist_arr
    for i in range(n):
        flat = 0
        inside = True
        for k in range(d):
            c = <long long>floor(pts[i, k] * grid)
            if c < 0 or c >= grid:
                inside = False
                break
            flat = flat * grid + c
        if inside:
            hist[flat] += 1.0
    cdef Py_ssize_t outer, j, base
    stride = size
    for k in range(d):
        stride //= grid
        # blocks of grid*stride cells; add the previous slab within each block
        for outer in range(0, size, grid * stride):
            for j in range(1, grid):
                base = outer + j * stride
                for f in range(base, base + stride):
                    hist[f] += hist[f - stride]
    digits_arr = np.zeros(d, dtype=np.int64)
    cdef long long[::1] digits = digits_arr
    cdef double worst = 0.0, vol, gap, inv_n = 1.0 / n
    for f in range(size):
        vol = 1.0
        for k in range(d):
            vol *= (digits[k] + 1.0) / grid
        gap = fabs(hist[f] * inv_n - vol)
        if gap > worst:
            worst = gap
        k = d - 1
        while k >= 0:
            digits[k] += 1
            if digits[k] < grid:
                break
            digits[k] = 0
            k -= 1
    return worst
