# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels; same API as ``arrcover._purekernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef enum:
    WORD = 64


cdef object _pack(list rows, Py_ssize_t nwords):
    cdef Py_ssize_t n = len(rows), i, w
    out = np.zeros((n, nwords), dtype=np.uint64)
    cdef uint64_t[:, ::1] a = out
    cdef object v
    mask = 0xFFFFFFFFFFFFFFFF
    for i in range(n):
        v = rows[i]
        w = 0
        while v and w < nwords:
            a[i, w] = <uint64_t>(v & mask)
            v >>= WORD
            w += 1
    return out


cdef object _unpack_row(uint64_t[:, ::1] a, Py_ssize_t i, Py_ssize_t nwords):
    cdef Py_ssize_t w
    v = 0
    for w in range(nwords - 1, -1, -1):
        v = (v << WORD) | <object>a[i, w]
    return v


cdef Py_ssize_t _gf2_eliminate(uint64_t[:, ::1] a, Py_ssize_t ncols, bint full, list pivots):
    cdef Py_ssize_t nrows = a.shape[0], nwords = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, w, piv, w0
    cdef uint64_t bit, tmp
    for c in range(ncols):
        if r == nrows:
            break
        w0 = c // WORD
        bit = (<uint64_t>1) << (c % WORD)
        piv = -1
        for i in range(r, nrows):
            if a[i, w0] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for w in range(w0, nwords):
                tmp = a[r, w]
                a[r, w] = a[piv, w]
                a[piv, w] = tmp
        for i in range(0 if full else r + 1, nrows):
            if i != r and (a[i, w0] & bit):
                for w in range(w0, nwords):
                    a[i, w] ^= a[r, w]
        pivots.append(c)
        r += 1
    return r


def gf2_rref(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nwords = max(1, (ncols + WORD - 1) // WORD)
    arr = _pack(rows, nwords)
    cdef uint64_t[:, ::1] a = arr
    cdef list pivots = []
    cdef Py_ssize_t r = _gf2_eliminate(a, ncols, True, pivots)
    return [_unpack_row(a, i, nwords) for i in range(r)], pivots


def gf2_rank(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nwords = max(1, (ncols + WORD - 1) // WORD)
    arr = _pack(rows, nwords)
    cdef uint64_t[:, ::1] a = arr
    cdef list pivots = []
    return _gf2_eliminate(a, ncols, False, pivots)


cdef int64_t _inv_mod(int64_t x, int64_t p):
    cdef int64_t t = 0, nt = 1, r = p, nr = x % p, q, tmp
    while nr:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef Py_ssize_t _fp_eliminate(int64_t[:, ::1] a, int64_t p, bint full, list pivots):
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(0 if full else r + 1, nrows):
            if i == r:
                continue
            f = a[i, c]
            if f:
                f = p - f
                for j in range(c, ncols):
                    if a[r, j]:
                        a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return r


def fp_rref(list rows, Py_ssize_t ncols, int64_t p):
    arr = np.zeros((len(rows), ncols), dtype=np.int64)
    if rows:
        arr[:, :] = np.asarray(rows, dtype=object) % p
    cdef int64_t[:, ::1] a = arr
    cdef list pivots = []
    cdef Py_ssize_t r = _fp_eliminate(a, p, True, pivots)
    return arr[:r].tolist(), pivots


def fp_rank(list rows, Py_ssize_t ncols, int64_t p):
    arr = np.zeros((len(rows), ncols), dtype=np.int64)
    if rows:
        arr[:, :] = np.asarray(rows, dtype=object) % p
    cdef int64_t[:, ::1] a = arr
    cdef list pivots = []
    return _fp_eliminate(a, p, False, pivots)
