# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular kernels.  Requires primes below 2**63."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline uint64_t umps_mulmod(uint64_t a, uint64_t b, uint64_t p) {
        return (uint64_t)(((unsigned __int128)a * b) % p);
    }
    """
    uint64_t umps_mulmod(uint64_t a, uint64_t b, uint64_t p) nogil


cdef uint64_t _powmod(uint64_t a, uint64_t e, uint64_t p) noexcept nogil:
    cdef uint64_t r = 1
    a %= p
    while e:
        if e & 1:
            r = umps_mulmod(r, a, p)
        a = umps_mulmod(a, a, p)
        e >>= 1
    return r


cdef Py_ssize_t _rank(uint64_t* a, Py_ssize_t nrows, Py_ssize_t ncols, uint64_t p) noexcept nogil:
    cdef Py_ssize_t rank = 0, col, i, j, piv
    cdef uint64_t inv, f, t
    cdef uint64_t* prow
    cdef uint64_t* row
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if a[i * ncols + col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(col, ncols):
                t = a[piv * ncols + j]
                a[piv * ncols + j] = a[rank * ncols + j]
                a[rank * ncols + j] = t
        prow = a + rank * ncols
        inv = _powmod(prow[col], p - 2, p)
        for j in range(col, ncols):
            prow[j] = umps_mulmod(prow[j], inv, p)
        for i in range(rank + 1, nrows):
            row = a + i * ncols
            f = row[col]
            if f == 0:
                continue
            for j in range(col, ncols):
                if prow[j]:
                    t = umps_mulmod(f, prow[j], p)
                    row[j] = row[j] - t if row[j] >= t else row[j] + (p - t)
        rank += 1
    return rank


def rank_mod_p(rows, Py_ssize_t ncols, p):
    """Rank over GF(p) of a dense matrix given as a list of rows."""
    cdef Py_ssize_t nrows = len(rows), i, j
    cdef uint64_t pp = p
    if nrows == 0 or ncols == 0:
        return 0
    cdef uint64_t* a = <uint64_t*> malloc(nrows * ncols * sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t r
    try:
        for i in range(nrows):
            row = rows[i]
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j in range(ncols):
                a[i * ncols + j] = row[j] % p
        with nogil:
            r = _rank(a, nrows, ncols, pp)
    finally:
        free(a)
    return r


def trace_product_mod_p(mats, word, p):
    """Tr(M[w0] M[w1] ...) mod p for square integer matrices ``mats``."""
    cdef Py_ssize_t m = len(mats[0]), nm = len(mats), L = len(word)
    cdef Py_ssize_t i, j, k, s, letter
    cdef uint64_t pp = p, acc_ij, tr = 0
    cdef uint64_t* store = <uint64_t*> malloc((nm + 2) * m * m * sizeof(uint64_t))
    if store == NULL:
        raise MemoryError()
    cdef uint64_t* cur
    cdef uint64_t* nxt
    cdef uint64_t* tmp
    cdef Py_ssize_t* w = <Py_ssize_t*> malloc((L + 1) * sizeof(Py_ssize_t))
    try:
        for s in range(nm):
            for i in range(m):
                for j in range(m):
                    store[s * m * m + i * m + j] = mats[s][i][j] % p
        for s in range(L):
            letter = word[s]
            if letter < 0 or letter >= nm:
                raise IndexError("letter out of range")
            w[s] = letter
        cur = store + nm * m * m
        nxt = store + (nm + 1) * m * m
        with nogil:
            for i in range(m):
                for j in range(m):
                    cur[i * m + j] = 1 if i == j else 0
            for s in range(L):
                for i in range(m):
                    for j in range(m):
                        acc_ij = 0
                        for k in range(m):
                            acc_ij = (acc_ij + umps_mulmod(cur[i * m + k], store[w[s] * m * m + k * m + j], pp)) % pp
                        nxt[i * m + j] = acc_ij
                tmp = cur
                cur = nxt
                nxt = tmp
            for i in range(m):
                tr = (tr + cur[i * m + i]) % pp
    finally:
        free(store)
        free(w)
    return tr
