# cython: language_level=3
"""Exact row reduction over GF(p) on float64 storage.

All matrix entries are integers stored in doubles.  Echelon rows are kept
reduced into [0, p); a working row accumulates at most min(m, n) * p**2 in
magnitude before it is reduced again, which stays below 2**53, so every
operation here is exact integer arithmetic in disguise.
"""

from libc.math cimport fmod
from libc.stdlib cimport free, malloc


cdef long _modinv(long a, long p) noexcept nogil:
    # extended Euclid; a in (0, p), p prime
    cdef long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def echelon_rank(double[:, ::1] a, long p, long stop_at=-1, long first_block=-1):
    """Reduce `a` in place over GF(p); return (rank of the leading row block, total rank).

    `first_block` marks a row boundary: the first returned value is the rank
    of rows [0, first_block) alone (equal to the total rank when the boundary
    is absent or out of range).  `stop_at` caps the echelon size; elimination
    halts once that many pivots are found.  Rows are processed in order and
    pivots are first nonzero columns, so the result is deterministic.
    """
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t i, j, k, c, piv, rank = 0
    cdef Py_ssize_t r1 = -1
    cdef Py_ssize_t stop_eff, cap
    cdef double pd = <double> p
    cdef double f, v, w, dinv, tmp
    cdef Py_ssize_t* pivcol

    if p < 2:
        raise ValueError("modulus must be at least 2")
    cap = m if m < n else n
    if pd * pd * (cap + 1) >= 9007199254740992.0:
        raise ValueError("modulus too large for exact float64 elimination")
    if m == 0 or n == 0:
        return 0, 0

    stop_eff = n if (stop_at < 0 or stop_at > n) else stop_at
    pivcol = <Py_ssize_t*> malloc(cap * sizeof(Py_ssize_t))
    if pivcol == NULL:
        raise MemoryError()

    with nogil:
        for i in range(m):
            if i == first_block:
                r1 = rank
            if rank >= stop_eff:
                break
            # fold row i into the echelon
            for j in range(rank):
                c = pivcol[j]
                f = fmod(a[i, c], pd)
                if f < 0:
                    f += pd
                if f == 0:
                    continue
                for k in range(c, n):
                    a[i, k] -= f * a[j, k]
            # locate the pivot column
            piv = -1
            v = 0
            for k in range(n):
                v = fmod(a[i, k], pd)
                if v != 0:
                    if v < 0:
                        v += pd
                    piv = k
                    break
            if piv < 0:
                continue
            # normalize the new echelon row into [0, p) with leading 1
            dinv = <double> _modinv(<long> v, p)
            for k in range(piv, n):
                w = fmod(a[i, k], pd)
                if w < 0:
                    w += pd
                a[i, k] = fmod(w * dinv, pd)
            for k in range(piv):
                a[i, k] = 0
            if i != rank:
                for k in range(n):
                    tmp = a[rank, k]
                    a[rank, k] = a[i, k]
                    a[i, k] = tmp
            pivcol[rank] = piv
            rank += 1

    free(pivcol)
    if r1 < 0:
        r1 = rank
    return r1, rank
