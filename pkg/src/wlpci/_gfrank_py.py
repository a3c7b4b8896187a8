"""Pure-numpy fallback for the GF(p) elimination kernel.

Right-looking elimination with a full mod-p reduction after every rank-one
update.  Slower than the compiled kernel but exact, and it implements the
same contract, so the two are interchangeable.
"""

from __future__ import annotations

import numpy as np


def echelon_rank(
    a: np.ndarray, p: int, stop_at: int = -1, first_block: int = -1
) -> tuple[int, int]:
    """Same contract as the compiled kernel: reduce `a` in place, return
    (rank of rows [0, first_block), total rank)."""
    m, n = a.shape
    if p < 2:
        raise ValueError("modulus must be at least 2")
    if p * p * (min(m, n) + 1) >= 2**53:
        raise ValueError("modulus too large for exact float64 elimination")
    if m == 0 or n == 0:
        return 0, 0
    stop_eff = n if (stop_at < 0 or stop_at > n) else stop_at
    if first_block < 0 or first_block > m:
        first_block = m
    np.mod(a, p, out=a)
    used_col = np.zeros(n, dtype=bool)

    def sweep(limit: int, rank: int) -> int:
        # pivot rows are drawn from [rank, limit); updates hit all rows below
        for col in range(n):
            if rank >= limit or rank >= stop_eff:
                break
            if used_col[col]:
                continue
            nz = np.flatnonzero(a[rank:limit, col])
            if nz.size == 0:
                continue
            r = rank + int(nz[0])
            if r != rank:
                a[[rank, r], :] = a[[r, rank], :]
            inv = pow(int(a[rank, col]), -1, p)
            row = np.mod(a[rank] * inv, p)
            a[rank] = row
            factors = a[rank + 1 :, col]
            hot = np.flatnonzero(factors)
            if hot.size:
                idx = rank + 1 + hot
                a[idx] = np.mod(a[idx] - np.outer(factors[hot], row), p)
            used_col[col] = True
            rank += 1
        return rank

    rank = sweep(first_block, 0)
    block_rank = rank
    if first_block < m and rank < stop_eff:
        rank = sweep(m, rank)
    return block_rank, rank
