"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Same signatures and results; used when the extension is not built or when
``UMPSPAN_PURE_PYTHON=1`` is set.
"""
from __future__ import annotations


def rank_mod_p(rows: list[list[int]], ncols: int, p: int) -> int:
    """Rank over GF(p) of a dense matrix given as a list of rows.

    Entries may be any integers; they are reduced mod ``p`` first.
    """
    mat = [[x % p for x in row] for row in rows]
    nrows = len(mat)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if mat[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = pow(prow[col], -1, p)
        if inv != 1:
            prow = [x * inv % p for x in prow]
            mat[rank] = prow
        for i in range(rank + 1, nrows):
            row = mat[i]
            f = row[col]
            if f:
                mat[i] = [(a - f * b) % p for a, b in zip(row, prow)]
        rank += 1
    return rank


def trace_product_mod_p(mats: list[list[list[int]]], word: list[int], p: int) -> int:
    """Tr(M[w0] M[w1] ...) mod p for square integer matrices ``mats``."""
    m = len(mats[0])
    acc = [[int(i == j) for j in range(m)] for i in range(m)]
    for letter in word:
        b = mats[letter]
        acc = [
            [sum(acc[i][k] * b[k][j] for k in range(m)) % p for j in range(m)]
            for i in range(m)
        ]
    return sum(acc[i][i] for i in range(m)) % p
