"""Symbolic traces of words in generic m x m matrices.

The generic matrix ``A_k`` has entries ``a{k}_{i}{j}`` (1-based row/column),
so the coordinate ring of an n-tuple of m x m matrices has m*m*n variables.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .combinatorics import (
    Word,
    canonical_necklace,
    enumerate_bracelets,
    enumerate_necklaces,
    rotations,
    word_str,
)
from .errors import ResourceCapExceeded
from .exact_algebra import SparsePolynomial, Universe

PolyMatrix = list[list[SparsePolynomial]]

# guard against accidentally requesting huge symbolic expansions
DEFAULT_MAX_COST = 2_000


@dataclass(frozen=True)
class GenericMatrixTuple:
    m: int
    n: int

    @property
    def universe(self) -> Universe:
        return _universe(self.m, self.n)

    def variable(self, k: int, i: int, j: int) -> str:
        return f"a{k}_{i + 1}{j + 1}"

    def matrix(self, k: int) -> PolyMatrix:
        return _generic_matrix(self.m, self.n, k)

    def assignment(self, mats: Sequence[Sequence[Sequence]]) -> dict[str, object]:
        """Variable assignment sending ``A_k`` to the numeric matrix ``mats[k]``."""
        out = {}
        for k, mat in enumerate(mats):
            for i in range(self.m):
                for j in range(self.m):
                    out[self.variable(k, i, j)] = mat[i][j]
        return out


@lru_cache(maxsize=None)
def _universe(m: int, n: int) -> Universe:
    return Universe(f"a{k}_{i + 1}{j + 1}" for k in range(n) for i in range(m) for j in range(m))


@lru_cache(maxsize=None)
def _generic_matrix(m: int, n: int, k: int) -> PolyMatrix:
    u = _universe(m, n)
    return [[u.var(f"a{k}_{i + 1}{j + 1}") for j in range(m)] for i in range(m)]


def identity_matrix(universe: Universe, m: int) -> PolyMatrix:
    one = SparsePolynomial.constant(universe, 1)
    zero = SparsePolynomial.zero(universe)
    return [[one if i == j else zero for j in range(m)] for i in range(m)]


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    m = len(a)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for k in range(1, m):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def trace(a: PolyMatrix) -> SparsePolynomial:
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def trace_of_matrices(mats: Sequence[PolyMatrix], universe: Universe) -> SparsePolynomial:
    """Trace of the product of a sequence of polynomial matrices."""
    if not mats:
        raise ValueError("empty product needs the matrix size; use trace_of_word")
    acc = mats[0]
    for b in mats[1:]:
        acc = matmul(acc, b)
    return trace(acc)


def trace_of_word(m: int, n: int, w: Sequence[int]) -> SparsePolynomial:
    """Tr(A_{w_1} ... A_{w_d}) over generic m x m matrices, as a polynomial."""
    w = tuple(w)
    for x in w:
        if not 0 <= x < n:
            raise ValueError(f"letter {x} outside alphabet [{n}]")
    return _trace_cached(m, n, canonical_necklace(w))


@lru_cache(maxsize=100_000)
def _trace_cached(m: int, n: int, w: Word) -> SparsePolynomial:
    u = _universe(m, n)
    if not w:
        return SparsePolynomial.constant(u, m)
    return trace_of_matrices([_generic_matrix(m, n, k) for k in w], u)


@dataclass
class UmpsCoordinateVector:
    m: int
    n: int
    d: int
    coords: dict[Word, SparsePolynomial]

    @property
    def basis(self) -> str:
        return "bracelet" if (self.m == 2 and self.n == 2) else "necklace"

    def to_json(self) -> str:
        return json.dumps(
            {
                "m": self.m,
                "n": self.n,
                "d": self.d,
                "coords": {word_str(k): str(v) for k, v in self.coords.items()},
            },
            indent=None,
        )


def umps_coordinates(
    m: int, n: int, d: int, max_cost: int = DEFAULT_MAX_COST, threads: int = 1
) -> UmpsCoordinateVector:
    """One trace polynomial per necklace (per bracelet when m = n = 2)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    cost = m * m * n * d
    if cost > max_cost:
        raise ResourceCapExceeded(f"m^2*n*d = {cost} exceeds cap {max_cost}")
    reps = enumerate_bracelets(n, d) if (m == 2 and n == 2) else enumerate_necklaces(n, d)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            polys = list(ex.map(lambda w: trace_of_word(m, n, w), reps))
    else:
        polys = [trace_of_word(m, n, w) for w in reps]
    return UmpsCoordinateVector(m, n, d, dict(zip(reps, polys)))


def _expand(m: int, n: int, w: Word) -> SparsePolynomial:
    # uncached expansion straight from the word, so symmetry checks do not
    # pass trivially through the canonical-necklace cache
    u = _universe(m, n)
    if not w:
        return SparsePolynomial.constant(u, m)
    return trace_of_matrices([_generic_matrix(m, n, k) for k in w], u)


def verify_cyclic_invariance(m: int, n: int, w: Sequence[int]) -> bool:
    w = tuple(w)
    base = _expand(m, n, w)
    return all(_expand(m, n, r) == base for r in rotations(w)[1:])


def verify_reflection_invariance(m: int, n: int, w: Sequence[int]) -> bool:
    w = tuple(w)
    return _expand(m, n, w) == _expand(m, n, w[::-1])


def verify_reflection_invariance_2x2(w: Sequence[int]) -> bool:
    w = tuple(w)
    n = max(w, default=0) + 1
    return verify_reflection_invariance(2, max(n, 1), w)


# -- numeric evaluation ------------------------------------------------------


def numeric_matmul(a, b):
    m = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)] for i in range(m)]


def numeric_trace_of_word(mats: Sequence, w: Sequence[int]):
    """Exact Tr(M[w_1] ... M[w_d]) for numeric (int / Fraction) matrices."""
    m = len(mats[0])
    acc = [[int(i == j) for j in range(m)] for i in range(m)]
    for x in w:
        acc = numeric_matmul(acc, mats[x])
    return sum(acc[i][i] for i in range(m))


def umps_tensor(mats: Sequence, d: int) -> dict[Word, object]:
    """The full word-indexed tensor phi(A) in (C^n)^{tensor d}, computed numerically."""
    n = len(mats)
    return {w: numeric_trace_of_word(mats, w) for w in itertools.product(range(n), repeat=d)}


def _is_invertible(g) -> bool:
    n = len(g)
    a = [[Fraction(x) for x in row] for row in g]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return False
        a[col], a[piv] = a[piv], a[col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return True


def act_on_tensor(g, tensor: Mapping[Word, object], d: int) -> dict[Word, object]:
    """g^{tensor d} applied to a word-indexed tensor, one axis at a time."""
    n = len(g)
    cur = dict(tensor)
    for axis in range(d):
        nxt = {}
        for w in cur:
            i = w[axis]
            total = 0
            for j in range(n):
                src = w[:axis] + (j,) + w[axis + 1:]
                total += g[i][j] * cur[src]
            nxt[w] = total
        cur = nxt
    return cur


def verify_gl_equivariance(m: int, n: int, d: int, g, mats) -> bool:
    """Check phi(sum_j g_{ij} A_j) == g . phi(A) on the full n^d tensor."""
    if len(g) != n or any(len(row) != n for row in g):
        raise ValueError("g must be n x n")
    if not _is_invertible(g):
        raise ValueError("g is singular")
    if len(mats) != n or any(len(a) != m for a in mats):
        raise ValueError("need n matrices of size m x m")
    if n ** d > 4096:
        raise ResourceCapExceeded(f"tensor size n^d = {n ** d} too large for a full check")
    moved = []
    for i in range(n):
        moved.append(
            [[sum(g[i][j] * mats[j][r][c] for j in range(n)) for c in range(m)] for r in range(m)]
        )
    lhs = umps_tensor(moved, d)
    rhs = act_on_tensor(g, umps_tensor(mats, d), d)
    return lhs == rhs


def torus_scaling_holds(mats, t: Sequence, d: int) -> bool:
    """For g = diag(t), every coordinate scales by t^{weight(word)}.

    Checked on both sides of the equivariance: acting on the tensor, and
    rescaling the matrices A_i -> t_i A_i before applying phi.
    """
    n = len(t)
    g = [[t[i] if i == j else 0 for j in range(n)] for i in range(n)]
    base = umps_tensor(mats, d)
    acted = act_on_tensor(g, base, d)
    rescaled = umps_tensor([[[t[k] * x for x in row] for row in a] for k, a in enumerate(mats)], d)
    for w, v in base.items():
        factor = 1
        for x in w:
            factor *= t[x]
        if acted[w] != factor * v or rescaled[w] != factor * v:
            return False
    return True
