"""Character of the linear span of uMPS(m,n,d) and of the degree-k ideal parts.

For each weight, the span dimension is the rank of the coefficient matrix of
the generator polynomials of that weight (trace parametrization P_b for
m = n = 2, raw generic-matrix traces otherwise).  Scalar weights ``w`` for
n = 2 count occurrences of the letter 1.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .combinatorics import (
    Word,
    count_bracelets,
    count_necklaces,
    enumerate_bracelets,
    enumerate_necklaces,
)
from .errors import ResourceCapExceeded
from .exact_algebra import CoefficientMatrix, SparsePolynomial, Universe, matrix_rank
from .trace_calculus import trace_of_matrices, trace_of_word
from .trace_param import reduce_word


@dataclass(frozen=True)
class ResourceCaps:
    max_d_trace_param: int = 24
    max_d_generic: int = 10
    max_generic_vars_times_d: int = 2_000
    max_matrix_entries: int = 25_000_000
    max_k: int = 3


DEFAULT_CAPS = ResourceCaps()


@dataclass(frozen=True)
class SpanRequest:
    m: int
    n: int
    d: int
    w: int | tuple[int, ...]
    source: str = "trace-param"
    mode: str = "modular"
    prime_bits: int = 61

    def weight_vector(self) -> tuple[int, ...]:
        if isinstance(self.w, int):
            if self.n != 2:
                raise ValueError("scalar weight only makes sense for n = 2")
            if not 0 <= self.w <= self.d:
                raise ValueError(f"need 0 <= w <= d, got w={self.w}, d={self.d}")
            return (self.d - self.w, self.w)
        lam = tuple(self.w)
        if len(lam) != self.n or sum(lam) != self.d or min(lam) < 0:
            raise ValueError(f"weight {lam} inconsistent with n={self.n}, d={self.d}")
        return lam


@dataclass
class Character:
    """Weight -> dimension, plus the matching ambient dimensions."""

    m: int
    n: int
    d: int
    k: int
    dims: dict[tuple[int, ...], int]
    ambient: dict[tuple[int, ...], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    @property
    def ambient_total(self) -> int:
        return sum(self.ambient.values())

    def scalar(self, w: int) -> int:
        """D_w for n = 2, with w the number of 1s."""
        return self.dims.get((self.k * self.d - w, w), 0)

    def scalar_dims(self) -> list[int]:
        return [self.scalar(w) for w in range(self.k * self.d + 1)]


# -- generators --------------------------------------------------------------


def _scalar_weight(lam: Sequence[int]) -> int:
    return lam[1]


def generators(req: SpanRequest, caps: ResourceCaps = DEFAULT_CAPS) -> dict[Word, SparsePolynomial]:
    lam = req.weight_vector()
    if req.source == "trace-param":
        if (req.m, req.n) != (2, 2):
            raise ValueError("trace-param source only exists for m = n = 2")
        if req.d > caps.max_d_trace_param:
            raise ResourceCapExceeded(f"d={req.d} exceeds trace-param cap {caps.max_d_trace_param}")
        return {b: reduce_word(b) for b in enumerate_bracelets(2, req.d, lam)}
    if req.source == "generic":
        cost = req.m * req.m * req.n * req.d
        if req.d > caps.max_d_generic or cost > caps.max_generic_vars_times_d:
            raise ResourceCapExceeded(
                f"generic source at (m,n,d)=({req.m},{req.n},{req.d}) exceeds caps"
            )
        reps = (
            enumerate_bracelets(req.n, req.d, lam)
            if (req.m, req.n) == (2, 2)
            else enumerate_necklaces(req.n, req.d, lam)
        )
        return {b: trace_of_word(req.m, req.n, b) for b in reps}
    raise ValueError(f"unknown generator source {req.source!r}")


def _checked_rank(polys: Mapping, mode: str, prime_bits: int, caps: ResourceCaps) -> int:
    mat = CoefficientMatrix.from_polynomials(polys)
    rows, cols = mat.shape
    if rows * cols > caps.max_matrix_entries:
        raise ResourceCapExceeded(
            f"coefficient matrix {rows}x{cols} exceeds cap of {caps.max_matrix_entries} entries"
        )
    return matrix_rank(mat, mode=mode, prime_bits=prime_bits)


def span_dimension_weight(req: SpanRequest, caps: ResourceCaps = DEFAULT_CAPS) -> int:
    """dim of the weight space of the span: rank of the generators' coefficient matrix."""
    return _checked_rank(generators(req, caps), req.mode, req.prime_bits, caps)


def _default_source(m: int, n: int) -> str:
    return "trace-param" if (m, n) == (2, 2) else "generic"


def _weights(n: int, d: int) -> list[tuple[int, ...]]:
    return [lam for lam in itertools.product(range(d + 1), repeat=n) if sum(lam) == d]


def _run(jobs: list, fn: Callable, threads: int) -> list:
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(fn, jobs))
    return [fn(j) for j in jobs]


def character_of_span(
    m: int,
    n: int,
    d: int,
    source: str | None = None,
    mode: str = "modular",
    prime_bits: int = 61,
    threads: int = 1,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> Character:
    """Weight-space dimensions of the span of uMPS(m,n,d).

    Weights related by a permutation of the letters have equal dimension, so
    only weights with non-increasing entries are computed and the rest are
    filled in by symmetry (for n = 2 this is the w <-> d - w mirror).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    source = source or _default_source(m, n)
    dihedral = (m, n) == (2, 2)
    all_weights = _weights(n, d)
    # for n=2 the representatives are (d-w, w) with w <= ceil(d/2)
    reps = sorted({tuple(sorted(lam, reverse=True)) for lam in all_weights})
    if n == 2:
        reps = sorted({(d - w, w) for w in range((d + 1) // 2 + 1)})

    def job(lam):
        return span_dimension_weight(SpanRequest(m, n, d, lam, source, mode, prime_bits), caps)

    values = dict(zip(reps, _run(reps, job, threads)))
    dims = {}
    ambient = {}
    for lam in all_weights:
        key = tuple(sorted(lam, reverse=True))
        if n == 2:
            w = min(lam[1], d - lam[1])
            key = (d - w, w)
        dims[lam] = values[key]
        reps_l = enumerate_bracelets(n, d, lam) if dihedral else enumerate_necklaces(n, d, lam)
        ambient[lam] = len(reps_l)
    return Character(m, n, d, 1, dims, ambient)


def ambient_dimension(m: int, n: int, d: int) -> int:
    return count_bracelets(n, d) if (m, n) == (2, 2) else count_necklaces(n, d)


# -- degree-k ideal parts ------------------------------------------------------


def _multisets_by_weight(d: int, k: int) -> dict[int, list[tuple[Word, ...]]]:
    by_w: dict[int, list[tuple[Word, ...]]] = defaultdict(list)
    brs = enumerate_bracelets(2, d)
    for combo in itertools.combinations_with_replacement(brs, k):
        by_w[sum(sum(b) for b in combo)].append(combo)
    return by_w


def _product(combo: tuple[Word, ...]) -> SparsePolynomial:
    acc = reduce_word(combo[0])
    for b in combo[1:]:
        acc = acc * reduce_word(b)
    return acc


def ideal_character_degree_k(
    d: int,
    k: int,
    w: int,
    mode: str = "modular",
    prime_bits: int = 61,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> int:
    """dim I(uMPS(2,2,d))_{k,w}.

    Number of weight-w multisets of k bracelets minus the rank of the
    coefficient matrix of the corresponding products of P_b.
    """
    if k < 1 or k > caps.max_k:
        raise ResourceCapExceeded(f"k={k} outside supported range 1..{caps.max_k}")
    if not 0 <= w <= k * d:
        raise ValueError(f"need 0 <= w <= k*d, got w={w}")
    if d > caps.max_d_trace_param:
        raise ResourceCapExceeded(f"d={d} exceeds trace-param cap {caps.max_d_trace_param}")
    combos = _multisets_by_weight(d, k).get(w, [])
    if not combos:
        return 0
    polys = {c: _product(c) for c in combos}
    return len(combos) - _checked_rank(polys, mode, prime_bits, caps)


def ideal_character(
    d: int,
    k: int,
    mode: str = "modular",
    prime_bits: int = 61,
    threads: int = 1,
    caps: ResourceCaps = DEFAULT_CAPS,
    max_weight: int | None = None,
) -> Character:
    """Character of the degree-k ideal part, every weight 0..k*d (or up to ``max_weight``)."""
    top = k * d if max_weight is None else min(max_weight, k * d)
    ws = list(range(top + 1))
    vals = _run(ws, lambda w: ideal_character_degree_k(d, k, w, mode, prime_bits, caps), threads)
    by_w = _multisets_by_weight(d, k)
    dims = {(k * d - w, w): v for w, v in zip(ws, vals)}
    ambient = {(k * d - w, w): len(by_w.get(w, [])) for w in ws}
    return Character(2, 2, d, k, dims, ambient)


# -- closed forms ----------------------------------------------------------------


def conjecture_dim(d: int, w: int) -> int:
    """Conjectured dim <uMPS(2,2,d)>_w; evaluated at min(w, d - w)."""
    if not 0 <= w <= d:
        raise ValueError(f"need 0 <= w <= d, got w={w}, d={d}")
    w = min(w, d - w)
    if w % 2 == 0:
        v = w // 2
        val = (
            1
            + Fraction(d * (v - 1) * v, 2)
            - Fraction(2 * (v - 1) * v * (2 * v - 1), 3)
            + v * (d // 2)
            - 2 * v * v
            + v
        )
    else:
        v = (w - 1) // 2
        val = 1 + Fraction(d * v * (v + 1), 2) - Fraction(2 * v * (v + 1) * (2 * v + 1), 3)
    assert val.denominator == 1
    return int(val)


def conjecture_total(d: int) -> int:
    if d % 2 == 0:
        val = Fraction(d ** 4 - 4 * d ** 2 + 192 * d + 192, 192)
    else:
        val = Fraction(d ** 4 - 10 * d ** 2 + 192 * d + 201, 192)
    assert val.denominator == 1
    return int(val)


def monomial_upper_bound(d: int) -> int:
    """Number of graded degree-d monomials in T0, T1 (deg 1) and T00, T01, T11 (deg 2)."""
    if d % 2 == 0:
        val = Fraction((d + 6) * (d + 4) ** 2 * (d + 2), 192)
    else:
        val = Fraction((d + 7) * (d + 5) * (d + 3) * (d + 1), 192)
    assert val.denominator == 1
    return int(val)


def count_graded_monomials(d: int) -> int:
    """Brute-force count backing :func:`monomial_upper_bound`."""
    total = 0
    for q in range(d // 2 + 1):
        # q quadratic factors among 3 variables, d - 2q linear among 2
        total += math.comb(q + 2, 2) * (d - 2 * q + 1)
    return total


# -- specializations ---------------------------------------------------------------

X_UNIVERSE = Universe(("x",))

# A0 = diag(1, x) together with a 0/1 matrix for A1
SUBSTITUTIONS: dict[str, tuple[list[list], list[list]]] = {
    "w2": ([[1, 0], [0, "x"]], [[0, 1], [1, 0]]),
    "w3": ([[1, 0], [0, "x"]], [[0, 1], [1, 1]]),
}


def _to_x_poly(v) -> SparsePolynomial:
    if isinstance(v, SparsePolynomial):
        return v
    if v == "x":
        return X_UNIVERSE.var("x")
    return SparsePolynomial.constant(X_UNIVERSE, v)


def tilde_b3(d: int) -> list[Word]:
    """Weight-3 bracelets that contain 11 or 101 cyclically."""
    out = []
    for b in enumerate_bracelets(2, d, (d - 3, 3)):
        s = "".join(map(str, b))
        ring = s + s
        if "11" in ring or ("101" in ring and d >= 3):
            out.append(b)
    return out


def specialized_rank(
    d: int,
    w: int,
    substitution: str | tuple = "w2",
    restrict: Sequence[Word] | None = None,
) -> int:
    """Rank of {T_b : weight(b) = w} after substituting matrices in one variable x.

    ``substitution`` is a name from :data:`SUBSTITUTIONS` or a pair (A0, A1) of
    2x2 matrices whose entries are numbers, ``"x"`` or polynomials in x.  For
    the named ``"w3"`` substitution at w = 3 the generators default to
    :func:`tilde_b3`.  The result is a lower bound for the span dimension.
    """
    if isinstance(substitution, str):
        a0, a1 = SUBSTITUTIONS[substitution]
        if restrict is None and substitution == "w3" and w == 3:
            restrict = tilde_b3(d)
    else:
        a0, a1 = substitution
    mats = [[[_to_x_poly(v) for v in row] for row in a] for a in (a0, a1)]
    words = list(restrict) if restrict is not None else enumerate_bracelets(2, d, (d - w, w))
    polys = {b: trace_of_matrices([mats[x] for x in b], X_UNIVERSE) for b in words}
    return matrix_rank(CoefficientMatrix.from_polynomials(polys), mode="exact")
