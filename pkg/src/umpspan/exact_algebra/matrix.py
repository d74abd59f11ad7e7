"""Sparse rational coefficient matrices and their rank.

Rows are generator polynomials (keyed by a label such as a bracelet), columns
are the monomials that occur in any row.  Rank is computed either exactly by
fraction-free (Bareiss) elimination over the integers, or modulo random
61-bit primes with escalation to exact mode when the primes disagree.
"""
from __future__ import annotations

import io
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

import gmpy2

from . import _backend
from .polynomial import Exponents, SparsePolynomial, monomial_sort_key


@dataclass
class CoefficientMatrix:
    row_labels: list[Hashable]
    columns: list[Exponents]
    rows: list[dict[int, Fraction]] = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    @classmethod
    def from_polynomials(
        cls, polys: Mapping[Hashable, SparsePolynomial] | Sequence[tuple[Hashable, SparsePolynomial]]
    ) -> "CoefficientMatrix":
        items = list(polys.items()) if isinstance(polys, Mapping) else list(polys)
        monos: set[Exponents] = set()
        for _, p in items:
            monos.update(p.terms)
        columns = sorted(monos, key=monomial_sort_key)
        index = {e: j for j, e in enumerate(columns)}
        rows = [{index[e]: c for e, c in p.terms.items()} for _, p in items]
        return cls([lab for lab, _ in items], columns, rows)

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence], row_labels=None) -> "CoefficientMatrix":
        ncols = len(entries[0]) if entries else 0
        rows = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in entries]
        labels = list(row_labels) if row_labels is not None else list(range(len(rows)))
        cols = [(j,) for j in range(ncols)]
        return cls(labels, cols, rows)

    def dense(self) -> list[list[Fraction]]:
        n = len(self.columns)
        out = []
        for r in self.rows:
            row = [Fraction(0)] * n
            for j, c in r.items():
                row[j] = c
            out.append(row)
        return out

    def integer_rows(self) -> list[list[int]]:
        """Dense rows scaled by the lcm of their denominators (rank-preserving)."""
        n = len(self.columns)
        out = []
        for r in self.rows:
            lcm = 1
            for c in r.values():
                lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
            row = [0] * n
            for j, c in r.items():
                row[j] = c.numerator * (lcm // c.denominator)
            out.append(row)
        return out

    def denominators(self) -> set[int]:
        return {c.denominator for r in self.rows for c in r.values()}

    def to_matrix_market(self) -> str:
        """Matrix Market coordinate text; entries written as exact ``num/den``."""
        buf = io.StringIO()
        nnz = sum(len(r) for r in self.rows)
        buf.write("%%MatrixMarket matrix coordinate rational general\n")
        buf.write(f"% rows: {' '.join(_label_str(l) for l in self.row_labels)}\n")
        buf.write(f"% cols: {' '.join('.'.join(map(str, e)) for e in self.columns)}\n")
        buf.write(f"{len(self.rows)} {len(self.columns)} {nnz}\n")
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                buf.write(f"{i + 1} {j + 1} {fraction_str(r[j])}\n")
        return buf.getvalue()

    @classmethod
    def from_matrix_market(cls, text: str) -> "CoefficientMatrix":
        labels: list = []
        cols: list = []
        lines = text.splitlines()
        body = []
        for line in lines:
            if line.startswith("% rows:"):
                labels = line[len("% rows:"):].split()
            elif line.startswith("% cols:"):
                cols = [tuple(int(x) for x in c.split(".")) for c in line[len("% cols:"):].split()]
            elif line.startswith("%"):
                continue
            elif line.strip():
                body.append(line.split())
        nrows, ncols, _ = (int(x) for x in body[0])
        rows: list[dict[int, Fraction]] = [{} for _ in range(nrows)]
        for i, j, v in body[1:]:
            rows[int(i) - 1][int(j) - 1] = parse_fraction(v)
        if not cols:
            cols = [(j,) for j in range(ncols)]
        if not labels:
            labels = list(range(nrows))
        return cls(labels, cols, rows)


def _label_str(label) -> str:
    if isinstance(label, tuple):
        return "".join(str(x) for x in label) or "()"
    return str(label)


def fraction_str(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


# -- primes --------------------------------------------------------------

_DEFAULT_SEED = 20240601


def random_prime(bits: int, rng: random.Random) -> int:
    """A random prime with exactly ``bits`` bits."""
    if bits < 3:
        raise ValueError("prime_bits must be >= 3")
    while True:
        x = rng.getrandbits(bits) | (1 << (bits - 1))
        p = int(gmpy2.next_prime(x))
        if p.bit_length() == bits:
            return p


# -- rank ------------------------------------------------------------------


def bareiss_rank(rows: list[list[int]]) -> int:
    """Exact rank of an integer matrix by fraction-free elimination."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if mat[i][col]), -1)
        if piv < 0:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        pv = prow[col]
        for i in range(rank + 1, nrows):
            row = mat[i]
            f = row[col]
            # Bareiss step: every entry stays integral and divisible by prev
            mat[i] = [(pv * a - f * b) // prev for a, b in zip(row, prow)]
        prev = pv
        rank += 1
    return rank


def modular_rank(m: CoefficientMatrix, p: int, int_rows: list[list[int]] | None = None) -> int:
    if int_rows is None:
        int_rows = m.integer_rows()
    return _backend.rank_mod_p(int_rows, len(m.columns), p)


def matrix_rank(
    m: CoefficientMatrix,
    mode: str = "modular",
    prime_bits: int = 61,
    seed: int | None = None,
) -> int:
    """Rank over the rationals.

    ``mode="exact"`` runs Bareiss elimination on the denominator-cleared
    integer matrix.  ``mode="modular"`` computes the rank modulo two random
    primes of ``prime_bits`` bits; on disagreement a third prime is tried and
    if it does not confirm the larger value the exact rank is returned.
    """
    if mode not in ("exact", "modular"):
        raise ValueError(f"unknown rank mode {mode!r}")
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return 0
    int_rows = m.integer_rows()
    if mode == "exact":
        return bareiss_rank(int_rows)

    rng = random.Random(_DEFAULT_SEED if seed is None else seed)
    dens = m.denominators()

    def draw() -> int:
        while True:
            p = random_prime(prime_bits, rng)
            if all(d % p for d in dens):
                return p

    r1 = _backend.rank_mod_p(int_rows, ncols, draw())
    r2 = _backend.rank_mod_p(int_rows, ncols, draw())
    if r1 == r2:
        return r1
    r3 = _backend.rank_mod_p(int_rows, ncols, draw())
    if r3 == max(r1, r2):
        return r3
    return bareiss_rank(int_rows)


def rational_nullspace(m: CoefficientMatrix) -> list[list[Fraction]]:
    """Basis of the left kernel {c : sum_i c_i row_i = 0}, exact.

    Vectors are indexed by row and normalized so the last pivot-free entry is 1.
    """
    nrows = len(m.rows)
    ncols = len(m.columns)
    # solve A^T c = 0: build the transpose densely
    dense = m.dense()
    at = [[dense[i][j] for i in range(nrows)] for j in range(ncols)]
    pivots: list[int] = []
    r = 0
    for col in range(nrows):
        piv = next((i for i in range(r, ncols) if at[i][col]), -1)
        if piv < 0:
            continue
        at[r], at[piv] = at[piv], at[r]
        inv = 1 / at[r][col]
        at[r] = [x * inv for x in at[r]]
        for i in range(ncols):
            if i != r and at[i][col]:
                f = at[i][col]
                at[i] = [a - f * b for a, b in zip(at[i], at[r])]
        pivots.append(col)
        r += 1
        if r == ncols:
            break
    free = [c for c in range(nrows) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * nrows
        v[fcol] = Fraction(1)
        for row_i, pcol in enumerate(pivots):
            v[pcol] = -at[row_i][fcol]
        basis.append(v)
    return basis


def rank_of_polynomials(
    polys: Iterable[SparsePolynomial], mode: str = "modular", prime_bits: int = 61
) -> int:
    return matrix_rank(
        CoefficientMatrix.from_polynomials(list(enumerate(polys))), mode=mode, prime_bits=prime_bits
    )
