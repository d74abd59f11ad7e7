"""Trace parametrization of uMPS(2,2,d).

Every trace of a binary word in two 2x2 matrices is a unique polynomial P_b in
T0 = Tr A0, T1 = Tr A1, T00 = Tr A0^2, T01 = Tr A0A1, T11 = Tr A1^2.  Words of
length <= 3 use closed forms; longer words are split as A | B | C | D (three
single letters and the remaining suffix) and reduced with the 2x2 identity

    2 Tr(ABCD) = Tr A (Tr BCD - Tr B Tr CD) + Tr B (Tr CDA - Tr C Tr DA)
               + Tr C (Tr DAB - Tr D Tr AB) + Tr D (Tr ABC - Tr A Tr BC)
               - Tr AC Tr BD + Tr AB Tr CD + Tr AD Tr BC + Tr A Tr B Tr C Tr D

in which every trace on the right involves strictly shorter words.
"""
from __future__ import annotations

import csv
import io
import json
import threading
from fractions import Fraction
from typing import Sequence

from .combinatorics import Word, canonical_bracelet, enumerate_bracelets, word_str
from .exact_algebra import SparsePolynomial, Universe

T_NAMES = ("T0", "T1", "T00", "T01", "T11")
T_GRADING = (1, 1, 2, 2, 2)
T_UNIVERSE = Universe(T_NAMES)

_HALF = Fraction(1, 2)


def _v(name: str) -> SparsePolynomial:
    return T_UNIVERSE.var(name)


def _base_cases() -> dict[Word, SparsePolynomial]:
    T0, T1, T00, T01, T11 = (_v(x) for x in T_NAMES)
    h = _HALF
    return {
        (): SparsePolynomial.constant(T_UNIVERSE, 2),
        (0,): T0,
        (1,): T1,
        (0, 0): T00,
        (0, 1): T01,
        (1, 1): T11,
        (0, 0, 0): T0 ** 3 * (-h) + T0 * T00 * Fraction(3, 2),
        (0, 0, 1): T0 ** 2 * T1 * (-h) + T1 * T00 * h + T0 * T01,
        (0, 1, 1): T0 * T1 ** 2 * (-h) + T0 * T11 * h + T1 * T01,
        (1, 1, 1): T1 ** 3 * (-h) + T1 * T11 * Fraction(3, 2),
    }


_BASE = _base_cases()


def base_case(b: Sequence[int]) -> SparsePolynomial:
    """P_b for words of length at most 3."""
    b = tuple(b)
    if len(b) > 3:
        raise ValueError(f"base case only covers length <= 3, got {len(b)}; use reduce_word")
    if any(x not in (0, 1) for x in b):
        raise ValueError("binary words only")
    return _BASE[canonical_bracelet(b)]


class TraceParamCache:
    """Memo of P_b keyed by canonical bracelet.

    Values are deterministic, so concurrent recomputation is harmless; the
    lock only serializes insertion.
    """

    def __init__(self):
        self._store: dict[Word, SparsePolynomial] = dict(_BASE)
        self._lock = threading.Lock()

    def get(self, key: Word) -> SparsePolynomial | None:
        return self._store.get(key)

    def put(self, key: Word, value: SparsePolynomial) -> SparsePolynomial:
        with self._lock:
            return self._store.setdefault(key, value)

    def __len__(self) -> int:
        return len(self._store)


_DEFAULT_CACHE = TraceParamCache()


def default_cache() -> TraceParamCache:
    return _DEFAULT_CACHE


def reduce_word(b: Sequence[int], cache: TraceParamCache | None = None) -> SparsePolynomial:
    """P_b for any binary word ``b``."""
    cache = _DEFAULT_CACHE if cache is None else cache
    b = tuple(b)
    if any(x not in (0, 1) for x in b):
        raise ValueError("binary words only")
    key = canonical_bracelet(b)
    hit = cache.get(key)
    if hit is not None:
        return hit
    return cache.put(key, _reduce(key, cache))


def _reduce(b: Word, cache: TraceParamCache) -> SparsePolynomial:
    def P(w: Word) -> SparsePolynomial:
        return reduce_word(w, cache)

    A, B, C, D = b[:1], b[1:2], b[2:3], b[3:]
    tA, tB, tC, tD = P(A), P(B), P(C), P(D)
    tAB, tBC, tCD = P(A + B), P(B + C), P(C + D)
    tDA = P(D + A)
    rhs = (
        tA * (P(B + C + D) - tB * tCD)
        + tB * (P(C + D + A) - tC * tDA)
        + tC * (P(D + A + B) - tD * tAB)
        + tD * (P(A + B + C) - tA * tBC)
        - P(A + C) * P(B + D)
        + tAB * tCD
        + P(A + D) * tBC
        + tA * tB * tC * tD
    )
    return rhs.scale(_HALF)


def trace_param_vector(d: int, cache: TraceParamCache | None = None) -> dict[Word, SparsePolynomial]:
    """P_b for every bracelet of length ``d``, in lexicographic bracelet order."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return {b: reduce_word(b, cache) for b in enumerate_bracelets(2, d)}


def trace_assignment(a0, a1) -> dict[str, object]:
    """Values of the five generators at a concrete pair of 2x2 matrices."""
    from .trace_calculus import numeric_trace_of_word

    mats = [a0, a1]
    return {
        "T0": numeric_trace_of_word(mats, (0,)),
        "T1": numeric_trace_of_word(mats, (1,)),
        "T00": numeric_trace_of_word(mats, (0, 0)),
        "T01": numeric_trace_of_word(mats, (0, 1)),
        "T11": numeric_trace_of_word(mats, (1, 1)),
    }


def dump_table(d: int, fmt: str = "json") -> str:
    """Bracelet string -> P_b string table, as JSON or CSV."""
    table = {word_str(b): str(p) for b, p in trace_param_vector(d).items()}
    if fmt == "json":
        return json.dumps({"d": d, "variables": list(T_NAMES), "P": table}, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bracelet", "polynomial"])
        for k, v in table.items():
            w.writerow([k, v])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")
