"""Cayley-Hamilton trace relations: generation, substitution, certification.

Relations are formal rational combinations of words.  Abstract relations use
named letters (``"A0"``, ..., ``"B"``), each standing for an arbitrary m x m
matrix; concrete relations use letters 0..n-1 and live on uMPS(m, n, d).
An abstract relation may carry a trailing power ``letter^k`` appended to
every word; this is the shape that the Cayley-Hamilton extension argument
works with.
"""
from __future__ import annotations

import itertools
import json
import random
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .combinatorics import Word, canonical_bracelet, canonical_necklace, word_str
from .exact_algebra import CoefficientMatrix, SparsePolynomial, random_prime, rational_nullspace
from .exact_algebra import _backend
from .trace_calculus import _generic_matrix, _universe, trace_of_matrices, trace_of_word
from .trace_param import reduce_word

DEFAULT_TRIALS = 50


@dataclass(frozen=True)
class TraceRelation:
    """sum_j c_j Tr(word_j [trailing_letter^k]) = 0.

    ``alphabet`` is a tuple of letter names for abstract relations or the
    alphabet size n for concrete ones.
    """

    alphabet: tuple[str, ...] | int
    terms: tuple[tuple[Fraction, tuple], ...]
    trailing: tuple[str, int] | None = None

    def __post_init__(self):
        clean = tuple((Fraction(c), tuple(w)) for c, w in self.terms if c)
        object.__setattr__(self, "terms", clean)
        for _, w in clean:
            if not w and self.trailing is None:
                raise ValueError("empty word in relation")
            for x in w:
                if self.is_concrete and not (isinstance(x, int) and 0 <= x < self.alphabet):
                    raise ValueError(f"letter {x!r} outside alphabet [{self.alphabet}]")
                if not self.is_concrete and x not in self.alphabet:
                    raise ValueError(f"unknown letter {x!r}")

    @property
    def is_concrete(self) -> bool:
        return isinstance(self.alphabet, int)

    def with_trailing(self, k: int) -> "TraceRelation":
        if self.trailing is None:
            raise ValueError("relation has no trailing-power slot")
        return replace(self, trailing=(self.trailing[0], k))

    def expanded_terms(self) -> list[tuple[Fraction, tuple]]:
        """Terms with the trailing power written out."""
        if self.trailing is None:
            return list(self.terms)
        letter, k = self.trailing
        tail = (letter,) * k
        return [(c, w + tail) for c, w in self.terms]

    def lengths(self) -> set[int]:
        return {len(w) for _, w in self.expanded_terms()}

    def word_strings(self) -> list[str]:
        if self.is_concrete:
            return [word_str(w) for _, w in self.expanded_terms()]
        return [" ".join(w) for _, w in self.expanded_terms()]

    def to_dict(self, ambient: str | None = None, certificate: str | None = None) -> dict:
        out: dict = {
            "coeffs": [str(c) for c, _ in self.expanded_terms()],
            "words": self.word_strings(),
        }
        if not self.is_concrete:
            out["letters"] = list(self.alphabet)
        else:
            out["n"] = self.alphabet
        if ambient is not None:
            out["ambient"] = ambient
        if certificate is not None:
            out["certificate"] = certificate
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(**kw))

    @classmethod
    def from_dict(cls, data: Mapping) -> "TraceRelation":
        coeffs = [Fraction(c) for c in data["coeffs"]]
        if "letters" in data:
            words = [tuple(w.split()) for w in data["words"]]
            return cls(tuple(data["letters"]), tuple(zip(coeffs, words)))
        words = [tuple(int(ch) for ch in w) for w in data["words"]]
        n = data.get("n") or (max((max(w) for w in words if w), default=0) + 1)
        return cls(int(n), tuple(zip(coeffs, words)))


@dataclass
class RelationCertificate:
    relation: TraceRelation
    mode: str
    m: int
    verified_exponents: list[int] = field(default_factory=list)
    identically_zero: bool = False
    nontrivial: bool | None = None
    failing_k: int | None = None
    trials: int = 0

    @property
    def valid(self) -> bool:
        return self.identically_zero and self.failing_k is None

    def summary(self) -> str:
        zero = "yes" if self.identically_zero else "no"
        line = f"identically zero: {zero} ({self.mode})"
        if self.verified_exponents:
            line += f"; exponents checked: {self.verified_exponents}"
        if self.failing_k is not None:
            line += f"; fails at k={self.failing_k}"
        if self.nontrivial is not None:
            line += f"; nontrivial: {'yes' if self.nontrivial else 'no'}"
        return line


# -- generation ------------------------------------------------------------------


def permutation_sign(perm: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def ch_letters(m: int) -> tuple[str, ...]:
    return tuple(f"A{i}" for i in range(m + 1)) + ("B",)


def generate_ch_relation(m: int, ell: int) -> TraceRelation:
    """Signed sum over S_m x C_{m+1} of Tr(A_t0 B^s0 A_t1 B^s1 ... A_tm B^ell).

    One term per (sigma, tau); m! (m + 1) terms, none merged.  The B^ell factor
    is the trailing power.
    """
    if m < 1 or ell < 0:
        raise ValueError("need m >= 1 and ell >= 0")
    terms = []
    for sigma in itertools.permutations(range(m)):
        s_sig = permutation_sign(sigma)
        for r in range(m + 1):
            tau = [(i + r) % (m + 1) for i in range(m + 1)]
            # an r-fold rotation of m+1 points has sign (-1)^(r*m)
            sign = s_sig * (-1) ** (r * m)
            word: list[str] = []
            for i in range(m):
                word.append(f"A{tau[i]}")
                word.extend(["B"] * sigma[i])
            word.append(f"A{tau[m]}")
            terms.append((Fraction(sign), tuple(word)))
    return TraceRelation(ch_letters(m), tuple(terms), trailing=("B", ell))


def example_relation(k: int = 0) -> TraceRelation:
    """The six-term 2x2 identity in A0..A3 with trailing A0^k.

    Tr(A1A2A0A3 A0^k) + Tr(A2A3A0A1 A0^k) + Tr(A3A1A0A2 A0^k)
      - Tr(A1A0A2A3 A0^k) - Tr(A2A0A3A1 A0^k) - Tr(A3A0A1A2 A0^k) = 0
    """
    plus = [("A1", "A2", "A0", "A3"), ("A2", "A3", "A0", "A1"), ("A3", "A1", "A0", "A2")]
    minus = [("A1", "A0", "A2", "A3"), ("A2", "A0", "A3", "A1"), ("A3", "A0", "A1", "A2")]
    terms = [(Fraction(1), w) for w in plus] + [(Fraction(-1), w) for w in minus]
    return TraceRelation(("A0", "A1", "A2", "A3"), tuple(terms), trailing=("A0", k))


# -- verification ------------------------------------------------------------------


def _letter_index(rel: TraceRelation) -> dict:
    if rel.is_concrete:
        return {i: i for i in range(rel.alphabet)}
    return {x: i for i, x in enumerate(rel.alphabet)}


def expand_relation(
    rel: TraceRelation, m: int, assignment: Mapping | None = None
) -> SparsePolynomial:
    """sum_j c_j Tr(word_j) as a polynomial in generic matrix entries.

    Without an assignment each letter gets its own generic matrix.  An
    assignment maps letters to words over [n]; letter x then stands for the
    product of generic matrices A_{w_1} ... A_{w_r}.
    """
    if assignment is None:
        idx = _letter_index(rel)
        n = len(idx)
        u = _universe(m, n)
        mats = {x: _generic_matrix(m, n, i) for x, i in idx.items()}
        words = rel.expanded_terms()
    else:
        n = 1 + max((max(w) for w in assignment.values() if w), default=0)
        u = _universe(m, n)
        mats = {k: _generic_matrix(m, n, k) for k in range(n)}
        words = [(c, sum((tuple(assignment[x]) for x in w), ())) for c, w in rel.expanded_terms()]
    total = SparsePolynomial.zero(u)
    for c, w in words:
        if not w:
            total = total + SparsePolynomial.constant(u, c * m)
            continue
        total = total + trace_of_matrices([mats[x] for x in w], u).scale(c)
    return total


def _random_modular_zero(rel: TraceRelation, m: int, trials: int, seed: int) -> bool:
    rng = random.Random(seed)
    idx = _letter_index(rel)
    terms = [(c, [idx[x] for x in w]) for c, w in rel.expanded_terms()]
    for _ in range(trials):
        p = random_prime(61, rng)
        mats = [[[rng.randrange(p) for _ in range(m)] for _ in range(m)] for _ in idx]
        total = 0
        for c, w in terms:
            tr = _backend.trace_product_mod_p(mats, w, p) if w else m % p
            total += c.numerator * pow(c.denominator, -1, p) * tr
        if total % p:
            return False
    return True


def verify_relation_symbolic(
    rel: TraceRelation,
    m: int,
    assignment: Mapping | None = None,
    mode: str = "symbolic",
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> RelationCertificate:
    """Check that the relation vanishes for all m x m matrices.

    ``mode="symbolic"`` expands over generic matrices; ``"randomized-numeric"``
    evaluates at ``trials`` random integer matrix tuples modulo fresh 61-bit
    primes (probabilistic; the assignment is ignored there).
    """
    k = [rel.trailing[1]] if rel.trailing else []
    if mode == "symbolic":
        zero = expand_relation(rel, m, assignment).is_zero()
        return RelationCertificate(rel, mode, m, k, zero)
    if mode == "randomized-numeric":
        if assignment is not None:
            rel = substitute_relation(rel, assignment, ambient=None)
        zero = _random_modular_zero(rel, m, trials, seed)
        return RelationCertificate(rel, mode, m, k, zero, trials=trials)
    raise ValueError(f"unknown verification mode {mode!r}")


def ch_extend(rel: TraceRelation, m: int, mode: str = "symbolic", trials: int = DEFAULT_TRIALS) -> RelationCertificate:
    """Certify a trailing-power relation for every exponent k.

    Checks k = 0..m-1 (enough by Cayley-Hamilton), then k = m and m + 1 as a
    sanity check.  The certificate records the first failing k, if any.
    """
    if rel.trailing is None:
        raise ValueError("relation needs a trailing-power slot")
    cert = RelationCertificate(rel, mode, m)
    for k in range(m + 2):
        sub = verify_relation_symbolic(rel.with_trailing(k), m, mode=mode, trials=trials, seed=k)
        cert.trials += sub.trials
        if not sub.identically_zero:
            cert.failing_k = k
            cert.identically_zero = False
            return cert
        cert.verified_exponents.append(k)
    cert.identically_zero = True
    return cert


def is_cyclically_trivial(rel: TraceRelation) -> bool:
    """True when the relation cancels after merging cyclic rotations of its words."""
    idx = _letter_index(rel)
    merged: dict[tuple, Fraction] = defaultdict(Fraction)
    for c, w in rel.expanded_terms():
        merged[canonical_necklace([idx[x] for x in w])] += c
    return not any(merged.values())


# -- substitution and nontriviality ----------------------------------------------------

_CANON = {"cyclic": canonical_necklace, "dihedral": canonical_bracelet}


def merge_terms(rel: TraceRelation, ambient: str) -> dict[Word, Fraction]:
    """Coefficient per canonical necklace / bracelet, zero entries dropped, sorted."""
    if not rel.is_concrete:
        raise ValueError("merge needs a concrete relation")
    canon = _CANON[ambient]
    merged: dict[Word, Fraction] = defaultdict(Fraction)
    for c, w in rel.expanded_terms():
        merged[canon(w)] += c
    return {w: merged[w] for w in sorted(merged) if merged[w]}


def substitute_relation(
    rel: TraceRelation,
    mapping: Mapping,
    n: int | None = None,
    ambient: str | None = "auto",
) -> TraceRelation:
    """Replace each abstract letter by a word over [n] and concatenate.

    Terms whose words share a canonical form are merged onto that
    representative and zero terms dropped.  ``ambient="auto"`` merges by
    bracelet for binary words and by necklace otherwise (reversal invariance
    of the trace only holds for two 2x2 matrices); ``ambient=None`` keeps the
    raw concatenated words.
    """
    if n is None:
        n = 1 + max((max(w) for w in mapping.values() if w), default=0)
    if ambient == "auto":
        ambient = "dihedral" if n <= 2 else "cyclic"
    words = []
    for c, w in rel.expanded_terms():
        concrete: tuple[int, ...] = ()
        for x in w:
            concrete += tuple(mapping[x])
        words.append((c, concrete))
    raw = TraceRelation(n, tuple(words))
    if ambient is None:
        return raw
    return TraceRelation(n, tuple((c, w) for w, c in merge_terms(raw, ambient).items()))


def _generator_poly(m: int, n: int, w: Word) -> SparsePolynomial:
    if (m, n) == (2, 2):
        return reduce_word(w)
    return trace_of_word(m, n, w)


def annihilates_span(
    rel: TraceRelation, m: int, ambient: str = "dihedral", verify: str = "symbolic"
) -> bool:
    """Does sum_b c_b Tr(b) vanish on all m x m matrix tuples?

    Symbolic mode expands the merged combination (trace parametrization when
    m = n = 2); ``verify="randomized-numeric"`` evaluates it modulo random
    61-bit primes instead.
    """
    merged = merge_terms(rel, ambient)
    n = rel.alphabet
    if not merged:
        return True
    if verify == "randomized-numeric":
        combo = TraceRelation(n, tuple((c, w) for w, c in merged.items()))
        return _random_modular_zero(combo, m, DEFAULT_TRIALS, seed=len(merged))
    if verify != "symbolic":
        raise ValueError(f"unknown verification mode {verify!r}")
    polys = [_generator_poly(m, n, w).scale(c) for w, c in merged.items()]
    total = polys[0]
    for p in polys[1:]:
        total = total + p
    return total.is_zero()


def certify_nontrivial(
    rel: TraceRelation, d: int, ambient: str = "dihedral", m: int = 2, verify: str | None = None
) -> bool:
    """Nonzero after merging by the ambient symmetry, and vanishes on uMPS(m, n, d).

    ``ambient="dihedral"`` is only meaningful for m = n = 2.  ``verify``
    defaults to symbolic for m <= 2 and randomized-numeric above.
    """
    lengths = rel.lengths()
    if lengths != {d}:
        raise ValueError(f"relation words have lengths {sorted(lengths)}, expected all {d}")
    if ambient not in _CANON:
        raise ValueError(f"unknown ambient {ambient!r}")
    if not merge_terms(rel, ambient):
        return False
    if verify is None:
        verify = "symbolic" if m <= 2 else "randomized-numeric"
    return annihilates_span(rel, m, ambient, verify)


def kernel_of_weight(d: int, w: int) -> tuple[list[Word], list[list[Fraction]]]:
    """Left kernel of the weight-w trace-parametrization coefficient matrix for (2,2,d)."""
    from .combinatorics import enumerate_bracelets

    brs = enumerate_bracelets(2, d, (d - w, w))
    mat = CoefficientMatrix.from_polynomials({b: reduce_word(b) for b in brs})
    return brs, rational_nullspace(mat)


# -- presets ------------------------------------------------------------------------


def preset_example_d8() -> TraceRelation:
    """Binary length-8 relation from the 2x2 identity with k = 2, A2 = A1^2, A3 = A0A1."""
    rel = example_relation(2)
    return substitute_relation(rel, {"A0": (0,), "A1": (1,), "A2": (1, 1), "A3": (0, 1)})


def preset_ternary(m: int = 2, ell: int | None = None) -> TraceRelation:
    """Ternary relation: A0 -> X0, B -> X1, A_i -> X2 (i >= 1) in the m x m identity."""
    ell = m if ell is None else ell
    if ell < m:
        raise ValueError("the construction needs ell >= m")
    rel = generate_ch_relation(m, ell)
    mapping = {"A0": (0,), "B": (1,)}
    mapping.update({f"A{i}": (2,) for i in range(1, m + 1)})
    return substitute_relation(rel, mapping, n=3, ambient="cyclic")


def preset_binary_tail(m: int = 2) -> TraceRelation:
    """Binary relation: A0 -> X0 X1^(m+1) X0, B -> X1, A_i -> X0, with ell = m."""
    rel = generate_ch_relation(m, m)
    mapping = {"A0": (0,) + (1,) * (m + 1) + (0,), "B": (1,)}
    mapping.update({f"A{i}": (0,) for i in range(1, m + 1)})
    return substitute_relation(rel, mapping, n=2, ambient="cyclic")


PRESETS = {
    "example-d8": preset_example_d8,
    "ternary": preset_ternary,
    "binary-tail": preset_binary_tail,
}


def ternary_length(m: int, ell: int) -> int:
    """Word length of the ternary construction: 1 + ... + (m-1) + ell + (m+1)."""
    return m * (m - 1) // 2 + ell + m + 1


# -- weight-3 rewriting ------------------------------------------------------------------


def _gaps(b: Word) -> list[int]:
    """Zero-run lengths between consecutive 1s of a cyclic binary word."""
    ones = [i for i, x in enumerate(b) if x == 1]
    d = len(b)
    return [(ones[(j + 1) % len(ones)] - ones[j] - 1) % d for j in range(len(ones))]


def weight3_word(a: int, b: int, c: int) -> Word:
    return (1,) + (0,) * a + (1,) + (0,) * b + (1,) + (0,) * c


def weight3_rewrite(a: int, b: int, c: int) -> TraceRelation:
    """Relation from the 2x2 identity with A1 -> 1 0^(a-1), A2 -> 1 0^b, A3 -> 1, A0 -> 0, k = c."""
    if a < 1:
        raise ValueError("need a >= 1")
    rel = example_relation(c)
    mapping = {"A0": (0,), "A1": (1,) + (0,) * (a - 1), "A2": (1,) + (0,) * b, "A3": (1,)}
    return substitute_relation(rel, mapping, n=2, ambient="dihedral")


def weight3_expansion(word: Sequence[int]) -> dict[Word, Fraction]:
    """Write T_word (weight 3) as a combination of T_b with b containing 11 or 101.

    Repeatedly applies :func:`weight3_rewrite` to the term with smallest gap
    a >= 2; the leftover term has gap a - 1, so the process terminates.
    """
    word = canonical_bracelet(word)
    if sum(word) != 3 or any(x not in (0, 1) for x in word):
        raise ValueError("need a binary word of weight 3")
    result: dict[Word, Fraction] = defaultdict(Fraction)
    pending: list[tuple[Fraction, Word]] = [(Fraction(1), word)]
    while pending:
        coeff, w = pending.pop()
        gaps = _gaps(w)
        if min(gaps) <= 1:
            result[w] += coeff
            continue
        # gaps form a 3-cycle; reflection lets us read them as a <= b <= c
        a, b, c = sorted(gaps)
        rel = weight3_rewrite(a, b, c)
        merged = merge_terms(rel, "dihedral")
        target = canonical_bracelet(weight3_word(a, b, c))
        t = merged.pop(target)
        for other, oc in merged.items():
            pending.append((-coeff * oc / t, other))
    return {w: c for w, c in sorted(result.items()) if c}
