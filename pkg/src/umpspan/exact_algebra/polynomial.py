"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial lives in a :class:`Universe`, an ordered tuple of variable names.
Terms are stored as ``{exponent_vector: Fraction}`` where the exponent vector
has one slot per universe variable.  Zero coefficients are never stored.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]
Exponents = tuple[int, ...]


class UniverseMismatch(ValueError):
    pass


class Universe:
    """Named, ordered set of polynomial variables.

    Universes compare by their variable names, so two independently built
    universes with the same names are interchangeable.
    """

    __slots__ = ("names", "_index", "_hash")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self._index = {v: i for i, v in enumerate(self.names)}
        self._hash = hash(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Universe) and self.names == other.names

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Universe({list(self.names)!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def zero_exponents(self) -> Exponents:
        return (0,) * len(self.names)

    def var(self, name: str) -> "SparsePolynomial":
        e = [0] * len(self.names)
        e[self._index[name]] = 1
        return SparsePolynomial(self, {tuple(e): Fraction(1)})

    def const(self, c: Scalar) -> "SparsePolynomial":
        return SparsePolynomial.constant(self, c)


def monomial_sort_key(e: Exponents) -> tuple:
    """Graded lexicographic key: total degree first, then exponents descending."""
    return (sum(e), tuple(-x for x in e))


class SparsePolynomial:
    __slots__ = ("universe", "terms")

    def __init__(self, universe: Universe, terms: Mapping[Exponents, Scalar] | None = None):
        self.universe = universe
        clean: dict[Exponents, Fraction] = {}
        if terms:
            n = len(universe)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent vector {e} does not fit universe of size {n}")
                if c:
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean

    @classmethod
    def _raw(cls, universe: Universe, terms: dict[Exponents, Fraction]) -> "SparsePolynomial":
        # trusted constructor: terms already normalized
        p = cls.__new__(cls)
        p.universe = universe
        p.terms = terms
        return p

    @classmethod
    def constant(cls, universe: Universe, c: Scalar) -> "SparsePolynomial":
        if not c:
            return cls._raw(universe, {})
        return cls._raw(universe, {universe.zero_exponents(): Fraction(c)})

    @classmethod
    def zero(cls, universe: Universe) -> "SparsePolynomial":
        return cls._raw(universe, {})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def monomials(self) -> list[Exponents]:
        return sorted(self.terms, key=monomial_sort_key)

    def coefficient(self, e: Exponents) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def degree(self, grading: tuple[int, ...] | None = None) -> int:
        if not self.terms:
            return -1
        if grading is None:
            return max(sum(e) for e in self.terms)
        return max(sum(g * x for g, x in zip(grading, e)) for e in self.terms)

    def is_homogeneous(self, grading: tuple[int, ...] | None = None) -> bool:
        if grading is None:
            degs = {sum(e) for e in self.terms}
        else:
            degs = {sum(g * x for g, x in zip(grading, e)) for e in self.terms}
        return len(degs) <= 1

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(self.universe.names[i] for i, x in enumerate(e) if x)
        return used

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            if other.universe != self.universe:
                raise UniverseMismatch(f"{self.universe!r} vs {other.universe!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial.constant(self.universe, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return SparsePolynomial._raw(self.universe, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw(self.universe, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "SparsePolynomial":
        if not c:
            return SparsePolynomial.zero(self.universe)
        c = Fraction(c)
        return SparsePolynomial._raw(self.universe, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponents, Fraction] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return SparsePolynomial._raw(self.universe, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePolynomial.constant(self.universe, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(self.universe, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.universe == other.universe and self.terms == other.terms

    def __hash__(self):
        return hash((self.universe, frozenset(self.terms.items())))

    # -- evaluation --------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, Scalar]):
        """Exact value at ``assignment`` (variable name -> number).

        Values may be ints, Fractions, or anything supporting ``*`` and ``**``
        with ints (e.g. another polynomial).  Only variables that actually
        occur need to be assigned.
        """
        missing = self.variables() - set(assignment)
        if missing:
            raise KeyError(f"no value for variables {sorted(missing)}")
        names = self.universe.names
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, x in enumerate(e):
                if x:
                    term = term * assignment[names[i]] ** x
            total = total + term
        return total

    def evaluate_mod(self, assignment: Mapping[str, int], p: int) -> int:
        """Value modulo the prime ``p``; coefficients must have denominators prime to p."""
        names = self.universe.names
        total = 0
        for e, c in self.terms.items():
            term = c.numerator * pow(c.denominator, -1, p)
            for i, x in enumerate(e):
                if x:
                    term = term * pow(assignment[names[i]], x, p) % p
            total += term
        return total % p

    # -- formatting --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        names = self.universe.names
        for e in sorted(self.terms, key=monomial_sort_key, reverse=True):
            c = self.terms[e]
            factors = []
            for i, x in enumerate(e):
                if x == 1:
                    factors.append(names[i])
                elif x:
                    factors.append(f"{names[i]}^{x}")
            mono = "*".join(factors)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"SparsePolynomial({self})"


def poly_add(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    return p + q


def poly_mul(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    return p * q


def poly_scale(p: SparsePolynomial, c: Scalar) -> SparsePolynomial:
    return p.scale(c)


def poly_eval(p: SparsePolynomial, assignment: Mapping[str, Scalar]):
    return p.evaluate(assignment)
