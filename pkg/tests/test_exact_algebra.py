import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from umpspan.exact_algebra import (
    BACKEND,
    CoefficientMatrix,
    SparsePolynomial,
    Universe,
    UniverseMismatch,
    bareiss_rank,
    matrix_rank,
    modular_rank,
    poly_add,
    poly_eval,
    poly_mul,
    poly_scale,
    random_prime,
    rank_of_polynomials,
    rational_nullspace,
)
from umpspan.exact_algebra import _backend, _kernels_py

U = Universe(("x", "y", "z"))

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda t: SparsePolynomial(U, t))
points = st.fixed_dictionaries({v: st.integers(-4, 4) for v in ("x", "y", "z")})
small_mats = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 8).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def frac_rank(rows):
    """Reference rank by plain Gaussian elimination over Fraction."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col] / a[rank][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


# -- polynomials ---------------------------------------------------------------


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == SparsePolynomial.zero(U)
    assert p * SparsePolynomial.constant(U, 1) == p


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polys, points)
def test_evaluate_mod_matches_exact(p, pt):
    prime = 1_000_003
    exact = p.evaluate(pt)
    assert p.evaluate_mod(pt, prime) == exact.numerator * pow(exact.denominator, -1, prime) % prime


def test_wrappers_and_power():
    x, y = U.var("x"), U.var("y")
    assert poly_add(x, y) == x + y
    assert poly_mul(x, y) == x * y
    assert poly_scale(x, Fraction(1, 2)) == x.scale(Fraction(1, 2))
    assert poly_eval((x + y) ** 3, {"x": 1, "y": 2}) == 27
    assert (x + y) ** 0 == SparsePolynomial.constant(U, 1)


def test_degree_and_homogeneity():
    x, y, z = (U.var(v) for v in "xyz")
    p = x * y + z
    assert p.degree() == 2
    assert not p.is_homogeneous()
    assert p.is_homogeneous((1, 1, 2))
    assert p.degree((1, 1, 2)) == 2
    assert p.variables() == {"x", "y", "z"}


def test_str_is_readable():
    x, y = U.var("x"), U.var("y")
    assert str(x * x.scale(Fraction(-1, 2)) + y) == "-1/2*x^2 + y"
    assert str(SparsePolynomial.zero(U)) == "0"


def test_universe_mismatch():
    other = Universe(("x", "w"))
    with pytest.raises(UniverseMismatch):
        U.var("x") + other.var("x")


def test_missing_variable_raises():
    with pytest.raises(KeyError):
        U.var("x").evaluate({"y": 1})


# -- rank ----------------------------------------------------------------------


@settings(max_examples=150)
@given(small_mats)
def test_modular_matches_exact(rows):
    m = CoefficientMatrix.from_dense(rows)
    ref = frac_rank(rows)
    assert bareiss_rank(rows) == ref
    assert matrix_rank(m, mode="exact") == ref
    assert matrix_rank(m, mode="modular") == ref


@given(small_mats, st.randoms(use_true_random=False))
def test_rank_invariant_under_row_permutation_and_scaling(rows, rnd):
    ref = frac_rank(rows)
    perm = rows[:]
    rnd.shuffle(perm)
    factors = [rnd.choice([-3, -1, 2, 5]) for _ in perm]
    scaled = [[x * f for x in r] for r, f in zip(perm, factors)]
    assert matrix_rank(CoefficientMatrix.from_dense(scaled), mode="modular") == ref
    halves = [[Fraction(x, 7) for x in r] for r in scaled]
    assert matrix_rank(CoefficientMatrix.from_dense(halves), mode="modular") == ref


@given(small_mats)
def test_nullspace_is_left_kernel(rows):
    m = CoefficientMatrix.from_dense(rows)
    basis = rational_nullspace(m)
    assert len(basis) == len(rows) - frac_rank(rows)
    for v in basis:
        for j in range(len(rows[0])):
            assert sum(v[i] * rows[i][j] for i in range(len(rows))) == 0


def test_known_ranks():
    assert matrix_rank(CoefficientMatrix.from_dense([[1, 0], [0, 1]])) == 2
    assert matrix_rank(CoefficientMatrix.from_dense([[0, 0], [0, 0]])) == 0
    assert matrix_rank(CoefficientMatrix.from_dense([[1, 2, 3], [2, 4, 6]])) == 1
    assert matrix_rank(CoefficientMatrix([], [], [])) == 0


def test_rank_of_polynomials():
    x, y = U.var("x"), U.var("y")
    assert rank_of_polynomials([x + y, x - y, x]) == 2
    assert rank_of_polynomials([x * y, x * y.scale(3)], mode="exact") == 1


def test_modular_rank_can_drop_at_a_bad_prime():
    # 7 kills this 1x1 matrix mod 7; the public API avoids such primes
    m = CoefficientMatrix.from_dense([[7]])
    assert modular_rank(m, 7) == 0
    assert matrix_rank(m) == 1


def test_unknown_mode():
    with pytest.raises(ValueError):
        matrix_rank(CoefficientMatrix.from_dense([[1]]), mode="fuzzy")


def test_random_prime_bits():
    rng = random.Random(3)
    p = random_prime(61, rng)
    assert p.bit_length() == 61
    assert all(p % q for q in (2, 3, 5, 7, 11, 13))


def test_matrix_market_round_trip():
    x, y = U.var("x"), U.var("y")
    m = CoefficientMatrix.from_polynomials({"a": x.scale(Fraction(1, 3)) + y, "b": x * y.scale(-2)})
    text = m.to_matrix_market()
    assert text.startswith("%%MatrixMarket matrix coordinate rational general")
    back = CoefficientMatrix.from_matrix_market(text)
    assert back.columns == m.columns
    assert back.rows == m.rows
    assert back.row_labels == ["a", "b"]


# -- kernels -------------------------------------------------------------------


@pytest.mark.skipif(BACKEND != "compiled", reason="extension not built")
@settings(max_examples=100)
@given(small_mats, st.sampled_from([2, 101, 1_000_003, (1 << 61) - 1]))
def test_backends_agree_on_rank(rows, p):
    from umpspan.exact_algebra import _kernels

    assert _kernels.rank_mod_p(rows, len(rows[0]), p) == _kernels_py.rank_mod_p(rows, len(rows[0]), p)


@pytest.mark.skipif(BACKEND != "compiled", reason="extension not built")
@given(st.lists(st.integers(0, 2), max_size=12), st.randoms(use_true_random=False))
def test_backends_agree_on_traces(word, rnd):
    from umpspan.exact_algebra import _kernels

    p = (1 << 61) - 1
    mats = [[[rnd.randrange(p) for _ in range(3)] for _ in range(3)] for _ in range(3)]
    assert _kernels.trace_product_mod_p(mats, word, p) == _kernels_py.trace_product_mod_p(mats, word, p)


def test_large_primes_fall_back_to_python():
    p = (1 << 89) - 1
    rows = [[1, 2], [3, 4]]
    assert _backend.rank_mod_p(rows, 2, p) == 2


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, UMPSPAN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from umpspan.exact_algebra import BACKEND; print(BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
