import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from umpspan.combinatorics import enumerate_necklaces
from umpspan.errors import ResourceCapExceeded
from umpspan.trace_calculus import (
    GenericMatrixTuple,
    act_on_tensor,
    numeric_trace_of_word,
    torus_scaling_holds,
    trace_of_word,
    umps_coordinates,
    umps_tensor,
    verify_cyclic_invariance,
    verify_gl_equivariance,
    verify_reflection_invariance,
    verify_reflection_invariance_2x2,
)


def rand_mats(rng, m, n, lo=-3, hi=3):
    return [[[rng.randint(lo, hi) for _ in range(m)] for _ in range(m)] for _ in range(n)]


def unimodular(rng, n):
    # product of elementary matrices: integer entries, determinant 1
    g = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(4):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        g = [[g[r][c] + (k * g[j][c] if r == i else 0) for c in range(n)] for r in range(n)]
    return g


def test_empty_word_is_m():
    for m in (1, 2, 3):
        assert trace_of_word(m, 2, ()).evaluate({}) == m


def test_variable_naming():
    g = GenericMatrixTuple(2, 2)
    assert g.variable(1, 0, 1) == "a1_12"
    assert len(g.universe) == 8


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_symbolic_matches_numeric(m, n):
    rng = random.Random(m * 10 + n)
    g = GenericMatrixTuple(m, n)
    for d in range(1, 5):
        for w in enumerate_necklaces(n, d)[:10]:
            mats = rand_mats(rng, m, n)
            assert trace_of_word(m, n, w).evaluate(g.assignment(mats)) == numeric_trace_of_word(mats, w)


@pytest.mark.parametrize("m,n,d", [(1, 3, 4), (2, 2, 5), (2, 3, 4), (3, 2, 4), (3, 3, 3)])
def test_cyclic_invariance(m, n, d):
    for w in itertools.islice(itertools.product(range(n), repeat=d), 0, None, 3):
        assert verify_cyclic_invariance(m, n, w)


@pytest.mark.parametrize("d", range(1, 8))
def test_reflection_invariance_2x2_binary(d):
    for w in itertools.product(range(2), repeat=d):
        assert verify_reflection_invariance_2x2(w)


def test_reflection_counterexample_3x3():
    w = (0, 0, 1, 2, 1, 2)
    assert not verify_reflection_invariance(3, 3, w)
    # confirm numerically, independent of the symbolic engine
    rng = random.Random(0)
    mats = rand_mats(rng, 3, 3)
    assert numeric_trace_of_word(mats, w) != numeric_trace_of_word(mats, w[::-1])


def test_reflection_fails_for_2x2_with_three_letters():
    assert not verify_reflection_invariance(2, 3, (0, 1, 2))
    assert verify_reflection_invariance(2, 3, (0, 1, 1))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_gl_equivariance(d):
    rng = random.Random(d)
    for _ in range(3):
        assert verify_gl_equivariance(2, 2, d, unimodular(rng, 2), rand_mats(rng, 2, 2))


def test_gl_equivariance_rational_g():
    g = [[Fraction(1, 2), 1], [Fraction(-1, 3), 2]]
    mats = rand_mats(random.Random(5), 2, 2)
    assert verify_gl_equivariance(2, 2, 3, g, mats)


def test_singular_g_rejected():
    with pytest.raises(ValueError):
        verify_gl_equivariance(2, 2, 2, [[1, 2], [2, 4]], rand_mats(random.Random(1), 2, 2))


def test_equivariance_size_cap():
    with pytest.raises(ResourceCapExceeded):
        verify_gl_equivariance(2, 2, 13, [[1, 0], [0, 1]], rand_mats(random.Random(1), 2, 2))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3).filter(bool), min_size=2, max_size=3), st.integers(1, 4), st.integers(0, 10**6))
def test_torus_scaling(t, d, seed):
    mats = rand_mats(random.Random(seed), 2, len(t))
    assert torus_scaling_holds(mats, t, d)


def test_act_on_tensor_identity():
    mats = rand_mats(random.Random(2), 2, 2)
    tensor = umps_tensor(mats, 3)
    assert act_on_tensor([[1, 0], [0, 1]], tensor, 3) == tensor


def test_umps_coordinates_basis():
    v = umps_coordinates(2, 2, 4)
    assert v.basis == "bracelet"
    assert len(v.coords) == 6
    v3 = umps_coordinates(2, 3, 3)
    assert v3.basis == "necklace"
    assert len(v3.coords) == 11
    assert '"coords"' in v.to_json()


def test_umps_coordinates_cap():
    with pytest.raises(ResourceCapExceeded):
        umps_coordinates(3, 3, 100)


def test_bad_letter():
    with pytest.raises(ValueError):
        trace_of_word(2, 2, (0, 2))
