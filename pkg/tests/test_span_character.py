import pytest

from umpspan.combinatorics import count_bracelets, count_bracelets_weight_binary
from umpspan.errors import ResourceCapExceeded
from umpspan.span_character import (
    ResourceCaps,
    SpanRequest,
    character_of_span,
    conjecture_dim,
    conjecture_total,
    count_graded_monomials,
    ideal_character,
    ideal_character_degree_k,
    monomial_upper_bound,
    span_dimension_weight,
    specialized_rank,
    tilde_b3,
)
from umpspan.tables import SPAN_DIMS, IDEAL_K2


@pytest.mark.parametrize("d", [8, 9, 10, 11])
def test_table1_rows(d):
    D, total, ambient = SPAN_DIMS[d]
    ch = character_of_span(2, 2, d)
    assert [ch.scalar(w) for w in range(len(D))] == D
    assert ch.total == total and ch.ambient_total == ambient


@pytest.mark.parametrize("d", range(1, 8))
def test_span_fills_ambient_for_short_words(d):
    assert character_of_span(2, 2, d).total == count_bracelets(2, d)


def test_weight_symmetry():
    ch = character_of_span(2, 2, 11, mode="exact")
    dims = ch.scalar_dims()
    assert dims == dims[::-1]
    # computed directly, without the mirror shortcut
    assert span_dimension_weight(SpanRequest(2, 2, 11, 8)) == dims[8]


@pytest.mark.parametrize("d", range(3, 11))
def test_sandwich(d):
    ch = character_of_span(2, 2, d)
    for w in range(d + 1):
        assert 0 <= ch.scalar(w) <= count_bracelets_weight_binary(d, w)
    assert ch.total <= monomial_upper_bound(d)


@pytest.mark.parametrize("d", range(1, 7))
def test_dual_pipeline(d):
    a = character_of_span(2, 2, d, source="trace-param")
    b = character_of_span(2, 2, d, source="generic")
    assert a.dims == b.dims


def test_exact_and_modular_agree():
    assert character_of_span(2, 2, 9, mode="exact").dims == character_of_span(2, 2, 9).dims


def test_threads_do_not_change_results():
    assert character_of_span(2, 2, 10, threads=4).dims == character_of_span(2, 2, 10).dims


def test_general_n_uses_permutation_symmetry():
    ch = character_of_span(2, 3, 4, source="generic")
    assert ch.dims[(2, 1, 1)] == ch.dims[(1, 1, 2)] == ch.dims[(1, 2, 1)]
    # four letters over 2x2 matrices: every necklace still independent
    assert ch.total == ch.ambient_total


@pytest.mark.parametrize("d", sorted(SPAN_DIMS))
def test_conjectured_formulas_reproduce_table(d):
    D, total, _ = SPAN_DIMS[d]
    assert [conjecture_dim(d, w) for w in range(len(D))] == D
    assert conjecture_total(d) == total


@pytest.mark.parametrize("d", range(0, 40))
def test_monomial_bound_closed_form(d):
    assert monomial_upper_bound(d) == count_graded_monomials(d)


def test_ideal_table2_d6_and_low_weights():
    ch = ideal_character(6, 2)
    assert [ch.scalar(w) for w in range(3, 7)] == IDEAL_K2[6]
    assert [ch.scalar(w) for w in range(3)] == [0, 0, 0]
    assert ideal_character_degree_k(6, 2, 12) == ideal_character_degree_k(6, 2, 0)


@pytest.mark.parametrize("d", range(2, 13))
def test_specialized_ranks(d):
    assert specialized_rank(d, 2, "w2") == d // 2
    if d >= 4:
        assert len(tilde_b3(d)) == d - 3
        assert specialized_rank(d, 3, "w3") == d - 3


def test_caps():
    with pytest.raises(ResourceCapExceeded):
        character_of_span(2, 2, 30)
    with pytest.raises(ResourceCapExceeded):
        ideal_character_degree_k(6, 4, 3)
    tiny = ResourceCaps(max_matrix_entries=10)
    with pytest.raises(ResourceCapExceeded):
        span_dimension_weight(SpanRequest(2, 2, 10, 5), tiny)


@pytest.mark.parametrize(
    "req",
    [SpanRequest(2, 2, 4, 5), SpanRequest(2, 3, 4, 2), SpanRequest(2, 2, 4, (1, 2)), SpanRequest(3, 2, 4, 2, "trace-param")],
)
def test_bad_requests(req):
    with pytest.raises(ValueError):
        span_dimension_weight(req)
