import json
from fractions import Fraction

import pytest

from umpspan.ch_relations import (
    PRESETS,
    TraceRelation,
    annihilates_span,
    certify_nontrivial,
    ch_extend,
    ternary_length,
    example_relation,
    generate_ch_relation,
    is_cyclically_trivial,
    kernel_of_weight,
    merge_terms,
    permutation_sign,
    preset_ternary,
    preset_example_d8,
    preset_binary_tail,
    substitute_relation,
    verify_relation_symbolic,
    weight3_expansion,
)
from umpspan.combinatorics import as_word, enumerate_bracelets
from umpspan.trace_param import reduce_word


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_term_count(m):
    import math

    assert len(generate_ch_relation(m, 0).terms) == math.factorial(m) * (m + 1)


@pytest.mark.parametrize("ell", range(5))
def test_m2_relation_vanishes_symbolically(ell):
    cert = verify_relation_symbolic(generate_ch_relation(2, ell), 2)
    assert cert.identically_zero
    assert cert.summary() == f"identically zero: yes (symbolic); exponents checked: [{ell}]"


def test_m1_is_trivial():
    rel = generate_ch_relation(1, 0)
    assert verify_relation_symbolic(rel, 1).identically_zero
    assert is_cyclically_trivial(rel)


@pytest.mark.parametrize("ell", range(3))
def test_m3_randomized(ell):
    cert = verify_relation_symbolic(generate_ch_relation(3, ell), 3, mode="randomized-numeric")
    assert cert.identically_zero and cert.trials == 50


def test_example_relation_all_k():
    cert = ch_extend(example_relation(), 2)
    assert cert.valid and cert.verified_exponents == [0, 1, 2, 3]
    assert [is_cyclically_trivial(example_relation(k)) for k in range(4)] == [True, True, False, False]


def test_example_relation_fails_for_3x3():
    cert = ch_extend(example_relation(), 3, mode="randomized-numeric", trials=5)
    assert not cert.valid and cert.failing_k is not None


def test_corrupted_relation_is_rejected():
    rel = example_relation(2)
    bad = TraceRelation(rel.alphabet, rel.terms[:-1], rel.trailing)
    assert not verify_relation_symbolic(bad, 2).identically_zero


def test_example_d8():
    rel = preset_example_d8()
    assert rel.lengths() == {8}
    words = rel.word_strings()
    assert len(words) == 6
    merged = merge_terms(rel, "dihedral")
    assert all(sum(b) == 4 for b in merged)
    assert certify_nontrivial(rel, 8, "dihedral")
    brs, kernel = kernel_of_weight(8, 4)
    assert len(brs) == 8 and len(kernel) == 1
    vec = [merged.get(b, Fraction(0)) for b in brs]
    i = next(i for i, x in enumerate(kernel[0]) if x)
    ratio = vec[i] / kernel[0][i]
    assert ratio and all(x == ratio * y for x, y in zip(vec, kernel[0]))


def test_ternary_m2():
    rel = preset_ternary(2)
    assert rel.alphabet == 3 and rel.lengths() == {ternary_length(2, 2)} == {6}
    assert certify_nontrivial(rel, 6, "cyclic")
    # dihedrally the same combination cancels: reversal is not a 2x2 symmetry for 3 letters
    assert not certify_nontrivial(rel, 6, "dihedral")


def test_binary_tail():
    rel = preset_binary_tail(2)
    (d,) = rel.lengths()
    assert certify_nontrivial(rel, d, "cyclic")
    assert not certify_nontrivial(rel, d, "dihedral")


def test_cyclic_rearrangement_is_trivial():
    rel = TraceRelation(2, ((Fraction(1), as_word("0011")), (Fraction(-1), as_word("0110"))))
    assert not certify_nontrivial(rel, 4, "cyclic")


def test_wrong_relation_does_not_certify():
    rel = TraceRelation(2, ((Fraction(1), as_word("00001111")), (Fraction(-1), as_word("00110011"))))
    assert not annihilates_span(rel, 2, "dihedral")
    assert not certify_nontrivial(rel, 8)


def test_mixed_lengths_rejected():
    rel = TraceRelation(2, ((Fraction(1), (0, 1)), (Fraction(1), (0, 1, 1))))
    with pytest.raises(ValueError):
        certify_nontrivial(rel, 2)


def test_substitution_without_merge_keeps_all_terms():
    rel = substitute_relation(example_relation(2), {"A0": (0,), "A1": (1,), "A2": (1, 1), "A3": (0, 1)}, ambient=None)
    assert len(rel.terms) == 6 and rel.lengths() == {8}


def test_json_round_trip():
    for rel in (preset_example_d8(), generate_ch_relation(2, 1)):
        data = json.loads(rel.to_json(ambient="dihedral", certificate="symbolic"))
        assert data["ambient"] == "dihedral"
        back = TraceRelation.from_dict(data)
        assert sorted(back.expanded_terms()) == sorted(rel.expanded_terms())


def test_presets_registry():
    assert set(PRESETS) == {"example-d8", "ternary", "binary-tail"}


@pytest.mark.parametrize("d", [9, 10, 12])
def test_weight3_expansion(d):
    for b in enumerate_bracelets(2, d, (d - 3, 3)):
        expansion = weight3_expansion(b)
        total = None
        for w, c in expansion.items():
            s = ("11" in "".join(map(str, w * 2))) or ("101" in "".join(map(str, w * 2)))
            assert s
            term = reduce_word(w).scale(c)
            total = term if total is None else total + term
        assert total == reduce_word(b)
