import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycpres.errors import TooLong
from cycpres.formcheck import (
    CERTIFIED,
    FORM_MATCH,
    INCONCLUSIVE,
    FormWitness,
    MagnusPair,
    PairVerdict,
    SearchParams,
    brute_force_oracle,
    check_pair,
    match_form_i,
    match_form_ii,
    syllable_factorize,
)
from cycpres.freeword import Word
from cycpres.presentation import OneRelatorSpec
from strategies import relators

W41 = "x1^-1 x0^-1 x2 x0 x1 x2^-2"
HIGMAN = "x0^-1 x1 x0 x1^-2"


def pair(word, y1, y2):
    return MagnusPair.of(OneRelatorSpec.from_word(word), y1, y2)


def words_of(w: FormWitness):
    return {n: str(c) for n, c in zip(w.component_names, w.components)}


class TestWorkedExamples:
    def test_main_pair_form_i(self):
        v = check_pair(pair(W41, {0, 1}, {1, 2}))
        assert v.outcome == FORM_MATCH
        w = v.witness
        assert w.form == "I"
        assert words_of(w) == {"w1": "x0 x1", "w2": "x2"}
        assert w.exponents == ((-1, 1), (1, -2))
        assert (w.rotation_offset, w.inverted) == (0, False)

    def test_exceptional_pair_both_forms(self):
        p = pair(W41, {0, 2}, {1, 2})
        v = check_pair(p)
        assert v.outcome == FORM_MATCH
        assert v.witness.expand() == v.witness.designated(p.spec.relator)
        second = match_form_ii(p).witness
        assert second is not None
        assert words_of(second) == {"w3": "x2", "v1": "x0", "v2": "x1"}
        assert second.expand() == second.designated(p.spec.relator)

    def test_higman(self):
        v = check_pair(pair(HIGMAN, {0}, {1}))
        assert v.outcome == FORM_MATCH
        assert words_of(v.witness) == {"w1": "x0", "w2": "x1"}

    def test_certified_pair(self):
        p = pair("x0 x2 x0 x1 x0 x2", {0, 1}, {1, 2})
        assert check_pair(p).outcome == CERTIFIED
        assert brute_force_oracle(p).outcome == CERTIFIED

    def test_skeleton(self):
        assert syllable_factorize(pair(W41, {0, 1}, {1, 2})).pattern == "ABAB"
        assert syllable_factorize(pair(W41, {0, 2}, {1, 2})).pattern == "AB"


def test_letters_outside_both_subsets():
    # x2 lies in neither subset; both shapes need every letter covered
    p = pair("x0 x2", {0}, {0, 1})
    assert syllable_factorize(p).pattern == "X"
    assert check_pair(p).outcome == CERTIFIED
    assert brute_force_oracle(p).outcome == CERTIFIED


def test_node_limit_makes_inconclusive():
    p = pair("x0 x2 x0 x1 x0 x2", {0, 1}, {1, 2})
    v = check_pair(p, SearchParams(node_limit=1))
    assert v.outcome == INCONCLUSIVE
    assert "node limit" in v.reason


def test_oracle_length_cap():
    p = pair("x0 x1 x0 x1^2 x0^2 x1^-1 x0 x1 x0", {0}, {1})
    with pytest.raises(TooLong):
        brute_force_oracle(p, max_len=8)


def test_params_round_trip():
    p = SearchParams(7, 2, 1000)
    assert SearchParams.from_json(p.to_json()) == p
    assert SearchParams().exponent_bound(6) == 6
    assert SearchParams(cancellation_budget=2).exponent_bound(6) == 8


def test_verdict_round_trip():
    v = check_pair(pair(W41, {0, 2}, {1, 2}))
    assert PairVerdict.from_json(v.to_json()) == v


def test_explain_ends_with_match():
    p = pair(W41, {0, 1}, {1, 2})
    lines = check_pair(p).witness.explain(p.spec.relator)
    assert lines[-1].strip() == "matches target"


@st.composite
def pairs(draw):
    s = draw(relators(max_len=8))
    from cycpres.cli import magnus_pairs

    options = magnus_pairs(s)
    return options[draw(st.integers(0, len(options) - 1))]


@given(pairs())
def test_witness_expands_to_designated_rotation(p):
    v = check_pair(p)
    if v.witness is not None:
        assert v.witness.expand() == v.witness.designated(p.spec.relator)
        assert all(len(c) > 0 for c in v.witness.components)


@given(pairs())
def test_symmetric_in_pair_order(p):
    assert check_pair(p).outcome == check_pair(p.swapped()).outcome


@given(pairs(), st.integers(0, 9), st.booleans())
def test_invariant_under_rotation_and_inversion(p, r, inv):
    rel = p.spec.relator.rotate(r)
    if inv:
        rel = rel.inverse()
    assert check_pair(p.with_relator(rel)).outcome == check_pair(p).outcome


@settings(max_examples=60)
@given(pairs(), st.integers(0, 2))
def test_agrees_with_oracle(p, budget):
    params = SearchParams(cancellation_budget=budget)
    assert check_pair(p, params).outcome == brute_force_oracle(p, 12, params).outcome


def test_form_i_on_simple_commutator():
    # [x0, x1] = (x0)^1 (x1)^1 (x0)^-1 (x1)^-1
    v = check_pair(pair("x0 x1 x0^-1 x1^-1", {0}, {1}))
    assert v.outcome == FORM_MATCH
    assert v.witness.expand() == Word.parse("x0 x1 x0^-1 x1^-1")
