"""Hypothesis strategies for words."""

from hypothesis import assume
from hypothesis import strategies as st

from cycpres import Word, cyclically_reduce, normalize_span


def letters(max_index=3):
    return st.tuples(st.integers(0, max_index), st.sampled_from((1, -1)))


def words(max_index=3, max_len=10):
    return st.lists(letters(max_index), max_size=max_len).map(Word)


@st.composite
def relators(draw, max_index=3, max_len=10):
    """OneRelatorSpec with k >= 1."""
    w = draw(words(max_index, max_len))
    c, _ = cyclically_reduce(w)
    assume(len({i for i, _ in c.letters}) >= 2)
    return normalize_span(c)[0]
