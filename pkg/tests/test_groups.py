from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from singerlat.groups import (
    FiniteGroup,
    Presentation,
    PresentationError,
    canonical_relator,
    commutator,
    cyclic_group,
    direct_product,
    format_word,
    free_reduce,
    gen_power,
    inverse,
    parse_word,
    substitute,
    word,
)

letters = st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=12).map(tuple)


def test_format_and_parse():
    w = word(("s1", 7), ("s2", -1))
    assert format_word(w) == "s1^7 s2^-1"
    assert parse_word("s1^7 s2^-1") == w
    assert format_word(()) == "1"
    assert parse_word("1") == ()


@pytest.mark.parametrize("bad", ["x^", "x^a", "^2"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(PresentationError):
        parse_word(bad)


@given(words)
def test_parse_roundtrip(w):
    w = free_reduce(w)
    assert parse_word(format_word(w)) == w


@given(words)
def test_inverse_cancels(w):
    assert free_reduce(w + inverse(w)) == ()


@given(words, st.integers(0, 11))
def test_canonical_relator_is_conjugation_and_inversion_invariant(w, k):
    k = k % max(1, len(w))
    rotated = w[k:] + w[:k]
    assert canonical_relator(rotated) == canonical_relator(w)
    assert canonical_relator(inverse(w)) == canonical_relator(w)


def test_canonical_relator_prefers_positive_exponents():
    assert canonical_relator(gen_power("s", -3)) == gen_power("s", 3)


def test_substitute_and_reduce():
    w = word(("a", 1), ("b", 1))
    assert substitute(w, "b", inverse(word(("a", 1)))) == ()


def test_presentation_text_roundtrip():
    p = Presentation(("x", "y"), (gen_power("x", 3), commutator(word(("x", 1)), word(("y", 1)))))
    assert Presentation.from_text(p.to_text()).same_as(p)


def test_exponent_matrix():
    p = Presentation(("x", "y"), (word(("x", 2), ("y", -1)),))
    assert p.exponent_matrix() == [[2, -1]]


def test_cyclic_group_inverse_and_order():
    g = cyclic_group(7, "s")
    assert g.order == 7
    s = g.evaluate(word(("s", 1)))
    assert g.op(s, g.inv(s)) == g.evaluate(())
    assert g.element_order(s) == 7
    assert g.check_relators()


def test_direct_product_is_abelian():
    g = direct_product(cyclic_group(2, "a"), cyclic_group(3, "b"))
    assert g.order == 6 and g.is_abelian()


def test_permutation_group_presentation_relators():
    # S3 from two transpositions
    g = FiniteGroup.generated({"a": (1, 0, 2), "b": (0, 2, 1)},
                              lambda p, r: tuple(p[i] for i in r), (0, 1, 2),
                              [gen_power("a", 2), gen_power("b", 2), word(("a", 1), ("b", 1)) * 3])
    assert g.order == 6
    assert g.check_relators()
    assert not g.is_abelian()
    for i in range(g.order):
        assert g.evaluate(g.word_of(i)) == i
