from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from goldman.errors import DomainError, ParseError
from goldman.words import (
    CyclicWord,
    FormalSum,
    Word,
    cyclic_canonical,
    cyclic_words,
    free_reduce,
    invert,
    parse_cyclic,
    parse_word,
    power,
    primitive_root,
    same_root_up_to_inversion,
)

letters = st.text(alphabet="aAbB", max_size=14)


def test_free_reduce():
    assert free_reduce("aAb") == "b"
    assert free_reduce("abBA") == ""
    assert free_reduce("aBbAab") == "ab"


def test_cyclic_canonical_rotations_agree():
    assert cyclic_canonical("Ba") == cyclic_canonical("aB")
    assert cyclic_canonical("bAab") == cyclic_canonical("bb")
    assert cyclic_canonical("aBab").letters == "abaB"


def test_parse_forms():
    assert parse_word("a^-1 b").letters == "Ab"
    assert parse_word("a^{-1}b").letters == "Ab"
    assert parse_cyclic("ba").letters == "ab"
    assert parse_cyclic("").is_empty()


def test_parse_error_offset():
    with pytest.raises(ParseError) as e:
        parse_word("abX")
    assert e.value.offset == 2


def test_constructor_checks():
    with pytest.raises(DomainError):
        Word("aA")
    with pytest.raises(DomainError):
        CyclicWord("ba")


def test_power_and_root():
    x = parse_cyclic("aB")
    assert power(x, 3).letters == "aBaBaB"
    assert power(x, -1) == x.inverse()
    assert primitive_root(power(x, 4)) == (x, 4)
    assert same_root_up_to_inversion(power(x, 2), x.inverse())
    assert not same_root_up_to_inversion(x, parse_cyclic("ab"))
    with pytest.raises(DomainError):
        power(x, 0)


def test_corpus_size():
    # Up to length 2: four letters, four squares, and ab, aB, Ab, AB.
    assert len(cyclic_words(1)) == 4
    assert len(cyclic_words(2)) == 12
    assert len(cyclic_words(6)) == 234


def test_formal_sum():
    s = FormalSum([(parse_cyclic("ab"), 2), (parse_cyclic("ba"), -1)])
    assert s.coefficient(parse_cyclic("ab")) == 1
    assert (s - s).is_zero()
    assert s.scale(Fraction(1, 2)).coefficient(parse_cyclic("ab")) == Fraction(1, 2)
    assert FormalSum.from_json(s.to_json()) == s
    assert (2 * s).term_count() == 2


@given(letters)
def test_canonical_idempotent(w):
    c = cyclic_canonical(w)
    assert cyclic_canonical(c.letters) == c
    assert cyclic_canonical(invert(w)) == c.inverse()


@given(letters, st.integers(1, 4))
def test_root_of_power(w, k):
    c = cyclic_canonical(w)
    if c.is_empty():
        return
    r, n = primitive_root(c)
    assert primitive_root(power(c, k)) == (r, n * k)
