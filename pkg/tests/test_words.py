import pytest
from hypothesis import given, strategies as st

from t36mf.pencil import PencilBlock
from t36mf.words import (
    FAMILIES, UnsupportedBlock, Word, WordSyntaxError, blocks_to_words, enumerate_words, is_valid, letters,
    parse_word,
)
from t36mf.words import word_text


def test_counts():
    assert len(enumerate_words(1)) == 24
    assert len(enumerate_words(3)) == 72
    assert len(set(enumerate_words(3))) == 72
    with pytest.raises(ValueError):
        enumerate_words(0)


@pytest.mark.parametrize("w, text", [
    (Word("c", 2), "r4 - ~c2 ~ c2 - r3"),
    (Word("d", 2), "c4 - ~d2 ~ d2 - c3"),
    (Word("a", 2, True, True), "~a2 ~ a2"),
    (Word("b", 1, False, True), "r4 - ~b1 ~ b1"),
])
def test_letter_sequences(w, text):
    assert word_text(w) == text


def test_every_enumerated_word_is_valid():
    for w in enumerate_words(3):
        seq = letters(w)
        assert is_valid(seq), w
        assert len(seq) == 4 - w.left_cut - w.right_cut


def test_invalid_sequences_rejected():
    seq = letters(Word("a", 2))
    doubled = [seq[0], seq[1], ("-", seq[2][1])]
    assert not is_valid(doubled)
    swapped = [seq[0], ("-", seq[3][1])]
    assert not is_valid(swapped)


@given(st.sampled_from(enumerate_words(4)))
def test_parse_round_trip(w):
    assert parse_word(w.cli()) == w
    assert parse_word(str(w)) == w


@pytest.mark.parametrize("text, expected", [
    ("cp:3", Word("c'", 3)),
    ("d′:1:rl", Word("d'", 1, True, True)),
    (" a : 2 : l ", Word("a", 2, True, False)),
])
def test_parse_variants(text, expected):
    assert parse_word(text) == expected


@pytest.mark.parametrize("bad", ["e:1", "a:0", "a", "a:2:x", "a:-1"])
def test_parse_errors(bad):
    with pytest.raises(WordSyntaxError):
        parse_word(bad)


def test_blocks_to_words():
    assert blocks_to_words([PencilBlock("A", 2)]) == [Word("a", 2)]
    assert blocks_to_words([]) == []
    assert blocks_to_words([PencilBlock("C", 1), PencilBlock("D", 3)], decorations=[1]) == [
        Word("c", 1), Word("d'", 3)]
    with pytest.raises(UnsupportedBlock):
        blocks_to_words([PencilBlock("Regular", 1, 5)])
    with pytest.raises(ValueError):
        blocks_to_words([PencilBlock("A", 1)], decorations=[0])


def test_family_order():
    assert FAMILIES == ("a", "b", "c", "d", "c'", "d'")
    ws = enumerate_words(2)
    assert ws == sorted(ws, key=Word.sort_key)
