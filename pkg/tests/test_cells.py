"""Transliteration tables and round trips.

The letter table is cross-checked two independent ways: against the decade
structure of the English Braille alphabet (rows k-t and u-z derive from a-j
by adding dots 3 and 3+6, with w the historical exception), and against the
Unicode Braille Patterns block, whose character names spell out the dots.
"""

import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dotpress.cells import (BLANK, CAPITAL_SIGN, LETTER_CELLS, LINE_BREAK,
                            NUMBER_SIGN, PUNCT_CELLS, BrailleCell,
                            EncodingPolicy, UnknownCharPolicy,
                            UppercasePolicy, canonical, cell_to_brf,
                            decode_cells, encode_char, encode_text, to_brf)
from dotpress.errors import AmbiguousCell, UnsupportedCharacter

FOLD = EncodingPolicy()
CAPS = EncodingPolicy(uppercase=UppercasePolicy.CAPITAL_SIGN_PREFIX)
REJECT = EncodingPolicy(unknown_char=UnknownCharPolicy.REJECT)

# First braille decade, frozen from the standard table; everything else in
# the letter oracle derives from it structurally.
DECADE_BASE = {
    "a": {1}, "b": {1, 2}, "c": {1, 4}, "d": {1, 4, 5}, "e": {1, 5},
    "f": {1, 2, 4}, "g": {1, 2, 4, 5}, "h": {1, 2, 5}, "i": {2, 4},
    "j": {2, 4, 5},
}


def expected_letter_dots(letter: str) -> set[int]:
    i = ord(letter) - ord("a")
    if i < 10:
        return set(DECADE_BASE[letter])
    if i < 20:  # k-t: first decade plus dot 3
        return DECADE_BASE[chr(ord("a") + i - 10)] | {3}
    if letter == "w":  # w postdates the French decade system
        return DECADE_BASE["j"] | {6}
    # u, v, x, y, z: skip w when rebasing onto a-e
    base = "uvxyz".index(letter)
    return DECADE_BASE[chr(ord("a") + base)] | {3, 6}


def test_letter_table_matches_decade_structure():
    for letter, cell in LETTER_CELLS.items():
        assert cell.dots == expected_letter_dots(letter), letter


def test_unicode_braille_block_names_match_dots():
    # the Unicode name lists exactly the dots, so it verifies mask order too
    for cell in list(LETTER_CELLS.values()) + list(PUNCT_CELLS.values()) + [NUMBER_SIGN, CAPITAL_SIGN]:
        name = unicodedata.name(cell.to_unicode())
        assert name == "BRAILLE PATTERN DOTS-" + "".join(str(d) for d in sorted(cell.dots))
    assert unicodedata.name(BLANK.to_unicode()) == "BRAILLE PATTERN BLANK"


def test_cell_validation():
    with pytest.raises(ValueError):
        BrailleCell.of(7)
    with pytest.raises(ValueError):
        BrailleCell.of(0)
    assert BrailleCell.of(1, 2).dots == frozenset({1, 2})
    assert len(BLANK) == 0


def test_encode_char_examples():
    assert encode_char("a") == [BrailleCell.of(1)]
    assert encode_char(" ") == [BLANK]
    assert encode_char("1") == [BrailleCell.of(3, 4, 5, 6), BrailleCell.of(1)]


def test_encode_text_examples():
    assert encode_text("ab") == [BrailleCell.of(1), BrailleCell.of(1, 2)]
    assert encode_text("") == []
    assert encode_text("a a") == [BrailleCell.of(1), BLANK, BrailleCell.of(1)]


def test_newlines_become_markers_not_cells():
    stream = encode_text("a\nb")
    assert stream == [BrailleCell.of(1), LINE_BREAK, BrailleCell.of(1, 2)]


def test_digit_encodings_all_prefixed():
    for d in "0123456789":
        cells = encode_char(d)
        assert len(cells) == 2
        assert cells[0] == NUMBER_SIGN


def test_letter_cells_distinct():
    masks = {cell.mask for cell in LETTER_CELLS.values()}
    assert len(masks) == 26


def test_uppercase_policies():
    assert encode_char("A", FOLD) == [BrailleCell.of(1)]
    assert encode_char("A", CAPS) == [CAPITAL_SIGN, BrailleCell.of(1)]


def test_unknown_character_policies():
    assert encode_char("@") == [BLANK]
    with pytest.raises(UnsupportedCharacter):
        encode_char("@", REJECT)
    with pytest.raises(UnsupportedCharacter) as exc:
        encode_text("ab@", REJECT)
    assert exc.value.position == 3
    assert "position 3" in str(exc.value)


def test_decode_examples():
    assert decode_cells([BrailleCell.of(1)]) == "a"
    assert decode_cells([NUMBER_SIGN, BrailleCell.of(1)]) == "1"
    assert decode_cells([]) == ""


def test_decode_errors():
    with pytest.raises(AmbiguousCell):
        decode_cells([BrailleCell.of(4, 5)])  # no mapping in our charset
    with pytest.raises(AmbiguousCell):
        decode_cells([NUMBER_SIGN])  # dangling prefix
    with pytest.raises(AmbiguousCell):
        decode_cells([NUMBER_SIGN, PUNCT_CELLS[","]])  # prefix before non-digit
    with pytest.raises(AmbiguousCell):
        decode_cells([CAPITAL_SIGN, NUMBER_SIGN])


SUPPORTED = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,;:!?'-\n"


@given(st.text(alphabet=SUPPORTED, max_size=80))
def test_round_trip_fold(s):
    assert decode_cells(encode_text(s, FOLD)) == canonical(s, FOLD)


@given(st.text(alphabet=SUPPORTED, max_size=80))
def test_round_trip_capital_signs(s):
    assert decode_cells(encode_text(s, CAPS)) == canonical(s, CAPS)


def test_brf_examples():
    assert cell_to_brf(BrailleCell.of(1)) == "A"
    assert cell_to_brf(BLANK) == " "
    assert cell_to_brf(BrailleCell.of(1, 2)) == "B"
    assert cell_to_brf(NUMBER_SIGN) == "#"


def test_brf_covers_all_64_cells():
    seen = {cell_to_brf(BrailleCell(frozenset(
        d for d in range(1, 7) if mask & (1 << (d - 1))))) for mask in range(64)}
    assert len(seen) == 64
    assert all(" " <= ch <= "_" for ch in seen)


def test_brf_text_rendering():
    # literary period (dots 256) is ASCII-braille '4'
    assert to_brf(encode_text("a."), 24) == "A4\n"
    assert to_brf(encode_text("hello 123"), 24) == "HELLO #A#B#C\n"
    assert to_brf([], 24) == ""


def test_brf_respects_explicit_breaks():
    assert to_brf(encode_text("ab\ncd"), 24) == "AB\nCD\n"


@given(st.text(alphabet=SUPPORTED, max_size=200), st.integers(min_value=1, max_value=40))
def test_brf_width_bound(s, width):
    for line in to_brf(encode_text(s), width).splitlines():
        assert len(line) <= width
