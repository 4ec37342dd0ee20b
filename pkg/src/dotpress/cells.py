"""Braille cells and text transliteration.

A cell is the set of raised dots out of the 2x3 grid, numbered 1-3 down the
left column and 4-6 down the right.  Text maps to cells using the standard
uncontracted (Grade-1) English table: one cell per letter or punctuation
mark, a number-sign prefix plus the a-j letter cell for each digit, and an
optional capital-sign prefix for uppercase.  The same tables drive decoding
(for round-trip checking) and ASCII-Braille (BRF) output.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import AmbiguousCell, UnsupportedCharacter

log = logging.getLogger("dotpress.cells")

UNICODE_BRAILLE_BASE = 0x2800


@dataclass(frozen=True)
class BrailleCell:
    """A 6-dot cell as a frozen set of dot numbers; the empty set is blank."""

    dots: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        dots = frozenset(self.dots)
        if not dots <= {1, 2, 3, 4, 5, 6}:
            raise ValueError(f"dot numbers must be in 1..6, got {sorted(dots)}")
        object.__setattr__(self, "dots", dots)

    @classmethod
    def of(cls, *dots: int) -> "BrailleCell":
        return cls(frozenset(dots))

    @classmethod
    def from_string(cls, spec: str) -> "BrailleCell":
        """Build a cell from a compact dot string such as "145"."""
        return cls(frozenset(int(d) for d in spec))

    @property
    def mask(self) -> int:
        """Bit mask with bit (d-1) set for each dot d; the Unicode offset."""
        m = 0
        for d in self.dots:
            m |= 1 << (d - 1)
        return m

    def to_unicode(self) -> str:
        return chr(UNICODE_BRAILLE_BASE + self.mask)

    def __str__(self) -> str:
        return self.to_unicode()

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.dots))

    def __len__(self) -> int:
        return len(self.dots)


BLANK = BrailleCell()


class _LineBreak:
    """Sentinel marking an explicit line break inside a cell stream."""

    __slots__ = ()

    def __repr__(self):
        return "LINE_BREAK"


LINE_BREAK = _LineBreak()

# One element of an encoded stream: a cell, or the line-break marker.
CellStream = Sequence["BrailleCell | _LineBreak"]


class UnknownCharPolicy(enum.Enum):
    REJECT = "reject"
    SUBSTITUTE_BLANK = "substitute"


class UppercasePolicy(enum.Enum):
    FOLD_TO_LOWER = "fold"
    CAPITAL_SIGN_PREFIX = "capital_sign"


@dataclass(frozen=True)
class EncodingPolicy:
    """Immutable per-run encoding choices.

    Digits always use the number-sign prefix scheme; that part is fixed.
    """

    unknown_char: UnknownCharPolicy = UnknownCharPolicy.SUBSTITUTE_BLANK
    uppercase: UppercasePolicy = UppercasePolicy.FOLD_TO_LOWER


DEFAULT_POLICY = EncodingPolicy()

# Standard Grade-1 dot patterns.  Letters follow the decade structure of the
# English Braille alphabet; digits reuse a-j behind the number sign.
_LETTER_DOTS = {
    "a": "1", "b": "12", "c": "14", "d": "145", "e": "15",
    "f": "124", "g": "1245", "h": "125", "i": "24", "j": "245",
    "k": "13", "l": "123", "m": "134", "n": "1345", "o": "135",
    "p": "1234", "q": "12345", "r": "1235", "s": "234", "t": "2345",
    "u": "136", "v": "1236", "w": "2456", "x": "1346", "y": "13456",
    "z": "1356",
}

_PUNCT_DOTS = {
    ".": "256", ",": "2", ";": "23", ":": "25",
    "!": "235", "?": "236", "'": "3", "-": "36",
}

_DIGIT_TO_LETTER = {
    "1": "a", "2": "b", "3": "c", "4": "d", "5": "e",
    "6": "f", "7": "g", "8": "h", "9": "i", "0": "j",
}

NUMBER_SIGN = BrailleCell.from_string("3456")
CAPITAL_SIGN = BrailleCell.from_string("6")

LETTER_CELLS = {c: BrailleCell.from_string(d) for c, d in _LETTER_DOTS.items()}
PUNCT_CELLS = {c: BrailleCell.from_string(d) for c, d in _PUNCT_DOTS.items()}

_CELL_TO_LETTER = {cell.mask: c for c, cell in LETTER_CELLS.items()}
_CELL_TO_PUNCT = {cell.mask: c for c, cell in PUNCT_CELLS.items()}
_LETTER_TO_DIGIT = {v: k for k, v in _DIGIT_TO_LETTER.items()}

SUPPORTED_CHARS = frozenset(
    set(_LETTER_DOTS) | {c.upper() for c in _LETTER_DOTS}
    | set(_DIGIT_TO_LETTER) | set(_PUNCT_DOTS) | {" "}
)


def encode_char(c: str, policy: EncodingPolicy = DEFAULT_POLICY) -> list[BrailleCell]:
    """Encode one character to its cell sequence.

    Letters and punctuation give one cell, digits give number sign plus the
    matching a-j cell, uppercase gives capital sign plus letter cell when the
    policy keeps case.  Space gives the blank cell.  Unknown characters are
    rejected or substituted with blank per the policy.
    """
    if len(c) != 1:
        raise ValueError(f"encode_char expects a single character, got {c!r}")
    if c == " ":
        return [BLANK]
    if c in LETTER_CELLS:
        return [LETTER_CELLS[c]]
    lower = c.lower()
    if c != lower and lower in LETTER_CELLS:
        if policy.uppercase is UppercasePolicy.CAPITAL_SIGN_PREFIX:
            return [CAPITAL_SIGN, LETTER_CELLS[lower]]
        return [LETTER_CELLS[lower]]
    if c in _DIGIT_TO_LETTER:
        return [NUMBER_SIGN, LETTER_CELLS[_DIGIT_TO_LETTER[c]]]
    if c in PUNCT_CELLS:
        return [PUNCT_CELLS[c]]
    if policy.unknown_char is UnknownCharPolicy.REJECT:
        raise UnsupportedCharacter(c)
    return [BLANK]


def encode_text(s: str, policy: EncodingPolicy = DEFAULT_POLICY) -> list:
    """Encode a string, passing newlines through as line-break markers.

    Returns a list of BrailleCell interleaved with LINE_BREAK markers.
    Substitutions under the blank policy are logged with their 1-based
    position; the reject policy raises UnsupportedCharacter with position.
    """
    out: list = []
    for i, c in enumerate(s):
        if c == "\n":
            out.append(LINE_BREAK)
            continue
        try:
            cells = encode_char(c, policy)
        except UnsupportedCharacter:
            raise UnsupportedCharacter(c, position=i + 1) from None
        if cells == [BLANK] and c != " " and c not in SUPPORTED_CHARS:
            log.warning("substituted blank for unsupported character %r at position %d",
                        c, i + 1)
        out.extend(cells)
    return out


def canonical(s: str, policy: EncodingPolicy = DEFAULT_POLICY) -> str:
    """The text a perfect round trip reproduces: case-folded unless the
    capital-sign policy preserves it."""
    if policy.uppercase is UppercasePolicy.FOLD_TO_LOWER:
        return s.lower()
    return s


def decode_cells(cells: CellStream) -> str:
    """Invert encode_text for streams produced under either policy.

    Number sign switches the next a-j cell to its digit; capital sign
    uppercases the next letter cell.  Raises AmbiguousCell for cells or
    prefix contexts with no reverse mapping.
    """
    out: list[str] = []
    it = iter(cells)
    for cell in it:
        if cell is LINE_BREAK:
            out.append("\n")
            continue
        mask = cell.mask
        if mask == 0:
            out.append(" ")
        elif mask == NUMBER_SIGN.mask:
            nxt = _take_cell(it, "number sign")
            letter = _CELL_TO_LETTER.get(nxt.mask)
            if letter is None or letter not in _LETTER_TO_DIGIT:
                raise AmbiguousCell(f"number sign followed by non-digit cell {nxt}")
            out.append(_LETTER_TO_DIGIT[letter])
        elif mask == CAPITAL_SIGN.mask:
            nxt = _take_cell(it, "capital sign")
            letter = _CELL_TO_LETTER.get(nxt.mask)
            if letter is None:
                raise AmbiguousCell(f"capital sign followed by non-letter cell {nxt}")
            out.append(letter.upper())
        elif mask in _CELL_TO_LETTER:
            out.append(_CELL_TO_LETTER[mask])
        elif mask in _CELL_TO_PUNCT:
            out.append(_CELL_TO_PUNCT[mask])
        else:
            raise AmbiguousCell(f"cell {cell} has no reverse mapping")
    return "".join(out)


def _take_cell(it: Iterator, after: str) -> BrailleCell:
    for nxt in it:
        if nxt is LINE_BREAK:
            break
        return nxt
    raise AmbiguousCell(f"dangling {after} prefix")


# North American ASCII-Braille (BRF interchange): ASCII 0x20-0x5F covers all
# 64 cells.  Stored as char -> dot string; inverted below for output.
_BRF_DOTS = {
    " ": "", "!": "2346", '"': "5", "#": "3456", "$": "1246", "%": "146",
    "&": "12346", "'": "3", "(": "12356", ")": "23456", "*": "16", "+": "346",
    ",": "6", "-": "36", ".": "46", "/": "34",
    "0": "356", "1": "2", "2": "23", "3": "25", "4": "256",
    "5": "26", "6": "235", "7": "2356", "8": "236", "9": "35",
    ":": "156", ";": "56", "<": "126", "=": "123456", ">": "345",
    "?": "1456", "@": "4",
    "[": "246", "\\": "1256", "]": "12456", "^": "45", "_": "456",
}
_BRF_DOTS.update({c.upper(): d for c, d in _LETTER_DOTS.items()})

_MASK_TO_BRF = {BrailleCell.from_string(d).mask: ch for ch, d in _BRF_DOTS.items()}
assert len(_MASK_TO_BRF) == 64


def cell_to_brf(cell: BrailleCell) -> str:
    """The ASCII-Braille character for a cell (total over all 64 cells)."""
    return _MASK_TO_BRF[cell.mask]


def to_brf(cells: CellStream, cells_per_line: int) -> str:
    """Render a cell stream as ASCII-Braille text, hard-wrapped.

    Line-break markers force new lines; wrapping matches the page layout
    rule so BRF lines mirror printed lines.  LF endings, no header.
    """
    if cells_per_line < 1:
        raise ValueError("cells_per_line must be >= 1")
    from .layout import LineBuilder, LineClosed  # local import avoids a cycle

    builder = LineBuilder(cells_per_line)
    lines: list[str] = []

    def drain(events):
        for ev in events:
            if isinstance(ev, LineClosed):
                lines.append("".join(cell_to_brf(c) for c in ev.cells))

    for item in cells:
        if item is LINE_BREAK:
            drain(builder.push_break())
        else:
            drain(builder.push_cell(item))
    drain(builder.finish())
    return "".join(line + "\n" for line in lines)
