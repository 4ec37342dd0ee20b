"""Pagination and dot geometry."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dotpress.cells import BLANK, LINE_BREAK, BrailleCell, encode_text
from dotpress.errors import LayoutConfigInvalid
from dotpress.layout import (DEFAULT_LAYOUT, LayoutConfig, Side,
                             dot_rows_of_line, dots_csv, layout_document)

A = BrailleCell.of(1)
FULL = BrailleCell.of(1, 2, 3, 4, 5, 6)


def test_hard_wrap_at_width():
    layout = layout_document([A] * 25)
    assert len(layout.pages) == 1
    assert [len(line) for line in layout.pages[0].lines] == [24, 1]


def test_single_dot_coordinates():
    layout = layout_document([A])
    assert layout.pages[0].dots == ((5.0, 0.0),)


def test_empty_document_is_one_empty_page():
    layout = layout_document([])
    assert len(layout.pages) == 1
    assert layout.pages[0].lines == ()
    assert layout.dot_count == 0


def test_explicit_breaks_force_lines():
    layout = layout_document(encode_text("ab\n\ncd"))
    assert [len(line) for line in layout.pages[0].lines] == [2, 0, 2]


def test_trailing_newline_adds_no_line():
    layout = layout_document(encode_text("ab\n"))
    assert [len(line) for line in layout.pages[0].lines] == [2]


def test_page_break_after_lines_per_page():
    cfg = LayoutConfig(lines_per_page=2)
    layout = layout_document(encode_text("a\nb\nc"), cfg)
    assert len(layout.pages) == 2
    assert [len(p.lines) for p in layout.pages] == [2, 1]


def test_exactly_full_page_is_one_page():
    cfg = LayoutConfig(lines_per_page=2)
    layout = layout_document(encode_text("a\nb\n"), cfg)
    assert len(layout.pages) == 1


def test_full_cell_geometry():
    layout = layout_document([FULL])
    xs = sorted({x for x, _ in layout.pages[0].dots})
    ys = sorted({y for _, y in layout.pages[0].dots})
    assert xs == [5.0, 11.0]          # left column at margin, right +6 mm
    assert ys == [0.0, 4.0, 8.0]      # three dot rows 4 mm apart


def test_second_line_y_offset():
    layout = layout_document(encode_text("a\na"))
    assert layout.pages[0].dots == ((5.0, 0.0), (5.0, 10.0))


@pytest.mark.parametrize("bad", [
    dict(cells_per_line=0),
    dict(lines_per_page=0),
    dict(cell_pitch_mm=0.0),
    dict(margin_mm=-1.0),
    dict(cells_per_line=30),                 # 5 + 300 > 245
    dict(dot_pair_spacing_mm=10.0),          # >= cell pitch
    dict(dot_row_pitch_mm=5.0),              # 2*5 >= line pitch
])
def test_invalid_configs_rejected(bad):
    with pytest.raises(LayoutConfigInvalid):
        LayoutConfig(**bad).validate()


def test_invalid_config_rejected_by_layout_document():
    with pytest.raises(LayoutConfigInvalid):
        layout_document([A], LayoutConfig(cells_per_line=0))


cell_strategy = st.builds(
    BrailleCell,
    st.frozensets(st.integers(min_value=1, max_value=6), max_size=6))
stream_strategy = st.lists(
    st.one_of(cell_strategy, st.just(LINE_BREAK)), max_size=300)


@given(stream_strategy)
def test_dot_conservation(stream):
    layout = layout_document(stream)
    expected = sum(len(item.dots) for item in stream if item is not LINE_BREAK)
    assert layout.dot_count == expected


@given(stream_strategy)
def test_width_and_page_bounds(stream):
    cfg = LayoutConfig(cells_per_line=7, lines_per_page=3,
                       cell_pitch_mm=10.0, page_width_mm=80.0)
    layout = layout_document(stream, cfg)
    for page in layout.pages:
        assert len(page.lines) <= cfg.lines_per_page
        for line in page.lines:
            assert len(line) <= cfg.cells_per_line
        for x, y in page.dots:
            assert 0.0 <= x <= cfg.page_width_mm
            assert y >= 0.0


@given(st.lists(cell_strategy, max_size=24))
def test_dot_x_strictly_increasing_in_column_side_order(line):
    cfg = DEFAULT_LAYOUT
    for row in dot_rows_of_line(line):
        xs = [cfg.margin_mm + column * cfg.cell_pitch_mm
              + (cfg.dot_pair_spacing_mm if side is Side.RIGHT else 0.0)
              for column, side in row]
        assert all(a < b for a, b in zip(xs, xs[1:]))


def test_no_duplicate_dot_coordinates():
    layout = layout_document([FULL] * 48 + [LINE_BREAK] + [FULL] * 24)
    page = layout.pages[0]
    assert len(set(page.dots)) == len(page.dots)


def test_dot_rows_examples():
    assert dot_rows_of_line([A]) == [[(0, Side.LEFT)], [], []]
    rows = dot_rows_of_line([FULL])
    assert all(row == [(0, Side.LEFT), (0, Side.RIGHT)] for row in rows)
    rows = dot_rows_of_line([A, BrailleCell.of(4)])
    assert rows == [[(0, Side.LEFT), (1, Side.RIGHT)], [], []]


@given(st.lists(cell_strategy, max_size=24))
def test_dot_rows_reassemble_line(line):
    rows = dot_rows_of_line(line)
    rebuilt = [set() for _ in line]
    for k, row in enumerate(rows):
        for column, side in row:
            rebuilt[column].add(k + 1 + (3 if side is Side.RIGHT else 0))
    assert rebuilt == [set(cell.dots) for cell in line]


def test_dots_csv_format():
    text = dots_csv(layout_document([A, BLANK, BrailleCell.of(6)]))
    lines = text.splitlines()
    assert lines[0] == "page,x_mm,y_mm"
    assert lines[1] == "1,5.000,0.000"
    assert lines[2] == "1,31.000,8.000"   # dot 6: col 2 right side, bottom row
    assert text.endswith("\n")
