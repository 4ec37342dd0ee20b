"""Pagination and page geometry.

Cell streams are hard-wrapped into a page grid, and every dot resolves to a
physical (x, y) position in millimetres.  The coordinate formula here is the
single authority; the simulator reproduces it term for term so dot positions
compare exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cells import LINE_BREAK, BrailleCell, CellStream
from .errors import LayoutConfigInvalid


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class LayoutConfig:
    cells_per_line: int = 24
    lines_per_page: int = 25
    cell_pitch_mm: float = 10.0
    line_pitch_mm: float = 10.0
    dot_pair_spacing_mm: float = 6.0
    dot_row_pitch_mm: float = 4.0
    page_width_mm: float = 245.0
    margin_mm: float = 5.0

    def validate(self) -> "LayoutConfig":
        if self.cells_per_line < 1 or self.lines_per_page < 1:
            raise LayoutConfigInvalid("counts must be >= 1")
        lengths = (self.cell_pitch_mm, self.line_pitch_mm, self.dot_pair_spacing_mm,
                   self.dot_row_pitch_mm, self.page_width_mm, self.margin_mm)
        if any(v <= 0 for v in lengths):
            raise LayoutConfigInvalid("lengths must be positive")
        if self.margin_mm + self.cells_per_line * self.cell_pitch_mm > self.page_width_mm:
            raise LayoutConfigInvalid(
                f"line of {self.cells_per_line} cells at {self.cell_pitch_mm} mm pitch "
                f"does not fit page width {self.page_width_mm} mm")
        if self.dot_pair_spacing_mm >= self.cell_pitch_mm:
            raise LayoutConfigInvalid("dot pair spacing must be below cell pitch")
        if 2 * self.dot_row_pitch_mm >= self.line_pitch_mm:
            raise LayoutConfigInvalid("cell height (2 x dot row pitch) must fit under line pitch")
        return self


DEFAULT_LAYOUT = LayoutConfig()


def dot_xy(line_index: int, column: int, dot: int, cfg: LayoutConfig) -> tuple[float, float]:
    """Physical centre of one dot of the cell at (line_index, column).

    Term order matters: the simulator computes the same expressions so the
    results are bit-identical.
    """
    x = cfg.margin_mm + column * cfg.cell_pitch_mm
    if dot >= 4:
        x += cfg.dot_pair_spacing_mm
    y = line_index * cfg.line_pitch_mm + ((dot - 1) % 3) * cfg.dot_row_pitch_mm
    return x, y


@dataclass(frozen=True)
class LineClosed:
    cells: tuple[BrailleCell, ...]


@dataclass(frozen=True)
class PageClosed:
    pass


class LineBuilder:
    """Incremental hard-wrap and pagination engine.

    Feeding cells and break markers yields LineClosed/PageClosed events in
    the order the printed artefacts appear.  Both batch layout and the live
    typewriter session run on this, which is what makes the two modes emit
    identical command streams.
    """

    def __init__(self, cells_per_line: int, lines_per_page: int | None = None):
        self.cells_per_line = cells_per_line
        self.lines_per_page = lines_per_page
        self._line: list[BrailleCell] = []
        self._lines_in_page = 0
        self._anchored = False
        self._done = False

    def _anchor(self) -> list:
        # A line claims its page slot at the first cell (or at an explicit
        # empty-line close); a full page is closed exactly then.
        if self._anchored:
            return []
        self._anchored = True
        if self.lines_per_page is not None and self._lines_in_page == self.lines_per_page:
            self._lines_in_page = 0
            return [PageClosed()]
        return []

    def _close_line(self) -> list:
        ev = [LineClosed(tuple(self._line))]
        self._line = []
        self._lines_in_page += 1
        self._anchored = False
        return ev

    def push_cell(self, cell: BrailleCell) -> list:
        events = []
        if len(self._line) == self.cells_per_line:
            events += self._close_line()
        events += self._anchor()
        self._line.append(cell)
        return events

    def push_break(self) -> list:
        events = self._anchor()
        events += self._close_line()
        return events

    def finish(self) -> list:
        if self._done:
            raise RuntimeError("LineBuilder.finish called twice")
        self._done = True
        events = []
        if self._line:
            events += self._close_line()
        events.append(PageClosed())
        return events


@dataclass(frozen=True)
class Page:
    number: int  # 1-based
    lines: tuple[tuple[BrailleCell, ...], ...]
    dots: tuple[tuple[float, float], ...]

    @property
    def dot_count(self) -> int:
        return len(self.dots)


@dataclass(frozen=True)
class PageLayout:
    cfg: LayoutConfig
    pages: tuple[Page, ...]

    @property
    def dot_count(self) -> int:
        return sum(p.dot_count for p in self.pages)


def layout_document(cells: CellStream, cfg: LayoutConfig = DEFAULT_LAYOUT) -> PageLayout:
    """Paginate a cell stream and resolve dot coordinates.

    Hard wrap at cells_per_line, explicit breaks force a new line, page
    break after lines_per_page lines.  An empty document yields one empty
    page so printing "" is a no-op job rather than an error.
    """
    cfg.validate()
    builder = LineBuilder(cfg.cells_per_line, cfg.lines_per_page)
    pages: list[Page] = []
    current: list[tuple[BrailleCell, ...]] = []

    def drain(events):
        nonlocal current
        for ev in events:
            if isinstance(ev, LineClosed):
                current.append(ev.cells)
            else:
                pages.append(_build_page(len(pages) + 1, current, cfg))
                current = []

    for item in cells:
        if item is LINE_BREAK:
            drain(builder.push_break())
        else:
            drain(builder.push_cell(item))
    drain(builder.finish())
    return PageLayout(cfg=cfg, pages=tuple(pages))


def _build_page(number: int, lines: list, cfg: LayoutConfig) -> Page:
    dots = []
    for line_index, line in enumerate(lines):
        for column, cell in enumerate(line):
            for d in sorted(cell.dots):
                dots.append(dot_xy(line_index, column, d, cfg))
    return Page(number=number, lines=tuple(lines), dots=tuple(dots))


def dot_rows_of_line(line) -> list[list[tuple[int, Side]]]:
    """Split one line of cells into its three printable dot rows.

    Row k holds, in ascending (column, side) order, every position whose
    cell contains dot k+1 (left) or dot k+4 (right).
    """
    rows: list[list[tuple[int, Side]]] = [[], [], []]
    for column, cell in enumerate(line):
        for k in range(3):
            if (k + 1) in cell.dots:
                rows[k].append((column, Side.LEFT))
            if (k + 4) in cell.dots:
                rows[k].append((column, Side.RIGHT))
    return rows


def dots_csv(layout: PageLayout) -> str:
    """Dot list as CSV `page,x_mm,y_mm` with 3-decimal coordinates."""
    out = ["page,x_mm,y_mm"]
    for page in layout.pages:
        for x, y in page.dots:
            out.append(f"{page.number},{x:.3f},{y:.3f}")
    return "\n".join(out) + "\n"
