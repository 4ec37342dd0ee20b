"""Compile a page layout into a device program for either backend.

P1 is character based: all dots of one cell are punched (fixed order, dot 1
to 6) before the head advances, and every line ends in a reset that homes
the head and feeds the paper one line.  P2 is line based: each character
line prints as three dot rows swept left to right, with a paper feed after
each row; the third feed covers the remaining line pitch so the next
baseline lands one full line down.  Both backends place the exact same dot
set; only the order differs.
"""

from __future__ import annotations

from .layout import PageLayout, Side, dot_rows_of_line
from .program import (AdvanceCell, Backend, DeviceProgram, Extrude, FeedRow,
                      LineReset, PagePause, Punch, WaitTemp, move_to)

# Feeds per character line: after row 0, after row 1, and the line-remainder
# feed after row 2.  The simulator's line bookkeeping gives the third feed
# its (line_pitch - 2 * dot_row_pitch) length.
FEEDS_PER_LINE = 3


def cell_commands_p1(cell) -> list:
    """Punches for one cell in fixed dot order, then the advance."""
    cmds: list = [Punch.from_dot(d) for d in sorted(cell.dots)]
    cmds.append(AdvanceCell())
    return cmds


def gen_p1(layout: PageLayout) -> DeviceProgram:
    commands: list = []
    for page_index, page in enumerate(layout.pages):
        if page_index:
            commands.append(PagePause())
        for line in page.lines:
            for cell in line:
                commands.extend(cell_commands_p1(cell))
            commands.append(LineReset())
    return DeviceProgram(backend=Backend.P1, commands=tuple(commands))


def line_commands_p2(line) -> list:
    """Three row sweeps plus their feeds; blank lines compile to feeds only."""
    cmds: list = []
    if any(cell.dots for cell in line):
        for row in dot_rows_of_line(line):
            for column, side in row:
                cmds.append(move_to(2 * column + (1 if side is Side.RIGHT else 0)))
                cmds.append(Extrude())
            cmds.append(FeedRow())
    else:
        cmds.extend(FeedRow() for _ in range(FEEDS_PER_LINE))
    return cmds


def gen_p2(layout: PageLayout) -> DeviceProgram:
    commands: list = []
    for page_index, page in enumerate(layout.pages):
        if page_index:
            commands.append(PagePause())
        commands.append(WaitTemp())
        for line in page.lines:
            commands.extend(line_commands_p2(line))
    return DeviceProgram(backend=Backend.P2, commands=tuple(commands))
