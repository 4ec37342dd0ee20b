"""Device command streams for the two printer architectures.

P1 drives a punch head: dots are formed one cell at a time, the head advances
one cell pitch per character and a line reset returns it home while the paper
feeds one line.  P2 drives an extruder trolley: dots are deposited a row at a
time at absolute dot columns while the paper feeds row by row.

Programs serialize to one command per line (`PUNCH TOP LEFT`, `ADVANCE`,
`RESET`, `PAUSE`, `WAITTEMP`, `MOVE 3`, `EXTRUDE`, `FEED`) in `.p1cmd` /
`.p2cmd` files; parse_program inverts serialize_program exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ProgramParseError
from .layout import Side


class Backend(enum.Enum):
    P1 = "p1"
    P2 = "p2"


class Row(enum.Enum):
    TOP = "TOP"
    MID = "MID"
    BOTTOM = "BOTTOM"


_ROW_INDEX = {Row.TOP: 0, Row.MID: 1, Row.BOTTOM: 2}


class _Singleton:
    """No-argument commands are interned; command streams hold millions of
    them and the executors cache per-instance lookups."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance


@dataclass(frozen=True)
class Punch:
    """Form one dot at the current head cell; (row, side) covers dots 1-6."""

    row: Row
    side: Side

    @property
    def dot(self) -> int:
        return _ROW_INDEX[self.row] + 1 + (3 if self.side is Side.RIGHT else 0)

    @classmethod
    def from_dot(cls, dot: int) -> "Punch":
        if not 1 <= dot <= 6:
            raise ValueError(f"dot must be 1..6, got {dot}")
        return _PUNCHES[dot - 1]


_PUNCHES = tuple(
    Punch([Row.TOP, Row.MID, Row.BOTTOM][(d - 1) % 3],
          Side.RIGHT if d >= 4 else Side.LEFT)
    for d in range(1, 7))


@dataclass(frozen=True)
class AdvanceCell(_Singleton):
    pass


@dataclass(frozen=True)
class LineReset(_Singleton):
    pass


@dataclass(frozen=True)
class PagePause(_Singleton):
    pass


@dataclass(frozen=True)
class WaitTemp(_Singleton):
    pass


@dataclass(frozen=True)
class MoveTo:
    column: int  # absolute dot column, 2*cell_column + (1 if right side)


@dataclass(frozen=True)
class Extrude(_Singleton):
    pass


@dataclass(frozen=True)
class FeedRow(_Singleton):
    pass


@lru_cache(maxsize=None)  # bounded by the widest line ever laid out
def move_to(column: int) -> MoveTo:
    return MoveTo(column)


P1Command = Punch | AdvanceCell | LineReset | PagePause
P2Command = WaitTemp | MoveTo | Extrude | FeedRow | PagePause

_P1_TYPES = (Punch, AdvanceCell, LineReset, PagePause)
_P2_TYPES = (WaitTemp, MoveTo, Extrude, FeedRow, PagePause)


@dataclass(frozen=True)
class DeviceProgram:
    backend: Backend
    commands: tuple

    def __len__(self) -> int:
        return len(self.commands)


def _build_text(cmd) -> str:
    if isinstance(cmd, Punch):
        return f"PUNCH {cmd.row.value} {cmd.side.value.upper()}"
    if isinstance(cmd, AdvanceCell):
        return "ADVANCE"
    if isinstance(cmd, LineReset):
        return "RESET"
    if isinstance(cmd, PagePause):
        return "PAUSE"
    if isinstance(cmd, WaitTemp):
        return "WAITTEMP"
    if isinstance(cmd, MoveTo):
        return f"MOVE {cmd.column}"
    if isinstance(cmd, Extrude):
        return "EXTRUDE"
    if isinstance(cmd, FeedRow):
        return "FEED"
    raise TypeError(f"not a device command: {cmd!r}")


def command_text(cmd) -> str:
    # cached on the instance; interning makes this a near-constant table
    try:
        return cmd._text
    except AttributeError:
        text = _build_text(cmd)
        object.__setattr__(cmd, "_text", text)
        return text


def serialize_program(program: DeviceProgram) -> str:
    """One command per line, LF endings."""
    return "".join(command_text(c) + "\n" for c in program.commands)


def parse_program(text: str, backend: Backend | None = None) -> DeviceProgram:
    """Parse a serialized command stream back into a program.

    The backend is inferred from the verbs when unambiguous; pass it
    explicitly for empty or pause-only streams.
    """
    commands = []
    inferred: Backend | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        verb, args = parts[0], parts[1:]
        try:
            cmd, cmd_backend = _parse_command(verb, args)
        except ProgramParseError as exc:
            raise ProgramParseError(f"line {lineno}: {exc}") from None
        if cmd_backend is not None:
            if inferred is None:
                inferred = cmd_backend
            elif inferred is not cmd_backend:
                raise ProgramParseError(
                    f"line {lineno}: {verb} belongs to {cmd_backend.value}, "
                    f"stream already uses {inferred.value}")
        commands.append(cmd)
    resolved = backend or inferred
    if resolved is None:
        raise ProgramParseError("backend not inferable from stream; pass it explicitly")
    if inferred is not None and backend is not None and inferred is not backend:
        raise ProgramParseError(f"stream uses {inferred.value} verbs, expected {backend.value}")
    return DeviceProgram(backend=resolved, commands=tuple(commands))


def _parse_command(verb: str, args: list[str]):
    def need(n):
        if len(args) != n:
            raise ProgramParseError(f"{verb} takes {n} argument(s), got {len(args)}")

    if verb == "PUNCH":
        need(2)
        try:
            row = Row(args[0])
        except ValueError:
            raise ProgramParseError(f"unknown punch row {args[0]!r}")
        if args[1] not in ("LEFT", "RIGHT"):
            raise ProgramParseError(f"unknown punch side {args[1]!r}")
        return Punch.from_dot(Punch(row, Side(args[1].lower())).dot), Backend.P1
    if verb == "ADVANCE":
        need(0)
        return AdvanceCell(), Backend.P1
    if verb == "RESET":
        need(0)
        return LineReset(), Backend.P1
    if verb == "PAUSE":
        need(0)
        return PagePause(), None
    if verb == "WAITTEMP":
        need(0)
        return WaitTemp(), Backend.P2
    if verb == "MOVE":
        need(1)
        try:
            column = int(args[0])
        except ValueError:
            raise ProgramParseError(f"MOVE argument must be an integer, got {args[0]!r}")
        if column < 0:
            raise ProgramParseError("MOVE column must be non-negative")
        return move_to(column), Backend.P2
    if verb == "EXTRUDE":
        need(0)
        return Extrude(), Backend.P2
    if verb == "FEED":
        need(0)
        return FeedRow(), Backend.P2
    raise ProgramParseError(f"unknown command {verb!r}")


def validate_program(program: DeviceProgram, cells_per_line: int | None = None) -> None:
    """Check the structural invariants a well-formed stream satisfies."""
    if program.backend is Backend.P1:
        types = _P1_TYPES
        pending_punch = False
        for i, cmd in enumerate(program.commands):
            if not isinstance(cmd, types):
                raise ProgramParseError(f"command {i}: {cmd!r} is not a P1 command")
            if isinstance(cmd, Punch):
                pending_punch = True
            elif isinstance(cmd, (AdvanceCell, LineReset)):
                pending_punch = False
            elif pending_punch:  # PagePause with punches not yet terminated
                raise ProgramParseError(f"command {i}: punch run not terminated before page pause")
        if pending_punch:
            raise ProgramParseError("punch run not terminated at end of program")
    else:
        warmed = False
        for i, cmd in enumerate(program.commands):
            if not isinstance(cmd, _P2_TYPES):
                raise ProgramParseError(f"command {i}: {cmd!r} is not a P2 command")
            if isinstance(cmd, WaitTemp):
                warmed = True
            elif isinstance(cmd, PagePause):
                warmed = False
            elif isinstance(cmd, Extrude) and not warmed:
                raise ProgramParseError(f"command {i}: extrude without a prior WAITTEMP on this page")
            elif isinstance(cmd, MoveTo) and cells_per_line is not None:
                if cmd.column >= 2 * cells_per_line:
                    raise ProgramParseError(
                        f"command {i}: MOVE {cmd.column} beyond line bound {2 * cells_per_line - 1}")


# Numeric opcodes shared with the compiled kernel (dotpress/sim/_fastsim.pyx
# keeps a matching table; test_kernel_parity asserts they agree).
OP_PUNCH = 1
OP_ADVANCE = 2
OP_RESET = 3
OP_PAUSE = 4
OP_WAITTEMP = 5
OP_MOVE = 6
OP_EXTRUDE = 7
OP_FEED = 8

OPCODES = {
    "PUNCH": OP_PUNCH, "ADVANCE": OP_ADVANCE, "RESET": OP_RESET, "PAUSE": OP_PAUSE,
    "WAITTEMP": OP_WAITTEMP, "MOVE": OP_MOVE, "EXTRUDE": OP_EXTRUDE, "FEED": OP_FEED,
}


def _build_packed(cmd) -> int:
    if isinstance(cmd, Punch):
        return (OP_PUNCH << 24) | cmd.dot
    if isinstance(cmd, AdvanceCell):
        return OP_ADVANCE << 24
    if isinstance(cmd, LineReset):
        return OP_RESET << 24
    if isinstance(cmd, PagePause):
        return OP_PAUSE << 24
    if isinstance(cmd, WaitTemp):
        return OP_WAITTEMP << 24
    if isinstance(cmd, MoveTo):
        if not 0 <= cmd.column < (1 << 24):
            raise ValueError(f"MOVE column out of range: {cmd.column}")
        return (OP_MOVE << 24) | cmd.column
    if isinstance(cmd, Extrude):
        return OP_EXTRUDE << 24
    if isinstance(cmd, FeedRow):
        return OP_FEED << 24
    raise TypeError(f"not a device command: {cmd!r}")


def _packed_token(cmd) -> int:
    try:
        return cmd._packed
    except AttributeError:
        packed = _build_packed(cmd)
        object.__setattr__(cmd, "_packed", packed)
        return packed


def tokenize_program(program: DeviceProgram) -> tuple[np.ndarray, np.ndarray]:
    """Lower a program to (opcode, argument) arrays for the fast kernel."""
    packed = np.fromiter(map(_packed_token, program.commands),
                         dtype=np.int32, count=len(program.commands))
    return ((packed >> 24).astype(np.int32, copy=False),
            (packed & 0xFFFFFF).astype(np.int32, copy=False))
