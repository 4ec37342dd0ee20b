"""Serial handshake between the print-head controller and the carriage.

The print module (P) punches dots and, after each character or line, sends a
single byte to the carriage module (C), which moves the head or performs the
reset and answers with an ACK.  Byte values are fixed so an alternate
implementation can interoperate:

    0x01  advance one character spacing
    0x02  line reset (head home, paper feed one line pitch)
    0x06  ACK

The default channel is lossless FIFO.  A drop probability can be injected
for experiments; no retransmission is modelled, so a lossy channel simply
deadlocks the sender, which is the observable failure mode.
"""

from __future__ import annotations

from collections import deque

from ..errors import HeadOutOfRange, ProtocolViolation, UnknownByte
from ..layout import LayoutConfig, dot_xy
from ..program import AdvanceCell, LineReset, Punch
from .timing import TimingConfig

BYTE_ADVANCE = 0x01
BYTE_RESET = 0x02
BYTE_ACK = 0x06


class SerialChannel:
    """Two FIFO byte queues, one per direction."""

    def __init__(self, drop_probability: float = 0.0, rng=None):
        self.p_to_c: deque[int] = deque()
        self.c_to_p: deque[int] = deque()
        self.drop_probability = drop_probability
        self._rng = rng

    def _delivered(self) -> bool:
        if self.drop_probability <= 0.0 or self._rng is None:
            return True
        return self._rng.random() >= self.drop_probability

    def send_to_c(self, byte: int) -> None:
        if self._delivered():
            self.p_to_c.append(byte)

    def send_to_p(self, byte: int) -> None:
        if self._delivered():
            self.c_to_p.append(byte)


def p_module_step(state, cmd, channel: SerialChannel,
                  layout_cfg: LayoutConfig, timing_cfg: TimingConfig,
                  dot_sink=None) -> None:
    """Execute one print-module command against the machine state.

    Punch commands swing the matching servo to +/-90 degrees, form the dot at
    the head's current cell, and return the servo to rest.  Advance and reset
    only transmit their byte; the carriage acts when it consumes it, and the
    module stays blocked (awaiting_ack) until the ACK arrives.
    """
    if state.awaiting_ack:
        raise ProtocolViolation(f"{cmd!r} issued while a byte is unacknowledged")
    if isinstance(cmd, Punch):
        if state.head_column >= layout_cfg.cells_per_line:
            raise HeadOutOfRange(f"punch at column {state.head_column}, "
                                 f"line holds {layout_cfg.cells_per_line} cells")
        dot = cmd.dot
        servo = (dot - 1) % 3
        state.servo_angles[servo] = 90.0 if dot >= 4 else -90.0
        x, y = dot_xy(state.line_index, state.head_column, dot, layout_cfg)
        if dot_sink is not None:
            dot_sink(x, y)
        state.servo_angles[servo] = 0.0
        state.clock_s += timing_cfg.punch_s
    elif isinstance(cmd, AdvanceCell):
        channel.send_to_c(BYTE_ADVANCE)
        state.awaiting_ack = True
    elif isinstance(cmd, LineReset):
        channel.send_to_c(BYTE_RESET)
        state.awaiting_ack = True
    else:
        raise TypeError(f"p_module_step cannot execute {cmd!r}")


def c_module_step(state, channel: SerialChannel,
                  layout_cfg: LayoutConfig, timing_cfg: TimingConfig) -> None:
    """Consume one byte from the print module and act on the carriage."""
    byte = channel.p_to_c.popleft()
    if byte == BYTE_ADVANCE:
        if state.head_column + 1 > layout_cfg.cells_per_line:
            raise HeadOutOfRange(f"advance past column {layout_cfg.cells_per_line}")
        state.head_column += 1
        state.clock_s += timing_cfg.advance_s
    elif byte == BYTE_RESET:
        state.head_column = 0
        state.line_index += 1
        # product form, not accumulation: keeps paper position exactly equal
        # to the layout formula for any pitch
        state.paper_y_mm = state.line_index * layout_cfg.line_pitch_mm
        state.clock_s += timing_cfg.reset_s
    else:
        raise UnknownByte(f"0x{byte:02x}")
    channel.send_to_p(BYTE_ACK)


def p_module_take_ack(state, channel: SerialChannel) -> None:
    byte = channel.c_to_p.popleft()
    if byte != BYTE_ACK:
        raise UnknownByte(f"expected ACK, got 0x{byte:02x}")
    state.awaiting_ack = False
