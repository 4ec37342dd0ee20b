"""Serial handshake between print and carriage modules."""

import pytest

from dotpress.errors import HeadOutOfRange, ProtocolViolation, UnknownByte
from dotpress.layout import DEFAULT_LAYOUT, Side
from dotpress.program import AdvanceCell, LineReset, Punch, Row
from dotpress.sim.machine import MachineState
from dotpress.sim.protocol import (BYTE_ACK, BYTE_ADVANCE, BYTE_RESET,
                                   SerialChannel, c_module_step,
                                   p_module_step, p_module_take_ack)
from dotpress.sim.timing import DEFAULT_TIMING


def make():
    return MachineState(), SerialChannel()


def test_punch_records_dot_and_time():
    state, channel = make()
    dots = []
    p_module_step(state, Punch(Row.TOP, Side.LEFT), channel,
                  DEFAULT_LAYOUT, DEFAULT_TIMING, lambda x, y: dots.append((x, y)))
    assert dots == [(5.0, 0.0)]
    assert state.clock_s == pytest.approx(0.11)
    assert state.servo_angles == [0.0, 0.0, 0.0]
    assert not channel.p_to_c


def test_advance_sends_exactly_one_byte():
    state, channel = make()
    p_module_step(state, AdvanceCell(), channel, DEFAULT_LAYOUT, DEFAULT_TIMING)
    assert list(channel.p_to_c) == [BYTE_ADVANCE]
    assert state.awaiting_ack


def test_reset_byte_value():
    state, channel = make()
    p_module_step(state, LineReset(), channel, DEFAULT_LAYOUT, DEFAULT_TIMING)
    assert list(channel.p_to_c) == [BYTE_RESET]


def test_punch_while_ack_outstanding_is_violation():
    state, channel = make()
    p_module_step(state, AdvanceCell(), channel, DEFAULT_LAYOUT, DEFAULT_TIMING)
    with pytest.raises(ProtocolViolation):
        p_module_step(state, Punch(Row.TOP, Side.LEFT), channel,
                      DEFAULT_LAYOUT, DEFAULT_TIMING)


def test_second_byte_while_outstanding_is_violation():
    state, channel = make()
    p_module_step(state, AdvanceCell(), channel, DEFAULT_LAYOUT, DEFAULT_TIMING)
    with pytest.raises(ProtocolViolation):
        p_module_step(state, AdvanceCell(), channel, DEFAULT_LAYOUT, DEFAULT_TIMING)


def test_carriage_advance():
    state, channel = make()
    state.head_column = 3
    channel.send_to_c(BYTE_ADVANCE)
    c_module_step(state, channel, DEFAULT_LAYOUT, DEFAULT_TIMING)
    assert state.head_column == 4
    assert state.clock_s == pytest.approx(0.90)
    assert list(channel.c_to_p) == [BYTE_ACK]


def test_carriage_reset_from_line_end():
    state, channel = make()
    state.head_column = 24
    channel.send_to_c(BYTE_RESET)
    c_module_step(state, channel, DEFAULT_LAYOUT, DEFAULT_TIMING)
    assert state.head_column == 0
    assert state.paper_y_mm == 10.0   # exactly one line pitch
    assert state.clock_s == pytest.approx(2.0)


def test_unknown_byte_rejected():
    state, channel = make()
    channel.send_to_c(0xFF)
    with pytest.raises(UnknownByte):
        c_module_step(state, channel, DEFAULT_LAYOUT, DEFAULT_TIMING)


def test_advance_past_line_bound():
    state, channel = make()
    state.head_column = 24
    channel.send_to_c(BYTE_ADVANCE)
    with pytest.raises(HeadOutOfRange):
        c_module_step(state, channel, DEFAULT_LAYOUT, DEFAULT_TIMING)


def test_punch_past_line_bound():
    state, channel = make()
    state.head_column = 24
    with pytest.raises(HeadOutOfRange):
        p_module_step(state, Punch(Row.TOP, Side.LEFT), channel,
                      DEFAULT_LAYOUT, DEFAULT_TIMING)


def test_ack_releases_module():
    state, channel = make()
    p_module_step(state, AdvanceCell(), channel, DEFAULT_LAYOUT, DEFAULT_TIMING)
    c_module_step(state, channel, DEFAULT_LAYOUT, DEFAULT_TIMING)
    p_module_take_ack(state, channel)
    assert not state.awaiting_ack
    # next command is legal again
    p_module_step(state, Punch(Row.MID, Side.RIGHT), channel,
                  DEFAULT_LAYOUT, DEFAULT_TIMING)


def test_channel_is_fifo():
    channel = SerialChannel()
    channel.send_to_c(BYTE_ADVANCE)
    channel.send_to_c(BYTE_RESET)
    assert channel.p_to_c.popleft() == BYTE_ADVANCE
    assert channel.p_to_c.popleft() == BYTE_RESET


def test_lossy_channel_drops():
    class AlwaysDrop:
        def random(self):
            return 0.0

    channel = SerialChannel(drop_probability=1.0, rng=AlwaysDrop())
    channel.send_to_c(BYTE_ADVANCE)
    assert not channel.p_to_c
