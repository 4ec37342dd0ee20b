"""The compiled kernel and the pure-Python reference must agree bit for bit."""

import pytest

from conftest import corpus
from dotpress.cells import encode_text
from dotpress.codegen import gen_p1, gen_p2
from dotpress.errors import HeadOutOfRange, ThermalGateViolation
from dotpress.layout import LayoutConfig, layout_document
from dotpress.program import (OPCODES, AdvanceCell, Backend, DeviceProgram,
                              Extrude, MoveTo, WaitTemp)
from dotpress.sim import simulate_job

fast = pytest.importorskip("dotpress.sim._fastsim",
                           reason="compiled kernel not built")


def test_opcode_tables_agree():
    assert dict(fast.OPCODES) == OPCODES


def both(program, **kw):
    return (simulate_job(program, use_kernel=True, **kw),
            simulate_job(program, use_kernel=False, **kw))


def assert_identical(a, b):
    assert a.backend == b.backend
    assert a.total_time_s == b.total_time_s          # bitwise: == on floats
    assert a.per_cell_times == b.per_cell_times
    assert a.ledger == b.ledger
    assert len(a.pages) == len(b.pages)
    for pa, pb in zip(a.pages, b.pages):
        assert pa == pb                              # same dots, same order


def test_parity_on_corpus():
    for doc in corpus(40):
        layout = layout_document(encode_text(doc))
        for gen in (gen_p1, gen_p2):
            a, b = both(gen(layout))
            assert_identical(a, b)


def test_parity_on_awkward_geometry():
    cfg = LayoutConfig(cells_per_line=9, lines_per_page=3, cell_pitch_mm=9.7,
                       line_pitch_mm=10.1, dot_pair_spacing_mm=4.3,
                       dot_row_pitch_mm=3.7, page_width_mm=95.0, margin_mm=1.1)
    layout = layout_document(encode_text("the quick brown fox\n0123456789!?"), cfg)
    for gen in (gen_p1, gen_p2):
        a, b = both(gen(layout), layout_cfg=cfg)
        assert_identical(a, b)


def test_parity_without_recording():
    doc = corpus(10)[2]
    layout = layout_document(encode_text(doc))
    for gen in (gen_p1, gen_p2):
        a, b = both(gen(layout), record_dots=False)
        assert a.total_time_s == b.total_time_s
        assert a.pages == b.pages  # both empty


def test_parity_of_pause_callbacks():
    cfg = LayoutConfig(lines_per_page=2)
    layout = layout_document(encode_text("a\nb\nc\nd\ne"), cfg)
    for gen in (gen_p1, gen_p2):
        seen_fast, seen_pure = [], []
        simulate_job(gen(layout), cfg, use_kernel=True, on_page_pause=seen_fast.append)
        simulate_job(gen(layout), cfg, use_kernel=False, on_page_pause=seen_pure.append)
        assert seen_fast == seen_pure == [1, 2]


@pytest.mark.parametrize("program,exc", [
    (DeviceProgram(Backend.P2, (MoveTo(0), Extrude())), ThermalGateViolation),
    (DeviceProgram(Backend.P2, (WaitTemp(), MoveTo(99))), HeadOutOfRange),
    (DeviceProgram(Backend.P1, tuple(AdvanceCell() for _ in range(25))), HeadOutOfRange),
])
def test_error_parity(program, exc):
    with pytest.raises(exc):
        simulate_job(program, use_kernel=True)
    with pytest.raises(exc):
        simulate_job(program, use_kernel=False)


def test_foreign_command_rejected_by_both():
    program = DeviceProgram(Backend.P1, (WaitTemp(),))
    with pytest.raises(TypeError):
        simulate_job(program, use_kernel=True)
    with pytest.raises(TypeError):
        simulate_job(program, use_kernel=False)


def test_env_var_forces_pure(monkeypatch):
    from dotpress.sim.machine import kernel_name
    monkeypatch.setenv("DOTPRESS_PURE", "1")
    assert kernel_name() == "pure"
    monkeypatch.delenv("DOTPRESS_PURE")
    assert kernel_name() == "compiled"
