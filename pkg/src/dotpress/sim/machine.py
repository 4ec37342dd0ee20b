"""Deterministic execution of device programs.

Two interchangeable executors produce bit-identical results: a pure-Python
reference that routes every advance/reset byte through the serial handshake,
and an optional compiled kernel (dotpress.sim._fastsim) for bulk jobs.  The
compiled kernel is used automatically when present; set DOTPRESS_PURE=1 (or
pass use_kernel=False) to force the reference path.

Dot coordinates are computed with the exact expressions the layout module
uses, so a simulated job places literally the same floats the layout
resolved; that equality is the pipeline's central correctness oracle.
"""

from __future__ import annotations

import itertools
import logging
import os
import queue
import threading
from dataclasses import dataclass, field

import numpy as np

from ..cells import (DEFAULT_POLICY, LINE_BREAK, EncodingPolicy, encode_char,
                     encode_text)
from ..codegen import cell_commands_p1, gen_p1, gen_p2, line_commands_p2
from ..errors import HeadOutOfRange, ThermalGateViolation
from ..layout import (DEFAULT_LAYOUT, LayoutConfig, LineBuilder, LineClosed,
                      PageClosed, dot_xy, layout_document)
from ..program import (OP_ADVANCE, OP_EXTRUDE, OP_FEED, OP_MOVE, OP_PAUSE,
                       OP_PUNCH, OP_RESET, OP_WAITTEMP, AdvanceCell, Backend,
                       DeviceProgram, Extrude, FeedRow, LineReset, MoveTo,
                       PagePause, WaitTemp, command_text, tokenize_program)
from . import protocol
from .thermal import (DEFAULT_THERMAL, ThermalConfig, ThermalState,
                      initial_state, step_values)
from .timing import DEFAULT_TIMING, TimingConfig

try:
    from . import _fastsim as _fast
except ImportError:
    _fast = None

log = logging.getLogger("dotpress.machine")

METHOD_EMBOSSED = "embossed"
METHOD_EXTRUDED = "extruded"


def kernel_name() -> str:
    """Which executor simulate_job picks by default."""
    return "pure" if _fast is None or os.environ.get("DOTPRESS_PURE") else "compiled"


@dataclass
class MachineState:
    """Mutable state of the simulated machine.

    head_column counts cells for P1 and absolute dot columns for P2.
    paper_y_mm is always line_index * line_pitch (+ row offset for P2), kept
    in product form so positions match the layout formula exactly.
    """

    head_column: int = 0
    line_index: int = 0
    paper_y_mm: float = 0.0
    servo_angles: list[float] = field(default_factory=lambda: [0.0, 0.0, 0.0])
    clock_s: float = 0.0
    awaiting_ack: bool = False
    page_index: int = 0
    feed_phase: int = 0
    thermal: ThermalState | None = None


@dataclass(frozen=True)
class EmbossedPage:
    number: int  # 1-based
    dots: tuple[tuple[float, float, str], ...]

    @property
    def dot_count(self) -> int:
        return len(self.dots)


@dataclass(frozen=True)
class SimResult:
    backend: Backend
    pages: tuple[EmbossedPage, ...]
    total_time_s: float
    per_cell_times: tuple[float, ...]
    ledger: tuple[tuple[str, float], ...]

    @property
    def dot_count(self) -> int:
        return sum(p.dot_count for p in self.pages)


class P1Stepper:
    """Reference executor for punch programs, one command at a time.

    Advance and reset run through the serial channel: the byte is sent, the
    carriage module consumes it and acts, and the ACK releases the print
    module, mirroring the blocking handshake of the two-board design.
    """

    def __init__(self, layout_cfg: LayoutConfig = DEFAULT_LAYOUT,
                 timing_cfg: TimingConfig = DEFAULT_TIMING,
                 record_dots: bool = True):
        self.layout_cfg = layout_cfg
        self.timing_cfg = timing_cfg
        self.record_dots = record_dots
        self.state = MachineState()
        self.channel = protocol.SerialChannel()
        self.dots: list[tuple[float, float, int]] = []
        self.ledger: list[tuple[str, float]] = []
        self.cell_times: list[float] = []
        self._cell_start = 0.0

    def _sink(self, x: float, y: float) -> None:
        if self.record_dots:
            self.dots.append((x, y, self.state.page_index))

    def step(self, cmd) -> None:
        st = self.state
        if isinstance(cmd, PagePause):
            st.page_index += 1
            st.head_column = 0
            st.line_index = 0
            st.paper_y_mm = 0.0
            self._cell_start = st.clock_s
        else:
            protocol.p_module_step(st, cmd, self.channel,
                                   self.layout_cfg, self.timing_cfg, self._sink)
            while self.channel.p_to_c:
                protocol.c_module_step(st, self.channel, self.layout_cfg, self.timing_cfg)
            while self.channel.c_to_p:
                protocol.p_module_take_ack(st, self.channel)
            if isinstance(cmd, AdvanceCell):
                self.cell_times.append(st.clock_s - self._cell_start)
                self._cell_start = st.clock_s
            elif isinstance(cmd, LineReset):
                self._cell_start = st.clock_s
        self.ledger.append((command_text(cmd), st.clock_s))


class P2Stepper:
    """Reference executor for extrusion programs.

    The heater model only advances inside WaitTemp; once the band is entered
    the thermal state holds, so every extrude on the page sees an in-band
    nozzle.  Paper position is tracked as (line, row-phase) indices.
    """

    def __init__(self, layout_cfg: LayoutConfig = DEFAULT_LAYOUT,
                 timing_cfg: TimingConfig = DEFAULT_TIMING,
                 thermal_cfg: ThermalConfig = DEFAULT_THERMAL,
                 record_dots: bool = True):
        self.layout_cfg = layout_cfg
        self.timing_cfg = timing_cfg
        self.thermal_cfg = thermal_cfg
        self.record_dots = record_dots
        self.state = MachineState(thermal=initial_state(thermal_cfg))
        self.dots: list[tuple[float, float, int]] = []
        self.ledger: list[tuple[str, float]] = []
        self.cell_times: list[float] = []

    def _in_band(self) -> bool:
        t = self.state.thermal
        return self.thermal_cfg.band_low_c <= t.temp_c <= self.thermal_cfg.band_high_c

    def step(self, cmd) -> None:
        st = self.state
        cfg = self.layout_cfg
        if isinstance(cmd, WaitTemp):
            temp, heater = st.thermal.temp_c, st.thermal.heater_on
            tc = self.thermal_cfg
            while not (tc.band_low_c <= temp <= tc.band_high_c):
                temp, heater = step_values(temp, heater, tc)
                st.clock_s += tc.step_s
            st.thermal = ThermalState(temp_c=temp, heater_on=heater, cfg=tc)
        elif isinstance(cmd, MoveTo):
            if not 0 <= cmd.column < 2 * cfg.cells_per_line:
                raise HeadOutOfRange(f"MOVE {cmd.column} beyond dot column bound "
                                     f"{2 * cfg.cells_per_line - 1}")
            st.clock_s += self.timing_cfg.move_per_column_s * abs(cmd.column - st.head_column)
            st.head_column = cmd.column
        elif isinstance(cmd, Extrude):
            if not self._in_band():
                raise ThermalGateViolation(
                    f"extrude at {st.thermal.temp_c:.2f} C, band is "
                    f"[{self.thermal_cfg.band_low_c}, {self.thermal_cfg.band_high_c}]")
            dot = st.feed_phase + 1 + (3 if st.head_column & 1 else 0)
            x, y = dot_xy(st.line_index, st.head_column >> 1, dot, cfg)
            if self.record_dots:
                self.dots.append((x, y, st.page_index))
            st.clock_s += self.timing_cfg.extrude_s
        elif isinstance(cmd, FeedRow):
            if st.feed_phase < 2:
                st.feed_phase += 1
            else:
                st.feed_phase = 0
                st.line_index += 1
            st.paper_y_mm = (st.line_index * cfg.line_pitch_mm
                             + st.feed_phase * cfg.dot_row_pitch_mm)
            st.clock_s += self.timing_cfg.feed_s
        elif isinstance(cmd, PagePause):
            st.page_index += 1
            st.head_column = 0
            st.line_index = 0
            st.feed_phase = 0
            st.paper_y_mm = 0.0
        else:
            raise TypeError(f"P2Stepper cannot execute {cmd!r}")
        self.ledger.append((command_text(cmd), st.clock_s))


def _build_pages(dots, n_pages: int, method: str) -> tuple[EmbossedPage, ...]:
    buckets: list[list] = [[] for _ in range(n_pages)]
    for x, y, page in dots:
        buckets[page].append((x, y, method))
    return tuple(EmbossedPage(number=i + 1, dots=tuple(b))
                 for i, b in enumerate(buckets))


def _build_pages_arrays(out_x, out_y, out_page, n_pages: int, method: str) -> tuple[EmbossedPage, ...]:
    # page indices are non-decreasing in execution order
    bounds = np.searchsorted(out_page, np.arange(n_pages + 1))
    pages = []
    for i in range(n_pages):
        lo, hi = int(bounds[i]), int(bounds[i + 1])
        dots = tuple(zip(out_x[lo:hi].tolist(), out_y[lo:hi].tolist(),
                         itertools.repeat(method)))
        pages.append(EmbossedPage(number=i + 1, dots=dots))
    return tuple(pages)


def _stepper_for(program: DeviceProgram, layout_cfg, timing_cfg, thermal_cfg, record_dots):
    if program.backend is Backend.P1:
        return P1Stepper(layout_cfg, timing_cfg, record_dots)
    return P2Stepper(layout_cfg, timing_cfg, thermal_cfg, record_dots)


def _simulate_pure(program, layout_cfg, timing_cfg, thermal_cfg,
                   record_dots, on_page_pause) -> SimResult:
    stepper = _stepper_for(program, layout_cfg, timing_cfg, thermal_cfg, record_dots)
    for cmd in program.commands:
        stepper.step(cmd)
        if isinstance(cmd, PagePause) and on_page_pause is not None:
            on_page_pause(stepper.state.page_index)
    method = METHOD_EMBOSSED if program.backend is Backend.P1 else METHOD_EXTRUDED
    return SimResult(
        backend=program.backend,
        pages=_build_pages(stepper.dots, stepper.state.page_index + 1, method),
        total_time_s=stepper.state.clock_s,
        per_cell_times=tuple(stepper.cell_times),
        ledger=tuple(stepper.ledger),
    )


_KERNEL_ERRORS = {
    -1: (HeadOutOfRange, "punch beyond the line bound"),
    -2: (HeadOutOfRange, "advance beyond the line bound"),
    -3: (HeadOutOfRange, "move beyond the dot column bound"),
    -4: (ThermalGateViolation, "extrude outside the thermal band"),
    -5: (ValueError, "unknown opcode"),
}


_P1_OPS = (OP_PUNCH, OP_ADVANCE, OP_RESET, OP_PAUSE)
_P2_OPS = (OP_WAITTEMP, OP_MOVE, OP_EXTRUDE, OP_FEED, OP_PAUSE)


def _simulate_fast(program, layout_cfg, timing_cfg, thermal_cfg,
                   record_dots, on_page_pause) -> SimResult:
    ops, args = tokenize_program(program)
    n = len(ops)
    allowed = _P1_OPS if program.backend is Backend.P1 else _P2_OPS
    foreign = ~np.isin(ops, allowed)
    if foreign.any():
        i = int(np.argmax(foreign))
        raise TypeError(f"{command_text(program.commands[i])!r} is not a "
                        f"{program.backend.value} command (index {i})")
    n_dots = int(np.count_nonzero(ops == OP_PUNCH) + np.count_nonzero(ops == OP_EXTRUDE))
    n_cells = int(np.count_nonzero(ops == OP_ADVANCE))
    record = 1 if record_dots else 0
    out_n = n_dots if record_dots else 0

    fcfg = np.array([
        layout_cfg.margin_mm, layout_cfg.cell_pitch_mm, layout_cfg.dot_pair_spacing_mm,
        layout_cfg.dot_row_pitch_mm, layout_cfg.line_pitch_mm,
        timing_cfg.punch_s, timing_cfg.advance_s, timing_cfg.reset_s,
        timing_cfg.move_per_column_s, timing_cfg.extrude_s, timing_cfg.feed_s,
        thermal_cfg.band_low_c, thermal_cfg.band_high_c, thermal_cfg.ambient_c,
        thermal_cfg.heater_power_w, thermal_cfg.loss_w_per_c,
        thermal_cfg.heat_capacity_j_per_c, thermal_cfg.step_s,
    ], dtype=np.float64)
    state_f = np.zeros(3, dtype=np.float64)   # clock, temp, cell_start
    state_i = np.zeros(7, dtype=np.int64)     # head, line, page, feed, heater, n_dots, n_cells
    thermal0 = initial_state(thermal_cfg)
    state_f[1] = thermal0.temp_c
    state_i[4] = 1 if thermal0.heater_on else 0

    out_x = np.empty(out_n, dtype=np.float64)
    out_y = np.empty(out_n, dtype=np.float64)
    out_page = np.empty(out_n, dtype=np.int32)
    ledger_clock = np.empty(n, dtype=np.float64)
    cell_times = np.empty(n_cells, dtype=np.float64)

    idx = 0
    while idx < n:
        status, idx = _fast.run(ops, args, fcfg, state_f, state_i,
                                out_x, out_y, out_page, ledger_clock, cell_times,
                                idx, layout_cfg.cells_per_line, record)
        if status < 0:
            exc, what = _KERNEL_ERRORS[status]
            raise exc(f"{what} (command {idx}: {command_text(program.commands[idx])})")
        if status == 1 and on_page_pause is not None:
            on_page_pause(int(state_i[2]))

    n_pages = int(state_i[2]) + 1
    method = METHOD_EMBOSSED if program.backend is Backend.P1 else METHOD_EXTRUDED
    if record_dots:
        pages = _build_pages_arrays(out_x, out_y, out_page, n_pages, method)
    else:
        pages = _build_pages((), n_pages, method)
    return SimResult(
        backend=program.backend,
        pages=pages,
        total_time_s=float(state_f[0]),
        per_cell_times=tuple(cell_times.tolist()),
        ledger=tuple(zip(map(command_text, program.commands),
                         ledger_clock.tolist())),
    )


def simulate_job(program: DeviceProgram,
                 layout_cfg: LayoutConfig = DEFAULT_LAYOUT,
                 timing_cfg: TimingConfig = DEFAULT_TIMING,
                 thermal_cfg: ThermalConfig = DEFAULT_THERMAL,
                 *, record_dots: bool = True,
                 on_page_pause=None,
                 use_kernel: bool | None = None) -> SimResult:
    """Run a program to completion and return pages, time and the ledger.

    on_page_pause(page_number) is invoked at every page pause, after the
    finished page; the simulated clock does not advance while paused.
    Identical inputs give identical outputs regardless of executor.
    """
    layout_cfg.validate()
    timing_cfg.validate()
    thermal_cfg.validate()
    if use_kernel is None:
        use_kernel = kernel_name() == "compiled"
    if use_kernel and _fast is None:
        raise RuntimeError("compiled kernel requested but not built")
    runner = _simulate_fast if use_kernel else _simulate_pure
    return runner(program, layout_cfg, timing_cfg, thermal_cfg,
                  record_dots, on_page_pause)


def estimate_time(text: str, backend: Backend,
                  policy: EncodingPolicy = DEFAULT_POLICY,
                  layout_cfg: LayoutConfig = DEFAULT_LAYOUT,
                  timing_cfg: TimingConfig = DEFAULT_TIMING,
                  thermal_cfg: ThermalConfig = DEFAULT_THERMAL,
                  use_kernel: bool | None = None) -> float:
    """Simulated print time for a document, without materializing pages."""
    cells = encode_text(text, policy)
    layout = layout_document(cells, layout_cfg)
    program = gen_p1(layout) if backend is Backend.P1 else gen_p2(layout)
    result = simulate_job(program, layout_cfg, timing_cfg, thermal_cfg,
                          record_dots=False, use_kernel=use_kernel)
    return result.total_time_s


def pages_csv(pages) -> str:
    """Simulated dot list as CSV `page,x_mm,y_mm,method`."""
    out = ["page,x_mm,y_mm,method"]
    for page in pages:
        for x, y, method in page.dots:
            out.append(f"{page.number},{x:.3f},{y:.3f},{method}")
    return "\n".join(out) + "\n"


def ledger_csv(ledger) -> str:
    """Time ledger as CSV `event,clock_s`."""
    out = ["event,clock_s"]
    for event, clock in ledger:
        out.append(f"{event},{clock:.6f}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class LiveResult:
    program: DeviceProgram
    sim: SimResult
    cells: tuple


class LiveSession:
    """Character-at-a-time printing on a live simulator (typewriter mode).

    Input characters are encoded, compiled and executed as they arrive; the
    commands are pushed through a FIFO queue consumed by a worker thread that
    owns the machine state, so the caller never touches the simulator
    directly.  For the punch backend every character prints immediately; the
    extruder is line based, so its commands flush when a line closes (Enter,
    wrap, or end of session).  A session emits exactly the command stream
    batch printing emits for the same character sequence.
    """

    def __init__(self, backend: Backend,
                 policy: EncodingPolicy = DEFAULT_POLICY,
                 layout_cfg: LayoutConfig = DEFAULT_LAYOUT,
                 timing_cfg: TimingConfig = DEFAULT_TIMING,
                 thermal_cfg: ThermalConfig = DEFAULT_THERMAL):
        layout_cfg.validate()
        timing_cfg.validate()
        thermal_cfg.validate()
        self.backend = backend
        self.policy = policy
        self.layout_cfg = layout_cfg
        self._builder = LineBuilder(layout_cfg.cells_per_line, layout_cfg.lines_per_page)
        self._stepper = (P1Stepper(layout_cfg, timing_cfg) if backend is Backend.P1
                         else P2Stepper(layout_cfg, timing_cfg, thermal_cfg))
        self.commands: list = []
        self.cells: list = []
        self._queue: queue.Queue = queue.Queue()
        self._worker_error: Exception | None = None
        self._worker = threading.Thread(target=self._run_worker, daemon=True)
        self._worker.start()
        self._finished = False
        if backend is Backend.P2:
            self._emit([WaitTemp()])

    def _run_worker(self) -> None:
        while True:
            cmd = self._queue.get()
            try:
                if cmd is None:
                    return
                if self._worker_error is None:
                    self._stepper.step(cmd)
            except Exception as exc:
                self._worker_error = exc
            finally:
                self._queue.task_done()

    def _emit(self, cmds) -> None:
        if self._worker_error is not None:
            raise self._worker_error
        for cmd in cmds:
            self.commands.append(cmd)
            self._queue.put(cmd)

    def _handle_events(self, events, final: bool = False) -> None:
        for ev in events:
            if isinstance(ev, LineClosed):
                if self.backend is Backend.P1:
                    self._emit([LineReset()])
                else:
                    self._emit(line_commands_p2(ev.cells))
            elif isinstance(ev, PageClosed):
                if not final:
                    self._emit([PagePause()])
                    if self.backend is Backend.P2:
                        self._emit([WaitTemp()])

    def type_char(self, ch: str) -> None:
        """Feed one character; Enter closes the line, backspace is refused."""
        if self._finished:
            raise RuntimeError("session already finished")
        if ch in ("\n", "\r"):
            self.cells.append(LINE_BREAK)
            self._handle_events(self._builder.push_break())
            return
        if ch in ("\b", "\x7f"):
            log.warning("backspace ignored: printed dots cannot be unprinted")
            return
        try:
            cells = encode_char(ch, self.policy)
        except Exception as exc:
            log.error("character skipped: %s", exc)
            return
        for cell in cells:
            self.cells.append(cell)
            self._handle_events(self._builder.push_cell(cell))
            if self.backend is Backend.P1:
                self._emit(cell_commands_p1(cell))

    def type_text(self, text: str) -> None:
        for ch in text:
            self.type_char(ch)

    def finish(self) -> LiveResult:
        """Close the final line and page and collect the session result."""
        if self._finished:
            raise RuntimeError("session already finished")
        self._finished = True
        events = self._builder.finish()
        # the trailing PageClosed is the end of the job, not a paper swap
        self._handle_events(events[:-1])
        self._handle_events(events[-1:], final=True)
        self._queue.put(None)
        self._queue.join()
        self._worker.join()
        if self._worker_error is not None:
            raise self._worker_error
        st = self._stepper.state
        method = METHOD_EMBOSSED if self.backend is Backend.P1 else METHOD_EXTRUDED
        sim = SimResult(
            backend=self.backend,
            pages=_build_pages(self._stepper.dots, st.page_index + 1, method),
            total_time_s=st.clock_s,
            per_cell_times=tuple(self._stepper.cell_times),
            ledger=tuple(self._stepper.ledger),
        )
        program = DeviceProgram(backend=self.backend, commands=tuple(self.commands))
        return LiveResult(program=program, sim=sim, cells=tuple(self.cells))
