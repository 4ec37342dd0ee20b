# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled command executor: the hot inner loop of the simulator.

Semantically identical to the pure-Python steppers in machine.py, down to
the last bit of every double: the coordinate and thermal expressions mirror
dotpress.layout.dot_xy and dotpress.sim.thermal.step_values term for term,
and the build disables FP contraction.  test_kernel_parity holds the two
executors against each other.
"""

from libc.stdint cimport int32_t, int64_t

# must match dotpress.program opcodes
cdef enum Op:
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

# fcfg layout, see machine._simulate_fast
cdef Py_ssize_t F_MARGIN = 0, F_CELL_PITCH = 1, F_PAIR = 2, F_ROW_PITCH = 3
cdef Py_ssize_t F_LINE_PITCH = 4, F_PUNCH_S = 5, F_ADVANCE_S = 6, F_RESET_S = 7
cdef Py_ssize_t F_MOVE_S = 8, F_EXTRUDE_S = 9, F_FEED_S = 10
cdef Py_ssize_t F_BAND_LO = 11, F_BAND_HI = 12, F_AMBIENT = 13, F_POWER = 14
cdef Py_ssize_t F_LOSS = 15, F_CAP = 16, F_STEP = 17

# state_i layout
cdef Py_ssize_t S_HEAD = 0, S_LINE = 1, S_PAGE = 2, S_FEED = 3
cdef Py_ssize_t S_HEATER = 4, S_NDOTS = 5, S_NCELLS = 6


def run(const int32_t[:] ops, const int32_t[:] args, const double[:] fcfg,
        double[:] state_f, int64_t[:] state_i,
        double[:] out_x, double[:] out_y, int32_t[:] out_page,
        double[:] ledger_clock, double[:] cell_times,
        Py_ssize_t start, int64_t cells_per_line, int record):
    """Execute commands from `start`; stop at end, page pause, or error.

    Returns (status, index): status 0 = done, 1 = paused after processing
    command index-1, negative = error code at command `index` (mapped by
    machine._KERNEL_ERRORS).
    """
    cdef Py_ssize_t i = start
    cdef Py_ssize_t n = ops.shape[0]
    cdef int32_t op, arg
    cdef double clock = state_f[0]
    cdef double temp = state_f[1]
    cdef double cell_start = state_f[2]
    cdef int64_t head = state_i[S_HEAD]
    cdef int64_t line = state_i[S_LINE]
    cdef int64_t page = state_i[S_PAGE]
    cdef int64_t feed = state_i[S_FEED]
    cdef int64_t heater = state_i[S_HEATER]
    cdef int64_t ndots = state_i[S_NDOTS]
    cdef int64_t ncells = state_i[S_NCELLS]

    cdef double margin = fcfg[F_MARGIN]
    cdef double cell_pitch = fcfg[F_CELL_PITCH]
    cdef double pair = fcfg[F_PAIR]
    cdef double row_pitch = fcfg[F_ROW_PITCH]
    cdef double line_pitch = fcfg[F_LINE_PITCH]
    cdef double band_lo = fcfg[F_BAND_LO]
    cdef double band_hi = fcfg[F_BAND_HI]
    cdef double ambient = fcfg[F_AMBIENT]
    cdef double power = fcfg[F_POWER]
    cdef double loss = fcfg[F_LOSS]
    cdef double cap = fcfg[F_CAP]
    cdef double tstep = fcfg[F_STEP]

    cdef double x, y, gain
    cdef int64_t dcols
    cdef int status = 0

    while i < n:
        op = ops[i]
        if op == OP_PUNCH:
            arg = args[i]
            if head >= cells_per_line:
                status = -1
                break
            x = margin + head * cell_pitch
            if arg >= 4:
                x = x + pair
            y = line * line_pitch + ((arg - 1) % 3) * row_pitch
            if record:
                out_x[ndots] = x
                out_y[ndots] = y
                out_page[ndots] = <int32_t> page
            ndots += 1
            clock = clock + fcfg[F_PUNCH_S]
        elif op == OP_ADVANCE:
            if head + 1 > cells_per_line:
                status = -2
                break
            head += 1
            clock = clock + fcfg[F_ADVANCE_S]
            cell_times[ncells] = clock - cell_start
            ncells += 1
            cell_start = clock
        elif op == OP_RESET:
            head = 0
            line += 1
            clock = clock + fcfg[F_RESET_S]
            cell_start = clock
        elif op == OP_PAUSE:
            page += 1
            head = 0
            line = 0
            feed = 0
            cell_start = clock
            ledger_clock[i] = clock
            i += 1
            status = 1
            break
        elif op == OP_WAITTEMP:
            while not (band_lo <= temp <= band_hi):
                gain = power if heater else 0.0
                temp = temp + tstep * (gain - loss * (temp - ambient)) / cap
                if temp >= band_hi:
                    heater = 0
                elif temp <= band_lo:
                    heater = 1
                clock = clock + tstep
        elif op == OP_MOVE:
            arg = args[i]
            if arg < 0 or arg >= 2 * cells_per_line:
                status = -3
                break
            dcols = arg - head
            if dcols < 0:
                dcols = -dcols
            clock = clock + fcfg[F_MOVE_S] * dcols
            head = arg
        elif op == OP_EXTRUDE:
            if not (band_lo <= temp <= band_hi):
                status = -4
                break
            x = margin + (head >> 1) * cell_pitch
            if head & 1:
                x = x + pair
            y = line * line_pitch + feed * row_pitch
            if record:
                out_x[ndots] = x
                out_y[ndots] = y
                out_page[ndots] = <int32_t> page
            ndots += 1
            clock = clock + fcfg[F_EXTRUDE_S]
        elif op == OP_FEED:
            if feed < 2:
                feed += 1
            else:
                feed = 0
                line += 1
            clock = clock + fcfg[F_FEED_S]
        else:
            status = -5
            break
        if status != 1:
            ledger_clock[i] = clock
            i += 1

    state_f[0] = clock
    state_f[1] = temp
    state_f[2] = cell_start
    state_i[S_HEAD] = head
    state_i[S_LINE] = line
    state_i[S_PAGE] = page
    state_i[S_FEED] = feed
    state_i[S_HEATER] = heater
    state_i[S_NDOTS] = ndots
    state_i[S_NCELLS] = ncells
    return status, i
