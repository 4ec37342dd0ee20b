"""Deterministic printer simulator: mechanics, protocol, thermal and timing.

simulate_job picks the compiled kernel when the extension built, otherwise
the pure-Python reference executor; both yield bit-identical results.
"""

from .machine import (EmbossedPage, LiveResult, LiveSession, MachineState,
                      METHOD_EMBOSSED, METHOD_EXTRUDED, P1Stepper, P2Stepper,
                      SimResult, estimate_time, kernel_name, ledger_csv,
                      pages_csv, simulate_job)
from .protocol import (BYTE_ACK, BYTE_ADVANCE, BYTE_RESET, SerialChannel,
                       c_module_step, p_module_step, p_module_take_ack)
from .thermal import (DEFAULT_THERMAL, ThermalConfig, ThermalState,
                      initial_state, rise_time_to_band_s, step_values,
                      thermal_step)
from .timing import DEFAULT_TIMING, TimingConfig

__all__ = [
    "EmbossedPage", "LiveResult", "LiveSession", "MachineState",
    "METHOD_EMBOSSED", "METHOD_EXTRUDED", "P1Stepper", "P2Stepper",
    "SimResult", "estimate_time", "kernel_name", "ledger_csv", "pages_csv",
    "simulate_job",
    "BYTE_ACK", "BYTE_ADVANCE", "BYTE_RESET", "SerialChannel",
    "c_module_step", "p_module_step", "p_module_take_ack",
    "DEFAULT_THERMAL", "ThermalConfig", "ThermalState", "initial_state",
    "rise_time_to_band_s", "step_values", "thermal_step",
    "DEFAULT_TIMING", "TimingConfig",
]
