"""dotpress: text-to-Braille print toolchain.

Pipeline: text -> Braille cells -> paginated dot geometry -> device command
stream (punch or extrusion backend) -> deterministic simulator producing
embossed pages, a time ledger and cost estimates.
"""

from .cells import (BLANK, DEFAULT_POLICY, LINE_BREAK, BrailleCell,
                    EncodingPolicy, UnknownCharPolicy, UppercasePolicy,
                    decode_cells, encode_char, encode_text, to_brf)
from .codegen import gen_p1, gen_p2
from .layout import (DEFAULT_LAYOUT, LayoutConfig, PageLayout, Side,
                     dot_rows_of_line, dots_csv, layout_document)
from .program import (Backend, DeviceProgram, parse_program,
                      serialize_program)
from .sim import (SimResult, TimingConfig, ThermalConfig, estimate_time,
                  kernel_name, simulate_job)

__version__ = "0.1.0"

__all__ = [
    "BLANK", "DEFAULT_POLICY", "LINE_BREAK", "BrailleCell", "EncodingPolicy",
    "UnknownCharPolicy", "UppercasePolicy", "decode_cells", "encode_char",
    "encode_text", "to_brf",
    "gen_p1", "gen_p2",
    "DEFAULT_LAYOUT", "LayoutConfig", "PageLayout", "Side",
    "dot_rows_of_line", "dots_csv", "layout_document",
    "Backend", "DeviceProgram", "parse_program", "serialize_program",
    "SimResult", "TimingConfig", "ThermalConfig", "estimate_time",
    "kernel_name", "simulate_job",
    "__version__",
]
