"""Command-line driver for the print pipeline.

Subcommands: print (batch a .txt file), typewriter (live character-at-a-time
printing from stdin), estimate (time and consumables report), preview
(render an existing dot CSV).  Diagnostics go to stderr; reports to stdout;
artifacts to files.  Exit codes: 0 ok, 2 unsupported character under the
reject policy, 3 configuration invariant failure, 1 other errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import config as cfgmod
from .cells import encode_text, to_brf
from .codegen import gen_p1, gen_p2
from .consumables import estimate_from_dots
from .errors import ConfigError, DotpressError, UnsupportedCharacter
from .layout import layout_document
from .program import Backend, serialize_program
from .render import parse_dot_csv, render_pgm, render_svg
from .sim import LiveSession, kernel_name, ledger_csv, pages_csv, simulate_job

log = logging.getLogger("dotpress.cli")

PAGE_PROMPT = "insert fresh page, press enter"


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE",
                        help=f"key=value config file (or ${cfgmod.ENV_VAR})")
    parser.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                        dest="sets", help="override one config value (repeatable)")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="debug logging on stderr")


def _add_policy_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--reject-unknown", action="store_true",
                        help="fail on unsupported characters instead of substituting blanks")
    parser.add_argument("--capital-signs", action="store_true",
                        help="keep uppercase via capital-sign prefixes instead of folding")


def _add_outputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cmd", metavar="FILE", help="device command stream (.p1cmd/.p2cmd)")
    parser.add_argument("--brf", metavar="FILE", help="ASCII-Braille text")
    parser.add_argument("--dots", metavar="FILE", help="simulated dot CSV (page,x_mm,y_mm,method)")
    parser.add_argument("--ledger", metavar="FILE", help="time ledger CSV (event,clock_s)")
    parser.add_argument("--pgm", metavar="FILE", help="raster preview per page (binary P5)")
    parser.add_argument("--svg", metavar="FILE", help="vector preview per page")


def _configs(args) -> cfgmod.Configs:
    overrides: dict[str, str] = {}
    path = args.config or os.environ.get(cfgmod.ENV_VAR)
    if path:
        overrides.update(cfgmod.parse_config_file(path))
    for option in args.sets:
        key, value = cfgmod.parse_set_option(option)
        overrides[key] = value
    if getattr(args, "reject_unknown", False):
        overrides["policy.unknown_char"] = "reject"
    if getattr(args, "capital_signs", False):
        overrides["policy.uppercase"] = "capital_sign"
    return cfgmod.build_configs(overrides)


def _page_path(base: str, page_number: int, total_pages: int) -> Path:
    path = Path(base)
    if total_pages == 1:
        return path
    return path.with_name(f"{path.stem}.p{page_number}{path.suffix}")


def _write_page_renders(args, pages, cfgs) -> None:
    for page in pages:
        if args.pgm:
            data = render_pgm(page, cfgs.render.dpmm,
                              page_width_mm=cfgs.layout.page_width_mm,
                              dot_radius_mm=cfgs.render.dot_radius_mm)
            _page_path(args.pgm, page.number, len(pages)).write_bytes(data)
        if args.svg:
            text = render_svg(page, page_width_mm=cfgs.layout.page_width_mm,
                              dot_radius_mm=cfgs.render.dot_radius_mm)
            _page_path(args.svg, page.number, len(pages)).write_text(text)


def _write_artifacts(args, program, result, cells, cfgs) -> None:
    if args.cmd:
        Path(args.cmd).write_text(serialize_program(program))
    if args.brf:
        Path(args.brf).write_text(to_brf(cells, cfgs.layout.cells_per_line))
    if args.dots:
        Path(args.dots).write_text(pages_csv(result.pages))
    if args.ledger:
        Path(args.ledger).write_text(ledger_csv(result.ledger))
    _write_page_renders(args, result.pages, cfgs)


def cmd_print(args) -> int:
    cfgs = _configs(args)
    if not any((args.cmd, args.brf, args.dots, args.ledger, args.pgm, args.svg)):
        raise ConfigError("batch print needs at least one output "
                          "(--cmd/--brf/--dots/--ledger/--pgm/--svg)")
    text = Path(args.infile).read_text()
    cells = encode_text(text, cfgs.policy)
    layout = layout_document(cells, cfgs.layout)
    backend = Backend(args.backend)
    program = gen_p1(layout) if backend is Backend.P1 else gen_p2(layout)

    def prompt(page_number: int) -> None:
        print(PAGE_PROMPT, file=sys.stderr)
        sys.stderr.flush()
        sys.stdin.readline()

    result = simulate_job(program, cfgs.layout, cfgs.timing, cfgs.thermal,
                          on_page_pause=None if args.no_pause else prompt)
    _write_artifacts(args, program, result, cells, cfgs)
    print(f"pages: {len(result.pages)}")
    print(f"dots: {result.dot_count}")
    print(f"time_s: {result.total_time_s:.3f}")
    return 0


def cmd_typewriter(args) -> int:
    cfgs = _configs(args)
    backend = Backend(args.backend)
    session = LiveSession(backend, cfgs.policy, cfgs.layout, cfgs.timing, cfgs.thermal)
    log.info("typewriter on %s backend; Ctrl-D ends the session", backend.value)
    while True:
        ch = sys.stdin.read(1)
        if ch == "":
            break
        session.type_char(ch)
    live = session.finish()
    _write_artifacts(args, live.program, live.sim, live.cells, cfgs)
    print(f"pages: {len(live.sim.pages)}")
    print(f"dots: {live.sim.dot_count}")
    print(f"time_s: {live.sim.total_time_s:.3f}")
    return 0


def cmd_estimate(args) -> int:
    cfgs = _configs(args)
    text = Path(args.infile).read_text()
    cells = encode_text(text, cfgs.policy)
    layout = layout_document(cells, cfgs.layout)
    results = {}
    for backend, gen in ((Backend.P1, gen_p1), (Backend.P2, gen_p2)):
        program = gen(layout)
        results[backend] = simulate_job(program, cfgs.layout, cfgs.timing,
                                        cfgs.thermal, record_dots=False)
    sticks = estimate_from_dots(layout.dot_count, cfgs.consumables)
    print(f"pages: {len(layout.pages)}")
    print(f"dots: {layout.dot_count}")
    print(f"p1_time_s: {results[Backend.P1].total_time_s:.3f}")
    print("p1_running_cost: none")
    print(f"p2_time_s: {results[Backend.P2].total_time_s:.3f}")
    print(f"p2_sticks_fractional: {sticks.sticks_fractional:.4f}")
    print(f"p2_sticks_to_buy: {sticks.sticks_to_buy}")
    print(f"p2_cost: ₹{sticks.cost:g}")
    return 0


def cmd_preview(args) -> int:
    cfgs = _configs(args)
    if not args.pgm and not args.svg:
        raise ConfigError("preview needs --pgm and/or --svg")
    pages = parse_dot_csv(Path(args.infile).read_text())
    _write_page_renders(args, pages, cfgs)
    print(f"pages: {len(pages)}")
    print(f"dots: {sum(p.dot_count for p in pages)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dotpress",
        description="Text-to-Braille print toolchain with a deterministic "
                    f"printer simulator (active kernel: {kernel_name()})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("print", help="compile a text file and run the full print job")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--backend", choices=["p1", "p2"], default="p1")
    p.add_argument("--no-pause", action="store_true",
                   help="do not stop for a paper swap between pages")
    _add_outputs(p)
    _add_policy_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_print)

    p = sub.add_parser("typewriter", help="print characters live as they are typed")
    p.add_argument("--backend", choices=["p1", "p2"], default="p1")
    _add_outputs(p)
    _add_policy_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_typewriter)

    p = sub.add_parser("estimate", help="report pages, dots, time and running cost")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    _add_policy_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("preview", help="render an existing dot CSV")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--pgm", metavar="FILE")
    p.add_argument("--svg", metavar="FILE")
    _add_common(p)
    p.set_defaults(func=cmd_preview)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr,
                        level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UnsupportedCharacter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DotpressError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
