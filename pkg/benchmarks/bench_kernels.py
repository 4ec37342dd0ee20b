#!/usr/bin/env python3
"""Compare the compiled simulator kernel against the pure-Python executor.

Builds a synthetic document, compiles it for both backends and times
simulate_job under each executor.

    python3 benchmarks/bench_kernels.py --pages 10 --repeats 3
"""

import argparse
import random
import time

from dotpress.cells import encode_text
from dotpress.codegen import gen_p1, gen_p2
from dotpress.layout import DEFAULT_LAYOUT, layout_document
from dotpress.sim import simulate_job
from dotpress.sim.machine import _fast

WORDS = ("the quick brown fox jumps over the lazy dog and prints "
         "braille pages 0123456789 all day long").split()


def make_document(pages: int, rng: random.Random) -> str:
    lines = []
    for _ in range(pages * DEFAULT_LAYOUT.lines_per_page):
        line = ""
        while len(line) < DEFAULT_LAYOUT.cells_per_line - 6:
            line += rng.choice(WORDS) + " "
        lines.append(line.strip())
    return "\n".join(lines)


def time_run(program, use_kernel: bool, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        simulate_job(program, use_kernel=use_kernel)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pages", type=int, default=10)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    doc = make_document(args.pages, random.Random(args.seed))
    layout = layout_document(encode_text(doc))
    print(f"document: {args.pages} pages, {layout.dot_count} dots")
    if _fast is None:
        print("compiled kernel not built; only the pure executor can run")

    print(f"{'backend':<8} {'commands':>9} {'pure':>12} {'compiled':>12} {'speedup':>8}")
    for name, program in (("p1", gen_p1(layout)), ("p2", gen_p2(layout))):
        n = len(program.commands)
        pure = time_run(program, use_kernel=False, repeats=args.repeats)
        row = f"{name:<8} {n:>9} {pure * 1e3:>10.1f}ms"
        if _fast is not None:
            fast = time_run(program, use_kernel=True, repeats=args.repeats)
            row += f" {fast * 1e3:>10.1f}ms {pure / fast:>7.1f}x"
            a = simulate_job(program, use_kernel=True)
            b = simulate_job(program, use_kernel=False)
            assert a.pages == b.pages and a.ledger == b.ledger, "executors disagree"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
