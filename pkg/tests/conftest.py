"""Shared test fixtures: deterministic random documents and hypothesis setup."""

import random
from functools import lru_cache

from hypothesis import HealthCheck, settings

settings.register_profile(
    "deterministic",
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")

CORPUS_SEED = 20260810

# generation alphabet: letters dominate, with digits, punctuation, spaces
# and explicit newlines mixed in
_ALPHA = "abcdefghijklmnopqrstuvwxyz"
_WEIGHTED = (_ALPHA * 3 + _ALPHA.upper() + "0123456789" + ".,;:!?'-" + " " * 12 + "\n" * 2)


def random_document(rng: random.Random, target_cells: int,
                    cells_per_line: int = 24, max_lines: int = 74) -> str:
    """A random supported-charset document staying within 3 default pages."""
    chars = []
    cells_in_line = 0
    lines_done = 0
    total = 0
    while total < target_cells and lines_done < max_lines:
        c = rng.choice(_WEIGHTED)
        if c == "\n":
            lines_done += 1
            cells_in_line = 0
            chars.append(c)
            continue
        width = 2 if c.isdigit() else 1  # digit = number sign + letter cell
        if cells_in_line + width > cells_per_line:
            lines_done += 1
            cells_in_line = 0
            if lines_done >= max_lines:
                break
        cells_in_line += width
        total += width
        chars.append(c)
    return "".join(chars)


_SIZE_BUCKETS = ((5, 30), (30, 300), (300, 650), (650, 1700))
_SIZE_WEIGHTS = (0.25, 0.45, 0.20, 0.10)


@lru_cache(maxsize=None)
def corpus(n: int = 200, seed: int = CORPUS_SEED) -> tuple[str, ...]:
    """The fixed random-document corpus the acceptance suite runs on."""
    rng = random.Random(seed)
    docs = []
    for _ in range(n):
        lo, hi = rng.choices(_SIZE_BUCKETS, weights=_SIZE_WEIGHTS)[0]
        docs.append(random_document(rng, rng.randint(lo, hi)))
    return tuple(docs)
