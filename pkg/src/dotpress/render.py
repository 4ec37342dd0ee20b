"""Human-checkable previews of simulated pages.

PGM gives a quick raster proof (white paper, black dots); SVG keeps the
millimetre coordinates exact for inspection.  Dot radius is cosmetic only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import DotpressError
from .sim.machine import METHOD_EMBOSSED, EmbossedPage

DEFAULT_DOT_RADIUS_MM = 0.75


@dataclass(frozen=True)
class RenderConfig:
    dpmm: float = 10.0
    dot_radius_mm: float = DEFAULT_DOT_RADIUS_MM

    def validate(self) -> "RenderConfig":
        from .errors import ConfigError
        if self.dpmm <= 0:
            raise ConfigError("render.dpmm must be > 0")
        if self.dot_radius_mm <= 0:
            raise ConfigError("render.dot_radius_mm must be > 0")
        return self


def _page_height_mm(page: EmbossedPage, radius: float, explicit: float | None) -> float:
    if explicit is not None:
        return explicit
    if not page.dots:
        return 10.0
    return max(y for _, y, _ in page.dots) + 2 * radius


def render_pgm(page: EmbossedPage, dpmm: float,
               page_width_mm: float = 245.0,
               page_height_mm: float | None = None,
               dot_radius_mm: float = DEFAULT_DOT_RADIUS_MM) -> bytes:
    """Binary P5 raster of one page; a dot at (x, y) mm is a filled disk
    centred on pixel (x*dpmm, y*dpmm)."""
    if dpmm <= 0:
        raise ValueError("dpmm must be > 0")
    height_mm = _page_height_mm(page, dot_radius_mm, page_height_mm)
    width = max(1, int(round(page_width_mm * dpmm)))
    height = max(1, int(round(height_mm * dpmm)))
    img = np.full((height, width), 255, dtype=np.uint8)
    r_px = dot_radius_mm * dpmm
    for x, y, _ in page.dots:
        cx, cy = x * dpmm, y * dpmm
        x0 = max(0, int(np.floor(cx - r_px)))
        x1 = min(width - 1, int(np.ceil(cx + r_px)))
        y0 = max(0, int(np.floor(cy - r_px)))
        y1 = min(height - 1, int(np.ceil(cy + r_px)))
        if x0 > x1 or y0 > y1:
            continue
        ys, xs = np.mgrid[y0:y1 + 1, x0:x1 + 1]
        mask = (xs - cx) ** 2 + (ys - cy) ** 2 <= r_px ** 2
        img[y0:y1 + 1, x0:x1 + 1][mask] = 0
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    return header + img.tobytes()


def render_svg(page: EmbossedPage,
               page_width_mm: float = 245.0,
               page_height_mm: float | None = None,
               dot_radius_mm: float = DEFAULT_DOT_RADIUS_MM) -> str:
    """SVG with one circle per dot, in millimetre user units."""
    height_mm = _page_height_mm(page, dot_radius_mm, page_height_mm)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{page_width_mm:.3f}mm" '
        f'height="{height_mm:.3f}mm" viewBox="0 0 {page_width_mm:.3f} {height_mm:.3f}">',
        f'<rect x="0" y="0" width="{page_width_mm:.3f}" height="{height_mm:.3f}" fill="white"/>',
    ]
    for x, y, _ in page.dots:
        lines.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{dot_radius_mm:.3f}" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


_CSV_ROW = re.compile(r"^(\d+),([-\d.]+),([-\d.]+)(?:,(\w+))?$")


def parse_dot_csv(text: str) -> list[EmbossedPage]:
    """Read a dot-list CSV (`page,x_mm,y_mm[,method]`) back into pages.

    Accepts both the layout export (3 columns) and the simulator export
    (4 columns); missing methods default to embossed.
    """
    by_page: dict[int, list] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("page,"):
            continue
        m = _CSV_ROW.match(line)
        if not m:
            raise DotpressError(f"dot CSV line {lineno}: cannot parse {line!r}")
        page = int(m.group(1))
        dot = (float(m.group(2)), float(m.group(3)), m.group(4) or METHOD_EMBOSSED)
        by_page.setdefault(page, []).append(dot)
    if not by_page:
        return []
    return [EmbossedPage(number=num, dots=tuple(by_page.get(num, ())))
            for num in range(1, max(by_page) + 1)]
