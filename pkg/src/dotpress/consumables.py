"""Running-cost estimates for extrusion jobs.

Punch jobs consume nothing.  The extruder eats thermoplastic stick: the
default capacity of 15000 dots per stick reconstructs the quoted ten pages
per stick at a typical page of 24 x 25 cells with ~2.5 dots each, and a
stick costs 20 rupees.  Both numbers are configurable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ConfigError
from .sim.machine import METHOD_EXTRUDED


@dataclass(frozen=True)
class ConsumablesConfig:
    stick_capacity_dots: int = 15000
    stick_cost: float = 20.0  # rupees

    def validate(self) -> "ConsumablesConfig":
        if self.stick_capacity_dots < 1:
            raise ConfigError("consumables.stick_capacity_dots must be >= 1")
        if self.stick_cost < 0:
            raise ConfigError("consumables.stick_cost must be >= 0")
        return self


DEFAULT_CONSUMABLES = ConsumablesConfig()


class ConsumablesEstimate(NamedTuple):
    sticks_fractional: float
    sticks_to_buy: int
    cost: float


def estimate_from_dots(extruded_dots: int,
                       cfg: ConsumablesConfig = DEFAULT_CONSUMABLES) -> ConsumablesEstimate:
    cfg.validate()
    fractional = extruded_dots / cfg.stick_capacity_dots
    to_buy = math.ceil(fractional)
    return ConsumablesEstimate(fractional, to_buy, to_buy * cfg.stick_cost)


def estimate_consumables(pages,
                         cfg: ConsumablesConfig = DEFAULT_CONSUMABLES) -> ConsumablesEstimate:
    """Sticks and cost for a sequence of printed pages.

    Only extruded dots draw on the stick, so embossed pages report zero.
    """
    dots = sum(1 for page in pages for _, _, method in page.dots
               if method == METHOD_EXTRUDED)
    return estimate_from_dots(dots, cfg)
