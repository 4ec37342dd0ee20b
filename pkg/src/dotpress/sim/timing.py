"""Simulated command durations.

The P1 defaults are calibrated so both measured envelopes of the servo
prototype hold at once: every dot-bearing character prints in 1-3 s and a
full 24-character test line lands in the 25-30 s window.  The P2 motion
constants have no measured envelope and are placeholders.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigError


@dataclass(frozen=True)
class TimingConfig:
    punch_s: float = 0.11
    advance_s: float = 0.90
    reset_s: float = 2.0
    move_per_column_s: float = 0.05
    extrude_s: float = 0.15
    feed_s: float = 0.30

    def validate(self) -> "TimingConfig":
        for name in ("punch_s", "advance_s", "reset_s",
                     "move_per_column_s", "extrude_s", "feed_s"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"timing.{name} must be > 0")
        return self


DEFAULT_TIMING = TimingConfig()
