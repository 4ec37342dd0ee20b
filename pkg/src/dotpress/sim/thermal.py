"""Nozzle heater model: first-order plant under bang-bang hysteresis control.

Forward-Euler integration at a fixed step.  The heater switches off when the
temperature reaches the top of the hysteresis band and back on at the bottom,
holding the melt near the 125 C setpoint.  The plant only advances while the
printer waits on temperature; during printing the gate has already been
passed and the state is held.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..errors import ConfigError


@dataclass(frozen=True)
class ThermalConfig:
    setpoint_c: float = 125.0
    hysteresis_c: float = 5.0
    ambient_c: float = 25.0
    heater_power_w: float = 30.0
    loss_w_per_c: float = 0.2
    heat_capacity_j_per_c: float = 15.0
    step_s: float = 0.1

    @property
    def band_low_c(self) -> float:
        return self.setpoint_c - self.hysteresis_c

    @property
    def band_high_c(self) -> float:
        return self.setpoint_c + self.hysteresis_c

    @property
    def ceiling_c(self) -> float:
        """Open-loop steady state with the heater held on."""
        return self.ambient_c + self.heater_power_w / self.loss_w_per_c

    @property
    def step_increment_bound_c(self) -> float:
        """Largest one-step temperature change magnitude near the band."""
        return self.step_s * self.heater_power_w / self.heat_capacity_j_per_c

    def validate(self) -> "ThermalConfig":
        for name in ("hysteresis_c", "heater_power_w", "loss_w_per_c",
                     "heat_capacity_j_per_c", "step_s"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"thermal.{name} must be > 0")
        if self.ceiling_c < self.setpoint_c:
            raise ConfigError(
                f"heater cannot reach setpoint: open-loop ceiling {self.ceiling_c:.1f} C "
                f"is below {self.setpoint_c:.1f} C")
        if self.ambient_c > self.band_high_c:
            raise ConfigError("ambient above the control band; cooling can never enter it")
        return self


DEFAULT_THERMAL = ThermalConfig()


@dataclass(frozen=True)
class ThermalState:
    temp_c: float
    heater_on: bool
    cfg: ThermalConfig

    @property
    def in_band(self) -> bool:
        return self.cfg.band_low_c <= self.temp_c <= self.cfg.band_high_c


def initial_state(cfg: ThermalConfig = DEFAULT_THERMAL) -> ThermalState:
    return ThermalState(temp_c=cfg.ambient_c,
                        heater_on=cfg.ambient_c <= cfg.band_low_c,
                        cfg=cfg)


def step_values(temp_c: float, heater_on: bool, cfg: ThermalConfig) -> tuple[float, bool]:
    """One Euler step then hysteresis switching, on plain floats.

    This is the single authority for the update law; the steppers and the
    compiled kernel evaluate the identical expression so temperatures agree
    bit for bit.
    """
    gain = cfg.heater_power_w if heater_on else 0.0
    temp_c = temp_c + cfg.step_s * (gain - cfg.loss_w_per_c * (temp_c - cfg.ambient_c)) / cfg.heat_capacity_j_per_c
    if temp_c >= cfg.band_high_c:
        heater_on = False
    elif temp_c <= cfg.band_low_c:
        heater_on = True
    return temp_c, heater_on


def thermal_step(state: ThermalState) -> ThermalState:
    temp_c, heater_on = step_values(state.temp_c, state.heater_on, state.cfg)
    return replace(state, temp_c=temp_c, heater_on=heater_on)


def rise_time_to_band_s(cfg: ThermalConfig = DEFAULT_THERMAL) -> float:
    """Closed-form first-order time from ambient to the bottom of the band."""
    tau = cfg.heat_capacity_j_per_c / cfg.loss_w_per_c
    span = cfg.ceiling_c - cfg.ambient_c
    remaining = cfg.ceiling_c - cfg.band_low_c
    if remaining <= 0:
        return 0.0
    return tau * math.log(span / remaining)
