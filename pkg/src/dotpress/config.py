"""Flat key=value configuration with command-line overrides.

A config file holds one `section.field = value` per line (# comments and
blank lines allowed); every default in every module config is reachable.
CLI --set options apply on top of the file, the file on top of defaults.

    layout.cells_per_line = 24
    timing.punch_s = 0.11
    thermal.setpoint_c = 125
    consumables.stick_cost = 20
    policy.uppercase = capital_sign
    render.dpmm = 10
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .cells import EncodingPolicy, UnknownCharPolicy, UppercasePolicy
from .consumables import ConsumablesConfig
from .errors import ConfigError
from .layout import LayoutConfig
from .render import RenderConfig
from .sim.thermal import ThermalConfig
from .sim.timing import TimingConfig

ENV_VAR = "DOTPRESS_CONFIG"

_SECTIONS = {
    "layout": LayoutConfig,
    "timing": TimingConfig,
    "thermal": ThermalConfig,
    "consumables": ConsumablesConfig,
    "render": RenderConfig,
}

_POLICY_VALUES = {
    "unknown_char": {p.value: p for p in UnknownCharPolicy},
    "uppercase": {p.value: p for p in UppercasePolicy},
}


@dataclass(frozen=True)
class Configs:
    layout: LayoutConfig
    timing: TimingConfig
    thermal: ThermalConfig
    consumables: ConsumablesConfig
    render: RenderConfig
    policy: EncodingPolicy

    def validate(self) -> "Configs":
        self.layout.validate()
        self.timing.validate()
        self.thermal.validate()
        self.consumables.validate()
        self.render.validate()
        return self


def parse_config_file(path: str | Path) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def parse_set_option(option: str) -> tuple[str, str]:
    if "=" not in option:
        raise ConfigError(f"--set expects key=value, got {option!r}")
    key, _, value = option.partition("=")
    return key.strip(), value.strip()


def _coerce(section: str, name: str, ftype, value: str):
    try:
        if ftype is int or ftype == "int":
            return int(value)
        if ftype is float or ftype == "float":
            return float(value)
    except ValueError:
        raise ConfigError(f"{section}.{name}: expected a number, got {value!r}") from None
    raise ConfigError(f"{section}.{name}: unsupported field type {ftype!r}")


def build_configs(overrides: dict[str, str] | None = None) -> Configs:
    """Materialize all module configs from flat dotted-key overrides."""
    overrides = dict(overrides or {})
    built = {}
    for section, cls in _SECTIONS.items():
        kwargs = {}
        for f in dataclasses.fields(cls):
            key = f"{section}.{f.name}"
            if key in overrides:
                kwargs[f.name] = _coerce(section, f.name, f.type, overrides.pop(key))
        built[section] = cls(**kwargs)

    policy_kwargs = {}
    for name, table in _POLICY_VALUES.items():
        key = f"policy.{name}"
        if key in overrides:
            value = overrides.pop(key)
            if value not in table:
                raise ConfigError(f"policy.{name}: expected one of "
                                  f"{sorted(table)}, got {value!r}")
            policy_kwargs[name] = table[value]
    built["policy"] = EncodingPolicy(**policy_kwargs)

    if overrides:
        unknown = ", ".join(sorted(overrides))
        raise ConfigError(f"unknown configuration key(s): {unknown}")
    return Configs(**built).validate()
