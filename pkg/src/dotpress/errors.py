"""Exception types shared across the pipeline.

The CLI maps these onto exit codes: UnsupportedCharacter -> 2, ConfigError
(and subclasses) -> 3, anything else -> 1.
"""


class DotpressError(Exception):
    pass


class ConfigError(DotpressError, ValueError):
    """A configuration value violates a module invariant."""


class LayoutConfigInvalid(ConfigError):
    """Page geometry constraints do not hold."""


class UnsupportedCharacter(DotpressError):
    """Input character outside the supported set under the reject policy."""

    def __init__(self, char: str, position: int | None = None):
        self.char = char
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"unsupported character {char!r}{where}")


class AmbiguousCell(DotpressError):
    """A cell sequence has no reverse mapping in its context."""


class ProgramParseError(DotpressError):
    """A command-stream file does not parse."""


class ProtocolViolation(DotpressError):
    """A serial byte was sent while another was still unacknowledged."""


class UnknownByte(DotpressError):
    """The carriage controller received a byte it does not understand."""


class ThermalGateViolation(DotpressError):
    """Extrude attempted while the nozzle is outside the temperature band."""


class HeadOutOfRange(DotpressError):
    """Head movement past the line bound."""
