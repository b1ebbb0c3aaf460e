"""Exception hierarchy for the toolkit.

Every error raised on purpose by the library derives from ZygopsError so
callers (and the CLI exit-code mapping) can distinguish our failures from
genuine bugs.
"""


class ZygopsError(Exception):
    """Base class for all toolkit errors."""


class DomainError(ZygopsError):
    """Evaluation hit a singularity or left the open unit disk."""


class OrderTooLargeError(ZygopsError):
    """Requested jet order exceeds the configured maximum."""


class ParseError(ZygopsError):
    """Malformed expression source.  Carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position
        self.message = message


class SelfMapViolationError(ZygopsError):
    """phi is not a strict self-map of the unit disk on the probe grid."""


class DegenerateParameterError(ZygopsError):
    """A family parameter sits at a value where the family is undefined."""


class NotBoundedError(ZygopsError):
    """An operation requiring a bounded operator got an unbounded one."""


class UnsupportedCaseError(ZygopsError):
    """Parameter combination outside the classifier's theory (e.g. n = 0)."""


class UnsupportedWeightError(ZygopsError):
    """Weight outside the supported catalog (standard-alpha / logarithmic)."""


class ConfigError(ZygopsError):
    """Invalid run configuration."""
