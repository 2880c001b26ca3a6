"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: ConfigError / ValidationError -> 2,
ParseError / IntegrityError -> 3, anything else -> 4.
"""


class PerclError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(PerclError):
    """Invalid configuration value caught before any work is done."""


class ValidationError(PerclError):
    """A structural invariant (manifest partition, stage nesting, pairing) is violated."""


class ParseError(PerclError):
    """A file could not be parsed; carries the path and 1-based line number."""

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{self.path}:{line}: {message}")


class IntegrityError(PerclError):
    """Parsed data violates a cross-record invariant (vote sums, dangling ids, ...)."""
