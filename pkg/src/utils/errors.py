"""
Exception types shared across the package.
Each derives from a built-in so callers may catch either.
"""


class GevDomainError(ValueError):
    """Parameter or argument outside the GEV model's domain."""


class InsufficientDataError(ValueError):
    """Too few blocks (or replicates) left for the requested computation."""

    def __init__(self, n_blocks: int, needed: int = 2, reason: str = "", unit: str = "block(s)"):
        self.n_blocks = n_blocks
        self.needed = needed
        detail = f" ({reason})" if reason else ""
        super().__init__(f"insufficient data: {n_blocks} {unit} available, {needed} needed{detail}")


class SingularInformationError(ArithmeticError):
    """Expected information matrix could not be inverted."""


class SeriesParseError(ValueError):
    """Malformed raw-series input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class ConfigError(ValueError):
    """Invalid run configuration."""
