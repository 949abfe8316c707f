# Utils Package
from .config import Settings, load_settings
from .errors import (
    ConfigError,
    GevDomainError,
    InsufficientDataError,
    SeriesParseError,
    SingularInformationError,
)
from .console import set_quiet, status
from .logger import log_experiment, ActionType

__all__ = [
    "set_quiet",
    "status",
    "log_experiment",
    "ActionType",
    "Settings",
    "load_settings",
    "ConfigError",
    "GevDomainError",
    "InsufficientDataError",
    "SeriesParseError",
    "SingularInformationError",
]
