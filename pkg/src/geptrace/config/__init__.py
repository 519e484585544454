"""Settings schema and YAML loader."""

from .schema import CheckSettings, FileLogSettings, LoggingSettings, Settings, Tolerances
from .loader import DEFAULT_CONFIG_NAME, dump_settings, find_config, load_config, write_default_config

__all__ = [
    "Settings",
    "Tolerances",
    "CheckSettings",
    "LoggingSettings",
    "FileLogSettings",
    "DEFAULT_CONFIG_NAME",
    "find_config",
    "load_config",
    "dump_settings",
    "write_default_config",
]
