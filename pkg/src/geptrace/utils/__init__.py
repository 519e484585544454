"""Utility modules for geptrace."""

from .logging import LoggerMixin, configure_logging, console, get_logger, set_log_level
from .matrix_io import format_matrix, parse_matrix, read_matrix, write_matrix

__all__ = [
    "LoggerMixin",
    "configure_logging",
    "console",
    "get_logger",
    "set_log_level",
    "format_matrix",
    "parse_matrix",
    "read_matrix",
    "write_matrix",
]
