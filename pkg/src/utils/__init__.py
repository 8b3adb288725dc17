"""
Utils package initialization
"""

from .constants import (
    TREND_MAJORITY,
    STD_FACTOR,
    MACRO_ATTEMPT_LIMIT,
    REDRAW_LIMIT,
    TREE_FORMAT_TAG,
    DECIMALS,
)
from .errors import (
    ToolkitError,
    RangeError,
    ArgumentError,
    InsufficientDataError,
    ParseError,
)
from .config import Config
from .logging import get_logger

__all__ = [
    "TREND_MAJORITY",
    "STD_FACTOR",
    "MACRO_ATTEMPT_LIMIT",
    "REDRAW_LIMIT",
    "TREE_FORMAT_TAG",
    "DECIMALS",
    "ToolkitError",
    "RangeError",
    "ArgumentError",
    "InsufficientDataError",
    "ParseError",
    "Config",
    "get_logger",
]
