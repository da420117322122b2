"""
Core utilities for the Rewrite Checker
"""

from .logging_setup import setup_logging, set_console_level, logger
from .config import Budget, load_config, save_config, budget_from_config
from .errors import (
    RewriteCheckerError, TypingError, PresentationError, SpecParseError,
    UniverseError, NotDisjointError,
)
from .constants import *

__all__ = [
    'setup_logging',
    'set_console_level',
    'logger',
    'Budget',
    'load_config',
    'save_config',
    'budget_from_config',
    'RewriteCheckerError',
    'TypingError',
    'PresentationError',
    'SpecParseError',
    'UniverseError',
    'NotDisjointError',
    'VERSION',
    'CONFIG_FILE',
    'LOG_FILE',
    'DEFAULT_NODE_LIMIT',
    'DEFAULT_EQUATION_DEPTH',
    'DEFAULT_SEARCH_DEPTH',
    'DEFAULT_LENGTH_SLACK',
    'DEFAULT_MAXLEN_SINGLE',
    'DEFAULT_MAXLEN_MULTI',
    'ORACLE_NODE_LIMIT',
    'NORMALIZE_STEP_LIMIT',
    'EXIT_OK',
    'EXIT_HARD_FAILURE',
    'EXIT_UNCERTIFIED',
    'EXIT_PARSE_ERROR',
    'TASK_KINDS',
    'PRESET_NAMES',
]
