"""
Constants and default budgets for the Rewrite Checker
"""

import os

# App version
VERSION = "0.3.1"

# File paths
CONFIG_FILE = os.path.join(os.path.expanduser("~"), ".rewrite_checker_config.json")
LOG_FILE = os.path.join(os.path.expanduser("~"), ".rewrite_checker.log")

# Equivalence engine budgets
DEFAULT_NODE_LIMIT = 20000
DEFAULT_EQUATION_DEPTH = 8

# Derivation search budgets (max intermediate length = |s| + slack)
DEFAULT_SEARCH_DEPTH = 24
DEFAULT_LENGTH_SLACK = 4

# Exhaustive terminality runs
DEFAULT_MAXLEN_SINGLE = 7
DEFAULT_MAXLEN_MULTI = 6

# Brute-force hom-class oracle
ORACLE_NODE_LIMIT = 200000

# Iteration guard for strategies whose termination is not certified
NORMALIZE_STEP_LIMIT = 10000

# Process exit codes
EXIT_OK = 0
EXIT_HARD_FAILURE = 1
EXIT_UNCERTIFIED = 2
EXIT_PARSE_ERROR = 3

# Spec-file task kinds
TASK_KINDS = ("confluence", "terminal", "equiv", "diagram", "normalize", "laws")

PRESET_NAMES = ("monad", "composite-monad", "adjunction", "two-monads-intro")
