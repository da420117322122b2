"""
Spec-file parser and printer for the Rewrite Checker
"""

from .spec_parser import Task, SpecFile, parse_spec, parse_spec_file, parse_derivation
from .spec_writer import format_spec

__all__ = [
    'Task',
    'SpecFile',
    'parse_spec',
    'parse_spec_file',
    'parse_derivation',
    'format_spec',
]
