"""
Task running and reporting for the Rewrite Checker
"""

from .report import Report, TaskRecord, save_report, strip_volatile, SUCCESS_VERDICTS
from .runner import run, run_task, default_maxlen
from .dot_export import export_dot
from .formatters import format_report, format_record

__all__ = [
    'Report',
    'TaskRecord',
    'save_report',
    'strip_volatile',
    'SUCCESS_VERDICTS',
    'run',
    'run_task',
    'default_maxlen',
    'export_dot',
    'format_report',
    'format_record',
]
