"""Scenario files, the check runner and the command line interface."""

from .model import Scenario, bundled, from_dict, load
from .parser import format_expression, parse_expression
from .runner import CHECKS, DEFAULT_CHECKS, DEPENDENCIES, CheckRecord, Report, plan, run

__all__ = [
    "CHECKS",
    "DEFAULT_CHECKS",
    "DEPENDENCIES",
    "CheckRecord",
    "Report",
    "Scenario",
    "bundled",
    "format_expression",
    "from_dict",
    "load",
    "parse_expression",
    "plan",
    "run",
]
