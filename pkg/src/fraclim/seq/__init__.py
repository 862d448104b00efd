"""Recurrence DSL, memoized engines, built-in sequences and the abelian oracle."""

from .builtins import BUILTIN_SOURCES, UnknownBuiltinError, builtin, delta_rho
from .dsl import (
    DslError,
    DslSyntaxError,
    DuplicateRuleError,
    MissingInitialError,
    MissingResidueError,
    NonWellFoundedError,
    RecurrenceSpec,
    Rule,
    Term,
    UndefinedSequenceError,
    parse_spec,
    validate_spec,
)
from .engine import SequenceEngine, engine_from_text
from .oracle import WindowTooSmallError, abelian_oracle, parikh_complexity

__all__ = [
    "BUILTIN_SOURCES",
    "DslError",
    "DslSyntaxError",
    "DuplicateRuleError",
    "MissingInitialError",
    "MissingResidueError",
    "NonWellFoundedError",
    "RecurrenceSpec",
    "Rule",
    "SequenceEngine",
    "Term",
    "UndefinedSequenceError",
    "UnknownBuiltinError",
    "WindowTooSmallError",
    "abelian_oracle",
    "builtin",
    "delta_rho",
    "engine_from_text",
    "parikh_complexity",
    "parse_spec",
    "validate_spec",
]
