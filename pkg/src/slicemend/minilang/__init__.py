"""MiniLang: a line-oriented imperative toy language with an execution
oracle built for line-deletion slicing and template repair."""

from .expr import (
    ARITH_OPS,
    EvalFault,
    Expr,
    ExprError,
    I64_MAX,
    I64_MIN,
    REL_OPS,
    eval_expr,
    parse_expression,
    render,
)
from .interp import (
    DEFAULT_STEP_BUDGET,
    ExecutionResult,
    OUTPUT_VAR,
    RunStatus,
    TestCase,
    TestSuite,
    Trajectory,
    TrajectoryEntry,
    UnknownLineError,
    instrument,
    run,
    run_test,
)
from .source import (
    EXECUTABLE_KINDS,
    LineKind,
    ParseError,
    Program,
    SYNTHETIC_INDEX,
    SourceLine,
    VALUE_KINDS,
    parse,
    parse_numbered,
)

__all__ = [
    "ARITH_OPS",
    "DEFAULT_STEP_BUDGET",
    "EXECUTABLE_KINDS",
    "EvalFault",
    "ExecutionResult",
    "Expr",
    "ExprError",
    "I64_MAX",
    "I64_MIN",
    "LineKind",
    "OUTPUT_VAR",
    "ParseError",
    "Program",
    "REL_OPS",
    "RunStatus",
    "SYNTHETIC_INDEX",
    "SourceLine",
    "TestCase",
    "TestSuite",
    "Trajectory",
    "TrajectoryEntry",
    "UnknownLineError",
    "VALUE_KINDS",
    "eval_expr",
    "instrument",
    "parse",
    "parse_expression",
    "parse_numbered",
    "render",
    "run",
    "run_test",
]
