"""Tree-walking interpreter with per-line coverage and observation tracing.

Every failure mode of an execution is data on the ExecutionResult, never an
exception: the slicer and repair engine compare outcomes across thousands of
candidate programs and must treat faults and budget overruns as ordinary
verdicts. Results are deterministic and the interpreter holds no global
state, so runs may be issued from any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Mapping

from .expr import EvalFault, eval_expr
from .source import (
    AssignStmt,
    EXECUTABLE_KINDS,
    IfStmt,
    LineKind,
    ObserveStmt,
    PrintStmt,
    Program,
    SYNTHETIC_INDEX,
    SourceLine,
    Stmt,
    WhileStmt,
    parse_numbered,
)

if TYPE_CHECKING:  # criterion lives with the slicer; only its shape is needed here
    from ..slicing import SlicingCriterion

DEFAULT_STEP_BUDGET = 100_000

# Variable name recorded for mirrored print observations; "<" keeps it
# disjoint from every legal identifier.
OUTPUT_VAR = "<output>"


class RunStatus(str, Enum):
    OK = "ok"
    FAULT = "runtime-fault"
    BUDGET = "step-budget-exceeded"
    PARSE_ERROR = "parse-error"


@dataclass(frozen=True)
class TrajectoryEntry:
    line: int
    var: str
    value: int | None  # None records an observation of an unbound variable


@dataclass(frozen=True)
class Trajectory:
    entries: tuple[TrajectoryEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class TestCase:
    name: str
    inputs: Mapping[str, int]
    expected_output: tuple[str, ...]
    verdict_on_original: str  # "pass" | "fail", recomputed at load time


@dataclass(frozen=True)
class TestSuite:
    tests: tuple[TestCase, ...] = ()

    def __len__(self) -> int:
        return len(self.tests)

    def __iter__(self):
        return iter(self.tests)

    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.tests)

    @property
    def failing(self) -> tuple[TestCase, ...]:
        return tuple(t for t in self.tests if t.verdict_on_original == "fail")

    @property
    def passing(self) -> tuple[TestCase, ...]:
        return tuple(t for t in self.tests if t.verdict_on_original == "pass")


@dataclass(frozen=True)
class ExecutionResult:
    status: RunStatus
    printed: tuple[str, ...] = ()
    observations: Trajectory = field(default_factory=Trajectory)
    covered_lines: frozenset[int] = frozenset()
    steps: int = 0

    @classmethod
    def parse_failure(cls) -> "ExecutionResult":
        return cls(status=RunStatus.PARSE_ERROR)


class _Budget(Exception):
    pass


class _Interp:
    def __init__(self, inputs: Mapping[str, int], step_budget: int, mirror_prints: bool):
        self.env: dict[str, int] = dict(inputs)
        self.printed: list[str] = []
        self.observations: list[TrajectoryEntry] = []
        self.covered: set[int] = set()
        self.steps = 0
        self.budget = step_budget
        self.mirror_prints = mirror_prints

    def _step(self, line: int) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise _Budget()
        if line != SYNTHETIC_INDEX:
            self.covered.add(line)

    def exec_block(self, stmts: tuple[Stmt, ...]) -> None:
        for stmt in stmts:
            if isinstance(stmt, AssignStmt):
                self._step(stmt.line)
                self.env[stmt.target] = eval_expr(stmt.expr, self.env)
            elif isinstance(stmt, PrintStmt):
                self._step(stmt.line)
                value = eval_expr(stmt.expr, self.env)
                self.printed.append(str(value))
                if self.mirror_prints:
                    self.observations.append(TrajectoryEntry(stmt.line, OUTPUT_VAR, value))
            elif isinstance(stmt, ObserveStmt):
                # Observing an unbound variable records a sentinel and keeps
                # going: slicing deletions routinely remove defining lines.
                self._step(stmt.line)
                self.observations.append(
                    TrajectoryEntry(stmt.before_line, stmt.var, self.env.get(stmt.var))
                )
            elif isinstance(stmt, IfStmt):
                self._step(stmt.line)
                if eval_expr(stmt.cond, self.env) != 0:
                    self.exec_block(stmt.then_body)
                else:
                    self.exec_block(stmt.else_body)
            elif isinstance(stmt, WhileStmt):
                while True:
                    self._step(stmt.line)
                    if eval_expr(stmt.cond, self.env) == 0:
                        break
                    self.exec_block(stmt.body)

    def result(self, status: RunStatus) -> ExecutionResult:
        return ExecutionResult(
            status=status,
            printed=tuple(self.printed),
            observations=Trajectory(tuple(self.observations)),
            covered_lines=frozenset(self.covered),
            steps=self.steps,
        )


def run(
    program: Program,
    inputs: Mapping[str, int],
    step_budget: int = DEFAULT_STEP_BUDGET,
    mirror_prints: bool = False,
) -> ExecutionResult:
    """Interpret ``program`` with ``inputs`` pre-bound as the initial
    environment. Partial output and observations are retained on faults and
    budget overruns."""
    interp = _Interp(inputs, step_budget, mirror_prints)
    try:
        interp.exec_block(program.body)
    except EvalFault:
        return interp.result(RunStatus.FAULT)
    except _Budget:
        return interp.result(RunStatus.BUDGET)
    return interp.result(RunStatus.OK)


def run_test(
    program: Program, test: TestCase, step_budget: int = DEFAULT_STEP_BUDGET
) -> tuple[str, ExecutionResult]:
    """Verdict of one test: pass iff the run completes and prints exactly the
    expected output."""
    result = run(program, test.inputs, step_budget)
    ok = result.status is RunStatus.OK and result.printed == test.expected_output
    return ("pass" if ok else "fail"), result


class UnknownLineError(Exception):
    def __init__(self, line: int):
        super().__init__(f"no such line: {line}")
        self.line = line


def instrument(program: Program, criterion: "SlicingCriterion") -> Program:
    """Insert ``observe v`` immediately before the criterion line.

    The probe carries the reserved index 0, so it never collides with
    original line numbers and is never a deletion candidate. In output mode
    the program is returned unchanged; print mirroring happens at run time.
    """
    if criterion.mode == "output":
        return program
    target = program.line_at(criterion.line)
    if target is None:
        raise UnknownLineError(criterion.line)
    numbered: list[tuple[int, str]] = []
    for line in program.lines:
        if line.index == criterion.line:
            indent = line.text[: len(line.text) - len(line.text.lstrip())]
            numbered.append((SYNTHETIC_INDEX, f"{indent}observe {criterion.variable}"))
        numbered.append((line.index, line.text))
    return parse_numbered(numbered, program.path)
