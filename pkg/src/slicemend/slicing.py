"""Observation-based slicing: greedy window deletion to a fixpoint.

Starting from the instrumented program, the slicer repeatedly forms
candidate slices by deleting a window of one to delta consecutive surviving
lines. A candidate survives only if it still parses and reproduces the
baseline observation trajectory, with a matching run status, on every input
of the criterion. Passes repeat until a full pass accepts nothing, which
certifies that no single window deletion can shrink the slice further.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .minilang import (
    DEFAULT_STEP_BUDGET,
    Program,
    RunStatus,
    SYNTHETIC_INDEX,
    SourceLine,
    TestCase,
    Trajectory,
    instrument,
    parse_numbered,
    run,
)
from .minilang.source import EXECUTABLE_KINDS, ParseError


class InvalidCriterionError(ValueError):
    pass


class BaselineParseFailure(Exception):
    pass


@dataclass(frozen=True)
class SlicingCriterion:
    """What the slice must preserve: in variable mode the value trajectory of
    ``variable`` immediately before ``line``; in output mode everything the
    program prints. ``inputs`` are the runs that matter and ``window`` caps
    the deletion window size."""

    mode: str  # "variable" | "output"
    inputs: tuple[TestCase, ...]
    window: int = 3
    variable: str | None = None
    line: int | None = None

    def __post_init__(self):
        if self.mode not in ("variable", "output"):
            raise InvalidCriterionError(f"unknown criterion mode: {self.mode!r}")
        if not self.inputs:
            raise InvalidCriterionError("criterion needs at least one input")
        if self.window < 1:
            raise InvalidCriterionError("window size must be >= 1")
        if self.mode == "variable" and (self.variable is None or self.line is None):
            raise InvalidCriterionError("variable mode needs a variable and a line")


@dataclass(frozen=True)
class SliceFilter:
    """The part of a slice downstream stages consume; reconstructible from a
    slice report without rerunning the slicer."""

    deleted_lines: frozenset[int]
    original_size: int


@dataclass(frozen=True)
class SliceViolation:
    test_name: str
    reason: str


@dataclass(frozen=True)
class SliceResult:
    slice: Program
    deleted_lines: frozenset[int]
    oracle_calls: int  # candidates actually executed; cache hits excluded
    accepted_deletions: int
    baseline_trajectories: dict[str, Trajectory] = field(compare=False)
    baseline_statuses: dict[str, RunStatus] = field(compare=False)
    original_size: int = 0

    def as_filter(self) -> SliceFilter:
        return SliceFilter(self.deleted_lines, self.original_size)

    def report_dict(self) -> dict:
        return {
            "deleted_lines": sorted(self.deleted_lines),
            "oracle_calls": self.oracle_calls,
            "accepted_deletions": self.accepted_deletions,
            "slice_size": len(self.slice.lines),
            "original_size": self.original_size,
        }


def _validate_criterion(program: Program, criterion: SlicingCriterion) -> None:
    if criterion.mode != "variable":
        return
    target = program.line_at(criterion.line)
    if target is None or target.kind not in EXECUTABLE_KINDS:
        raise InvalidCriterionError(
            f"criterion line {criterion.line} is not an executable line"
        )
    mentioned = any(criterion.variable == name for name in _all_identifiers(program))
    if not mentioned:
        raise InvalidCriterionError(
            f"criterion variable {criterion.variable!r} does not occur in the program"
        )


def _all_identifiers(program: Program):
    from .minilang.expr import variable_names
    from .minilang.source import AssignStmt, IfStmt, PrintStmt, WhileStmt

    def visit(stmts):
        for stmt in stmts:
            if isinstance(stmt, AssignStmt):
                yield stmt.target
                yield from variable_names(stmt.expr)
            elif isinstance(stmt, PrintStmt):
                yield from variable_names(stmt.expr)
            elif isinstance(stmt, IfStmt):
                yield from variable_names(stmt.cond)
                yield from visit(stmt.then_body)
                yield from visit(stmt.else_body)
            elif isinstance(stmt, WhileStmt):
                yield from variable_names(stmt.cond)
                yield from visit(stmt.body)

    return visit(program.body)


def _run_criterion(
    program: Program,
    test: TestCase,
    criterion: SlicingCriterion,
    step_budget: int,
):
    return run(
        program,
        test.inputs,
        step_budget,
        mirror_prints=(criterion.mode == "output"),
    )


def _baseline_full(
    program: Program, criterion: SlicingCriterion, step_budget: int
) -> tuple[dict[str, Trajectory], dict[str, RunStatus]]:
    _validate_criterion(program, criterion)
    try:
        instrumented = instrument(program, criterion)
    except ParseError as err:  # cannot happen for a well-formed program
        raise BaselineParseFailure(str(err)) from err
    trajectories: dict[str, Trajectory] = {}
    statuses: dict[str, RunStatus] = {}
    for test in criterion.inputs:
        result = _run_criterion(instrumented, test, criterion, step_budget)
        trajectories[test.name] = result.observations
        statuses[test.name] = result.status
    return trajectories, statuses


def baseline(
    program: Program, criterion: SlicingCriterion, step_budget: int = DEFAULT_STEP_BUDGET
) -> dict[str, Trajectory]:
    """Observed trajectory of each criterion input on the instrumented
    program; the reference every candidate slice must reproduce."""
    trajectories, _ = _baseline_full(program, criterion, step_budget)
    return trajectories


def _is_protected(line: SourceLine, criterion: SlicingCriterion) -> bool:
    if line.index == SYNTHETIC_INDEX:
        return True  # the observation probe itself
    return criterion.mode == "variable" and line.index == criterion.line


def orbs_slice(
    program: Program,
    criterion: SlicingCriterion,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> SliceResult:
    """Slice ``program`` down to a window-deletion fixpoint.

    Worst case the original program is returned as its own slice. Candidate
    verdicts are memoized on the surviving line set, which is sound because
    the oracle is a pure function of that set.
    """
    trajectories, statuses = _baseline_full(program, criterion, step_budget)
    instrumented = instrument(program, criterion)

    current: list[SourceLine] = list(instrumented.lines)
    cache: dict[frozenset[int], bool] = {}
    oracle_calls = 0
    accepted = 0

    def evaluate(candidate_lines: list[SourceLine]) -> bool:
        nonlocal oracle_calls
        key = frozenset(line.index for line in candidate_lines)
        if key in cache:
            return cache[key]
        try:
            candidate = parse_numbered(
                [(l.index, l.text) for l in candidate_lines], program.path
            )
        except ParseError:
            cache[key] = False
            return False
        oracle_calls += 1
        verdict = True
        for test in criterion.inputs:
            result = _run_criterion(candidate, test, criterion, step_budget)
            if result.status is RunStatus.BUDGET:
                verdict = False
                break
            if result.status is not statuses[test.name]:
                verdict = False
                break
            if result.observations != trajectories[test.name]:
                verdict = False
                break
        cache[key] = verdict
        return verdict

    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(current):
            accepted_here = False
            max_w = min(criterion.window, len(current) - i)
            for w in range(1, max_w + 1):
                window = current[i : i + w]
                if any(_is_protected(line, criterion) for line in window):
                    # Growing the window keeps the protected line inside it.
                    break
                candidate_lines = current[:i] + current[i + w :]
                if evaluate(candidate_lines):
                    current = candidate_lines
                    accepted += 1
                    changed = True
                    accepted_here = True
                    break
            if not accepted_here:
                i += 1
            # On acceptance the pass continues at the same position.

    survivors = [(l.index, l.text) for l in current if l.index != SYNTHETIC_INDEX]
    slice_program = parse_numbered(survivors, program.path)
    deleted = program.line_indices() - slice_program.line_indices()
    result = SliceResult(
        slice=slice_program,
        deleted_lines=frozenset(deleted),
        oracle_calls=oracle_calls,
        accepted_deletions=accepted,
        baseline_trajectories=trajectories,
        baseline_statuses=statuses,
        original_size=len(program.lines),
    )
    violation = verify_slice(slice_program, criterion, trajectories, statuses, step_budget)
    if violation is not None:
        raise AssertionError(
            f"slice failed post-verification on {violation.test_name}: {violation.reason}"
        )
    return result


def verify_slice(
    slice_program: Program,
    criterion: SlicingCriterion,
    baseline_trajectories: dict[str, Trajectory],
    baseline_statuses: dict[str, RunStatus] | None = None,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> SliceViolation | None:
    """Audit a slice against its baseline; returns the first divergence, or
    None when every input reproduces its trajectory (and status, if given)."""
    try:
        instrumented = instrument(slice_program, criterion)
    except Exception as err:
        first = criterion.inputs[0].name
        return SliceViolation(first, f"slice cannot be instrumented: {err}")
    for test in criterion.inputs:
        result = _run_criterion(instrumented, test, criterion, step_budget)
        if baseline_statuses is not None and result.status is not baseline_statuses[test.name]:
            return SliceViolation(
                test.name,
                f"status {result.status.value} != baseline {baseline_statuses[test.name].value}",
            )
        if result.observations != baseline_trajectories[test.name]:
            return SliceViolation(test.name, "trajectory diverges from baseline")
    return None
