"""Slice-driven test suite reduction.

A failing test is definitionally relevant to the bug and is always kept. A
passing test is kept only if, on the original program, it covers at least
one assignment or print line that survived the slice; a test whose value
computations all lie in deleted code exercises behavior independent of the
bug. Block headers do not count as relevance evidence: every test evaluates
the top-level dispatch conditions of the program, so counting them would
keep everything.
"""

from __future__ import annotations

from dataclasses import dataclass

from .minilang import DEFAULT_STEP_BUDGET, Program, TestSuite, VALUE_KINDS
from .localization import build_spectrum
from .slicing import SliceFilter, SliceResult


class MismatchedSliceError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionReport:
    kept: tuple[str, ...]
    dropped: tuple[str, ...]
    kept_failing: int
    kept_passing: int
    original_size: int

    @property
    def reduction_rate(self) -> float:
        return reduction_rate(self)

    def to_dict(self) -> dict:
        return {
            "kept": list(self.kept),
            "dropped": list(self.dropped),
            "kept_failing": self.kept_failing,
            "kept_passing": self.kept_passing,
            "original_size": self.original_size,
            "reduction_rate": self.reduction_rate,
        }


def reduction_rate(report: ReductionReport) -> float:
    """|kept| / |original suite|, in (0, 1]."""
    if report.original_size == 0:
        raise ValueError("reduction rate is undefined for an empty suite")
    return len(report.kept) / report.original_size


def reduce_suite(
    program: Program,
    suite: TestSuite,
    slice_result: SliceResult | SliceFilter,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> tuple[TestSuite, ReductionReport]:
    """Drop tests irrelevant to the sliced behavior; the reduced suite keeps
    the original order."""
    if slice_result.original_size != len(program.lines):
        raise MismatchedSliceError(
            f"slice was taken from a {slice_result.original_size}-line program, "
            f"got {len(program.lines)} lines"
        )
    surviving_value_lines = frozenset(
        line.index
        for line in program.lines
        if line.kind in VALUE_KINDS and line.index not in slice_result.deleted_lines
    )
    spectrum = build_spectrum(program, suite, step_budget)
    verdicts = dict(spectrum.tests)
    coverage: dict[str, set[int]] = {name: set() for name, _ in spectrum.tests}
    for line, covering in spectrum.rows.items():
        for name in covering:
            coverage[name].add(line)

    kept: list[str] = []
    dropped: list[str] = []
    kept_failing = 0
    kept_passing = 0
    for test in suite:
        if verdicts[test.name] == "fail":
            kept.append(test.name)
            kept_failing += 1
        elif coverage[test.name] & surviving_value_lines:
            kept.append(test.name)
            kept_passing += 1
        else:
            dropped.append(test.name)

    kept_set = set(kept)
    reduced = TestSuite(tuple(t for t in suite if t.name in kept_set))
    report = ReductionReport(
        kept=tuple(kept),
        dropped=tuple(dropped),
        kept_failing=kept_failing,
        kept_passing=kept_passing,
        original_size=len(suite),
    )
    return reduced, report
