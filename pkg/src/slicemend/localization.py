"""Spectrum-based fault localization with the Ochiai ranking strategy.

A coverage spectrum pairs each executable line with the set of tests that
executed it; Ochiai correlates that set with test verdicts. Lines never
covered by a failing test score zero and are suppressed, mirroring fault
localization tools that only emit suspicious statements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .minilang import DEFAULT_STEP_BUDGET, Program, TestSuite, run_test
from .slicing import SliceFilter, SliceResult

FULL_SUITE = "full-suite"
REDUCED_SUITE = "reduced-suite"


class InvalidCountsError(ValueError):
    pass


class NoFailingTestsError(ValueError):
    pass


@dataclass(frozen=True)
class CoverageMatrix:
    tests: tuple[tuple[str, str], ...]  # (test name, verdict), suite order
    rows: dict[int, frozenset[str]]  # line index -> covering test names

    @property
    def total_failing(self) -> int:
        return sum(1 for _, verdict in self.tests if verdict == "fail")

    def failing_names(self) -> frozenset[str]:
        return frozenset(name for name, verdict in self.tests if verdict == "fail")


@dataclass(frozen=True)
class SuspiciousList:
    entries: tuple[tuple[int, float], ...]  # (line, score), best first
    provenance: str = FULL_SUITE
    filtered_by_slice: bool = False

    def __len__(self) -> int:
        return len(self.entries)

    def lines(self) -> tuple[int, ...]:
        return tuple(line for line, _ in self.entries)

    def rank_of(self, line: int) -> int | None:
        for rank, (candidate, _) in enumerate(self.entries, start=1):
            if candidate == line:
                return rank
        return None

    def to_entries(self) -> list[dict]:
        return [{"line": line, "score": score} for line, score in self.entries]


def build_spectrum(
    program: Program, suite: TestSuite, step_budget: int = DEFAULT_STEP_BUDGET
) -> CoverageMatrix:
    """Run every test against ``program``, recording verdict and covered
    lines. Verdicts are always recomputed here, never reused across
    programs."""
    verdicts: list[tuple[str, str]] = []
    rows: dict[int, set[str]] = {}
    for test in suite:
        verdict, result = run_test(program, test, step_budget)
        verdicts.append((test.name, verdict))
        for line in result.covered_lines:
            rows.setdefault(line, set()).add(test.name)
    return CoverageMatrix(
        tests=tuple(verdicts),
        rows={line: frozenset(names) for line, names in rows.items()},
    )


def ochiai_score(e_f: int, e_p: int, total_f: int) -> float:
    """e_f / sqrt(total_f * (e_f + e_p)), with 0 when no failing test covers
    the line (this also guards the 0/0 case)."""
    if total_f < 1:
        raise InvalidCountsError("total failing count must be >= 1")
    if e_f < 0 or e_p < 0:
        raise InvalidCountsError("coverage counts cannot be negative")
    if e_f > total_f:
        raise InvalidCountsError("a line cannot be covered by more failing tests than exist")
    if e_f == 0:
        return 0.0
    return e_f / math.sqrt(total_f * (e_f + e_p))


def localize(
    program: Program,
    suite: TestSuite,
    slice_filter: SliceResult | SliceFilter | None = None,
    *,
    provenance: str = FULL_SUITE,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> SuspiciousList:
    """Ranked suspicious lines for ``program`` under ``suite``.

    With ``slice_filter``, lines the slice deleted are dropped from the list.
    Ties break on ascending line index so ranks are total and reproducible.
    """
    spectrum = build_spectrum(program, suite, step_budget)
    total_f = spectrum.total_failing
    if total_f == 0:
        raise NoFailingTestsError("fault localization needs at least one failing test")
    failing = spectrum.failing_names()
    deleted = slice_filter.deleted_lines if slice_filter is not None else frozenset()

    scored: list[tuple[int, float]] = []
    for line, covering in spectrum.rows.items():
        if line in deleted:
            continue
        e_f = len(covering & failing)
        e_p = len(covering) - e_f
        score = ochiai_score(e_f, e_p, total_f)
        if score > 0.0:
            scored.append((line, score))
    scored.sort(key=lambda entry: (-entry[1], entry[0]))
    return SuspiciousList(
        entries=tuple(scored),
        provenance=provenance,
        filtered_by_slice=slice_filter is not None,
    )
