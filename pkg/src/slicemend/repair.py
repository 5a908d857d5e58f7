"""Generate-and-validate repair over a ranked suspicious list.

For each suspicious location, each fix template, and each donor, a candidate
patch is generated and validated against the given suite; the first
candidate passing every test is returned. NPC counts candidates validated
up to and including the successful one (or everything examined within
budget on failure); validations_run counts individual test executions, the
deterministic stand-in for wall-clock repair time.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .localization import SuspiciousList
from .minilang import DEFAULT_STEP_BUDGET, Program, TestSuite, run_test
from .templates import PatchCandidate, enumerate_candidates

STANDARD_SETUP = "P·T·SL"


@dataclass(frozen=True)
class ValidationResult:
    plausible: bool
    first_failing: str | None
    tests_run: int


@dataclass(frozen=True)
class RepairBudget:
    max_candidates: int = 50_000
    max_time_ms: int = 600_000

    def __post_init__(self):
        if self.max_candidates < 1 or self.max_time_ms < 1:
            raise ValueError("budgets must be positive")


@dataclass(frozen=True)
class RepairOutcome:
    patch: PatchCandidate | None
    npc: int
    repair_time_ms: int
    validations_run: int
    setup_label: str = STANDARD_SETUP

    @property
    def found(self) -> bool:
        return self.patch is not None

    def to_dict(self) -> dict:
        patch = None
        if self.patch is not None:
            patch = {
                "line": self.patch.location,
                "template": self.patch.template,
                "description": self.patch.description,
            }
        return {
            "patched": self.found,
            "patch": patch,
            "npc": self.npc,
            "rt_ms": self.repair_time_ms,
            "validations": self.validations_run,
            "setup": self.setup_label,
        }


def validate(
    candidate: PatchCandidate,
    suite: TestSuite,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> ValidationResult:
    """Plausible iff every test passes on the patched program. Failing tests
    run first (ascending name), then passing tests; stops at the first
    failure."""
    ordered = sorted(suite.failing, key=lambda t: t.name) + sorted(
        suite.passing, key=lambda t: t.name
    )
    tests_run = 0
    for test in ordered:
        verdict, _ = run_test(candidate.patched_program, test, step_budget)
        tests_run += 1
        if verdict == "fail":
            return ValidationResult(False, test.name, tests_run)
    return ValidationResult(True, None, tests_run)


def repair(
    program: Program,
    suite: TestSuite,
    sl: SuspiciousList,
    budget: RepairBudget = RepairBudget(),
    *,
    setup_label: str = STANDARD_SETUP,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> RepairOutcome:
    """Search suspicious locations in rank order for the first plausible
    patch. Failure (budget exhaustion or an exhausted candidate space) is a
    value, not an exception."""
    started = time.monotonic()
    npc = 0
    validations = 0

    def elapsed_ms() -> int:
        return int((time.monotonic() - started) * 1000)

    def exhausted() -> RepairOutcome:
        return RepairOutcome(
            patch=None,
            npc=npc,
            repair_time_ms=elapsed_ms(),
            validations_run=validations,
            setup_label=setup_label,
        )

    for location, _score in sl.entries:
        if program.line_at(location) is None:
            # The location was deleted from this program variant (sliced
            # setups); nothing can be generated here.
            continue
        for candidate in enumerate_candidates(program, location):
            if npc >= budget.max_candidates or elapsed_ms() > budget.max_time_ms:
                return exhausted()
            outcome = validate(candidate, suite, step_budget)
            npc += 1
            validations += outcome.tests_run
            if outcome.plausible:
                return RepairOutcome(
                    patch=candidate,
                    npc=npc,
                    repair_time_ms=elapsed_ms(),
                    validations_run=validations,
                    setup_label=setup_label,
                )
    return exhausted()
