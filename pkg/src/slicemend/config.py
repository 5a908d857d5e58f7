"""Pipeline configuration shared by the CLI and the benchmark harness."""

from __future__ import annotations

from dataclasses import dataclass

from .minilang import DEFAULT_STEP_BUDGET

# Repair setups: which of program / test suite / suspicious list are the
# reduced variants. Keys are the CLI spellings.
SETUP_LABELS = {
    "full": "P·T·SL",
    "reduced-suite": "P·T_R·SL",
    "reduced-sl": "P·T·SL_R",
    "reduced-both": "P·T_R·SL_R",
    "sliced-program": "P_S·T_R·SL_R",
}
LABEL_SLUGS = {
    "P·T·SL": "full",
    "P·T_R·SL": "reduced_suite",
    "P·T·SL_R": "reduced_sl",
    "P·T_R·SL_R": "reduced_both",
    "P_S·T_R·SL_R": "sliced_program",
}
ALL_SETUPS = tuple(SETUP_LABELS.values())

SLICE_INPUTS_FAILING = "failing"
SLICE_INPUTS_ALL = "all"


@dataclass(frozen=True)
class PipelineConfig:
    window: int = 3
    step_budget: int = DEFAULT_STEP_BUDGET
    candidate_budget: int = 50_000
    time_budget_ms: int = 600_000
    criterion_mode: str = "output"
    criterion_variable: str | None = None
    criterion_line: int | None = None
    slice_inputs: str = SLICE_INPUTS_FAILING
    filter_sl_by_slice: bool = False
    setup: str = SETUP_LABELS["reduced-both"]
    jobs: int = 1

    def __post_init__(self):
        for name in ("window", "step_budget", "candidate_budget", "time_budget_ms", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.criterion_mode not in ("output", "variable"):
            raise ValueError(f"unknown criterion mode: {self.criterion_mode!r}")
        if self.criterion_mode == "variable" and (
            self.criterion_variable is None or self.criterion_line is None
        ):
            raise ValueError("variable criterion needs a variable and a line")
        if self.slice_inputs not in (SLICE_INPUTS_FAILING, SLICE_INPUTS_ALL):
            raise ValueError(f"unknown slice input selection: {self.slice_inputs!r}")
        if self.setup not in ALL_SETUPS:
            raise ValueError(f"unknown setup: {self.setup!r}")

    def to_dict(self) -> dict:
        echo = {
            "window": self.window,
            "step_budget": self.step_budget,
            "candidate_budget": self.candidate_budget,
            "time_budget_ms": self.time_budget_ms,
            "criterion_mode": self.criterion_mode,
            "slice_inputs": self.slice_inputs,
            "filter_sl_by_slice": self.filter_sl_by_slice,
            "setup": self.setup,
            "jobs": self.jobs,
        }
        if self.criterion_mode == "variable":
            echo["criterion_variable"] = self.criterion_variable
            echo["criterion_line"] = self.criterion_line
        return echo
