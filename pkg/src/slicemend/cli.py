"""Command-line entry point wiring the pipeline stages over project
manifests.

Exit codes: 0 success (for repair commands: a plausible patch was found and,
under a reduced setup, audits valid on the full suite); 1 patch found but
invalid on the full suite; 2 input error; 3 no failing tests; 4 budget
exhausted without a patch. Errors are mirrored as JSON on stderr so CI can
tell the cases apart without scraping text.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .config import (
    ALL_SETUPS,
    PipelineConfig,
    SETUP_LABELS,
    SLICE_INPUTS_ALL,
    SLICE_INPUTS_FAILING,
)
from .harness import (
    audit_setup,
    discover_corpus,
    emit_report,
    generate_corpus,
    pipeline_criterion,
    run_corpus,
)
from .localization import (
    FULL_SUITE,
    NoFailingTestsError,
    REDUCED_SUITE,
    SuspiciousList,
    localize,
)
from .minilang import DEFAULT_STEP_BUDGET, ParseError, TestSuite
from .project import InputError, LoadedProject, load_manifest, load_program, load_tests, write_suite
from .reduction import MismatchedSliceError, reduce_suite
from .repair import RepairBudget, RepairOutcome, repair
from .slicing import (
    InvalidCriterionError,
    SliceFilter,
    SlicingCriterion,
    orbs_slice,
)

STEP_BUDGET_ENV = "SLICEMEND_STEP_BUDGET"

EXIT_OK = 0
EXIT_INVALID_PATCH = 1
EXIT_INPUT = 2
EXIT_NO_FAILING = 3
EXIT_EXHAUSTED = 4


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _emit_error(kind: str, message: str) -> None:
    print(json.dumps({"error": {"type": kind, "message": message}}), file=sys.stderr)


def _write_json(path: str | Path, payload: dict) -> None:
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _step_budget_override(args) -> int | None:
    if getattr(args, "step_budget", None) is not None:
        return args.step_budget
    env = os.environ.get(STEP_BUDGET_ENV)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise CliError(EXIT_INPUT, "input-error", f"{STEP_BUDGET_ENV} must be an integer")
        if value < 1:
            raise CliError(EXIT_INPUT, "input-error", f"{STEP_BUDGET_ENV} must be positive")
        return value
    return None


def _parse_criterion(spec: str) -> tuple[str, str | None, int | None]:
    if spec == "output":
        return "output", None, None
    if spec.startswith("var:") and "@" in spec:
        payload = spec[len("var:"):]
        name, _, line_text = payload.partition("@")
        try:
            return "variable", name, int(line_text)
        except ValueError:
            pass
    raise CliError(
        EXIT_INPUT, "input-error",
        f"bad criterion {spec!r}; expected 'output' or 'var:<name>@<line>'",
    )


def _config_from_args(args, project_step_budget: int) -> PipelineConfig:
    mode, variable, line = _parse_criterion(getattr(args, "criterion", "output"))
    try:
        return PipelineConfig(
            window=getattr(args, "window", 3),
            step_budget=project_step_budget,
            candidate_budget=getattr(args, "candidate_budget", 50_000),
            time_budget_ms=getattr(args, "time_budget_ms", 600_000),
            criterion_mode=mode,
            criterion_variable=variable,
            criterion_line=line,
            slice_inputs=getattr(args, "slice_inputs", SLICE_INPUTS_FAILING),
            filter_sl_by_slice=getattr(args, "filter_sl_by_slice", False),
            setup=SETUP_LABELS[getattr(args, "setup", "reduced-both")],
            jobs=getattr(args, "jobs", 1),
        )
    except ValueError as err:
        raise CliError(EXIT_INPUT, "input-error", str(err))


def _load_project(args) -> LoadedProject:
    override = _step_budget_override(args)
    try:
        return load_manifest(args.project, step_budget_override=override)
    except (InputError, ParseError) as err:
        raise CliError(EXIT_INPUT, "input-error", str(err))


def _load_optional_suite(args, project: LoadedProject) -> TestSuite:
    path = getattr(args, "suite", None)
    if path is None:
        return project.suite
    try:
        return load_tests(path, project.program, project.step_budget)
    except InputError as err:
        raise CliError(EXIT_INPUT, "input-error", str(err))


def _load_slice_filter(path: str) -> SliceFilter:
    try:
        report = json.loads(Path(path).read_text(encoding="utf-8"))
        return SliceFilter(
            deleted_lines=frozenset(int(x) for x in report["deleted_lines"]),
            original_size=int(report["original_size"]),
        )
    except (OSError, ValueError, KeyError, TypeError) as err:
        raise CliError(EXIT_INPUT, "input-error", f"{path}: bad slice report: {err}")


def _criterion_for(project: LoadedProject, config: PipelineConfig) -> SlicingCriterion:
    try:
        criterion = pipeline_criterion(project.suite, config)
    except InvalidCriterionError as err:
        if not project.suite.failing:
            raise CliError(EXIT_NO_FAILING, "no-failing-tests", str(err))
        raise CliError(EXIT_INPUT, "input-error", str(err))
    return criterion


def cmd_slice(args) -> int:
    project = _load_project(args)
    config = _config_from_args(args, project.step_budget)
    criterion = _criterion_for(project, config)
    try:
        result = orbs_slice(project.program, criterion, config.step_budget)
    except InvalidCriterionError as err:
        raise CliError(EXIT_INPUT, "invalid-criterion", str(err))
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(result.slice.text() + "\n", encoding="utf-8")
    if args.report:
        payload = result.report_dict()
        payload["config"] = config.to_dict()
        _write_json(args.report, payload)
    return EXIT_OK


def cmd_localize(args) -> int:
    project = _load_project(args)
    config = _config_from_args(args, project.step_budget)
    suite = _load_optional_suite(args, project)
    slice_filter = _load_slice_filter(args.slice_report) if args.slice_report else None
    provenance = REDUCED_SUITE if args.suite else FULL_SUITE
    try:
        sl = localize(
            project.program,
            suite,
            slice_filter,
            provenance=provenance,
            step_budget=config.step_budget,
        )
    except NoFailingTestsError as err:
        raise CliError(EXIT_NO_FAILING, "no-failing-tests", str(err))
    _write_json(
        args.out,
        {
            "config": config.to_dict(),
            "provenance": sl.provenance,
            "filtered_by_slice": sl.filtered_by_slice,
            "entries": sl.to_entries(),
        },
    )
    return EXIT_OK


def cmd_reduce_tests(args) -> int:
    project = _load_project(args)
    config = _config_from_args(args, project.step_budget)
    slice_filter = _load_slice_filter(args.slice_report)
    if not project.suite.failing:
        raise CliError(EXIT_NO_FAILING, "no-failing-tests", "suite has no failing test")
    try:
        reduced, report = reduce_suite(
            project.program, project.suite, slice_filter, config.step_budget
        )
    except MismatchedSliceError as err:
        raise CliError(EXIT_INPUT, "mismatched-slice", str(err))
    write_suite(reduced, args.out)
    if args.report:
        payload = report.to_dict()
        payload["config"] = config.to_dict()
        _write_json(args.report, payload)
    return EXIT_OK


def _load_suspicious(path: str) -> SuspiciousList:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        entries = payload["entries"] if isinstance(payload, dict) else payload
        return SuspiciousList(
            entries=tuple((int(e["line"]), float(e["score"])) for e in entries),
            provenance=payload.get("provenance", FULL_SUITE)
            if isinstance(payload, dict)
            else FULL_SUITE,
            filtered_by_slice=payload.get("filtered_by_slice", False)
            if isinstance(payload, dict)
            else False,
        )
    except (OSError, ValueError, KeyError, TypeError) as err:
        raise CliError(EXIT_INPUT, "input-error", f"{path}: bad suspicious list: {err}")


def cmd_repair(args) -> int:
    project = _load_project(args)
    config = _config_from_args(args, project.step_budget)
    suite = _load_optional_suite(args, project)
    sl = _load_suspicious(args.suspicious)
    program = project.program
    if args.program:
        try:
            program = load_program(args.program)
        except (InputError, ParseError) as err:
            raise CliError(EXIT_INPUT, "input-error", str(err))
    if not suite.failing:
        raise CliError(EXIT_NO_FAILING, "no-failing-tests", "suite has no failing test")
    outcome = repair(
        program,
        suite,
        sl,
        RepairBudget(config.candidate_budget, config.time_budget_ms),
        setup_label=config.setup,
        step_budget=config.step_budget,
    )
    payload = outcome.to_dict()
    payload["config"] = config.to_dict()
    _write_json(args.out, payload)
    if not outcome.found:
        _emit_error("budget-exhausted", "no plausible patch within budget")
        return EXIT_EXHAUSTED
    return EXIT_OK


def cmd_run_pipeline(args) -> int:
    project = _load_project(args)
    config = _config_from_args(args, project.step_budget)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if not project.suite.failing:
        raise CliError(EXIT_NO_FAILING, "no-failing-tests", "suite has no failing test")

    criterion = _criterion_for(project, config)
    slice_result = orbs_slice(project.program, criterion, config.step_budget)
    slice_report = slice_result.report_dict()
    slice_report["config"] = config.to_dict()
    _write_json(out_dir / "slice_report.json", slice_report)
    (out_dir / "slice.mini").write_text(slice_result.slice.text() + "\n", encoding="utf-8")

    reduced_suite, reduction = reduce_suite(
        project.program, project.suite, slice_result, config.step_budget
    )
    write_suite(reduced_suite, out_dir / "reduced_tests.json")
    reduction_payload = reduction.to_dict()
    reduction_payload["config"] = config.to_dict()
    _write_json(out_dir / "reduction_report.json", reduction_payload)

    label = config.setup
    slice_filter = slice_result if config.filter_sl_by_slice else None
    uses_reduced_sl = label in ("P·T·SL_R", "P·T_R·SL_R", "P_S·T_R·SL_R")
    sl = localize(
        project.program,
        reduced_suite if uses_reduced_sl else project.suite,
        slice_filter,
        provenance=REDUCED_SUITE if uses_reduced_sl else FULL_SUITE,
        step_budget=config.step_budget,
    )
    _write_json(
        out_dir / "suspicious.json",
        {
            "config": config.to_dict(),
            "provenance": sl.provenance,
            "filtered_by_slice": sl.filtered_by_slice,
            "entries": sl.to_entries(),
        },
    )

    program = slice_result.slice if label == "P_S·T_R·SL_R" else project.program
    suite = project.suite if label in ("P·T·SL", "P·T·SL_R") else reduced_suite
    outcome = repair(
        program,
        suite,
        sl,
        RepairBudget(config.candidate_budget, config.time_budget_ms),
        setup_label=label,
        step_budget=config.step_budget,
    )
    payload = outcome.to_dict()
    payload["config"] = config.to_dict()

    audit_verdict = None
    if outcome.found and label != "P·T·SL":
        audit_verdict = audit_setup(
            outcome.patch,
            project.program,
            project.suite,
            baseline_patch=None,
            step_budget=config.step_budget,
        )
        payload["full_suite_audit"] = audit_verdict
    _write_json(out_dir / "outcome.json", payload)

    if not outcome.found:
        _emit_error("budget-exhausted", "no plausible patch within budget")
        return EXIT_EXHAUSTED
    if audit_verdict == "invalid-on-full-suite":
        _emit_error("invalid-patch", "patch passes the reduced suite but fails the full suite")
        return EXIT_INVALID_PATCH
    return EXIT_OK


def cmd_bench(args) -> int:
    override = _step_budget_override(args)
    step_budget = override if override is not None else DEFAULT_STEP_BUDGET
    config = _config_from_args(args, step_budget)
    try:
        fixtures = discover_corpus(args.corpus, config.step_budget)
        corpus = generate_corpus(
            fixtures, seeds_per_fixture=args.seeds, rng=args.rng, config=config
        )
    except (InputError, ParseError) as err:
        raise CliError(EXIT_INPUT, "input-error", str(err))
    emit_report([cb.comparison for cb in corpus], args.out, config=config, rng=args.rng)
    return EXIT_OK


def _add_common(parser, *, project: bool = True) -> None:
    if project:
        parser.add_argument("--project", required=True, help="project manifest JSON")
    parser.add_argument("--window", type=int, default=3, help="max deletion window size")
    parser.add_argument("--criterion", default="output",
                        help="'output' or 'var:<name>@<line>'")
    parser.add_argument("--slice-inputs", dest="slice_inputs",
                        choices=[SLICE_INPUTS_FAILING, SLICE_INPUTS_ALL],
                        default=SLICE_INPUTS_FAILING,
                        help="slice against failing tests only, or all tests")
    parser.add_argument("--filter-sl-by-slice", dest="filter_sl_by_slice",
                        action="store_true",
                        help="drop sliced-away lines from suspicious lists")
    parser.add_argument("--setup", choices=sorted(SETUP_LABELS), default="reduced-both",
                        help="repair setup label")
    parser.add_argument("--step-budget", dest="step_budget", type=int, default=None,
                        help=f"interpreter step budget (env {STEP_BUDGET_ENV})")
    parser.add_argument("--candidate-budget", dest="candidate_budget", type=int,
                        default=50_000, help="max patch candidates to validate")
    parser.add_argument("--time-budget-ms", dest="time_budget_ms", type=int,
                        default=600_000, help="max repair wall time per setup")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for independent bugs")
    parser.add_argument("--rng", type=int, default=1337, help="benchmark RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicemend",
        description="Slicing-accelerated template repair for MiniLang projects",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("slice", help="compute an observation-based slice")
    _add_common(p)
    p.add_argument("--out", help="write the slice program here")
    p.add_argument("--report", help="write the slice report JSON here")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("localize", help="rank suspicious lines")
    _add_common(p)
    p.add_argument("--suite", help="reduced test suite JSON (defaults to manifest tests)")
    p.add_argument("--slice-report", dest="slice_report",
                   help="slice report JSON used to filter the list")
    p.add_argument("--out", required=True, help="suspicious list JSON")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("reduce-tests", help="drop tests irrelevant to the slice")
    _add_common(p)
    p.add_argument("--slice-report", dest="slice_report", required=True)
    p.add_argument("--out", required=True, help="reduced test suite JSON")
    p.add_argument("--report", help="reduction report JSON")
    p.set_defaults(func=cmd_reduce_tests)

    p = sub.add_parser("repair", help="search for a plausible patch")
    _add_common(p)
    p.add_argument("--suspicious", required=True, help="suspicious list JSON")
    p.add_argument("--suite", help="validation suite JSON (defaults to manifest tests)")
    p.add_argument("--program", help="program variant to repair (e.g. a slice)")
    p.add_argument("--out", required=True, help="repair outcome JSON")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("run-pipeline", help="slice, reduce, localize, repair")
    _add_common(p)
    p.add_argument("--out", required=True, help="artifact output directory")
    p.set_defaults(func=cmd_run_pipeline)

    p = sub.add_parser("bench", help="run the seeded-bug benchmark")
    _add_common(p, project=False)
    p.add_argument("--corpus", required=True, help="fixture corpus directory")
    p.add_argument("--seeds", type=int, default=1, help="bugs seeded per fixture")
    p.add_argument("--out", required=True, help="report output directory")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        _emit_error(err.kind, str(err))
        return err.code
    except (InputError, ParseError) as err:
        _emit_error("input-error", str(err))
        return EXIT_INPUT
    except NoFailingTestsError as err:
        _emit_error("no-failing-tests", str(err))
        return EXIT_NO_FAILING


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
