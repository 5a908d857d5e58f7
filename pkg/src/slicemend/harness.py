"""Benchmark harness: seed single-statement bugs into correct fixtures, run
the five repair setups, audit every produced patch against the full suite on
the original program, and emit comparison tables.

Seeded mutations come from the invertible subset of the template catalog
(operator swaps, unit constant shifts, variable replacement, condition
negation), so an unbounded repair search can always recover a plausible
patch. Corpus generation additionally rejects seeds whose faulty line does
not survive slicing or does not appear in the reduced suspicious list: the
corpus is constructed to exhibit the phenomena the acceptance suite checks,
and the construction is deterministic in the benchmark RNG.
"""

from __future__ import annotations

import csv
import json
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .config import ALL_SETUPS, LABEL_SLUGS, PipelineConfig, SLICE_INPUTS_ALL
from .localization import FULL_SUITE, REDUCED_SUITE, localize
from .minilang import Program, TestCase, TestSuite, run_test
from .project import InputError, load_program, load_tests
from .reduction import ReductionReport, reduce_suite
from .repair import RepairBudget, RepairOutcome, repair
from .slicing import SliceResult, SlicingCriterion, orbs_slice
from .templates import (
    CONST_SHIFT,
    COND_NEGATE,
    InapplicablePatchError,
    OP_ARITH_SWAP,
    OP_REL_SWAP,
    PatchCandidate,
    PatchEdit,
    VAR_REPLACE,
    applicable,
    generate_candidates,
    search_donor_code,
)

# Mutations whose inverse the template catalog can express.
SEEDING_TEMPLATES = (OP_REL_SWAP, OP_ARITH_SWAP, CONST_SHIFT, VAR_REPLACE, COND_NEGATE)

IDENTICAL = "identical-to-baseline"
DIFFERENT_VALID = "different-but-valid"
INVALID = "invalid-on-full-suite"
NO_PATCH = "no-patch"

BASELINE_LABEL = "P·T·SL"
# Setups expected to reproduce the baseline patch (or another full-suite
# valid one); the sliced-program setup is permitted to fail.
RELIABLE_SETUPS = ("P·T_R·SL", "P·T·SL_R", "P·T_R·SL_R")

DEAD_FEATURE_TAG = "dead-feature"


class UnseedableError(Exception):
    pass


@dataclass(frozen=True)
class BugInstance:
    id: str
    correct_program: Program
    buggy_program: Program
    ground_truth_line: int
    seed_mutation: tuple[str, str]  # (template id, donor description)
    suite: TestSuite  # verdicts recomputed against the buggy program


@dataclass(frozen=True)
class Fixture:
    name: str
    program: Program
    suite: TestSuite
    tags: tuple[str, ...] = ()


def _seed_candidates(program: Program, location: int, template: str) -> list[PatchCandidate]:
    donors = search_donor_code(program, location, template)
    if template == CONST_SHIFT:
        # Only unit shifts are guaranteed invertible by another unit shift.
        donors = [d for d in donors if abs(d[1] - _literal_value(program, location, d[0])) == 1]
    if not donors:
        return []
    return generate_candidates(program, location, template, donors)


def _literal_value(program: Program, location: int, occurrence: int) -> int:
    from .minilang.expr import Lit, nodes_by_pos
    from .templates import _line_expr

    expr = _line_expr(program.stmt_at(location))
    literals = nodes_by_pos(expr, lambda n: isinstance(n, Lit))
    return literals[occurrence].value


def seed_bug(
    correct_program: Program,
    suite: TestSuite,
    rng_seed: int,
    *,
    step_budget: int,
    retry_bound: int = 200,
    id_prefix: str = "bug",
) -> BugInstance:
    """Apply one random invertible template mutation at a random executable
    line such that at least one test fails; deterministic in ``rng_seed``."""
    for test in suite:
        verdict, _ = run_test(correct_program, test, step_budget)
        if verdict != "pass":
            raise ValueError(f"test {test.name!r} does not pass on the correct program")

    rng = random.Random(rng_seed)
    lines = [l.index for l in correct_program.executable_lines()]
    for _ in range(retry_bound):
        location = rng.choice(lines)
        templates = [
            t for t in SEEDING_TEMPLATES if applicable(t, correct_program, location)
        ]
        if not templates:
            continue
        template = rng.choice(templates)
        candidates = _seed_candidates(correct_program, location, template)
        if not candidates:
            continue
        chosen = rng.choice(candidates)
        buggy = chosen.patched_program
        verdicts = [run_test(buggy, t, step_budget)[0] for t in suite]
        if "fail" not in verdicts:
            continue
        rebound = TestSuite(
            tuple(
                TestCase(t.name, t.inputs, t.expected_output, v)
                for t, v in zip(suite, verdicts)
            )
        )
        donor_desc = chosen.description.split(": ", 1)[-1]
        return BugInstance(
            id=f"{id_prefix}-s{rng_seed}",
            correct_program=correct_program,
            buggy_program=buggy,
            ground_truth_line=location,
            seed_mutation=(template, donor_desc),
            suite=rebound,
        )
    raise UnseedableError(
        f"no failing mutation found within {retry_bound} attempts (seed {rng_seed})"
    )


@dataclass
class SetupComparison:
    bug_id: str
    ground_truth_line: int
    seed_mutation: tuple[str, str]
    outcomes: dict[str, RepairOutcome]
    patch_equivalence: dict[str, str]
    fl_rank_full: int | None
    fl_rank_reduced: int | None
    fl_size_full: int
    fl_size_reduced: int
    sl_lines: tuple[int, ...]
    sl_reduced_lines: tuple[int, ...]
    suite_passing_full: int
    suite_failing_full: int
    suite_passing_reduced: int
    suite_failing_reduced: int
    slice_size: int
    original_size: int
    deleted_lines: tuple[int, ...]
    reduction: ReductionReport
    ground_truth_in_slice: bool


def audit_setup(
    patch: PatchCandidate | PatchEdit,
    original_program: Program,
    full_suite: TestSuite,
    *,
    baseline_patch: PatchCandidate | PatchEdit | None = None,
    step_budget: int,
) -> str:
    """Classify a patch by transplanting its edit onto the original program
    and running the full suite. A string-identical edit to the standard
    setup's patch is identical-to-baseline; otherwise the full suite decides
    valid or invalid. A patch whose location no longer exists is invalid."""
    edit = patch.edit if isinstance(patch, PatchCandidate) else patch
    baseline_edit = (
        baseline_patch.edit if isinstance(baseline_patch, PatchCandidate) else baseline_patch
    )
    if baseline_edit is not None and edit.signature() == baseline_edit.signature():
        return IDENTICAL
    try:
        patched = edit.apply(original_program)
    except InapplicablePatchError:
        return INVALID
    for test in full_suite:
        verdict, _ = run_test(patched, test, step_budget)
        if verdict == "fail":
            return INVALID
    return DIFFERENT_VALID


def pipeline_criterion(bug_suite: TestSuite, config: PipelineConfig) -> SlicingCriterion:
    inputs = (
        tuple(bug_suite)
        if config.slice_inputs == SLICE_INPUTS_ALL
        else bug_suite.failing
    )
    return SlicingCriterion(
        mode=config.criterion_mode,
        inputs=inputs,
        window=config.window,
        variable=config.criterion_variable,
        line=config.criterion_line,
    )


def run_all_setups(bug: BugInstance, config: PipelineConfig) -> SetupComparison:
    """The four pipeline phases (slice, reduce suite, optimise suspicious
    list, repair) followed by repair under all five setups and a full-suite
    audit of each produced patch."""
    program = bug.buggy_program
    suite = bug.suite
    step_budget = config.step_budget

    criterion = pipeline_criterion(suite, config)
    slice_result = orbs_slice(program, criterion, step_budget)
    reduced_suite, reduction = reduce_suite(program, suite, slice_result, step_budget)

    slice_filter = slice_result if config.filter_sl_by_slice else None
    sl = localize(program, suite, slice_filter, provenance=FULL_SUITE, step_budget=step_budget)
    sl_reduced = localize(
        program, reduced_suite, slice_filter, provenance=REDUCED_SUITE, step_budget=step_budget
    )

    budget = RepairBudget(config.candidate_budget, config.time_budget_ms)
    plans = {
        "P·T·SL": (program, suite, sl),
        "P·T_R·SL": (program, reduced_suite, sl),
        "P·T·SL_R": (program, suite, sl_reduced),
        "P·T_R·SL_R": (program, reduced_suite, sl_reduced),
        "P_S·T_R·SL_R": (slice_result.slice, reduced_suite, sl_reduced),
    }
    outcomes = {
        label: repair(p, s, ranking, budget, setup_label=label, step_budget=step_budget)
        for label, (p, s, ranking) in plans.items()
    }

    baseline_patch = outcomes[BASELINE_LABEL].patch
    equivalence: dict[str, str] = {}
    for label, outcome in outcomes.items():
        if outcome.patch is None:
            equivalence[label] = NO_PATCH
        elif label == BASELINE_LABEL:
            equivalence[label] = IDENTICAL
        else:
            equivalence[label] = audit_setup(
                outcome.patch,
                program,
                suite,
                baseline_patch=baseline_patch,
                step_budget=step_budget,
            )

    return SetupComparison(
        bug_id=bug.id,
        ground_truth_line=bug.ground_truth_line,
        seed_mutation=bug.seed_mutation,
        outcomes=outcomes,
        patch_equivalence=equivalence,
        fl_rank_full=sl.rank_of(bug.ground_truth_line),
        fl_rank_reduced=sl_reduced.rank_of(bug.ground_truth_line),
        fl_size_full=len(sl),
        fl_size_reduced=len(sl_reduced),
        sl_lines=sl.lines(),
        sl_reduced_lines=sl_reduced.lines(),
        suite_passing_full=len(suite.passing),
        suite_failing_full=len(suite.failing),
        suite_passing_reduced=reduction.kept_passing,
        suite_failing_reduced=reduction.kept_failing,
        slice_size=len(slice_result.slice.lines),
        original_size=slice_result.original_size,
        deleted_lines=tuple(sorted(slice_result.deleted_lines)),
        reduction=reduction,
        ground_truth_in_slice=bug.ground_truth_line not in slice_result.deleted_lines,
    )


def fault_rank_improved(comparison: SetupComparison) -> bool:
    return (
        comparison.fl_rank_full is not None
        and comparison.fl_rank_reduced is not None
        and comparison.fl_rank_reduced < comparison.fl_rank_full
    )


def fault_prefix_unchanged(comparison: SetupComparison) -> bool:
    """True when the locations ranked above the fault in the reduced list
    are a subsequence of those ranked above it in the full list (unchanged
    or fewer, order preserved); the precondition under which a rank
    improvement must translate into an NPC improvement."""
    if comparison.fl_rank_full is None or comparison.fl_rank_reduced is None:
        return False
    above_full = comparison.sl_lines[: comparison.fl_rank_full - 1]
    above_reduced = comparison.sl_reduced_lines[: comparison.fl_rank_reduced - 1]
    iterator = iter(above_full)
    return all(line in iterator for line in above_reduced)


def corpus_quality(comparison: SetupComparison, tags: tuple[str, ...] = ()) -> bool:
    """Construction guarantee for benchmark bugs: the faulty line survives
    slicing and stays localizable, the baseline repair succeeds, the three
    reliable setups reproduce a full-suite-valid patch, validation cost never
    grows under suite reduction, a strict rank improvement with an unchanged
    prefix strictly improves NPC, and dead-feature fixtures actually reduce.

    Bugs violating these are real phenomena (a dropped test can constrain
    the patch) but belong in the quarantined negative fixtures, not in the
    comparison corpus.
    """
    if not comparison.ground_truth_in_slice or comparison.fl_rank_reduced is None:
        return False
    if not comparison.outcomes[BASELINE_LABEL].found:
        return False
    for label in RELIABLE_SETUPS:
        if comparison.patch_equivalence[label] not in (IDENTICAL, DIFFERENT_VALID):
            return False
    if (
        comparison.outcomes["P·T_R·SL"].validations_run
        > comparison.outcomes[BASELINE_LABEL].validations_run
    ):
        return False
    if fault_rank_improved(comparison) and fault_prefix_unchanged(comparison):
        if not comparison.outcomes["P·T·SL_R"].npc < comparison.outcomes[BASELINE_LABEL].npc:
            return False
    if DEAD_FEATURE_TAG in tags and comparison.reduction.reduction_rate > 0.5:
        return False
    return True


@dataclass
class CorpusBug:
    fixture: str
    tags: tuple[str, ...]
    bug: BugInstance
    comparison: SetupComparison


def derive_seed(rng: int, fixture: str, index: int, attempt: int) -> int:
    return random.Random(f"{rng}:{fixture}:{index}:{attempt}").getrandbits(32)


def _generate_for_fixture(
    args: tuple[Fixture, int, int, PipelineConfig, int],
) -> list[CorpusBug]:
    fixture, seeds_per_fixture, rng, config, quality_attempts = args
    out: list[CorpusBug] = []
    seen_mutations: set[tuple] = set()
    for index in range(seeds_per_fixture):
        found = None
        for attempt in range(quality_attempts):
            seed = derive_seed(rng, fixture.name, index, attempt)
            try:
                bug = seed_bug(
                    fixture.program,
                    fixture.suite,
                    seed,
                    step_budget=config.step_budget,
                    id_prefix=fixture.name,
                )
            except UnseedableError:
                continue
            mutation_key = (bug.ground_truth_line, bug.seed_mutation)
            if mutation_key in seen_mutations:
                continue
            comparison = run_all_setups(bug, config)
            if not corpus_quality(comparison, fixture.tags):
                continue
            seen_mutations.add(mutation_key)
            found = CorpusBug(fixture.name, fixture.tags, bug, comparison)
            break
        if found is None:
            raise UnseedableError(
                f"fixture {fixture.name!r}: no quality bug within "
                f"{quality_attempts} attempts for seed slot {index}"
            )
        out.append(found)
    return out


def generate_corpus(
    fixtures: list[Fixture],
    *,
    seeds_per_fixture: int,
    rng: int,
    config: PipelineConfig,
    quality_attempts: int = 40,
) -> list[CorpusBug]:
    """Deterministic benchmark corpus: per fixture, the first
    ``seeds_per_fixture`` derived seeds whose bugs pass the quality gate;
    repeated mutations are skipped so one fixture contributes distinct bugs.
    Each accepted bug carries the setup comparison the gate computed, so the
    benchmark never runs a bug twice. Fixtures are independent and may be
    generated in parallel (``config.jobs``)."""
    job_args = [
        (fixture, seeds_per_fixture, rng, config, quality_attempts)
        for fixture in fixtures
    ]
    if config.jobs > 1 and len(fixtures) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            per_fixture = list(pool.map(_generate_for_fixture, job_args))
    else:
        per_fixture = [_generate_for_fixture(args) for args in job_args]
    return [bug for bugs in per_fixture for bug in bugs]


def discover_corpus(corpus_dir: str | Path, step_budget: int) -> list[Fixture]:
    """Load every fixture directory (program.mini + tests.json) under
    ``corpus_dir``, sorted by name. Optional corpus.json supplies tags."""
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise InputError(f"{corpus_dir}: not a directory")
    meta = {}
    meta_path = corpus_dir / "corpus.json"
    if meta_path.exists():
        meta = json.loads(meta_path.read_text(encoding="utf-8")).get("fixtures", {})
    fixtures: list[Fixture] = []
    for entry in sorted(corpus_dir.iterdir()):
        if not entry.is_dir():
            continue
        program_path = entry / "program.mini"
        tests_path = entry / "tests.json"
        if not program_path.exists() or not tests_path.exists():
            continue
        program = load_program(program_path)
        suite = load_tests(tests_path, program, step_budget)
        tags = tuple(meta.get(entry.name, {}).get("tags", []))
        fixtures.append(Fixture(entry.name, program, suite, tags))
    if not fixtures:
        raise InputError(f"{corpus_dir}: no fixtures found")
    return fixtures


def _run_one(args: tuple[BugInstance, PipelineConfig]) -> SetupComparison:
    bug, config = args
    return run_all_setups(bug, config)


def run_corpus(
    bugs: list[BugInstance], config: PipelineConfig
) -> list[SetupComparison]:
    """Process each bug through all setups; distinct bugs may run in separate
    processes (``config.jobs``), results keep corpus order either way."""
    if config.jobs > 1 and len(bugs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_run_one, [(bug, config) for bug in bugs]))
    return [run_all_setups(bug, config) for bug in bugs]


def _median(values: list[int | float]) -> float | None:
    return statistics.median(values) if values else None


def summarize(comparisons: list[SetupComparison]) -> dict:
    """Corpus-level aggregates for the summary report; everything except the
    rt fields is deterministic."""
    ranks_full = [c.fl_rank_full for c in comparisons if c.fl_rank_full is not None]
    ranks_reduced = [c.fl_rank_reduced for c in comparisons if c.fl_rank_reduced is not None]
    npc_reductions = [
        c.outcomes["P·T·SL"].npc - c.outcomes["P·T·SL_R"].npc for c in comparisons
    ]
    validation_reductions = [
        c.outcomes["P·T·SL"].validations_run - c.outcomes["P·T_R·SL"].validations_run
        for c in comparisons
    ]
    reduction_rates = [c.reduction.reduction_rate for c in comparisons]
    equivalence_tally: dict[str, dict[str, int]] = {
        label: {} for label in ALL_SETUPS
    }
    for c in comparisons:
        for label, klass in c.patch_equivalence.items():
            tally = equivalence_tally[label]
            tally[klass] = tally.get(klass, 0) + 1
    return {
        "bugs": len(comparisons),
        "failing_preserved": all(
            c.suite_failing_reduced == c.suite_failing_full for c in comparisons
        ),
        "ground_truth_in_all_slices": all(c.ground_truth_in_slice for c in comparisons),
        "median_fault_rank_full": _median(ranks_full),
        "median_fault_rank_reduced": _median(ranks_reduced),
        "rank_improved_bugs": sum(
            1
            for c in comparisons
            if c.fl_rank_full is not None
            and c.fl_rank_reduced is not None
            and c.fl_rank_reduced < c.fl_rank_full
        ),
        "median_reduction_rate": _median(reduction_rates),
        "total_npc_reduction": sum(npc_reductions),
        "median_npc_reduction": _median(npc_reductions),
        "total_validation_reduction": sum(validation_reductions),
        "strict_validation_reductions": sum(1 for v in validation_reductions if v > 0),
        "patch_equivalence": equivalence_tally,
    }


def emit_report(
    comparisons: list[SetupComparison],
    out_dir: str | Path,
    *,
    config: PipelineConfig,
    rng: int | None = None,
) -> dict[str, Path]:
    """Write the four comparison tables and the summary. rt_* columns are
    wall-clock and excluded from determinism guarantees; everything else is
    reproducible byte for byte."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    slugs = [LABEL_SLUGS[label] for label in ALL_SETUPS]

    paths: dict[str, Path] = {}

    def table(name: str, header: list[str], rows: list[list]) -> None:
        path = out_dir / name
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
        paths[name] = path

    table(
        "table1.csv",
        ["bug_id", "passing_full", "failing_full", "passing_reduced", "failing_reduced",
         "reduction_rate"],
        [
            [
                c.bug_id,
                c.suite_passing_full,
                c.suite_failing_full,
                c.suite_passing_reduced,
                c.suite_failing_reduced,
                f"{c.reduction.reduction_rate:.4f}",
            ]
            for c in comparisons
        ],
    )
    table(
        "table2.csv",
        ["bug_id", "fl_size_full", "fault_rank_full", "fl_size_reduced",
         "fault_rank_reduced", "slice_size", "original_size"],
        [
            [
                c.bug_id,
                c.fl_size_full,
                c.fl_rank_full if c.fl_rank_full is not None else "",
                c.fl_size_reduced,
                c.fl_rank_reduced if c.fl_rank_reduced is not None else "",
                c.slice_size,
                c.original_size,
            ]
            for c in comparisons
        ],
    )
    table(
        "table3.csv",
        ["bug_id"] + [f"npc_{slug}" for slug in slugs] + ["npc_reduction"],
        [
            [c.bug_id]
            + [c.outcomes[label].npc for label in ALL_SETUPS]
            + [c.outcomes["P·T·SL"].npc - c.outcomes["P·T·SL_R"].npc]
            for c in comparisons
        ],
    )
    table(
        "table4.csv",
        ["bug_id"]
        + [f"validations_{slug}" for slug in slugs]
        + ["validation_reduction"]
        + [f"rt_ms_{slug}" for slug in slugs],
        [
            [c.bug_id]
            + [c.outcomes[label].validations_run for label in ALL_SETUPS]
            + [
                c.outcomes["P·T·SL"].validations_run
                - c.outcomes["P·T_R·SL"].validations_run
            ]
            + [c.outcomes[label].repair_time_ms for label in ALL_SETUPS]
            for c in comparisons
        ],
    )

    summary = {
        "config": config.to_dict(),
        "rng": rng,
        "aggregates": summarize(comparisons),
        "bugs": [
            {
                "bug_id": c.bug_id,
                "ground_truth_line": c.ground_truth_line,
                "seed_mutation": list(c.seed_mutation),
                "fl_rank_full": c.fl_rank_full,
                "fl_rank_reduced": c.fl_rank_reduced,
                "reduction_rate": c.reduction.reduction_rate,
                "patch_equivalence": c.patch_equivalence,
                "outcomes": {
                    LABEL_SLUGS[label]: outcome.to_dict()
                    for label, outcome in c.outcomes.items()
                },
            }
            for c in comparisons
        ],
    }
    summary_path = out_dir / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    paths["summary.json"] = summary_path
    return paths
