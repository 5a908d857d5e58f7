"""slicemend: observation-based slicing, spectrum fault localization,
slice-driven test reduction, and template repair for MiniLang programs,
plus a benchmark harness comparing repair setups."""

from .config import ALL_SETUPS, PipelineConfig, SETUP_LABELS
from .localization import (
    CoverageMatrix,
    NoFailingTestsError,
    SuspiciousList,
    build_spectrum,
    localize,
    ochiai_score,
)
from .minilang import (
    DEFAULT_STEP_BUDGET,
    ExecutionResult,
    ParseError,
    Program,
    RunStatus,
    TestCase,
    TestSuite,
    Trajectory,
    instrument,
    parse,
    run,
    run_test,
)
from .project import InputError, LoadedProject, load_manifest, load_program, load_tests
from .reduction import MismatchedSliceError, ReductionReport, reduce_suite, reduction_rate
from .repair import RepairBudget, RepairOutcome, ValidationResult, repair, validate
from .slicing import (
    InvalidCriterionError,
    SliceFilter,
    SliceResult,
    SliceViolation,
    SlicingCriterion,
    baseline,
    orbs_slice,
    verify_slice,
)
from .harness import (
    BugInstance,
    CorpusBug,
    Fixture,
    SetupComparison,
    UnseedableError,
    audit_setup,
    corpus_quality,
    discover_corpus,
    emit_report,
    fault_prefix_unchanged,
    fault_rank_improved,
    generate_corpus,
    run_all_setups,
    run_corpus,
    seed_bug,
)
from .templates import (
    PatchCandidate,
    PatchEdit,
    TEMPLATE_ORDER,
    applicable,
    enumerate_candidates,
    generate_candidates,
    search_donor_code,
)

__version__ = "0.1.0"
