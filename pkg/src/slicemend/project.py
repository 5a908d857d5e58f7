"""Loading of project manifests, MiniLang sources, and test suite files.

A project manifest is JSON: {"program": path, "tests": path, "step_budget":
int (optional)}, with relative paths resolved against the manifest's
directory. Test verdicts are recomputed against the loaded program on every
load; the on-disk files never carry verdicts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .minilang import (
    DEFAULT_STEP_BUDGET,
    I64_MAX,
    I64_MIN,
    Program,
    TestCase,
    TestSuite,
    parse,
    run_test,
)


class InputError(Exception):
    """Bad manifest, program, or test file; message carries the path."""


def load_program(path: str | Path) -> Program:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise InputError(f"{path}: cannot read program: {err}") from err
    return parse(text, str(path))


def _check_int(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    if value < I64_MIN or value > I64_MAX:
        raise InputError(f"{where}: {value} outside signed 64-bit range")
    return value


def suite_from_records(
    records, program: Program, step_budget: int, where: str = "<tests>"
) -> TestSuite:
    """Build a verdict-annotated suite from decoded JSON records."""
    if not isinstance(records, list):
        raise InputError(f"{where}: test suite must be a JSON array")
    tests: list[TestCase] = []
    seen: set[str] = set()
    for i, record in enumerate(records):
        ctx = f"{where}: test #{i}"
        if not isinstance(record, dict):
            raise InputError(f"{ctx}: expected an object")
        name = record.get("name")
        if not isinstance(name, str) or not name:
            raise InputError(f"{ctx}: missing or empty 'name'")
        if name in seen:
            raise InputError(f"{where}: duplicate test name {name!r}")
        seen.add(name)
        inputs = record.get("inputs", {})
        if not isinstance(inputs, dict):
            raise InputError(f"{ctx}: 'inputs' must be an object")
        bound = {
            var: _check_int(value, f"{ctx}: input {var!r}")
            for var, value in inputs.items()
        }
        expected = record.get("expected_output", [])
        if not isinstance(expected, list) or not all(isinstance(s, str) for s in expected):
            raise InputError(f"{ctx}: 'expected_output' must be an array of strings")
        probe = TestCase(name, bound, tuple(expected), "fail")
        verdict, _ = run_test(program, probe, step_budget)
        tests.append(TestCase(name, bound, tuple(expected), verdict))
    return TestSuite(tuple(tests))


def load_tests(
    path: str | Path, program: Program, step_budget: int = DEFAULT_STEP_BUDGET
) -> TestSuite:
    path = Path(path)
    try:
        records = json.loads(path.read_text(encoding="utf-8"))
    except OSError as err:
        raise InputError(f"{path}: cannot read tests: {err}") from err
    except json.JSONDecodeError as err:
        raise InputError(f"{path}: invalid JSON: {err}") from err
    return suite_from_records(records, program, step_budget, str(path))


def suite_to_records(suite: TestSuite) -> list[dict]:
    return [
        {
            "name": t.name,
            "inputs": dict(t.inputs),
            "expected_output": list(t.expected_output),
        }
        for t in suite
    ]


def write_suite(suite: TestSuite, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(suite_to_records(suite), indent=2) + "\n", encoding="utf-8"
    )


@dataclass(frozen=True)
class LoadedProject:
    program: Program
    suite: TestSuite
    step_budget: int


def load_manifest(
    path: str | Path, *, step_budget_override: int | None = None
) -> LoadedProject:
    """Load a project: parse the program, load and re-verdict the tests.

    ``step_budget_override`` (CLI flag or environment) wins over the
    manifest's value, which wins over the default.
    """
    path = Path(path)
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except OSError as err:
        raise InputError(f"{path}: cannot read manifest: {err}") from err
    except json.JSONDecodeError as err:
        raise InputError(f"{path}: invalid JSON: {err}") from err
    if not isinstance(manifest, dict):
        raise InputError(f"{path}: manifest must be a JSON object")
    for key in ("program", "tests"):
        if not isinstance(manifest.get(key), str):
            raise InputError(f"{path}: manifest needs a string {key!r} entry")

    step_budget = DEFAULT_STEP_BUDGET
    if "step_budget" in manifest:
        step_budget = _check_int(manifest["step_budget"], f"{path}: step_budget")
        if step_budget < 1:
            raise InputError(f"{path}: step_budget must be positive")
    if step_budget_override is not None:
        step_budget = step_budget_override

    base = path.parent
    program = load_program(base / manifest["program"])
    suite = load_tests(base / manifest["tests"], program, step_budget)
    return LoadedProject(program=program, suite=suite, step_budget=step_budget)
