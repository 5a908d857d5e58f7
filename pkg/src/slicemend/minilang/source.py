"""Line-oriented source model of MiniLang.

A program is a sequence of lines, one statement per line, blocks opened and
closed on their own lines. Lines keep the index they had in the file they
were parsed from: programs derived by deleting or patching lines never
renumber survivors, so slices, coverage sets, and suspicious lists all share
one coordinate system. Synthetic lines inserted by tooling (observation
probes, guard blocks) carry the reserved index 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

from .expr import Expr, ExprError, KEYWORDS, parse_expression


class LineKind(str, Enum):
    ASSIGN = "assign"
    IF_OPEN = "if-open"
    ELSE = "else"
    BLOCK_CLOSE = "block-close"
    WHILE_OPEN = "while-open"
    PRINT = "print"
    OBSERVE = "observe"
    COMMENT = "comment"
    BLANK = "blank"


# Lines the interpreter executes as steps (and may record as covered).
EXECUTABLE_KINDS = frozenset(
    {LineKind.ASSIGN, LineKind.IF_OPEN, LineKind.WHILE_OPEN, LineKind.PRINT}
)
# Lines carrying a value computation or output; block headers excluded.
VALUE_KINDS = frozenset({LineKind.ASSIGN, LineKind.PRINT})

SYNTHETIC_INDEX = 0


class ParseError(Exception):
    """Source text failed to parse; ``line`` is the first offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class SourceLine:
    index: int  # original 1-based line number; 0 for synthetic lines
    text: str
    kind: LineKind


@dataclass(frozen=True, eq=False)
class AssignStmt:
    line: int
    target: str
    expr: Expr


@dataclass(frozen=True, eq=False)
class PrintStmt:
    line: int
    expr: Expr


@dataclass(frozen=True, eq=False)
class ObserveStmt:
    line: int
    var: str
    before_line: int  # line whose pre-state this probe observes


@dataclass(frozen=True, eq=False)
class IfStmt:
    line: int
    cond: Expr
    then_body: tuple["Stmt", ...]
    else_body: tuple["Stmt", ...]


@dataclass(frozen=True, eq=False)
class WhileStmt:
    line: int
    cond: Expr
    body: tuple["Stmt", ...]


Stmt = AssignStmt | PrintStmt | ObserveStmt | IfStmt | WhileStmt

_ASSIGN_RE = re.compile(r"^([A-Za-z_]\w*)\s*=(?!=)\s*(.+)$")
_IF_RE = re.compile(r"^if\s+(.+?)\s*\{$")
_WHILE_RE = re.compile(r"^while\s+(.+?)\s*\{$")
_ELSE_RE = re.compile(r"^\}\s*else\s*\{$")
_PRINT_RE = re.compile(r"^print\s+(.+)$")
_OBSERVE_RE = re.compile(r"^observe\s+([A-Za-z_]\w*)$")


@dataclass(frozen=True)
class Program:
    """An immutable parsed program. ``lines`` is the surviving source in file
    order; ``body`` is the compiled statement tree the interpreter walks."""

    path: str
    lines: tuple[SourceLine, ...]
    body: tuple[Stmt, ...]

    def text(self) -> str:
        return "\n".join(line.text for line in self.lines)

    @cached_property
    def _line_map(self) -> dict[int, SourceLine]:
        return {line.index: line for line in self.lines if line.index != SYNTHETIC_INDEX}

    @cached_property
    def _stmt_map(self) -> dict[int, Stmt]:
        found: dict[int, Stmt] = {}

        def visit(stmts: tuple[Stmt, ...]) -> None:
            for stmt in stmts:
                if stmt.line != SYNTHETIC_INDEX:
                    found[stmt.line] = stmt
                if isinstance(stmt, IfStmt):
                    visit(stmt.then_body)
                    visit(stmt.else_body)
                elif isinstance(stmt, WhileStmt):
                    visit(stmt.body)

        visit(self.body)
        return found

    def line_at(self, index: int) -> SourceLine | None:
        return self._line_map.get(index)

    def stmt_at(self, index: int) -> Stmt | None:
        return self._stmt_map.get(index)

    def executable_lines(self) -> tuple[SourceLine, ...]:
        return tuple(l for l in self.lines if l.kind in EXECUTABLE_KINDS)

    def value_lines(self) -> tuple[SourceLine, ...]:
        return tuple(l for l in self.lines if l.kind in VALUE_KINDS)

    def line_indices(self) -> frozenset[int]:
        return frozenset(l.index for l in self.lines if l.index != SYNTHETIC_INDEX)

    def without_lines(self, indices: Iterable[int]) -> "Program":
        """Program with the given original lines removed. Survivors keep their
        indices. Raises ParseError if the remainder is not well-formed."""
        doomed = set(indices)
        survivors = [(l.index, l.text) for l in self.lines if l.index not in doomed]
        return parse_numbered(survivors, self.path)

    def with_lines_replaced(
        self, index: int, replacement: Sequence[tuple[int, str]]
    ) -> "Program":
        """Program with line ``index`` swapped for zero or more numbered lines
        (used by patch application). Raises KeyError if ``index`` is absent."""
        if self.line_at(index) is None:
            raise KeyError(index)
        numbered: list[tuple[int, str]] = []
        for line in self.lines:
            if line.index == index:
                numbered.extend(replacement)
            else:
                numbered.append((line.index, line.text))
        return parse_numbered(numbered, self.path)


def classify_line(text: str) -> LineKind:
    stripped = text.strip()
    if not stripped:
        return LineKind.BLANK
    if stripped.startswith("#"):
        return LineKind.COMMENT
    if stripped == "}":
        return LineKind.BLOCK_CLOSE
    if _ELSE_RE.match(stripped):
        return LineKind.ELSE
    if _IF_RE.match(stripped):
        return LineKind.IF_OPEN
    if _WHILE_RE.match(stripped):
        return LineKind.WHILE_OPEN
    if _OBSERVE_RE.match(stripped):
        return LineKind.OBSERVE
    if _PRINT_RE.match(stripped):
        return LineKind.PRINT
    if _ASSIGN_RE.match(stripped):
        return LineKind.ASSIGN
    raise ValueError(f"unrecognized statement: {stripped!r}")


def _parse_line_expr(payload: str, index: int) -> Expr:
    try:
        return parse_expression(payload)
    except ExprError as err:
        raise ParseError(index, f"malformed expression: {err.message}") from err


class _Frame:
    __slots__ = ("kind", "opener_line", "cond", "then_body", "stmts")

    def __init__(self, kind: str, opener_line: int, cond: Expr | None):
        self.kind = kind  # "top" | "if-then" | "if-else" | "while"
        self.opener_line = opener_line
        self.cond = cond
        self.then_body: tuple[Stmt, ...] = ()
        self.stmts: list[Stmt] = []


def _fix_observe_targets(stmts: list[Stmt]) -> tuple[Stmt, ...]:
    """Point each observation probe at the statement line it precedes."""
    fixed: list[Stmt] = list(stmts)
    for i, stmt in enumerate(fixed):
        if isinstance(stmt, ObserveStmt) and i + 1 < len(fixed):
            fixed[i] = ObserveStmt(stmt.line, stmt.var, fixed[i + 1].line)
    return tuple(fixed)


def parse_numbered(numbered: Sequence[tuple[int, str]], path: str = "<memory>") -> Program:
    """Parse explicitly numbered lines (deletion and patching reuse this to
    preserve original indices)."""
    lines: list[SourceLine] = []
    stack: list[_Frame] = [_Frame("top", 0, None)]

    def close_block(index: int) -> None:
        frame = stack.pop()
        if frame.kind == "top":
            raise ParseError(index, "unmatched '}'")
        body = _fix_observe_targets(frame.stmts)
        if frame.kind == "if-then":
            stmt: Stmt = IfStmt(frame.opener_line, frame.cond, body, ())
        elif frame.kind == "if-else":
            stmt = IfStmt(frame.opener_line, frame.cond, frame.then_body, body)
        else:
            stmt = WhileStmt(frame.opener_line, frame.cond, body)
        stack[-1].stmts.append(stmt)

    for index, text in numbered:
        stripped = text.strip()
        try:
            kind = classify_line(text)
        except ValueError as err:
            raise ParseError(index, str(err)) from None
        lines.append(SourceLine(index, text, kind))

        if kind in (LineKind.BLANK, LineKind.COMMENT):
            continue
        if kind == LineKind.IF_OPEN:
            cond = _parse_line_expr(_IF_RE.match(stripped).group(1), index)
            stack.append(_Frame("if-then", index, cond))
        elif kind == LineKind.WHILE_OPEN:
            cond = _parse_line_expr(_WHILE_RE.match(stripped).group(1), index)
            stack.append(_Frame("while", index, cond))
        elif kind == LineKind.ELSE:
            frame = stack[-1]
            if frame.kind != "if-then":
                raise ParseError(index, "'} else {' without a matching 'if'")
            stack.pop()
            else_frame = _Frame("if-else", frame.opener_line, frame.cond)
            else_frame.then_body = _fix_observe_targets(frame.stmts)
            stack.append(else_frame)
        elif kind == LineKind.BLOCK_CLOSE:
            close_block(index)
        elif kind == LineKind.ASSIGN:
            match = _ASSIGN_RE.match(stripped)
            target = match.group(1)
            if target in KEYWORDS:
                raise ParseError(index, f"keyword {target!r} used as assignment target")
            stack[-1].stmts.append(
                AssignStmt(index, target, _parse_line_expr(match.group(2), index))
            )
        elif kind == LineKind.PRINT:
            stack[-1].stmts.append(
                PrintStmt(index, _parse_line_expr(_PRINT_RE.match(stripped).group(1), index))
            )
        elif kind == LineKind.OBSERVE:
            var = _OBSERVE_RE.match(stripped).group(1)
            stack[-1].stmts.append(ObserveStmt(index, var, index))

    if len(stack) != 1:
        raise ParseError(stack[-1].opener_line, "unclosed block")
    return Program(path, tuple(lines), _fix_observe_targets(stack[0].stmts))


def parse(source_text: str, path: str = "<memory>") -> Program:
    """Parse full source text; lines are numbered 1..n in file order."""
    numbered = list(enumerate(source_text.splitlines(), start=1))
    return parse_numbered(numbered, path)
