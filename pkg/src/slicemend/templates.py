"""Fix templates: the mutations the repair engine can apply to one line.

Seven templates, tried in a fixed global order (cheap and likely fixes
first, statement deletion last as the most destructive). Every emitted
candidate parses in context; templates that cannot apply to a line simply
produce no candidates. A candidate is described both as a full patched
program and as a transplantable edit, so a patch found against one program
variant can be re-applied to another (the audit path).
"""

from __future__ import annotations

from dataclasses import dataclass

from .minilang import LineKind, Program
from .minilang.expr import (
    ARITH_OPS,
    Binary,
    Expr,
    Lit,
    REL_OPS,
    Unary,
    Var,
    nodes_by_pos,
    render,
    replace_node,
    variable_names,
)
from .minilang.source import (
    AssignStmt,
    IfStmt,
    PrintStmt,
    SYNTHETIC_INDEX,
    Stmt,
    WhileStmt,
)

OP_REL_SWAP = "OpRelSwap"
OP_ARITH_SWAP = "OpArithSwap"
CONST_SHIFT = "ConstShift"
VAR_REPLACE = "VarReplace"
GUARD_INSERT = "GuardInsert"
COND_NEGATE = "CondNegate"
STMT_DELETE = "StmtDelete"

TEMPLATE_ORDER = (
    OP_REL_SWAP,
    OP_ARITH_SWAP,
    CONST_SHIFT,
    VAR_REPLACE,
    GUARD_INSERT,
    COND_NEGATE,
    STMT_DELETE,
)

UNIT_DONOR = "unit"


class InapplicableTemplateError(ValueError):
    pass


class InapplicablePatchError(Exception):
    """The patch's location does not exist in the program it is being
    transplanted to (e.g. the line was deleted by slicing)."""


@dataclass(frozen=True)
class PatchEdit:
    location: int
    template: str
    description: str
    # Numbered replacement lines for the location; None deletes the line.
    replacement: tuple[tuple[int, str], ...] | None

    def apply(self, program: Program) -> Program:
        if program.line_at(self.location) is None:
            raise InapplicablePatchError(
                f"line {self.location} is absent from {program.path}"
            )
        return program.with_lines_replaced(self.location, self.replacement or ())

    def signature(self) -> tuple:
        if self.replacement is None:
            return (self.location, "delete")
        return (self.location, tuple(text for _, text in self.replacement))


@dataclass(frozen=True)
class PatchCandidate:
    location: int
    template: str
    description: str
    patched_program: Program
    edit: PatchEdit


def _line_expr(stmt: Stmt) -> Expr | None:
    """The mutable expression of a statement: assignment right-hand side,
    branch or loop condition, print argument."""
    if isinstance(stmt, AssignStmt):
        return stmt.expr
    if isinstance(stmt, PrintStmt):
        return stmt.expr
    if isinstance(stmt, (IfStmt, WhileStmt)):
        return stmt.cond
    return None


def _indent_of(text: str) -> str:
    return text[: len(text) - len(text.lstrip())]


def _rebuild_line(program: Program, location: int, new_expr: Expr) -> str:
    stmt = program.stmt_at(location)
    line = program.line_at(location)
    indent = _indent_of(line.text)
    if isinstance(stmt, AssignStmt):
        return f"{indent}{stmt.target} = {render(new_expr)}"
    if isinstance(stmt, PrintStmt):
        return f"{indent}print {render(new_expr)}"
    if isinstance(stmt, IfStmt):
        return f"{indent}if {render(new_expr)} {{"
    if isinstance(stmt, WhileStmt):
        return f"{indent}while {render(new_expr)} {{"
    raise AssertionError(f"line {location} has no expression to rebuild")


def bound_names(program: Program) -> list[str]:
    """Every variable name assigned or used anywhere in the program, in
    first-occurrence order (assignment targets before their right-hand
    sides). This is the donor pool for variable replacement."""
    pool: list[str] = []

    def add(name: str) -> None:
        if name not in pool:
            pool.append(name)

    def visit(stmts: tuple[Stmt, ...]) -> None:
        for stmt in stmts:
            if isinstance(stmt, AssignStmt):
                add(stmt.target)
                for name in variable_names(stmt.expr):
                    add(name)
            elif isinstance(stmt, PrintStmt):
                for name in variable_names(stmt.expr):
                    add(name)
            elif isinstance(stmt, IfStmt):
                for name in variable_names(stmt.cond):
                    add(name)
                visit(stmt.then_body)
                visit(stmt.else_body)
            elif isinstance(stmt, WhileStmt):
                for name in variable_names(stmt.cond):
                    add(name)
                visit(stmt.body)

    visit(program.body)
    return pool


def _rel_op_nodes(expr: Expr) -> list[Binary]:
    return nodes_by_pos(expr, lambda n: isinstance(n, Binary) and n.op in REL_OPS)


def _arith_op_nodes(expr: Expr) -> list[Binary]:
    return nodes_by_pos(expr, lambda n: isinstance(n, Binary) and n.op in ARITH_OPS)


def _literal_nodes(expr: Expr) -> list[Lit]:
    return nodes_by_pos(expr, lambda n: isinstance(n, Lit))


def _var_nodes(expr: Expr) -> list[Var]:
    return nodes_by_pos(expr, lambda n: isinstance(n, Var))


def _divisor_names(expr: Expr) -> list[str]:
    names: list[str] = []
    for node in nodes_by_pos(
        expr, lambda n: isinstance(n, Binary) and n.op in ("/", "%")
    ):
        if isinstance(node.right, Var) and node.right.name not in names:
            names.append(node.right.name)
    return names


def applicable(template: str, program: Program, location: int) -> bool:
    line = program.line_at(location)
    if line is None:
        return False
    stmt = program.stmt_at(location)
    expr = _line_expr(stmt) if stmt is not None else None
    if expr is None:
        return False
    if template == OP_REL_SWAP:
        return bool(_rel_op_nodes(expr))
    if template == OP_ARITH_SWAP:
        return bool(_arith_op_nodes(expr))
    if template == CONST_SHIFT:
        return bool(_literal_nodes(expr))
    if template == VAR_REPLACE:
        return bool(_var_nodes(expr)) and len(bound_names(program)) > 1
    if template == GUARD_INSERT:
        return line.kind in (LineKind.ASSIGN, LineKind.PRINT) and bool(_var_nodes(expr))
    if template == COND_NEGATE:
        return line.kind in (LineKind.IF_OPEN, LineKind.WHILE_OPEN)
    if template == STMT_DELETE:
        return line.kind in (LineKind.ASSIGN, LineKind.PRINT)
    return False


def search_donor_code(program: Program, location: int, template: str) -> list:
    """Donor material for ``template`` at ``location``, drawn from the
    program itself; deterministic order, possibly empty.

    Operator templates return the fixed alternative operator set; constant
    shifting returns (occurrence, value) pairs over {c-1, c+1, 0, 1} per
    literal; variable replacement returns the program's bound-name pool
    (per-occurrence exclusion happens at generation); guard insertion
    returns divisor variables first, then the rest of the line's variables.
    """
    stmt = program.stmt_at(location)
    expr = _line_expr(stmt) if stmt is not None else None
    if expr is None:
        return []
    if template == OP_REL_SWAP:
        present = {node.op for node in _rel_op_nodes(expr)}
        return [op for op in REL_OPS if op not in present]
    if template == OP_ARITH_SWAP:
        present = {node.op for node in _arith_op_nodes(expr)}
        return [op for op in ARITH_OPS if op not in present]
    if template == CONST_SHIFT:
        donors: list[tuple[int, int]] = []
        for occ, node in enumerate(_literal_nodes(expr)):
            for value in (node.value - 1, node.value + 1, 0, 1):
                if value != node.value and (occ, value) not in donors:
                    donors.append((occ, value))
        return donors
    if template == VAR_REPLACE:
        return bound_names(program) if _var_nodes(expr) else []
    if template == GUARD_INSERT:
        donors = _divisor_names(expr)
        for name in variable_names(expr):
            if name not in donors:
                donors.append(name)
        return donors
    if template in (COND_NEGATE, STMT_DELETE):
        return [UNIT_DONOR]
    raise InapplicableTemplateError(f"unknown template: {template}")


def _candidate(program: Program, edit: PatchEdit) -> PatchCandidate:
    return PatchCandidate(
        location=edit.location,
        template=edit.template,
        description=edit.description,
        patched_program=edit.apply(program),
        edit=edit,
    )


def generate_candidates(
    program: Program, location: int, template: str, donors: list
) -> list[PatchCandidate]:
    """One parsed candidate per donor (per mutation point on lines with
    several occurrences); deterministic order, duplicates collapsed."""
    if not applicable(template, program, location):
        raise InapplicableTemplateError(
            f"{template} does not apply to line {location}"
        )
    stmt = program.stmt_at(location)
    expr = _line_expr(stmt)
    line = program.line_at(location)
    edits: list[PatchEdit] = []

    def expr_edit(new_expr: Expr, description: str) -> None:
        text = _rebuild_line(program, location, new_expr)
        edits.append(
            PatchEdit(location, template, description, ((location, text),))
        )

    if template == OP_REL_SWAP:
        for node in _rel_op_nodes(expr):
            for op in donors:
                if op == node.op:
                    continue
                mutated = replace_node(expr, node, Binary(op, node.left, node.right, node.pos))
                expr_edit(mutated, f"line {location}: '{node.op}' -> '{op}'")
    elif template == OP_ARITH_SWAP:
        for node in _arith_op_nodes(expr):
            for op in donors:
                if op == node.op:
                    continue
                mutated = replace_node(expr, node, Binary(op, node.left, node.right, node.pos))
                expr_edit(mutated, f"line {location}: '{node.op}' -> '{op}'")
    elif template == CONST_SHIFT:
        literals = _literal_nodes(expr)
        for occ, value in donors:
            node = literals[occ]
            if value == node.value:
                continue
            mutated = replace_node(expr, node, Lit(value, node.pos))
            expr_edit(mutated, f"line {location}: constant {node.value} -> {value}")
    elif template == VAR_REPLACE:
        for node in _var_nodes(expr):
            for name in donors:
                if name == node.name:
                    continue
                mutated = replace_node(expr, node, Var(name, node.pos))
                expr_edit(mutated, f"line {location}: variable '{node.name}' -> '{name}'")
    elif template == GUARD_INSERT:
        indent = _indent_of(line.text)
        for name in donors:
            replacement = (
                (SYNTHETIC_INDEX, f"{indent}if {name} != 0 {{"),
                (location, f"{indent}  {line.text.strip()}"),
                (SYNTHETIC_INDEX, f"{indent}}}"),
            )
            edits.append(
                PatchEdit(
                    location,
                    template,
                    f"line {location}: guard with '{name} != 0'",
                    replacement,
                )
            )
    elif template == COND_NEGATE:
        negated = Unary("!", expr, getattr(expr, "pos", 0))
        expr_edit(negated, f"line {location}: negate condition")
    elif template == STMT_DELETE:
        edits.append(
            PatchEdit(location, template, f"line {location}: delete statement", None)
        )

    candidates: list[PatchCandidate] = []
    seen: set[tuple] = set()
    for edit in edits:
        sig = edit.signature()
        if sig in seen:
            continue
        seen.add(sig)
        candidates.append(_candidate(program, edit))
    return candidates


def enumerate_candidates(program: Program, location: int) -> list[PatchCandidate]:
    """All candidates for one location, across the template order."""
    out: list[PatchCandidate] = []
    for template in TEMPLATE_ORDER:
        if not applicable(template, program, location):
            continue
        donors = search_donor_code(program, location, template)
        if not donors:
            continue
        out.extend(generate_candidates(program, location, template, donors))
    return out
