"""Expression layer of MiniLang: tokens, AST, parser, evaluator, renderer.

Expressions are built from 64-bit signed integers and identifiers with
unary ``-``/``!``, arithmetic ``+ - * / %``, comparisons, and short-circuit
``&&``/``||``. Comparisons and logical operators yield 1/0; any nonzero
value is true in a condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping

I64_MIN = -(2**63)
I64_MAX = 2**63 - 1

KEYWORDS = frozenset({"if", "else", "while", "print", "observe"})

REL_OPS = ("<", "<=", ">", ">=", "==", "!=")
ARITH_OPS = ("+", "-", "*", "/", "%")

_PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "<": 3, "<=": 3, ">": 3, ">=": 3, "==": 3, "!=": 3,
    "+": 4, "-": 4,
    "*": 5, "/": 5, "%": 5,
}
_UNARY_PREC = 6
_ATOM_PREC = 7

# Longest-match first so "<=" is not read as "<" "=".
_TWO_CHAR_OPS = ("<=", ">=", "==", "!=", "&&", "||")
_ONE_CHAR_OPS = ("+", "-", "*", "/", "%", "<", ">", "!")


class ExprError(ValueError):
    """Malformed expression text; position is a character offset."""

    def __init__(self, message: str, pos: int = 0):
        super().__init__(message)
        self.message = message
        self.pos = pos


class EvalFault(Exception):
    """Runtime fault during evaluation (data for the interpreter, not a bug)."""

    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind
        self.detail = detail


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "op" | "lparen" | "rparen"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        two = text[i:i + 2]
        if two in _TWO_CHAR_OPS:
            tokens.append(Token("op", two, i))
            i += 2
            continue
        if ch in _ONE_CHAR_OPS:
            tokens.append(Token("op", ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append(Token("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(Token("rparen", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], i))
            i = j
            continue
        raise ExprError(f"unexpected character {ch!r}", i)
    return tokens


# AST nodes compare by identity (eq=False): template mutation replaces a
# specific occurrence, so two textually equal subtrees must stay distinct.

@dataclass(frozen=True, eq=False)
class Lit:
    value: int
    pos: int


@dataclass(frozen=True, eq=False)
class Var:
    name: str
    pos: int


@dataclass(frozen=True, eq=False)
class Unary:
    op: str  # "-" | "!"
    operand: "Expr"
    pos: int


@dataclass(frozen=True, eq=False)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int  # position of the operator token, used for occurrence ordering


Expr = Lit | Var | Unary | Binary


class _Parser:
    def __init__(self, tokens: list[Token], source: str):
        self.tokens = tokens
        self.source = source
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression", len(self.source))
        self.i += 1
        return tok

    def parse(self) -> Expr:
        expr = self.parse_binary(1)
        tok = self.peek()
        if tok is not None:
            raise ExprError(f"unexpected {tok.text!r}", tok.pos)
        return expr

    def parse_binary(self, min_prec: int) -> Expr:
        left = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in _PRECEDENCE:
                return left
            prec = _PRECEDENCE[tok.text]
            if prec < min_prec:
                return left
            self.next()
            right = self.parse_binary(prec + 1)  # left-associative
            left = Binary(tok.text, left, right, tok.pos)

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text in ("-", "!"):
            self.next()
            return Unary(tok.text, self.parse_unary(), tok.pos)
        return self.parse_atom()

    def parse_atom(self) -> Expr:
        tok = self.next()
        if tok.kind == "int":
            value = int(tok.text)
            if value > I64_MAX:
                raise ExprError(f"integer literal out of 64-bit range: {tok.text}", tok.pos)
            return Lit(value, tok.pos)
        if tok.kind == "ident":
            if tok.text in KEYWORDS:
                raise ExprError(f"keyword {tok.text!r} used as identifier", tok.pos)
            return Var(tok.text, tok.pos)
        if tok.kind == "lparen":
            inner = self.parse_binary(1)
            closing = self.peek()
            if closing is None or closing.kind != "rparen":
                raise ExprError("missing ')'", tok.pos)
            self.next()
            return inner
        raise ExprError(f"unexpected {tok.text!r}", tok.pos)


def parse_expression(text: str) -> Expr:
    tokens = tokenize(text)
    if not tokens:
        raise ExprError("empty expression", 0)
    return _Parser(tokens, text).parse()


def _check_i64(value: int) -> int:
    if value < I64_MIN or value > I64_MAX:
        raise EvalFault("overflow", f"value {value} exceeds signed 64-bit range")
    return value


def _trunc_div(a: int, b: int) -> int:
    q = a // b
    if q < 0 and q * b != a:
        q += 1  # round toward zero, C-style
    return q


def eval_expr(expr: Expr, env: Mapping[str, int]) -> int:
    """Evaluate under ``env``. Raises EvalFault on unbound use, division or
    modulo by zero, and 64-bit overflow."""
    if isinstance(expr, Lit):
        return expr.value
    if isinstance(expr, Var):
        if expr.name not in env:
            raise EvalFault("unbound-variable", f"variable {expr.name!r} is not bound")
        return env[expr.name]
    if isinstance(expr, Unary):
        if expr.op == "!":
            return 0 if eval_expr(expr.operand, env) != 0 else 1
        return _check_i64(-eval_expr(expr.operand, env))
    # Binary. Logical operators short-circuit.
    op = expr.op
    if op == "&&":
        if eval_expr(expr.left, env) == 0:
            return 0
        return 1 if eval_expr(expr.right, env) != 0 else 0
    if op == "||":
        if eval_expr(expr.left, env) != 0:
            return 1
        return 1 if eval_expr(expr.right, env) != 0 else 0
    a = eval_expr(expr.left, env)
    b = eval_expr(expr.right, env)
    if op == "+":
        return _check_i64(a + b)
    if op == "-":
        return _check_i64(a - b)
    if op == "*":
        return _check_i64(a * b)
    if op == "/":
        if b == 0:
            raise EvalFault("division-by-zero", f"{a} / 0")
        return _check_i64(_trunc_div(a, b))
    if op == "%":
        if b == 0:
            raise EvalFault("division-by-zero", f"{a} % 0")
        return a - _trunc_div(a, b) * b
    if op == "<":
        return 1 if a < b else 0
    if op == "<=":
        return 1 if a <= b else 0
    if op == ">":
        return 1 if a > b else 0
    if op == ">=":
        return 1 if a >= b else 0
    if op == "==":
        return 1 if a == b else 0
    if op == "!=":
        return 1 if a != b else 0
    raise AssertionError(f"unknown operator {op}")


def _prec_of(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return _PRECEDENCE[expr.op]
    if isinstance(expr, Unary):
        return _UNARY_PREC
    return _ATOM_PREC


def render(expr: Expr) -> str:
    """Canonical source text: single spaces around binary operators, minimal
    parentheses, unary operands parenthesized unless atomic."""
    if isinstance(expr, Lit):
        return str(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Unary):
        inner = render(expr.operand)
        if not isinstance(expr.operand, (Lit, Var)):
            inner = f"({inner})"
        return f"{expr.op}{inner}"
    prec = _PRECEDENCE[expr.op]
    left = render(expr.left)
    if _prec_of(expr.left) < prec:
        left = f"({left})"
    right = render(expr.right)
    if _prec_of(expr.right) <= prec:
        right = f"({right})"
    return f"{left} {expr.op} {right}"


def walk(expr: Expr) -> Iterator[Expr]:
    yield expr
    if isinstance(expr, Unary):
        yield from walk(expr.operand)
    elif isinstance(expr, Binary):
        yield from walk(expr.left)
        yield from walk(expr.right)


def nodes_by_pos(expr: Expr, predicate) -> list[Expr]:
    """All nodes satisfying ``predicate``, in textual (token position) order."""
    return sorted((n for n in walk(expr) if predicate(n)), key=lambda n: n.pos)


def variable_names(expr: Expr) -> list[str]:
    """Variable names in first-occurrence textual order."""
    seen: list[str] = []
    for node in nodes_by_pos(expr, lambda n: isinstance(n, Var)):
        if node.name not in seen:
            seen.append(node.name)
    return seen


def replace_node(root: Expr, target: Expr, replacement: Expr) -> Expr:
    """Rebuild ``root`` with the node ``target`` (matched by identity) swapped
    for ``replacement``. Untouched subtrees are shared."""
    if root is target:
        return replacement
    if isinstance(root, Unary):
        new_operand = replace_node(root.operand, target, replacement)
        if new_operand is root.operand:
            return root
        return Unary(root.op, new_operand, root.pos)
    if isinstance(root, Binary):
        new_left = replace_node(root.left, target, replacement)
        new_right = replace_node(root.right, target, replacement)
        if new_left is root.left and new_right is root.right:
            return root
        return Binary(root.op, new_left, new_right, root.pos)
    return root
