"""Infix expression front end: precedence-climbing parser, canonical printer,
and exhaustive evaluation into a function table.

Grammar, loosest to tightest: + -  <  | (or)  <  ^ (xor)  <  & * (and/times)
<  ! (not); min/max/med use call syntax.  Unicode spellings of the operators
are accepted.  Each sort context admits only its own operators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .lattices import median_in
from .tables import BOOL, RATIONAL, FunctionTable, Sort


class ExpressionError(ValueError):
    """Syntax or sort error; carries the offending position."""

    def __init__(self, position, message):
        super().__init__(f"at position {position}: {message}")
        self.position = position


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class Unop:
    op: str
    operand: object


@dataclass(frozen=True)
class Binop:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


_UNICODE = {"∧": "&", "∨": "|", "¬": "!", "⊕": "^", "·": "*", "−": "-"}
_TOKEN = re.compile(
    r"\s*(?:(?P<var>x\d+)"
    r"|(?P<frac>\d+/\d+)"
    r"|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-&|!^+*(),])"
    r"|(?P<uni>[∧∨¬⊕·−]))"
)

_BIN_LEVEL = {"+": 10, "-": 10, "|": 20, "^": 30, "&": 40, "*": 40}
_ALLOWED_BIN = {
    "bool": {"&", "|", "^"},
    "rational": {"+", "-", "*"},
    "lattice": {"&", "|"},
}
_ALLOWED_CALLS = {
    "bool": {"min", "max", "med"},
    "rational": {"min", "max", "med"},
    "lattice": {"med"},
}
_KEYWORDS = {"min", "max", "med"}


def _context(sort: Sort) -> str:
    if sort.kind == "bool":
        return "bool"
    if sort.kind == "lattice":
        return "lattice"
    return "rational"


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip():
                raise ExpressionError(pos, f"unexpected character {text[pos:].strip()[0]!r}")
            break
        pos = m.end()
        start = m.start(m.lastgroup)
        tok = m.group(m.lastgroup)
        if m.lastgroup == "uni":
            tokens.append(("op", _UNICODE[tok], start))
        elif m.lastgroup == "op":
            tokens.append(("op", tok, start))
        elif m.lastgroup == "var":
            tokens.append(("var", int(tok[1:]), start))
        elif m.lastgroup == "frac":
            num, den = tok.split("/")
            tokens.append(("num", Fraction(int(num), int(den)), start))
        elif m.lastgroup == "int":
            tokens.append(("num", Fraction(tok), start))
        else:
            tokens.append(("name", tok, start))
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, context: str, sort: Sort):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.context = context
        self.sort = sort

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val, at = self.peek()
        if kind != "op" or val != op:
            raise ExpressionError(at, f"expected {op!r}")
        self.advance()

    def parse(self):
        node = self.expression(0)
        kind, val, at = self.peek()
        if kind != "end":
            raise ExpressionError(at, f"unexpected trailing {val!r}")
        return node

    def expression(self, min_level):
        left = self.unary()
        while True:
            kind, val, at = self.peek()
            if kind != "op" or val not in _BIN_LEVEL or _BIN_LEVEL[val] < min_level:
                return left
            if val not in _ALLOWED_BIN[self.context]:
                raise ExpressionError(at, f"operator {val!r} not allowed in a {self.context} context")
            self.advance()
            right = self.expression(_BIN_LEVEL[val] + 1)
            left = Binop(val, left, right)

    def unary(self):
        kind, val, at = self.peek()
        if kind == "op" and val == "!":
            if self.context != "bool":
                raise ExpressionError(at, f"operator '!' not allowed in a {self.context} context")
            self.advance()
            return Unop("!", self.unary())
        return self.atom()

    def atom(self):
        kind, val, at = self.advance()
        if kind == "var":
            if val < 1:
                raise ExpressionError(at, "variable indices start at 1")
            return Var(val)
        if kind == "num":
            return Const(self._constant(val, at))
        if kind == "name":
            if val in _KEYWORDS:
                if val not in _ALLOWED_CALLS[self.context]:
                    raise ExpressionError(at, f"{val} not allowed in a {self.context} context")
                self.expect_op("(")
                args = [self.expression(0)]
                while True:
                    k, v, a2 = self.peek()
                    if k == "op" and v == ",":
                        self.advance()
                        args.append(self.expression(0))
                    else:
                        break
                self.expect_op(")")
                if val == "med" and len(args) != 3:
                    raise ExpressionError(at, "med takes exactly three arguments")
                if val in ("min", "max") and len(args) < 2:
                    raise ExpressionError(at, f"{val} takes at least two arguments")
                return Call(val, tuple(args))
            if self.context != "lattice":
                raise ExpressionError(at, f"unknown name {val!r}")
            if not self.sort.contains(val):
                raise ExpressionError(at, f"{val!r} is not a lattice element")
            return Const(val)
        if kind == "op" and val == "(":
            node = self.expression(0)
            self.expect_op(")")
            return node
        raise ExpressionError(at, f"unexpected {val!r}")

    def _constant(self, value: Fraction, at):
        if self.context == "bool":
            if value == 0:
                return 0
            if value == 1:
                return 1
            raise ExpressionError(at, f"constant {value} is not Boolean")
        if self.context == "lattice":
            if value == 0:
                return self.sort.zero
            if value == 1:
                return self.sort.one
            raise ExpressionError(at, f"numeric constant {value} in a lattice context")
        return value


def parse_ast(text: str, sort: Sort):
    """Parse under the sort's operator context, without evaluating."""
    return _Parser(text, _context(sort), sort).parse()


def variables_of(node) -> set:
    if isinstance(node, Var):
        return {node.index}
    if isinstance(node, Const):
        return set()
    if isinstance(node, Unop):
        return variables_of(node.operand)
    if isinstance(node, Binop):
        return variables_of(node.left) | variables_of(node.right)
    return set().union(*(variables_of(a) for a in node.args)) if node.args else set()


def _eval(node, env: tuple, sort: Sort, context: str):
    if isinstance(node, Var):
        return env[node.index - 1]
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Unop):
        return 1 - _eval(node.operand, env, sort, context)
    if isinstance(node, Binop):
        a = _eval(node.left, env, sort, context)
        b = _eval(node.right, env, sort, context)
        if context == "lattice":
            lat = sort.lattice
            return lat.meet(a, b) if node.op == "&" else lat.join(a, b)
        if node.op == "&":
            return a & b
        if node.op == "|":
            return a | b
        if node.op == "^":
            return a ^ b
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    args = [_eval(a, env, sort, context) for a in node.args]
    if context == "lattice":
        return median_in(sort, *args)
    if node.name == "min":
        return min(args)
    if node.name == "max":
        return max(args)
    return sorted(args)[1]


def parse_expression(text: str, sort: Sort, arity: int | None = None) -> FunctionTable:
    """Parse and evaluate exhaustively over the sort's elements.

    Variable indices must be contiguous from 1 unless an explicit arity
    covers the gaps.
    """
    ast = parse_ast(text, sort)
    used = variables_of(ast)
    top = max(used) if used else 1
    if arity is None:
        missing = set(range(1, top + 1)) - used
        if missing:
            raise ExpressionError(
                0, f"variables {sorted(missing)} unbound; declare an arity to allow gaps")
        arity = top
    elif top > arity:
        raise ExpressionError(0, f"variable x{top} beyond the declared arity {arity}")
    context = _context(sort)
    codomain = {"bool": BOOL, "rational": RATIONAL, "lattice": sort}[context]
    values = tuple(
        _eval(ast, env, sort, context) for env in product(sort.elements, repeat=arity))
    return FunctionTable(sort, codomain, arity, values)


def to_string(node) -> str:
    """Canonical rendering; parses back to the identical tree."""
    def level_of(nd):
        if isinstance(nd, Binop):
            return _BIN_LEVEL[nd.op]
        return 100

    def render(nd, parent_level, right_side):
        if isinstance(nd, Var):
            return f"x{nd.index}"
        if isinstance(nd, Const):
            return str(nd.value)
        if isinstance(nd, Unop):
            inner = render(nd.operand, 100, False)
            if isinstance(nd.operand, Binop):
                inner = f"({inner})"
            return f"!{inner}"
        if isinstance(nd, Call):
            return f"{nd.name}({', '.join(render(a, 0, False) for a in nd.args)})"
        lvl = _BIN_LEVEL[nd.op]
        text = (
            f"{render(nd.left, lvl, False)} {nd.op} "
            f"{render(nd.right, lvl, True)}")
        if lvl < parent_level or (lvl == parent_level and right_side):
            return f"({text})"
        return text

    return render(node, 0, False)
