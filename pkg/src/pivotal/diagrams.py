"""Reduced ordered decision diagrams built by repeated pivotal decomposition
of a vertex table, with shannon / median / mle evaluation folds and exact
size reporting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattices import median_in
from .tables import BOOL, FunctionTable, Sort, SortError

RULES = ("shannon", "median", "mle")


class DiagramError(ValueError):
    """Rule/codomain mismatch or vertex data unusable under the rule."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Terminal:
    value: object


@dataclass(frozen=True)
class Internal:
    level: int  # 1-based position in the variable order
    lo: int
    hi: int


@dataclass(frozen=True)
class Diagram:
    """A reduced ordered DAG: no node with identical children, no duplicate
    (level, children) signature, levels strictly increasing along paths."""

    rule: str
    order: tuple
    nodes: tuple
    root: int
    codomain: Sort

    @property
    def arity(self) -> int:
        return len(self.order)


def _check_monotone_vertices(f: FunctionTable):
    n = f.arity
    leq = f.codomain.leq
    for i in range(1 << n):
        for b in range(n):
            j = i | (1 << b)
            if j != i and not leq(f.values[i], f.values[j]):
                raise DiagramError(
                    "median rule needs nondecreasing vertex data",
                    witness=(f.point_at(i), f.point_at(j)))


def build(f: FunctionTable, rule: str, order=None) -> Diagram:
    """Reduce the vertex table into a diagram under the given variable order.

    shannon accepts any codomain; mle needs numeric values; median needs a
    lattice codomain or 0/1 values, and refuses non-monotone vertex data
    (reporting a violating vertex pair).
    """
    if f.domain != BOOL:
        raise SortError("diagrams are built from Boolean-domain vertex tables")
    if rule not in RULES:
        raise DiagramError(f"unknown rule {rule!r}")
    n = f.arity
    order = tuple(order) if order is not None else tuple(range(1, n + 1))
    if sorted(order) != list(range(1, n + 1)):
        raise DiagramError(f"order {order} is not a permutation of 1..{n}")
    if rule == "mle" and f.codomain.kind == "lattice":
        raise DiagramError("mle rule needs a numeric codomain")
    if rule == "median":
        if f.codomain.kind != "lattice" and any(v not in (0, 1) for v in f.values):
            raise DiagramError("median rule needs a lattice codomain or 0/1 values")
        _check_monotone_vertices(f)

    # reindex so that order[0] is the most significant bit
    size = 1 << n
    values = [None] * size
    for i in range(size):
        src = 0
        for t in range(n):
            if i & (1 << (n - 1 - t)):
                src |= 1 << (n - order[t])
        values[i] = f.values[src]

    nodes = []
    unique = {}

    def terminal(v):
        key = ("t", v)
        if key not in unique:
            unique[key] = len(nodes)
            nodes.append(Terminal(v))
        return unique[key]

    def internal(level, lo, hi):
        if lo == hi:
            return lo
        key = (level, lo, hi)
        if key not in unique:
            unique[key] = len(nodes)
            nodes.append(Internal(level, lo, hi))
        return unique[key]

    memo = {}

    def rec(level, vals):
        key = (level, vals)
        if key in memo:
            return memo[key]
        first = vals[0]
        if all(v == first for v in vals):
            out = terminal(first)
        else:
            half = len(vals) // 2
            lo = rec(level + 1, vals[:half])
            hi = rec(level + 1, vals[half:])
            out = internal(level, lo, hi)
        memo[key] = out
        return out

    root = rec(1, tuple(values))
    return Diagram(rule, order, tuple(nodes), root, f.codomain)


def dd_evaluate(d: Diagram, x: tuple, rule: str | None = None):
    """Fold the diagram at a point: shannon selects children at 0/1
    coordinates, mle mixes them affinely, median takes the lattice median."""
    rule = rule or d.rule
    if rule not in RULES:
        raise DiagramError(f"unknown rule {rule!r}")
    n = d.arity
    if len(x) != n:
        raise DiagramError(f"point has arity {len(x)}, diagram has arity {n}")
    if rule == "shannon":
        if any(c not in (0, 1) for c in x):
            raise DiagramError("shannon fold needs 0/1 coordinates")
    elif rule == "mle":
        coords = []
        for c in x:
            c = c if isinstance(c, Fraction) else Fraction(c)
            if not 0 <= c <= 1:
                raise DiagramError(f"coordinate {c} outside [0, 1]")
            coords.append(c)
        x = tuple(coords)
    else:
        if d.codomain.kind == "lattice":
            if any(not d.codomain.contains(c) for c in x):
                raise DiagramError("median fold needs lattice coordinates")
        elif any(c not in (0, 1) for c in x):
            raise DiagramError("median fold over 0/1 data needs 0/1 coordinates")

    memo = {}

    def val(i):
        if i in memo:
            return memo[i]
        node = d.nodes[i]
        if isinstance(node, Terminal):
            out = node.value
        else:
            c = x[d.order[node.level - 1] - 1]
            if rule == "shannon":
                out = val(node.hi) if c == 1 else val(node.lo)
            elif rule == "mle":
                out = c * val(node.hi) + (1 - c) * val(node.lo)
            else:
                out = median_in(d.codomain, c, val(node.hi), val(node.lo))
        memo[i] = out
        return out

    return val(d.root)


def node_count(d: Diagram) -> tuple:
    """(internal, terminal) node counts; every stored node is reachable."""
    internal = sum(1 for nd in d.nodes if isinstance(nd, Internal))
    return internal, len(d.nodes) - internal


def format_diagram(d: Diagram) -> str:
    """Textual dump: header, one line per node, the root's line last."""
    lines = [f"dd {d.rule} {d.arity} {','.join(str(i) for i in d.order)}"]
    rest = [i for i in range(len(d.nodes)) if i != d.root]
    for i in rest + [d.root]:
        node = d.nodes[i]
        if isinstance(node, Terminal):
            lines.append(f"{i} term {node.value}")
        else:
            lines.append(f"{i} {node.level} {node.lo} {node.hi}")
    return "\n".join(lines) + "\n"


def parse_diagram(text: str, codomain: Sort = BOOL,
                  value_parser=None) -> Diagram:
    """Rebuild a diagram from its dump; the last node line is the root."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if len(head) != 4 or head[0] != "dd":
        raise DiagramError(f"bad diagram header: {lines[0]!r}")
    rule = head[1]
    n = int(head[2])
    order = tuple(int(t) for t in head[3].split(","))
    if value_parser is None:
        value_parser = lambda s: Fraction(s) if codomain.kind != "lattice" else s
    entries = {}
    last_id = None
    for ln in lines[1:]:
        parts = ln.split()
        i = int(parts[0])
        if parts[1] == "term":
            val = value_parser(parts[2])
            if codomain == BOOL:
                val = int(val)
            entries[i] = Terminal(val)
        else:
            entries[i] = Internal(int(parts[1]), int(parts[2]), int(parts[3]))
        last_id = i
    nodes = tuple(entries[i] for i in range(len(entries)))
    d = Diagram(rule, order, nodes, last_id, codomain)
    if len(order) != n:
        raise DiagramError("order length does not match the declared arity")
    return d
