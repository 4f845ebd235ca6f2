"""Boolean derivative operators, the sixteen classes of Boolean functions
determined by their essential unary sections, the Boolean algebra those
classes form, and membership in a pivotal function's characterized class.

Boolean tables are packed into ints internally (bit i of the mask is the
value at point index i) so exhaustive scans over all functions of arity 4
stay fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .decompose import DomainCoverageError, PivotalFunction, check_decomposition
from .tables import BOOL, FunctionTable, SortError, reduced

UNARY_NAMES = ("bot", "top", "id", "neg")
_UNIVERSE = frozenset(UNARY_NAMES)

CLASS_NAMES = (
    "empty", "all", "const0", "const1", "id", "neg", "const", "chi-top",
    "chi-bot-or-0", "chi-bot-or-1", "chi-top-or-1", "parity-like",
    "cls13", "cls14", "nondecreasing", "nonincreasing",
)

_CLASS_MEMBERS = (
    frozenset(),
    _UNIVERSE,
    frozenset({"bot"}),
    frozenset({"top"}),
    frozenset({"id"}),
    frozenset({"neg"}),
    frozenset({"bot", "top"}),
    frozenset({"bot", "id"}),
    frozenset({"bot", "neg"}),
    frozenset({"top", "id"}),
    frozenset({"top", "neg"}),
    frozenset({"id", "neg"}),
    frozenset({"bot", "id", "neg"}),
    frozenset({"top", "id", "neg"}),
    frozenset({"bot", "top", "id"}),
    frozenset({"bot", "top", "neg"}),
)


@dataclass(frozen=True)
class VSet:
    """A subset of the four unary Boolean functions, naming one of the 16
    classes of functions characterized by their essential unary sections."""

    members: frozenset

    def __post_init__(self):
        if not self.members <= _UNIVERSE:
            raise ValueError(f"unknown unary names: {set(self.members) - _UNIVERSE}")

    def __contains__(self, name):
        return name in self.members

    def __le__(self, other):
        return self.members <= other.members


def vset(*names) -> VSet:
    return VSet(frozenset(names))


def vset_for_class(class_id: int) -> VSet:
    if not 1 <= class_id <= 16:
        raise ValueError(f"class id {class_id} out of range 1..16")
    return VSet(_CLASS_MEMBERS[class_id - 1])


def class_for_vset(v: VSet) -> int:
    return _CLASS_MEMBERS.index(v.members) + 1


@dataclass(frozen=True)
class SignedTable:
    """A {-1, 0, 1}-valued table over the Boolean cube."""

    arity: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != 1 << self.arity:
            raise ValueError(f"expected {1 << self.arity} values")
        if any(v not in (-1, 0, 1) for v in self.values):
            raise ValueError("signed table values must be -1, 0, or 1")


def _require_boolean(f: FunctionTable):
    if f.domain != BOOL or f.codomain != BOOL:
        raise SortError("this operation applies to Boolean tables")


def boolean_partial(f: FunctionTable, j: int) -> FunctionTable:
    """XOR derivative: x maps to f(x with bit j flipped) xor f(x)."""
    _require_boolean(f)
    n = f.arity
    if not 1 <= j <= n:
        raise ValueError(f"coordinate {j} out of range for arity {n}")
    bit = 1 << (n - j)
    vals = tuple(f.values[i ^ bit] ^ f.values[i] for i in range(1 << n))
    return FunctionTable(BOOL, BOOL, n, vals)


def boolean_delta(f: FunctionTable, j: int) -> SignedTable:
    """Signed difference: x maps to f(x_j->1) - f(x_j->0)."""
    _require_boolean(f)
    n = f.arity
    if not 1 <= j <= n:
        raise ValueError(f"coordinate {j} out of range for arity {n}")
    bit = 1 << (n - j)
    vals = tuple(f.values[i | bit] - f.values[i & ~bit] for i in range(1 << n))
    return SignedTable(n, vals)


# --- packed-int core -------------------------------------------------------

def _pack(f: FunctionTable) -> tuple:
    _require_boolean(f)
    mask = 0
    for i, v in enumerate(f.values):
        if v:
            mask |= 1 << i
    return f.arity, mask


@lru_cache(maxsize=None)
def _contexts(n: int, j: int) -> tuple:
    """Table indices with coordinate j at 0, paired with their j->1 partners."""
    bit = 1 << (n - j)
    return tuple((i, i | bit) for i in range(1 << n) if not i & bit)


@lru_cache(maxsize=None)
def _analyze(n: int, mask: int):
    """One pass over a packed table: constant value, per-argument section
    kinds, essential arguments, minimal section set, reduced table."""
    full = (1 << (1 << n)) - 1
    const = 0 if mask == 0 else 1 if mask == full else None
    kinds = []
    essential = []
    for j in range(1, n + 1):
        ks = set()
        for lo, hi in _contexts(n, j):
            b0 = (mask >> lo) & 1
            b1 = (mask >> hi) & 1
            ks.add(("bot", "id", "neg", "top")[b0 * 2 + b1])
        kinds.append(frozenset(ks))
        if ks & {"id", "neg"}:
            essential.append(j)
    minimal = frozenset().union(*(kinds[j - 1] for j in essential)) if essential else frozenset()
    if essential:
        e = len(essential)
        rmask = 0
        for ri in range(1 << e):
            src = 0
            for t, j in enumerate(essential, start=1):
                if ri & (1 << (e - t)):
                    src |= 1 << (n - j)
            if mask & (1 << src):
                rmask |= 1 << ri
        red = (e, rmask)
    else:
        red = None
    return const, tuple(kinds), frozenset(essential), minimal, red


def minimal_um_class(f: FunctionTable) -> VSet:
    """The set of unary functions occurring as essential unary sections,
    or the singleton constant for a constant table."""
    const, _, _, minimal, _ = _analyze(*_pack(f))
    if const is not None:
        return vset("bot" if const == 0 else "top")
    return VSet(minimal)


def um_membership(f: FunctionTable, v: VSet) -> bool:
    """Nonconstant: every essential unary section lies in v.  Constant: the
    matching unary constant lies in v."""
    const, _, _, minimal, _ = _analyze(*_pack(f))
    if const is not None:
        return ("bot" if const == 0 else "top") in v.members
    return minimal <= v.members


def um_closed_form(f: FunctionTable, class_id: int) -> bool:
    """Direct structural test for each of the sixteen classes.

    Classes 3-11 test equality with a constant, a projection, a negated
    projection, or an all-ones/all-zeros detector after deleting inessential
    arguments; 12-16 are derivative conditions.  Constants outside classes
    containing their unary constant are excluded throughout.
    """
    if not 1 <= class_id <= 16:
        raise ValueError(f"class id {class_id} out of range 1..16")
    const, kinds, _, _, red = _analyze(*_pack(f))
    if class_id == 1:
        return False
    if class_id == 2:
        return True
    if class_id == 3:
        return const == 0
    if class_id == 4:
        return const == 1
    if class_id == 7:
        return const is not None
    if class_id == 5:
        return red is not None and red == (1, 0b10)
    if class_id == 6:
        return red is not None and red == (1, 0b01)
    if class_id == 8:
        # conjunction of the essential arguments, or the zero constant
        return const == 0 or (red is not None and red[1] == 1 << ((1 << red[0]) - 1))
    if class_id == 9:
        # detector of the all-zeros point, or the zero constant
        return const == 0 or (red is not None and red[1] == 1)
    if class_id == 10:
        # disjunction of the essential arguments, or the one constant
        if const == 1:
            return True
        if red is None:
            return False
        return red[1] == ((1 << (1 << red[0])) - 1) ^ 1
    if class_id == 11:
        # negated conjunction, or the one constant
        if const == 1:
            return True
        if red is None:
            return False
        return red[1] == ((1 << (1 << red[0])) - 1) ^ (1 << ((1 << red[0]) - 1))
    if class_id == 12:
        # every XOR derivative constant; constants themselves excluded
        return const is None and all(
            ks <= {"id", "neg"} or ks <= {"bot", "top"} for ks in kinds)
    if class_id == 13:
        # no two adjacent ones along any coordinate, or the zero constant
        if const is not None:
            return const == 0
        return all("top" not in ks or ks <= {"bot", "top"} for ks in kinds)
    if class_id == 14:
        if const is not None:
            return const == 1
        return all("bot" not in ks or ks <= {"bot", "top"} for ks in kinds)
    if class_id == 15:
        return all("neg" not in ks for ks in kinds)
    return all("id" not in ks for ks in kinds)


def um_algebra(op: str, v1: VSet, v2: VSet | None = None) -> VSet:
    """The Boolean algebra of the sixteen classes, through the section-set
    isomorphism: meet is intersection, join is union, complement is the
    complement in the four-element universe."""
    if op == "meet":
        if v2 is None:
            raise ValueError("meet takes two arguments")
        return VSet(v1.members & v2.members)
    if op == "join":
        if v2 is None:
            raise ValueError("join takes two arguments")
        return VSet(v1.members | v2.members)
    if op == "complement":
        if v2 is not None:
            raise ValueError("complement takes one argument")
        return VSet(_UNIVERSE - v1.members)
    raise ValueError(f"unknown operation {op!r}")


def gamma_membership(f: FunctionTable, pi: PivotalFunction) -> bool:
    """Is f, up to inessential arguments, decomposable through pi?

    Constants need pi(p, c, c) = c for every pivot value p; nonconstant
    tables are checked after deleting inessential arguments.
    """
    red, kept = reduced(f)
    if not kept:
        c = red.values[0]
        for p in f.domain.elements:
            if not pi.defined(p, c, c):
                raise DomainCoverageError((p, c, c))
        return all(pi.apply(p, c, c) == c for p in f.domain.elements)
    return check_decomposition(red, pi).ok
