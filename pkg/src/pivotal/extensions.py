"""Coefficient-form extensions of pseudo-Boolean functions: the multilinear
interpolation sum, its derivative and pivot identities, the alternating-sum
transform to min-term coefficients, and monotone orientation witnesses.

All arithmetic is exact rational; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .decompose import LovaszPivotal
from .tables import BOOL, RATIONAL, FunctionTable, SortError, grid_sort

DEFAULT_GRID = 4  # {0, 1/4, 1/2, 3/4, 1}


def _check_unit_point(x, n):
    if len(x) != n:
        raise ValueError(f"point has arity {len(x)}, form has arity {n}")
    out = []
    for c in x:
        c = c if isinstance(c, Fraction) else Fraction(c)
        if not 0 <= c <= 1:
            raise ValueError(f"coordinate {c} outside [0, 1]")
        out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class MultilinearForm:
    """Vertex values f(1_S), one per subset S; vertex index bit n-i is i in S."""

    arity: int
    vertex_values: tuple

    def __post_init__(self):
        if len(self.vertex_values) != 1 << self.arity:
            raise ValueError(
                f"expected {1 << self.arity} vertex values, got {len(self.vertex_values)}")
        object.__setattr__(
            self, "vertex_values",
            tuple(v if isinstance(v, Fraction) else Fraction(v) for v in self.vertex_values))

    @classmethod
    def from_table(cls, f: FunctionTable) -> "MultilinearForm":
        if f.domain != BOOL:
            raise SortError("a multilinear form interpolates a Boolean-domain table")
        return cls(f.arity, f.values)


def sop_form(f: FunctionTable) -> MultilinearForm:
    """Sum-of-products form of a Boolean function: its own vertex table."""
    if f.domain != BOOL or f.codomain != BOOL:
        raise SortError("sop_form expects a Boolean table")
    return MultilinearForm.from_table(f)


@lru_cache(maxsize=1 << 14)
def _vertex_weights(coords: tuple) -> tuple:
    """Lagrange weights prod_{i in S} x_i prod_{i not in S} (1-x_i), by vertex index."""
    weights = [Fraction(1)]
    for c in coords:
        nxt = []
        for w in weights:
            nxt.append(w * (1 - c))
            nxt.append(w * c)
        weights = nxt
    return tuple(weights)


def mle_evaluate(m: MultilinearForm, x: tuple) -> Fraction:
    """The interpolation sum over all subsets, exactly."""
    coords = _check_unit_point(x, m.arity)
    weights = _vertex_weights(coords)
    total = Fraction(0)
    for v, w in zip(m.vertex_values, weights):
        if v and w:
            total += v * w
    return total


def mle_partial(m: MultilinearForm, k: int, x: tuple) -> Fraction:
    """Partial derivative in coordinate k: difference of the two cofactor values."""
    if not 1 <= k <= m.arity:
        raise ValueError(f"coordinate {k} out of range for arity {m.arity}")
    coords = _check_unit_point(x, m.arity)
    hi = coords[: k - 1] + (Fraction(1),) + coords[k:]
    lo = coords[: k - 1] + (Fraction(0),) + coords[k:]
    return mle_evaluate(m, hi) - mle_evaluate(m, lo)


@dataclass(frozen=True)
class MleIdentityReport:
    ok: bool
    per_pivot: tuple
    witness: tuple | None  # (x, k) at the first failure

    def __bool__(self):
        return self.ok


def check_mle_identity(m: MultilinearForm, evaluate=None,
                       denominator: int = DEFAULT_GRID) -> MleIdentityReport:
    """Check f(x) = x_k f(x_k->1) + (1-x_k) f(x_k->0) per pivot on a grid.

    With the default evaluator this is a self-consistency confirmation (both
    sides are multilinear and agree at the vertices, hence everywhere); a
    foreign evaluator is checked as given and may fail off the vertices.
    """
    n = m.arity
    if evaluate is None:
        evaluate = lambda pt: mle_evaluate(m, pt)
    grid = [Fraction(i, denominator) for i in range(denominator + 1)]
    ok_per = [True] * n
    witness = None
    for x in product(grid, repeat=n):
        fx = evaluate(x)
        for k in range(1, n + 1):
            if not ok_per[k - 1]:
                continue
            hi = evaluate(x[: k - 1] + (Fraction(1),) + x[k:])
            lo = evaluate(x[: k - 1] + (Fraction(0),) + x[k:])
            if fx != x[k - 1] * hi + (1 - x[k - 1]) * lo:
                ok_per[k - 1] = False
                if witness is None:
                    witness = (x, k)
    return MleIdentityReport(all(ok_per), tuple(ok_per), witness)


@dataclass(frozen=True)
class LovaszForm:
    """Min-term coefficients a_S, one per subset; same vertex indexing."""

    arity: int
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != 1 << self.arity:
            raise ValueError(
                f"expected {1 << self.arity} coefficients, got {len(self.coefficients)}")
        object.__setattr__(
            self, "coefficients",
            tuple(c if isinstance(c, Fraction) else Fraction(c) for c in self.coefficients))


def mobius(f: FunctionTable) -> LovaszForm:
    """Alternating-sum transform of a Boolean-domain vertex table."""
    if f.domain != BOOL:
        raise SortError("the transform applies to Boolean-domain vertex tables")
    n = f.arity
    coeffs = [v if isinstance(v, Fraction) else Fraction(v) for v in f.values]
    for b in range(n):
        bit = 1 << b
        for idx in range(1 << n):
            if idx & bit:
                coeffs[idx] -= coeffs[idx ^ bit]
    return LovaszForm(n, tuple(coeffs))


def zeta_values(l: LovaszForm) -> tuple:
    """Subset sums recovering the vertex table from the coefficients."""
    n = l.arity
    vals = list(l.coefficients)
    for b in range(n):
        bit = 1 << b
        for idx in range(1 << n):
            if idx & bit:
                vals[idx] += vals[idx ^ bit]
    return tuple(vals)


def lovasz_evaluate(l: LovaszForm, x: tuple) -> Fraction:
    """Sum of a_S times the minimum coordinate over S; the empty term is a_0."""
    coords = _check_unit_point(x, l.arity)
    n = l.arity
    total = Fraction(0)
    for s, a in enumerate(l.coefficients):
        if not a:
            continue
        if s == 0:
            total += a
        else:
            total += a * min(coords[i - 1] for i in range(1, n + 1) if s & (1 << (n - i)))
    return total


def lovasz_table(l: LovaszForm, denominator: int = DEFAULT_GRID) -> FunctionTable:
    """Grid sampling of the min-term polynomial as a rational table."""
    sort = grid_sort(denominator)
    return FunctionTable.from_function(
        sort, RATIONAL, l.arity, lambda x: lovasz_evaluate(l, x))


def binary_lovasz_pivotals(l: LovaszForm, denominator: int = DEFAULT_GRID):
    """Per-argument pivotal functions of a binary min-term polynomial.

    Built from the coefficient case analysis and validated exactly on the
    sampling grid; the recorded domain is [0,1] times the cofactor pairs the
    grid realizes.
    """
    if l.arity != 2:
        raise ValueError("the construction applies to binary forms")
    a0, a2, a1, a12 = l.coefficients  # vertex order: {}, {2}, {1}, {1,2}
    grid = [Fraction(i, denominator) for i in range(denominator + 1)]
    out = []
    for component in (1, 2):
        pairs = set()
        for x in product(grid, repeat=2):
            k = component - 1
            hi = x[:k] + (Fraction(1),) + x[k + 1:]
            lo = x[:k] + (Fraction(0),) + x[k + 1:]
            pairs.add((lovasz_evaluate(l, hi), lovasz_evaluate(l, lo)))
        pi = LovaszPivotal(a0, a1, a2, a12, component, pairs)
        for x in product(grid, repeat=2):
            k = component - 1
            hi = x[:k] + (Fraction(1),) + x[k + 1:]
            lo = x[:k] + (Fraction(0),) + x[k + 1:]
            got = pi(x[k], lovasz_evaluate(l, hi), lovasz_evaluate(l, lo))
            assert got == lovasz_evaluate(l, x), "case-analysis formula disagrees on the grid"
        out.append(pi)
    return tuple(out)


@dataclass(frozen=True)
class OrientationWitness:
    """Per-argument flags ('id' or 'neg') reorienting a table to nondecreasing."""

    phis: tuple


def monotone_witness(f: FunctionTable) -> OrientationWitness | None:
    """Orientation flags iff f is isotone or antitone in each argument;
    arguments that are both (inessential) default to the identity."""
    if f.domain != BOOL:
        raise SortError("orientation witnesses apply to Boolean-domain tables")
    n = f.arity
    vals = f.values
    flags = []
    for k in range(1, n + 1):
        stride = 1 << (n - k)
        nonneg = nonpos = True
        for hi in range(1 << (k - 1)):
            base = hi * 2 * stride
            for lo in range(stride):
                d = vals[base + stride + lo] - vals[base + lo]
                if d > 0:
                    nonpos = False
                elif d < 0:
                    nonneg = False
        if nonneg:
            flags.append("id")
        elif nonpos:
            flags.append("neg")
        else:
            return None
    return OrientationWitness(tuple(flags))


def oriented_table(f: FunctionTable, witness: OrientationWitness) -> FunctionTable:
    """Apply the orientation maps to the arguments; the result is nondecreasing."""
    n = f.arity

    def flip(x):
        return tuple(
            (1 - c) if flag == "neg" else c
            for c, flag in zip(x, witness.phis))

    return FunctionTable.from_function(
        f.domain, f.codomain, n, lambda x: f.evaluate(flip(x)))
