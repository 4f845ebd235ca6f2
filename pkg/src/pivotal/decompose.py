"""The decomposability engine: ternary pivotal functions, decomposition
checking, extensional synthesis (shared and componentwise), the built-in
pivotal families, and the monotone restriction transformer."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .lattices import median_in
from .tables import BOOL, FunctionTable, Sort, SortError


class DomainCoverageError(ValueError):
    """A pivotal function is undefined on a triple its use requires."""

    def __init__(self, triple, message=None):
        super().__init__(message or f"pivotal function undefined at {triple!r}")
        self.triple = triple


class PivotalFamilyError(ValueError):
    """Built-in family parameters violate an axiom; carries a witness."""

    def __init__(self, axiom, witness, message):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


def _numeric(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def _unit_interval(p) -> bool:
    return _numeric(p) and 0 <= p <= 1


class PivotalFunction:
    """A partial ternary map combining a pivot value with the two cofactors."""

    kind = "abstract"

    def defined(self, p, u, v) -> bool:
        raise NotImplementedError

    def apply(self, p, u, v):
        raise NotImplementedError

    def __call__(self, p, u, v):
        if not self.defined(p, u, v):
            raise DomainCoverageError((p, u, v))
        return self.apply(p, u, v)


class ExtensionalPivotal(PivotalFunction):
    """An explicit map from (p, u, v) triples to values."""

    kind = "extensional"

    def __init__(self, mapping):
        self.mapping = dict(mapping)

    def defined(self, p, u, v):
        return (p, u, v) in self.mapping

    def apply(self, p, u, v):
        return self.mapping[(p, u, v)]

    @property
    def triples(self):
        return sorted(self.mapping)

    def __eq__(self, other):
        return isinstance(other, ExtensionalPivotal) and self.mapping == other.mapping

    def __repr__(self):
        return f"ExtensionalPivotal({len(self.mapping)} triples)"


class ItePivotal(PivotalFunction):
    """Select u when the pivot is 1 and v when it is 0."""

    kind = "ite"

    def defined(self, p, u, v):
        return p == 0 or p == 1

    def apply(self, p, u, v):
        return u if p == 1 else v


class AffinePivotal(PivotalFunction):
    """p*u + (1-p)*v on rational values with p in [0,1]."""

    kind = "mle-affine"

    def defined(self, p, u, v):
        return _unit_interval(p) and _numeric(u) and _numeric(v)

    def apply(self, p, u, v):
        return p * u + (1 - p) * v


class MedianPivotal(PivotalFunction):
    """The ternary median over a lattice sort or a totally ordered sort."""

    kind = "median"

    def __init__(self, sort: Sort):
        if sort.kind == "lattice" or sort.is_finite or sort.kind == "rational":
            self.sort = sort
        else:
            raise SortError(f"median undefined over sort kind {sort.kind!r}")

    def defined(self, p, u, v):
        return all(self.sort.contains(x) for x in (p, u, v))

    def apply(self, p, u, v):
        return median_in(self.sort, p, u, v)


class TnormPivotal(PivotalFunction):
    """T(p, u) for a validated t-norm table T; the second cofactor is ignored."""

    kind = "tnorm"

    def __init__(self, table: FunctionTable):
        self.table = table

    def defined(self, p, u, v):
        return self.table.domain.contains(p) and self.table.domain.contains(u)

    def apply(self, p, u, v):
        return self.table.evaluate((p, u))


class MedMapPivotal(PivotalFunction):
    """med(phi(p), u, v) for a unary map phi into the codomain sort."""

    kind = "qlp"

    def __init__(self, phi: FunctionTable):
        self.phi = phi

    def defined(self, p, u, v):
        cod = self.phi.codomain
        return self.phi.domain.contains(p) and cod.contains(u) and cod.contains(v)

    def apply(self, p, u, v):
        return median_in(self.phi.codomain, self.phi.evaluate((p,)), u, v)


class LovaszPivotal(PivotalFunction):
    """Per-argument pivotal function of a binary min-term polynomial
    a0 + a1*x1 + a2*x2 + a12*(x1 min x2), by case analysis on the
    coefficients of the other argument."""

    kind = "lovasz"

    def __init__(self, a0, a1, a2, a12, component, pairs=None):
        if component not in (1, 2):
            raise ValueError("component must be 1 or 2")
        self.a0, self.a1, self.a2, self.a12 = (Fraction(a) for a in (a0, a1, a2, a12))
        self.component = component
        self.pairs = None if pairs is None else frozenset(pairs)

    def defined(self, p, u, v):
        if not (_unit_interval(p) and _numeric(u) and _numeric(v)):
            return False
        return self.pairs is None or (u, v) in self.pairs

    def apply(self, p, u, v):
        a0, a12 = self.a0, self.a12
        own, other = (self.a1, self.a2) if self.component == 1 else (self.a2, self.a1)
        if other != 0:
            return a0 + own * p + (v - a0) + a12 * min(p, (v - a0) / other)
        if a12 != 0:
            return a0 + own * p + a12 * min(p, (u - a0 - own) / a12)
        return a0 + own * p


class MonotoneRestrictedPivotal(PivotalFunction):
    """Feed the base pivotal the ordered cofactors: (p, max(u,v), min(u,v))."""

    kind = "monotone-restricted"

    def __init__(self, base: PivotalFunction):
        self.base = base

    def defined(self, p, u, v):
        if not (_numeric(u) and _numeric(v)):
            return False
        return self.base.defined(p, max(u, v), min(u, v))

    def apply(self, p, u, v):
        return self.base.apply(p, max(u, v), min(u, v))


def monotone_restrict(pi: PivotalFunction) -> MonotoneRestrictedPivotal:
    """The pivotal function for the nondecreasing subclass: values must be
    totally ordered, so lattice-valued medians are rejected."""
    if isinstance(pi, MedianPivotal) and pi.sort.kind == "lattice" and not pi.sort.totally_ordered:
        raise SortError("monotone restriction needs a totally ordered codomain")
    return MonotoneRestrictedPivotal(pi)


def validate_tnorm(table: FunctionTable) -> FunctionTable:
    """Symmetric, nondecreasing, associative, with unit 1 — else a witness."""
    if table.arity != 2 or table.domain != table.codomain:
        raise PivotalFamilyError("shape", None, "a t-norm is a binary table X^2 -> X")
    if table.domain.kind == "lattice":
        raise PivotalFamilyError("shape", None, "t-norm tables live on chains")
    elems = table.domain.elements
    one = table.domain.one
    for x in elems:
        if table.evaluate((one, x)) != x:
            raise PivotalFamilyError("unit", x, f"T(1, {x}) != {x}")
    for a in elems:
        for b in elems:
            if table.evaluate((a, b)) != table.evaluate((b, a)):
                raise PivotalFamilyError("symmetry", (a, b), f"T({a},{b}) != T({b},{a})")
    for i in range(len(elems) - 1):
        for b in elems:
            if table.evaluate((elems[i], b)) > table.evaluate((elems[i + 1], b)):
                raise PivotalFamilyError(
                    "monotonicity", (elems[i], elems[i + 1], b),
                    f"T is decreasing in its first argument at ({elems[i]}, {elems[i+1]}, {b})")
    for a in elems:
        for b in elems:
            for c in elems:
                left = table.evaluate((table.evaluate((a, b)), c))
                right = table.evaluate((a, table.evaluate((b, c))))
                if left != right:
                    raise PivotalFamilyError(
                        "associativity", (a, b, c),
                        f"T(T({a},{b}),{c}) != T({a},T({b},{c}))")
    return table


def _validate_med_map(phi: FunctionTable) -> FunctionTable:
    one, zero = phi.domain.one, phi.domain.zero
    p1, p0 = phi.evaluate((one,)), phi.evaluate((zero,))
    for x in phi.domain.elements:
        px = phi.evaluate((x,))
        if median_in(phi.codomain, px, p1, p0) != px:
            raise PivotalFamilyError(
                "range-condition", x,
                f"med(phi({x}), phi(1), phi(0)) != phi({x})")
    return phi


def builtin_pivotal(name: str, **params) -> PivotalFunction:
    """Construct a built-in family: ite, mle-affine, median, tnorm, qlp."""
    if name == "ite":
        return ItePivotal()
    if name == "mle-affine":
        return AffinePivotal()
    if name == "median":
        return MedianPivotal(params["sort"])
    if name == "tnorm":
        return TnormPivotal(validate_tnorm(params["table"]))
    if name == "qlp":
        return MedMapPivotal(_validate_med_map(params["phi"]))
    raise ValueError(f"unknown pivotal family {name!r}")


@dataclass(frozen=True)
class CofactorRelation:
    """All cofactor value pairs of a table, globally and per argument."""

    pairs: frozenset
    per_argument: tuple


def cofactor_relation(f: FunctionTable) -> CofactorRelation:
    n, m = f.arity, f.domain.size
    vals = f.values
    d1 = f.domain._elem_index[f.domain.one]
    d0 = f.domain._elem_index[f.domain.zero]
    per = []
    for k in range(1, n + 1):
        stride = m ** (n - k)
        pairs = set()
        for hi in range(m ** (k - 1)):
            base = hi * m * stride
            for lo in range(stride):
                pairs.add((vals[base + d1 * stride + lo], vals[base + d0 * stride + lo]))
        per.append(frozenset(pairs))
    return CofactorRelation(frozenset().union(*per), tuple(per))


@dataclass(frozen=True)
class DecompositionReport:
    ok: bool
    violations: tuple  # of (point, k)

    def __bool__(self):
        return self.ok


def _cofactor_pair(f, idx, k, stride, m, d1, d0):
    digit = (idx // stride) % m
    base = idx - digit * stride
    return f.values[base + d1 * stride], f.values[base + d0 * stride]


def check_decomposition(f: FunctionTable, pi: PivotalFunction) -> DecompositionReport:
    """Does f(x) = pi(x_k, f at x_k->1, f at x_k->0) hold at every point and
    pivot?  The pivotal function must cover X x R_f, else DomainCoverageError."""
    n, m = f.arity, f.domain.size
    rel = cofactor_relation(f)
    for p in f.domain.elements:
        for (u, v) in rel.pairs:
            if not pi.defined(p, u, v):
                raise DomainCoverageError((p, u, v))
    d1 = f.domain._elem_index[f.domain.one]
    d0 = f.domain._elem_index[f.domain.zero]
    violations = []
    for idx, fx in enumerate(f.values):
        x = None
        for k in range(1, n + 1):
            stride = m ** (n - k)
            u, v = _cofactor_pair(f, idx, k, stride, m, d1, d0)
            p = f.domain.elements[(idx // stride) % m]
            if pi.apply(p, u, v) != fx:
                if x is None:
                    x = f.point_at(idx)
                violations.append((x, k))
    return DecompositionReport(not violations, tuple(violations))


@dataclass(frozen=True)
class Conflict:
    """Two point/pivot incidences sharing a triple but not a value."""

    point_first: tuple
    k_first: int
    point_second: tuple
    k_second: int
    triple: tuple
    values: tuple


@dataclass(frozen=True)
class SynthesisResult:
    pivotal: PivotalFunction | None
    conflict: Conflict | None

    def __bool__(self):
        return self.pivotal is not None


def synthesize_pivotal(f: FunctionTable) -> SynthesisResult:
    """Build the extensional pivotal table T[(x_k, f at x_k->1, f at x_k->0)]
    := f(x) over all points and pivots; None with the first conflicting pair
    (points scanned in index order, pivots innermost) when it is not well
    defined."""
    n, m = f.arity, f.domain.size
    d1 = f.domain._elem_index[f.domain.one]
    d0 = f.domain._elem_index[f.domain.zero]
    table = {}
    origin = {}
    for idx, fx in enumerate(f.values):
        for k in range(1, n + 1):
            stride = m ** (n - k)
            u, v = _cofactor_pair(f, idx, k, stride, m, d1, d0)
            p = f.domain.elements[(idx // stride) % m]
            key = (p, u, v)
            if key in table:
                if table[key] != fx:
                    first_point, first_k = origin[key]
                    return SynthesisResult(None, Conflict(
                        first_point, first_k, f.point_at(idx), k,
                        key, (table[key], fx)))
            else:
                table[key] = fx
                origin[key] = (f.point_at(idx), k)
    return SynthesisResult(ExtensionalPivotal(table), None)


@dataclass(frozen=True)
class ComponentwiseResult:
    pivotals: tuple | None
    failed_k: int | None
    conflict: Conflict | None
    phis: tuple | None = None

    def __bool__(self):
        return self.pivotals is not None


def _negation_table(domain: Sort) -> FunctionTable:
    if domain != BOOL:
        raise SortError("orientation maps need a Boolean domain")
    return FunctionTable(BOOL, BOOL, 1, (1, 0))


def _identity_table(domain: Sort) -> FunctionTable:
    return FunctionTable(domain, domain, 1, domain.elements)


def synthesize_componentwise(f: FunctionTable, family: str = "extensional") -> ComponentwiseResult:
    """Per-argument pivotal synthesis.

    family="extensional": for each k the map (x_k, f at x_k->1, f at x_k->0)
    -> f(x) must be well defined; the first failing k is reported with the
    first conflicting pair in point scan order.

    family="median-map": Boolean pivots only; for each k search phi_k in
    {identity, negation} such that f(x) = med(phi_k(x_k), ., .) holds
    everywhere, reporting the orientation flags alongside the pivotals.
    """
    n, m = f.arity, f.domain.size
    d1 = f.domain._elem_index[f.domain.one]
    d0 = f.domain._elem_index[f.domain.zero]
    if family == "extensional":
        pivotals = []
        for k in range(1, n + 1):
            stride = m ** (n - k)
            table = {}
            origin = {}
            for idx, fx in enumerate(f.values):
                u, v = _cofactor_pair(f, idx, k, stride, m, d1, d0)
                p = f.domain.elements[(idx // stride) % m]
                key = (p, u, v)
                if key in table:
                    if table[key] != fx:
                        return ComponentwiseResult(None, k, Conflict(
                            origin[key], k, f.point_at(idx), k,
                            key, (table[key], fx)))
                else:
                    table[key] = fx
                    origin[key] = f.point_at(idx)
            pivotals.append(ExtensionalPivotal(table))
        return ComponentwiseResult(tuple(pivotals), None, None)
    if family == "median-map":
        if f.domain != BOOL:
            raise SortError("the median-map family needs Boolean pivots")
        candidates = (("id", _identity_table(BOOL)), ("neg", _negation_table(BOOL)))
        pivotals, flags = [], []
        for k in range(1, n + 1):
            stride = m ** (n - k)
            chosen = None
            for flag, phi in candidates:
                ok = True
                for idx, fx in enumerate(f.values):
                    u, v = _cofactor_pair(f, idx, k, stride, m, d1, d0)
                    p = f.domain.elements[(idx // stride) % m]
                    if median_in(f.codomain, phi.evaluate((p,)), u, v) != fx:
                        ok = False
                        break
                if ok:
                    chosen = (flag, phi)
                    break
            if chosen is None:
                return ComponentwiseResult(None, k, None)
            flags.append(chosen[0])
            pivotals.append(MedMapPivotal(chosen[1]))
        return ComponentwiseResult(tuple(pivotals), None, None, tuple(flags))
    raise ValueError(f"unknown synthesis family {family!r}")


def check_componentwise(f: FunctionTable, pivotals) -> DecompositionReport:
    """check_decomposition with one pivotal function per argument."""
    pivotals = tuple(pivotals)
    if len(pivotals) != f.arity:
        raise ValueError(f"expected {f.arity} pivotal functions, got {len(pivotals)}")
    n, m = f.arity, f.domain.size
    rel = cofactor_relation(f)
    for k, pi in enumerate(pivotals, start=1):
        for p in f.domain.elements:
            for (u, v) in rel.per_argument[k - 1]:
                if not pi.defined(p, u, v):
                    raise DomainCoverageError((p, u, v))
    d1 = f.domain._elem_index[f.domain.one]
    d0 = f.domain._elem_index[f.domain.zero]
    violations = []
    for idx, fx in enumerate(f.values):
        for k in range(1, n + 1):
            stride = m ** (n - k)
            u, v = _cofactor_pair(f, idx, k, stride, m, d1, d0)
            p = f.domain.elements[(idx // stride) % m]
            if pivotals[k - 1].apply(p, u, v) != fx:
                violations.append((f.point_at(idx), k))
    return DecompositionReport(not violations, tuple(violations))
