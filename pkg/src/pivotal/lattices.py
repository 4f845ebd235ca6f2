"""Finite bounded distributive lattices, the ternary median, lattice
polynomial functions in disjunctive normal form, and componentwise median
decomposition checks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .tables import FunctionTable, Sort, SortError, lattice_sort

DEFAULT_MAX_LATTICE = 16


class LatticeError(ValueError):
    """A lattice axiom failed; carries the axiom name and a witness."""

    def __init__(self, axiom, witness, message):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class RangeConditionError(ValueError):
    """A unary map failed the median range condition; carries a witness point."""

    def __init__(self, witness, message):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FiniteLattice:
    """A validated bounded distributive lattice, given extensionally.

    ``leq`` is the full order relation (reflexive and transitive closed).
    Construct through validate_lattice, which checks every axiom.
    """

    elements: tuple
    leq: frozenset
    bottom: object
    top: object

    def leq_q(self, a, b) -> bool:
        return (a, b) in self.leq

    @cached_property
    def _meet(self) -> dict:
        return {(a, b): _bound(self, a, b, lower=True) for a in self.elements for b in self.elements}

    @cached_property
    def _join(self) -> dict:
        return {(a, b): _bound(self, a, b, lower=False) for a in self.elements for b in self.elements}

    def meet(self, a, b):
        self._check(a), self._check(b)
        return self._meet[(a, b)]

    def join(self, a, b):
        self._check(a), self._check(b)
        return self._join[(a, b)]

    def med(self, p, u, v):
        m, j = self._meet, self._join
        return j[(j[(m[(p, u)], m[(u, v)])], m[(v, p)])]

    def _check(self, a):
        if a not in self._members:
            raise SortError(f"{a!r} is not an element of the lattice")

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def as_sort(self) -> Sort:
        return lattice_sort(self)


def _bound(lat, a, b, lower):
    if lower:
        cands = [x for x in lat.elements if lat.leq_q(x, a) and lat.leq_q(x, b)]
        best = [x for x in cands if all(lat.leq_q(y, x) for y in cands)]
    else:
        cands = [x for x in lat.elements if lat.leq_q(a, x) and lat.leq_q(b, x)]
        best = [x for x in cands if all(lat.leq_q(x, y) for y in cands)]
    return best[0] if best else None


def validate_lattice(elements, leq_pairs, bottom=None, top=None,
                     max_size=DEFAULT_MAX_LATTICE) -> FiniteLattice:
    """Check all axioms on raw order data and return the lattice.

    Raises LatticeError naming the first violated axiom with a witness:
    not-a-poset, missing-meet, missing-join, unbounded, non-distributive.
    """
    elements = tuple(dict.fromkeys(elements))
    if len(elements) < 2:
        raise LatticeError("unbounded", None, "a bounded lattice needs 0 != 1")
    if len(elements) > max_size:
        raise LatticeError(
            "size", len(elements),
            f"lattice size {len(elements)} exceeds the cap {max_size}")
    members = set(elements)
    rel = {(a, a) for a in elements}
    for a, b in leq_pairs:
        if a not in members or b not in members:
            raise LatticeError("not-a-poset", (a, b), f"unknown element in pair ({a!r}, {b!r})")
        rel.add((a, b))
    # transitive closure
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c in elements:
                if (b, c) in rel and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    for a in elements:
        for b in elements:
            if a != b and (a, b) in rel and (b, a) in rel:
                raise LatticeError("not-a-poset", (a, b),
                                   f"antisymmetry fails: {a!r} <= {b!r} <= {a!r}")
    lat = FiniteLattice(elements, frozenset(rel), None, None)
    for a in elements:
        for b in elements:
            if _bound(lat, a, b, lower=True) is None:
                raise LatticeError("missing-meet", (a, b), f"no meet for ({a!r}, {b!r})")
            if _bound(lat, a, b, lower=False) is None:
                raise LatticeError("missing-join", (a, b), f"no join for ({a!r}, {b!r})")
    bot = [x for x in elements if all((x, y) in rel for y in elements)]
    topx = [x for x in elements if all((y, x) in rel for y in elements)]
    if not bot or not topx:
        raise LatticeError("unbounded", None, "no global bottom or top element")
    if bottom is not None and bottom != bot[0]:
        raise LatticeError("unbounded", bottom, f"declared bottom {bottom!r} is not the least element")
    if top is not None and top != topx[0]:
        raise LatticeError("unbounded", top, f"declared top {top!r} is not the greatest element")
    lat = FiniteLattice(elements, frozenset(rel), bot[0], topx[0])
    for a in elements:
        for b in elements:
            for c in elements:
                left = lat.meet(a, lat.join(b, c))
                right = lat.join(lat.meet(a, b), lat.meet(a, c))
                if left != right:
                    raise LatticeError(
                        "non-distributive", (a, b, c),
                        f"x&(y|z) != (x&y)|(x&z) at ({a!r}, {b!r}, {c!r})")
    return lat


def chain_lattice(names) -> FiniteLattice:
    """Chain lattice from bottom to top in the given element order."""
    names = tuple(names)
    pairs = [(names[i], names[j]) for i in range(len(names)) for j in range(i, len(names))]
    return validate_lattice(names, pairs, bottom=names[0], top=names[-1])


def median(lat: FiniteLattice, p, u, v):
    """med(p,u,v) = (p&u)|(u&v)|(v&p)."""
    for x in (p, u, v):
        lat._check(x)
    return lat.med(p, u, v)


def median_in(sort: Sort, a, b, c):
    """Median in a codomain sort: lattice formula, or middle of three by order."""
    if sort.kind == "lattice":
        return sort.lattice.med(a, b, c)
    return sorted((a, b, c))[1]


@dataclass(frozen=True)
class LatticePolynomial:
    """DNF coefficient form of a lattice polynomial function.

    coefficients[s] is the value at the characteristic vector of the subset
    with vertex index s (bit n-i set iff argument i is in the subset).
    The map must be order-preserving under subset inclusion.
    """

    lattice: FiniteLattice
    arity: int
    coefficients: tuple

    def __post_init__(self):
        n = self.arity
        if len(self.coefficients) != 1 << n:
            raise ValueError(f"expected {1 << n} coefficients, got {len(self.coefficients)}")
        for c in self.coefficients:
            self.lattice._check(c)
        for s in range(1 << n):
            for b in range(n):
                t = s | (1 << b)
                if t != s and not self.lattice.leq_q(self.coefficients[s], self.coefficients[t]):
                    raise LatticeError(
                        "non-monotone-coefficients", (s, t),
                        f"coefficient at subset {s:b} exceeds the one at {t:b}")


def subset_index(S, n: int) -> int:
    """Vertex index of the characteristic point of S (1-based argument labels)."""
    idx = 0
    for i in S:
        if not 1 <= i <= n:
            raise ValueError(f"argument label {i} out of range")
        idx |= 1 << (n - i)
    return idx


def index_subset(idx: int, n: int) -> frozenset:
    return frozenset(i for i in range(1, n + 1) if idx & (1 << (n - i)))


def lp_evaluate(p: LatticePolynomial, x: tuple):
    """Join over subsets S of coeff(S) meet the arguments in S; empty meet is top."""
    lat, n = p.lattice, p.arity
    if len(x) != n:
        raise ValueError(f"point has arity {len(x)}, polynomial has arity {n}")
    for c in x:
        lat._check(c)
    acc = lat.bottom
    for s in range(1 << n):
        term = p.coefficients[s]
        for i in range(1, n + 1):
            if s & (1 << (n - i)):
                term = lat.meet(term, x[i - 1])
        acc = lat.join(acc, term)
    return acc


def lp_table(p: LatticePolynomial) -> FunctionTable:
    sort = p.lattice.as_sort()
    return FunctionTable.from_function(sort, sort, p.arity, lambda x: lp_evaluate(p, x))


def is_lattice_polynomial(f: FunctionTable) -> LatticePolynomial | None:
    """Coefficients read off at characteristic vectors, iff the median
    identity f(x) = med(x_k, f at x_k->1, f at x_k->0) holds everywhere."""
    if f.domain.kind != "lattice" or f.domain != f.codomain:
        raise SortError("lattice polynomial check needs matching lattice sorts")
    lat = f.domain.lattice
    n = f.arity
    one, zero = lat.top, lat.bottom
    for x in f.points():
        fx = f.evaluate(x)
        for k in range(1, n + 1):
            hi = f.evaluate(x[: k - 1] + (one,) + x[k:])
            lo = f.evaluate(x[: k - 1] + (zero,) + x[k:])
            if lat.med(x[k - 1], hi, lo) != fx:
                return None
    coeffs = []
    for s in range(1 << n):
        point = tuple(one if s & (1 << (n - i)) else zero for i in range(1, n + 1))
        coeffs.append(f.evaluate(point))
    return LatticePolynomial(lat, n, tuple(coeffs))


def is_sugeno(p: LatticePolynomial) -> bool:
    """Reflexivity: the polynomial returns x on every constant tuple (x,...,x)."""
    return all(
        lp_evaluate(p, (x,) * p.arity) == x for x in p.lattice.elements
    )


@dataclass(frozen=True)
class QlpReport:
    ok: bool
    violations: tuple
    phis: tuple

    def __bool__(self):
        return self.ok


def qlp_check(f: FunctionTable, phis=None) -> QlpReport:
    """Componentwise median decomposition test with unary inner maps.

    Each phi_k: X -> Y must satisfy phi(x) = med(phi(x), phi(1), phi(0)); the
    check then asks f(x) = med(phi_k(x_k), f at x_k->1, f at x_k->0) for every
    point and pivot.  With phis=None the diagonal map phi(p) = f(p,...,p) is
    used for every argument.
    """
    n = f.arity
    cod = f.codomain
    if phis is None:
        if f.domain != f.codomain:
            raise SortError("diagonal mode needs matching domain and codomain sorts")
        diag = FunctionTable.from_function(
            f.domain, f.codomain, 1, lambda x: f.evaluate(x * n))
        phis = (diag,) * n
    phis = tuple(phis)
    if len(phis) != n:
        raise ValueError(f"expected {n} unary maps, got {len(phis)}")
    one, zero = f.domain.one, f.domain.zero
    for phi in phis:
        if phi.arity != 1 or phi.domain != f.domain or phi.codomain != cod:
            raise SortError("each unary map must go from the domain sort to the codomain sort")
        p1, p0 = phi.evaluate((one,)), phi.evaluate((zero,))
        for x in f.domain.elements:
            px = phi.evaluate((x,))
            if median_in(cod, px, p1, p0) != px:
                raise RangeConditionError(
                    x, f"range condition fails at {x!r}: med(phi(x), phi(1), phi(0)) != phi(x)")
    violations = []
    for x in f.points():
        fx = f.evaluate(x)
        for k in range(1, n + 1):
            hi = f.evaluate(x[: k - 1] + (one,) + x[k:])
            lo = f.evaluate(x[: k - 1] + (zero,) + x[k:])
            if median_in(cod, phis[k - 1].evaluate((x[k - 1],)), hi, lo) != fx:
                violations.append((x, k))
    return QlpReport(not violations, tuple(violations), phis)
