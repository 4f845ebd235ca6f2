"""Dense value tables for finite-domain functions.

The carrier for everything in this package: a function f: X^n -> Y stored as
the full tuple of its values.  The index encoding puts x1 in the most
significant base-|X| digit, so index(x) = sum(digit(x_i) * |X|**(n-i)).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product


class SortError(ValueError):
    """A value or operation used outside its sort."""


class ArityError(ValueError):
    """An index, point, or value tuple incompatible with a table's arity."""


class ArityLimitError(ValueError):
    """Exhaustive operation beyond the configured arity cap."""


def max_arity() -> int:
    """Arity cap for exhaustive operations (env var PIVOTAL_MAX_ARITY)."""
    return int(os.environ.get("PIVOTAL_MAX_ARITY", "12"))


@dataclass(frozen=True)
class Sort:
    """Value carrier for coordinates or codomains.

    Kinds: ``bool`` (ints 0/1), ``chain`` (evenly spaced rationals on [0,1]),
    ``grid`` (rationals k/d on [0,1]), ``lattice`` (named elements of a
    validated finite lattice), ``rational`` (unrestricted; codomain only).
    Every sort exposes distinguished elements 0 and 1, and 0 != 1.
    """

    kind: str
    elements: tuple | None
    lattice: object = None

    @property
    def is_finite(self) -> bool:
        return self.elements is not None

    @property
    def size(self) -> int:
        if self.elements is None:
            raise SortError("the unrestricted rational sort has no size")
        return len(self.elements)

    @property
    def zero(self):
        if self.kind == "lattice":
            return self.lattice.bottom
        if self.elements is None:
            return Fraction(0)
        return self.elements[0]

    @property
    def one(self):
        if self.kind == "lattice":
            return self.lattice.top
        if self.elements is None:
            return Fraction(1)
        return self.elements[-1]

    @cached_property
    def _elem_index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def contains(self, value) -> bool:
        if self.elements is None:
            return isinstance(value, (int, Fraction)) and not isinstance(value, bool)
        try:
            return value in self._elem_index
        except TypeError:
            return False

    def leq(self, a, b) -> bool:
        """Order on the sort: numeric for chains/grids, lattice order otherwise."""
        if self.kind == "lattice":
            return self.lattice.leq_q(a, b)
        return a <= b

    @property
    def totally_ordered(self) -> bool:
        if self.kind != "lattice":
            return True
        lat = self.lattice
        return all(
            lat.leq_q(a, b) or lat.leq_q(b, a)
            for a in lat.elements for b in lat.elements
        )


BOOL = Sort("bool", (0, 1))
RATIONAL = Sort("rational", None)


def chain_sort(size: int) -> Sort:
    """Chain 0 < 1/(size-1) < ... < 1; size 2 is the Boolean sort itself."""
    if size < 2:
        raise SortError("a chain needs at least the two distinguished elements")
    if size == 2:
        return BOOL
    step = Fraction(1, size - 1)
    return Sort("chain", tuple(step * i for i in range(size)))


def grid_sort(denominator: int) -> Sort:
    """Sampling grid {0, 1/d, ..., 1}; d = 1 collapses to the Boolean sort."""
    if denominator < 1:
        raise SortError("grid denominator must be at least 1")
    if denominator == 1:
        return BOOL
    return Sort("grid", tuple(Fraction(i, denominator) for i in range(denominator + 1)))


def lattice_sort(lattice) -> Sort:
    return Sort("lattice", tuple(lattice.elements), lattice)


def substitute(x: tuple, k: int, a) -> tuple:
    """The point equal to x except coordinate k (1-based) set to a."""
    if not 1 <= k <= len(x):
        raise ArityError(f"coordinate {k} out of range for arity {len(x)}")
    return x[: k - 1] + (a,) + x[k:]


@dataclass(frozen=True)
class FunctionTable:
    """Exhaustive value table of an n-ary function over a finite domain sort."""

    domain: Sort
    codomain: Sort
    arity: int
    values: tuple

    def __post_init__(self):
        if not isinstance(self.arity, int) or self.arity < 1:
            raise ArityError(f"arity must be a positive int, got {self.arity!r}")
        if self.arity > max_arity():
            raise ArityLimitError(
                f"arity {self.arity} exceeds PIVOTAL_MAX_ARITY={max_arity()}"
            )
        if not self.domain.is_finite:
            raise SortError("domain sort must be finite")
        values = tuple(self.values)
        if self.codomain.kind == "rational":
            values = tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)
        object.__setattr__(self, "values", values)
        if len(values) != self.domain.size ** self.arity:
            raise ArityError(
                f"expected {self.domain.size ** self.arity} values, got {len(values)}"
            )
        for v in values:
            if not self.codomain.contains(v):
                raise SortError(f"value {v!r} outside the codomain sort")

    @classmethod
    def from_function(cls, domain: Sort, codomain: Sort, arity: int, fn) -> "FunctionTable":
        values = tuple(fn(p) for p in product(domain.elements, repeat=arity))
        return cls(domain, codomain, arity, values)

    @classmethod
    def constant(cls, domain: Sort, codomain: Sort, arity: int, value) -> "FunctionTable":
        return cls(domain, codomain, arity, (value,) * (domain.size ** arity))

    def points(self):
        return product(self.domain.elements, repeat=self.arity)

    def index_of(self, x: tuple) -> int:
        if len(x) != self.arity:
            raise ArityError(f"point has arity {len(x)}, table has arity {self.arity}")
        idx = 0
        lookup = self.domain._elem_index
        for c in x:
            try:
                d = lookup[c]
            except (KeyError, TypeError):
                raise SortError(f"coordinate {c!r} outside the domain sort") from None
            idx = idx * len(lookup) + d
        return idx

    def point_at(self, index: int) -> tuple:
        m = self.domain.size
        digits = []
        for _ in range(self.arity):
            digits.append(index % m)
            index //= m
        return tuple(self.domain.elements[d] for d in reversed(digits))

    def evaluate(self, x: tuple):
        return self.values[self.index_of(x)]

    @property
    def is_constant(self) -> bool:
        first = self.values[0]
        return all(v == first for v in self.values)


def cofactor(f: FunctionTable, k: int, a) -> FunctionTable:
    """The (n-1)-ary table with coordinate k fixed to a.

    A unary table's cofactor stays arity 1 (a constant table with an
    inessential argument) so that one table type carries everything.
    """
    n, m = f.arity, f.domain.size
    if not 1 <= k <= n:
        raise ArityError(f"coordinate {k} out of range for arity {n}")
    if not f.domain.contains(a):
        raise SortError(f"{a!r} outside the domain sort")
    d = f.domain._elem_index[a]
    if n == 1:
        return FunctionTable.constant(f.domain, f.codomain, 1, f.values[d])
    stride = m ** (n - k)
    out = []
    for hi in range(m ** (k - 1)):
        base = hi * m * stride + d * stride
        out.extend(f.values[base : base + stride])
    return FunctionTable(f.domain, f.codomain, n - 1, tuple(out))


def section(f: FunctionTable, S, a: tuple) -> FunctionTable:
    """The S-section of f: arguments outside S frozen at the coordinates of a."""
    n = f.arity
    ks = sorted(set(S))
    if not ks:
        raise ArityError("section needs a nonempty argument set")
    if ks[0] < 1 or ks[-1] > n:
        raise ArityError(f"argument set {ks} out of range for arity {n}")
    if len(a) != n:
        raise ArityError(f"anchor point has arity {len(a)}, table has arity {n}")
    base = list(a)
    out = []
    for y in product(f.domain.elements, repeat=len(ks)):
        pt = list(base)
        for pos, k in enumerate(ks):
            pt[k - 1] = y[pos]
        out.append(f.evaluate(tuple(pt)))
    return FunctionTable(f.domain, f.codomain, len(ks), tuple(out))


def essential_arguments(f: FunctionTable) -> frozenset:
    """Arguments k for which some unary section in k is nonconstant."""
    n, m = f.arity, f.domain.size
    vals = f.values
    ess = set()
    for k in range(1, n + 1):
        stride = m ** (n - k)
        found = False
        for hi in range(m ** (k - 1)):
            base = hi * m * stride
            for lo in range(stride):
                first = vals[base + lo]
                if any(vals[base + t * stride + lo] != first for t in range(1, m)):
                    found = True
                    break
            if found:
                break
        if found:
            ess.add(k)
    return frozenset(ess)


def remap(f: FunctionTable, sigma, m: int) -> FunctionTable:
    """The m-ary table g with g(a) = f(a_sigma(1), ..., a_sigma(n))."""
    sigma = tuple(sigma)
    if len(sigma) != f.arity:
        raise ArityError(f"sigma has {len(sigma)} entries, table has arity {f.arity}")
    if any(not isinstance(s, int) or not 1 <= s <= m for s in sigma):
        raise ArityError(f"sigma {sigma} out of range for target arity {m}")
    out = []
    for a in product(f.domain.elements, repeat=m):
        out.append(f.evaluate(tuple(a[s - 1] for s in sigma)))
    return FunctionTable(f.domain, f.codomain, m, tuple(out))


def reduced(f: FunctionTable):
    """Delete inessential arguments; returns (table, kept 1-based indices).

    A constant comes back as an arity-1 table with an empty kept tuple.
    """
    kept = tuple(sorted(essential_arguments(f)))
    if not kept:
        return FunctionTable.constant(f.domain, f.codomain, 1, f.values[0]), ()
    anchor = (f.domain.elements[0],) * f.arity
    return section(f, kept, anchor), kept


def canonical_form(f: FunctionTable) -> tuple:
    """Reduced value tuple minimized over permutations of the essential arguments.

    A complete invariant for the arity-insensitive equivalence relation.
    """
    red, kept = reduced(f)
    if not kept:
        return (0, red.values[0])
    e = red.arity
    best = None
    for perm in permutations(range(1, e + 1)):
        cand = remap(red, perm, e).values
        if best is None or cand < best:
            best = cand
    return (e, best)


@dataclass(frozen=True)
class EquivalenceWitness:
    """Maps sigma: [m]->[n] and mu: [n]->[m] with f = g_sigma and g = f_mu."""

    sigma: tuple
    mu: tuple

    def holds(self, f: FunctionTable, g: FunctionTable) -> bool:
        return (
            remap(g, self.sigma, f.arity).values == f.values
            and remap(f, self.mu, g.arity).values == g.values
        )


def _argument_signature(f: FunctionTable, k: int) -> tuple:
    return tuple(sorted(cofactor(f, k, a).values for a in f.domain.elements))


def is_equivalent(f: FunctionTable, g: FunctionTable) -> EquivalenceWitness | None:
    """Witness that f and g differ only by argument permutation and
    addition/deletion of inessential arguments, or None."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise SortError("equivalence requires matching domain and codomain sorts")
    rf, kf = reduced(f)
    rg, kg = reduced(g)
    if not kf or not kg:
        if kf or kg or rf.values[0] != rg.values[0]:
            return None
        witness = EquivalenceWitness((1,) * g.arity, (1,) * f.arity)
        if not witness.holds(f, g):
            raise AssertionError("equivalence witness failed verification")
        return witness
    e = len(kf)
    if e != len(kg):
        return None
    sig_f = [_argument_signature(rf, j) for j in range(1, e + 1)]
    sig_g = [_argument_signature(rg, j) for j in range(1, e + 1)]
    match = None
    for perm in permutations(range(1, e + 1)):
        if any(sig_f[j] != sig_g[perm[j] - 1] for j in range(e)):
            continue
        if remap(rf, perm, e).values == rg.values:
            match = perm
            break
    if match is None:
        return None
    # match[j-1] = l means rf argument j plays the role of rg argument l
    sigma = [1] * g.arity
    mu = [1] * f.arity
    for j in range(1, e + 1):
        l = match[j - 1]
        sigma[kg[l - 1] - 1] = kf[j - 1]
        mu[kf[j - 1] - 1] = kg[l - 1]
    witness = EquivalenceWitness(tuple(sigma), tuple(mu))
    if not witness.holds(f, g):
        raise AssertionError("equivalence witness failed verification")
    return witness
