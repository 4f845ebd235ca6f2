"""Readers and writers for the on-disk formats: truth tables (.tt), rational
vertex tables (.pbf), lattice-valued tables (.lft), lattices (.lat), pivotal
functions (.pvf), and coefficient forms (.mlf / .lvf)."""

from __future__ import annotations

import os
from fractions import Fraction

from .decompose import (AffinePivotal, ExtensionalPivotal, ItePivotal,
                        MedianPivotal, PivotalFunction)
from .extensions import LovaszForm, MultilinearForm
from .lattices import FiniteLattice, validate_lattice
from .tables import BOOL, RATIONAL, FunctionTable, Sort, lattice_sort


class FormatError(ValueError):
    """Malformed file content."""


def _lines(text: str):
    return [ln for ln in text.splitlines() if ln.strip()]


def _parse_value(token: str):
    try:
        return Fraction(token)
    except ValueError:
        return token


# --- tables ----------------------------------------------------------------

def loads_tt(text: str) -> FunctionTable:
    lines = _lines(text)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "bool":
        raise FormatError(f"bad truth-table header: {lines[0]!r}")
    n = int(head[1])
    bits = "".join(lines[1:])
    if len(bits) != 1 << n or any(c not in "01" for c in bits):
        raise FormatError(f"expected {1 << n} characters of 0/1")
    return FunctionTable(BOOL, BOOL, n, tuple(int(c) for c in bits))


def dumps_tt(f: FunctionTable) -> str:
    if f.domain != BOOL or f.codomain != BOOL:
        raise FormatError("truth-table format holds Boolean tables")
    return f"bool {f.arity}\n{''.join(str(v) for v in f.values)}\n"


def loads_pbf(text: str) -> FunctionTable:
    lines = _lines(text)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "pbf":
        raise FormatError(f"bad vertex-table header: {lines[0]!r}")
    n = int(head[1])
    tokens = " ".join(lines[1:]).split()
    if len(tokens) != 1 << n:
        raise FormatError(f"expected {1 << n} rationals, got {len(tokens)}")
    return FunctionTable(BOOL, RATIONAL, n, tuple(Fraction(t) for t in tokens))


def dumps_pbf(f: FunctionTable) -> str:
    if f.domain != BOOL:
        raise FormatError("vertex-table format holds Boolean-domain tables")
    return f"pbf {f.arity}\n{' '.join(str(v) for v in f.values)}\n"


def loads_lft(text: str, lattice: FiniteLattice) -> FunctionTable:
    lines = _lines(text)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "lft":
        raise FormatError(f"bad lattice-table header: {lines[0]!r}")
    n = int(head[1])
    sort = lattice_sort(lattice)
    tokens = " ".join(lines[1:]).split()
    if len(tokens) != sort.size ** n:
        raise FormatError(f"expected {sort.size ** n} element names, got {len(tokens)}")
    return FunctionTable(sort, sort, n, tuple(tokens))


def dumps_lft(f: FunctionTable, lattice_file: str) -> str:
    if f.domain.kind != "lattice":
        raise FormatError("lattice-table format holds lattice-valued tables")
    return f"lft {f.arity} {lattice_file}\n{' '.join(str(v) for v in f.values)}\n"


# --- lattices ----------------------------------------------------------------

def loads_lat(text: str) -> FiniteLattice:
    lines = _lines(text)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "lat":
        raise FormatError(f"bad lattice header: {lines[0]!r}")
    count = int(head[1])
    names = lines[1].split()
    if len(names) != count:
        raise FormatError(f"expected {count} element names, got {len(names)}")
    bt = lines[2].split()
    if len(bt) != 4 or bt[0] != "bottom" or bt[2] != "top":
        raise FormatError(f"bad bounds line: {lines[2]!r}")
    bottom, top = bt[1], bt[3]
    pairs = []
    for ln in lines[3:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "leq":
            raise FormatError(f"bad order line: {ln!r}")
        pairs.append((parts[1], parts[2]))
    return validate_lattice(names, pairs, bottom=bottom, top=top)


def dumps_lat(lat: FiniteLattice) -> str:
    lines = [f"lat {len(lat.elements)}", " ".join(lat.elements),
             f"bottom {lat.bottom} top {lat.top}"]
    for a in lat.elements:
        for b in lat.elements:
            if a != b and lat.leq_q(a, b):
                lines.append(f"leq {a} {b}")
    return "\n".join(lines) + "\n"


# --- pivotal functions -------------------------------------------------------

def loads_pvf(text: str, sort: Sort | None = None) -> PivotalFunction:
    lines = _lines(text)
    head = lines[0].split()
    if head[0] != "pvf":
        raise FormatError(f"bad pivotal header: {lines[0]!r}")
    if head[1] == "builtin":
        name = head[2]
        if name == "ite":
            return ItePivotal()
        if name == "mle-affine":
            return AffinePivotal()
        if name == "median":
            if sort is None:
                raise FormatError("median needs a sort to act on")
            return MedianPivotal(sort)
        raise FormatError(f"unknown builtin family {name!r}")
    if head[1] != "extensional":
        raise FormatError(f"unknown pivotal kind {head[1]!r}")
    mapping = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 5 or parts[3] != "->":
            raise FormatError(f"bad triple line: {ln!r}")
        p, u, v, w = (_parse_value(t) for t in (parts[0], parts[1], parts[2], parts[4]))
        mapping[(p, u, v)] = w
    return ExtensionalPivotal(mapping)


def dumps_pvf(pi: PivotalFunction) -> str:
    if isinstance(pi, ItePivotal):
        return "pvf builtin ite\n"
    if isinstance(pi, AffinePivotal):
        return "pvf builtin mle-affine\n"
    if isinstance(pi, MedianPivotal):
        return "pvf builtin median\n"
    if isinstance(pi, ExtensionalPivotal):
        pivots = sorted({p for (p, _, _) in pi.mapping})
        lines = [f"pvf extensional {len(pivots)}"]
        for (p, u, v) in pi.triples:
            lines.append(f"{p} {u} {v} -> {pi.mapping[(p, u, v)]}")
        return "\n".join(lines) + "\n"
    raise FormatError(f"cannot serialize pivotal kind {pi.kind!r}")


# --- coefficient forms -------------------------------------------------------

def _loads_coeffs(text: str, tag: str):
    lines = _lines(text)
    head = lines[0].split()
    if len(head) != 2 or head[0] != tag:
        raise FormatError(f"bad {tag} header: {lines[0]!r}")
    n = int(head[1])
    coeffs = [Fraction(0)] * (1 << n)
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad coefficient line: {ln!r}")
        s = int(parts[0])
        if not 0 <= s < (1 << n):
            raise FormatError(f"subset mask {s} out of range")
        coeffs[s] = Fraction(parts[1])
    return n, tuple(coeffs)


def loads_mlf(text: str) -> MultilinearForm:
    n, coeffs = _loads_coeffs(text, "mlf")
    return MultilinearForm(n, coeffs)


def dumps_mlf(m: MultilinearForm) -> str:
    lines = [f"mlf {m.arity}"]
    lines += [f"{s} {v}" for s, v in enumerate(m.vertex_values)]
    return "\n".join(lines) + "\n"


def loads_lvf(text: str) -> LovaszForm:
    n, coeffs = _loads_coeffs(text, "lvf")
    return LovaszForm(n, coeffs)


def dumps_lvf(l: LovaszForm) -> str:
    lines = [f"lvf {l.arity}"]
    lines += [f"{s} {c}" for s, c in enumerate(l.coefficients) if c]
    if len(lines) == 1:
        lines.append("0 0")
    return "\n".join(lines) + "\n"


# --- path-level helpers ------------------------------------------------------

def read_lattice(path: str) -> FiniteLattice:
    with open(path) as fh:
        return loads_lat(fh.read())


def read_table(path: str) -> FunctionTable:
    """Dispatch on the header line; .lft lattice paths resolve relative to
    the table file."""
    with open(path) as fh:
        text = fh.read()
    lines = _lines(text)
    if not lines:
        raise FormatError(f"{path}: empty file")
    tag = lines[0].split()[0]
    if tag == "bool":
        return loads_tt(text)
    if tag == "pbf":
        return loads_pbf(text)
    if tag == "lft":
        head = lines[0].split()
        if len(head) != 3:
            raise FormatError(f"bad lattice-table header: {lines[0]!r}")
        lat_path = os.path.join(os.path.dirname(os.path.abspath(path)), head[2])
        return loads_lft(text, read_lattice(lat_path))
    raise FormatError(f"{path}: unrecognized table header {lines[0]!r}")
