"""Command-line front end.

Exit codes: 0 on success or a true property, 1 on a false property, 2 on
errors (bad input, domain coverage, parse failures).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classes, decompose, diagrams, expressions, extensions, fileio
from .lattices import LatticeError, median_in
from .tables import (BOOL, RATIONAL, FunctionTable, Sort, cofactor,
                     essential_arguments, grid_sort, is_equivalent, section)


class CliError(ValueError):
    pass


def _load_sort(spec: str, grid: int) -> Sort:
    if spec == "bool":
        return BOOL
    if spec == "rat":
        return grid_sort(grid)
    if spec.startswith("lat:"):
        return fileio.read_lattice(spec[4:]).as_sort()
    raise CliError(f"unknown sort {spec!r} (expected bool, rat, or lat:<file>)")


def _load_function(args) -> FunctionTable:
    if getattr(args, "file", None):
        return fileio.read_table(args.file)
    if getattr(args, "expr", None):
        sort = _load_sort(args.sort, args.grid)
        return expressions.parse_expression(args.expr, sort, args.arity)
    raise CliError("provide a function with -f/--file or -e/--expr")


def _parse_point(text: str, f: FunctionTable) -> tuple:
    parts = [t.strip() for t in text.split(",")]
    out = []
    for t in parts:
        if f.domain.kind == "lattice":
            out.append(t)
        else:
            out.append(Fraction(t) if "/" in t else int(t) if t in ("0", "1") else Fraction(t))
    coerced = []
    for c in out:
        if f.domain.contains(c):
            coerced.append(c)
        else:
            raise CliError(f"coordinate {c!r} outside the domain sort")
    return tuple(coerced)


def _fmt_point(x: tuple) -> str:
    return "(" + ",".join(str(c) for c in x) + ")"


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _dump_table(f: FunctionTable) -> str:
    if f.codomain == BOOL and f.domain == BOOL:
        return fileio.dumps_tt(f)
    if f.domain == BOOL:
        return fileio.dumps_pbf(f)
    if f.domain.kind == "lattice":
        return fileio.dumps_lft(f, "<lattice>")
    return f"table {f.arity}\n{' '.join(str(v) for v in f.values)}\n"


def _resolve_pivotal(spec: str, f: FunctionTable):
    if spec == "ite":
        return decompose.builtin_pivotal("ite")
    if spec == "mle-affine":
        return decompose.builtin_pivotal("mle-affine")
    if spec == "median":
        return decompose.builtin_pivotal("median", sort=f.codomain if f.codomain.kind == "lattice" else f.domain)
    with open(spec) as fh:
        return fileio.loads_pvf(fh.read(), sort=f.domain)


def cmd_parse(args) -> int:
    sort = _load_sort(args.sort, args.grid)
    if args.ast:
        tree = expressions.parse_ast(args.expr, sort)
        _emit(args, {"ast": expressions.to_string(tree)}, expressions.to_string(tree))
        return 0
    f = expressions.parse_expression(args.expr, sort, args.arity)
    _emit(args, {"arity": f.arity, "values": [str(v) for v in f.values]}, _dump_table(f))
    return 0


def cmd_eval(args) -> int:
    f = _load_function(args)
    x = _parse_point(args.point, f)
    val = f.evaluate(x)
    _emit(args, {"value": str(val)}, str(val))
    return 0


def cmd_cofactor(args) -> int:
    f = _load_function(args)
    a = _parse_point(args.value, f)[0]
    g = cofactor(f, args.var, a)
    _emit(args, {"arity": g.arity, "values": [str(v) for v in g.values]}, _dump_table(g))
    return 0


def cmd_section(args) -> int:
    f = _load_function(args)
    ks = [int(t) for t in args.set.split(",")]
    a = _parse_point(args.at, f)
    g = section(f, ks, a)
    _emit(args, {"arity": g.arity, "values": [str(v) for v in g.values]}, _dump_table(g))
    return 0


def cmd_essential(args) -> int:
    f = _load_function(args)
    ess = sorted(essential_arguments(f))
    _emit(args, {"essential": ess}, "essential: " + (",".join(map(str, ess)) if ess else "none"))
    return 0


def cmd_equiv(args) -> int:
    f = fileio.read_table(args.file)
    g = fileio.read_table(args.other)
    w = is_equivalent(f, g)
    if w is None:
        _emit(args, {"equivalent": False}, "not equivalent")
        return 1
    _emit(args, {"equivalent": True, "sigma": list(w.sigma), "mu": list(w.mu)},
          f"equivalent\nsigma: {','.join(map(str, w.sigma))}\nmu: {','.join(map(str, w.mu))}")
    return 0


def cmd_synth_pi(args) -> int:
    f = _load_function(args)
    res = decompose.synthesize_pivotal(f)
    if res.pivotal is not None:
        _emit(args, {"ok": True, "pivotal": fileio.dumps_pvf(res.pivotal)},
              fileio.dumps_pvf(res.pivotal))
        return 0
    c = res.conflict
    text = (f"not decomposable: k={c.k_first} a={_fmt_point(c.point_first)}"
            f" k={c.k_second} b={_fmt_point(c.point_second)}"
            f" values {c.values[0]} != {c.values[1]}")
    _emit(args, {"ok": False, "a": [str(v) for v in c.point_first],
                 "b": [str(v) for v in c.point_second],
                 "k_a": c.k_first, "k_b": c.k_second}, text)
    return 1


def cmd_synth_cpi(args) -> int:
    f = _load_function(args)
    if args.grid and f.domain == BOOL and f.codomain == RATIONAL:
        form = extensions.mobius(f)
        f = extensions.lovasz_table(form, args.grid)
    res = decompose.synthesize_componentwise(f, family=args.family)
    if res.pivotals is not None:
        payload = {"ok": True}
        if res.phis:
            payload["phis"] = list(res.phis)
        _emit(args, payload, "ok" + (f" phis={','.join(res.phis)}" if res.phis else ""))
        return 0
    if res.conflict is None:
        _emit(args, {"ok": False, "k": res.failed_k}, f"k={res.failed_k} no orientation fits")
        return 1
    c = res.conflict
    text = f"k={c.k_first} a={_fmt_point(c.point_first)} b={_fmt_point(c.point_second)}"
    _emit(args, {"ok": False, "k": c.k_first,
                 "a": [str(v) for v in c.point_first],
                 "b": [str(v) for v in c.point_second]}, text)
    return 1


def cmd_check_pi(args) -> int:
    f = _load_function(args)
    pi = _resolve_pivotal(args.pi, f)
    report = decompose.check_decomposition(f, pi)
    if report.ok:
        _emit(args, {"ok": True}, "ok")
        return 0
    lines = [f"x={_fmt_point(x)} k={k}" for x, k in report.violations]
    _emit(args, {"ok": False,
                 "violations": [{"x": [str(c) for c in x], "k": k}
                                for x, k in report.violations]},
          "violations:\n" + "\n".join(lines))
    return 1


def cmd_classify(args) -> int:
    f = _load_function(args)
    minimal = classes.minimal_um_class(f)
    names = [n for n in classes.UNARY_NAMES if n in minimal.members]
    bits = [classes.um_membership(f, classes.vset_for_class(i)) for i in range(1, 17)]
    lines = ["minimal: {" + ",".join(names) + "}"]
    for i, name in enumerate(classes.CLASS_NAMES, start=1):
        lines.append(f"{i:2d} {name}: {'yes' if bits[i - 1] else 'no'}")
    _emit(args, {"minimal": names,
                 "memberships": {name: bits[i] for i, name in enumerate(classes.CLASS_NAMES)}},
          "\n".join(lines))
    return 0


def cmd_umc(args) -> int:
    def to_vset(name):
        if name not in classes.CLASS_NAMES:
            raise CliError(f"unknown class name {name!r}")
        return classes.vset_for_class(classes.CLASS_NAMES.index(name) + 1)

    v1 = to_vset(args.first)
    v2 = to_vset(args.second) if args.second else None
    out = classes.um_algebra(args.op, v1, v2)
    cid = classes.class_for_vset(out)
    names = [n for n in classes.UNARY_NAMES if n in out.members]
    _emit(args, {"class": classes.CLASS_NAMES[cid - 1], "members": names},
          f"{classes.CLASS_NAMES[cid - 1]} {{{','.join(names)}}}")
    return 0


def cmd_mle(args) -> int:
    f = _load_function(args)
    form = extensions.MultilinearForm.from_table(f)
    if args.point:
        x = tuple(Fraction(t) for t in args.point.split(","))
        val = extensions.mle_evaluate(form, x)
        _emit(args, {"value": str(val)}, str(val))
        return 0
    _emit(args, {"mlf": fileio.dumps_mlf(form)}, fileio.dumps_mlf(form))
    return 0


def cmd_mobius(args) -> int:
    f = _load_function(args)
    form = extensions.mobius(f)
    _emit(args, {"lvf": fileio.dumps_lvf(form)}, fileio.dumps_lvf(form))
    return 0


def cmd_lovasz(args) -> int:
    with open(args.file) as fh:
        text = fh.read()
    tag = text.split(None, 1)[0]
    if tag == "lvf":
        form = fileio.loads_lvf(text)
    elif tag == "pbf":
        form = extensions.mobius(fileio.loads_pbf(text))
    else:
        raise CliError("lovasz expects an .lvf or .pbf file")
    x = tuple(Fraction(t) for t in args.point.split(","))
    val = extensions.lovasz_evaluate(form, x)
    _emit(args, {"value": str(val)}, str(val))
    return 0


def cmd_dd(args) -> int:
    f = _load_function(args)
    order = tuple(int(t) for t in args.order.split(",")) if args.order else None
    d = diagrams.build(f, args.rule, order)
    text = diagrams.format_diagram(d)
    internal, terminal = diagrams.node_count(d)
    if args.counts:
        text += f"internal {internal} terminal {terminal}\n"
    _emit(args, {"dump": diagrams.format_diagram(d), "internal": internal,
                 "terminal": terminal}, text)
    return 0


def cmd_lattice_validate(args) -> int:
    try:
        lat = fileio.read_lattice(args.file)
    except LatticeError as exc:
        _emit(args, {"ok": False, "axiom": exc.axiom, "witness": str(exc.witness)},
              f"invalid: {exc.axiom} ({exc})")
        return 1
    _emit(args, {"ok": True, "elements": list(lat.elements)},
          f"valid: {len(lat.elements)} elements, bottom={lat.bottom} top={lat.top}")
    return 0


def _add_function_args(p, need_file_only=False):
    p.add_argument("-f", "--file", help="table file (.tt, .pbf, .lft)")
    if not need_file_only:
        p.add_argument("-e", "--expr", help="expression instead of a file")
        p.add_argument("--sort", default="bool", help="bool | rat | lat:<file>")
        p.add_argument("--arity", type=int, default=None)
    p.add_argument("--grid", type=int, default=4,
                   help="grid denominator d for rational sorts ({0,1/d,...,1})")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pivotal",
                                 description="pivotal decompositions of finite-domain functions")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse an expression into a table")
    p.add_argument("-e", "--expr", required=True)
    p.add_argument("--sort", default="bool")
    p.add_argument("--arity", type=int, default=None)
    p.add_argument("--grid", type=int, default=4)
    p.add_argument("--ast", action="store_true", help="print the canonical expression instead")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("eval", help="evaluate a function at a point")
    _add_function_args(p)
    p.add_argument("-x", "--point", required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("cofactor", help="fix one argument to a constant")
    _add_function_args(p)
    p.add_argument("--var", type=int, required=True)
    p.add_argument("--value", required=True)
    p.set_defaults(fn=cmd_cofactor)

    p = sub.add_parser("section", help="fix the arguments outside a set")
    _add_function_args(p)
    p.add_argument("--set", required=True, help="comma-separated argument labels to keep")
    p.add_argument("--at", required=True, help="anchor point")
    p.set_defaults(fn=cmd_section)

    p = sub.add_parser("essential", help="list essential arguments")
    _add_function_args(p)
    p.set_defaults(fn=cmd_essential)

    p = sub.add_parser("equiv", help="equivalence up to inessential arguments")
    p.add_argument("-f", "--file", required=True)
    p.add_argument("-g", "--other", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("synth-pi", help="synthesize a shared pivotal function")
    _add_function_args(p)
    p.set_defaults(fn=cmd_synth_pi)

    p = sub.add_parser("synth-cpi", aliases=["cpivot"],
                       help="synthesize per-argument pivotal functions")
    _add_function_args(p)
    p.add_argument("--family", default="extensional",
                   choices=["extensional", "median-map"])
    p.set_defaults(fn=cmd_synth_cpi)

    p = sub.add_parser("check-pi", help="check a decomposition against a pivotal function")
    _add_function_args(p)
    p.add_argument("--pi", required=True, help="ite | mle-affine | median | <file.pvf>")
    p.set_defaults(fn=cmd_check_pi)

    p = sub.add_parser("classify", help="minimal class and all 16 membership bits")
    _add_function_args(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("umc", help="Boolean algebra of the 16 classes")
    p.add_argument("op", choices=["meet", "join", "complement"])
    p.add_argument("first")
    p.add_argument("second", nargs="?")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_umc)

    p = sub.add_parser("mle", help="multilinear form or its value at a point")
    _add_function_args(p)
    p.add_argument("-x", "--point", default=None)
    p.set_defaults(fn=cmd_mle)

    p = sub.add_parser("mobius", help="min-term coefficients of a vertex table")
    _add_function_args(p)
    p.set_defaults(fn=cmd_mobius)

    p = sub.add_parser("lovasz", help="evaluate a min-term form at a point")
    p.add_argument("-f", "--file", required=True, help=".lvf or .pbf file")
    p.add_argument("-x", "--point", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_lovasz)

    p = sub.add_parser("dd", help="build and dump a decision diagram")
    _add_function_args(p)
    p.add_argument("--rule", default="shannon", choices=list(diagrams.RULES))
    p.add_argument("--order", default=None)
    p.add_argument("--counts", action="store_true")
    p.set_defaults(fn=cmd_dd)

    p = sub.add_parser("lattice-validate", help="check all lattice axioms")
    p.add_argument("-f", "--file", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_lattice_validate)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
