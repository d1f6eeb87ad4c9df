"""Command-line surface tying together solvers, search, and rendering.

Commands map one-to-one onto library operations and print a
machine-readable report: one ``key: value`` pair per line plus the
edge list of any tree found.  Exit codes: 0 when a tree is found or a
verification passes, 2 on a counterexample (including exhausted
searches), 1 on input errors or guard violations.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from typing import Optional

from . import formats
from .book import compile_book, solve_book
from .core import (
    Drawing,
    EdgeColoring,
    SolveReport,
    STATUS_TREE_FOUND,
    edge,
    validate_drawing,
)
from .cylindrical import compile_layout, solve_cylindrical
from .generators import gen_book, gen_coloring, gen_cylindrical, gen_points
from .monotone import MonotoneDrawing, solve_monotone
from .render import render_svg
from .search import (
    JOBS_ENV,
    find_plane_tree,
    long_run_enabled,
    verify_class_file,
    verify_all_colorings,
)
from .straightline import compile_points, solve_points

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_COUNTEREXAMPLE = 2

LONG_RUN_NOTE = (
    "Exhaustive 2-coloring verification is refused for n >= 7 unless --long-run "
    "is given (or PLANETREES_LONG_RUN=1): a single drawing with n=7 already has "
    "2^20 colorings to check, and full verification over all drawings of K_8 is "
    "out of reach at desk scale -- there are 5,370,725 weak isomorphism classes "
    "of simple drawings of K_8, each with more than 10^8 distinct 2-colorings."
)


def _read(path: str) -> str:
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _emit(key: str, value) -> None:
    print(f"{key}: {value}")


def _emit_report(rep: SolveReport) -> None:
    _emit("status", rep.status)
    if rep.checked_invariants:
        _emit(
            "invariants",
            " ".join(f"{name}={'pass' if ok else 'FAIL'}" for name, ok in rep.checked_invariants),
        )
    if rep.avoided_colors:
        _emit("avoided", " ".join(str(c) for c in sorted(rep.avoided_colors)))
    if rep.witness:
        for key in ("tree_color", "removed_color", "rounds", "reason"):
            if key in rep.witness:
                _emit(key.replace("_", "-"), rep.witness[key])
    if rep.tree is not None:
        _emit("tree", " ".join(f"{u}-{v}" for u, v in sorted(rep.tree)))


def _report_exit(rep: SolveReport) -> int:
    return EXIT_OK if rep.status == STATUS_TREE_FOUND else EXIT_COUNTEREXAMPLE


def _load_coloring_override(obj, colors_path: Optional[str]):
    if colors_path is None:
        return obj
    coloring = formats.parse_coloring(_read(colors_path))
    if coloring.n != obj.n:
        raise ValueError(
            f"coloring file has n={coloring.n}, instance has n={obj.n}"
        )
    return dataclasses.replace(obj, color=coloring)


def cmd_validate(args) -> int:
    text = _read(args.file)
    kind = formats.detect_kind(text)
    if kind == "class":
        drawings = formats.parse_class_file(args.file)
        bad = 0
        for i, d in enumerate(drawings):
            violations = validate_drawing(d)
            for v in violations:
                _emit(f"record-{i}", v)
            bad += bool(violations)
        _emit("records", len(drawings))
        _emit("status", "ok" if bad == 0 else f"{bad} invalid records")
        return EXIT_OK if bad == 0 else EXIT_INPUT_ERROR
    parsed = formats.parse_any(text)
    if kind == "drawing":
        d = parsed[0]
    elif kind == "coloring":
        _emit("kind", "coloring")
        _emit("status", "ok")
        return EXIT_OK
    elif kind == "cylindrical":
        d = compile_layout(parsed)
    elif kind == "book":
        d = compile_book(parsed)
    else:
        d = compile_points(parsed)
    violations = validate_drawing(d)
    _emit("kind", kind)
    _emit("n", d.n)
    _emit("crossings", len(d.crossings))
    for v in violations:
        _emit("violation", v)
    _emit("status", "ok" if not violations else f"{len(violations)} violations")
    return EXIT_OK if not violations else EXIT_INPUT_ERROR


def cmd_solve(args) -> int:
    text = _read(args.file)
    kind = formats.detect_kind(text)
    if args.solver_class == "cylindrical":
        if kind != "cylindrical":
            raise ValueError(f"solver class cylindrical needs a cylindrical file, got {kind}")
        layout = _load_coloring_override(formats.parse_cylindrical(text), args.colors)
        rep = solve_cylindrical(layout, assert_invariants=args.assert_invariants)
    elif args.solver_class == "book":
        if kind != "book":
            raise ValueError(f"solver class book needs a book file, got {kind}")
        layout = _load_coloring_override(formats.parse_book(text), args.colors)
        rep = solve_book(layout)
    elif args.solver_class == "pseudolinear":
        if kind != "points":
            raise ValueError(f"solver class pseudolinear needs a points file, got {kind}")
        pts = _load_coloring_override(formats.parse_points(text), args.colors)
        rep = solve_points(pts)
    else:  # monotone
        if kind == "points":
            pts = _load_coloring_override(formats.parse_points(text), args.colors)
            dr = MonotoneDrawing.from_points(pts)
            coloring = pts.color
        elif kind == "drawing":
            d, coloring, x_order = formats.parse_drawing(text)
            if x_order is None:
                raise ValueError("monotone solver needs an xorder line in drawing files")
            if args.colors is not None:
                coloring = formats.parse_coloring(_read(args.colors))
            if coloring is None:
                raise ValueError("monotone solver needs a coloring (embedded or --colors)")
            dr = MonotoneDrawing(d, x_order)
        else:
            raise ValueError(f"solver class monotone needs a points or drawing file, got {kind}")
        rep = solve_monotone(dr, coloring, d=args.group_span)
    _emit("class", args.solver_class)
    _emit_report(rep)
    return _report_exit(rep)


def _compile_any(text: str):
    """Instance file -> (Drawing, EdgeColoring or None)."""
    kind = formats.detect_kind(text)
    if kind == "drawing":
        d, coloring, _ = formats.parse_drawing(text)
        return d, coloring
    if kind == "cylindrical":
        layout = formats.parse_cylindrical(text)
        return compile_layout(layout), layout.color
    if kind == "book":
        layout = formats.parse_book(text)
        return compile_book(layout), layout.color
    if kind == "points":
        pts = formats.parse_points(text)
        return compile_points(pts), pts.color
    raise ValueError(f"cannot treat a {kind} file as a drawing instance")


def cmd_brute(args) -> int:
    d, coloring = _compile_any(_read(args.file))
    if args.colors is not None:
        coloring = formats.parse_coloring(_read(args.colors))
    if coloring is None:
        raise ValueError("no coloring: embed a colors section or pass --colors")
    if coloring.n != d.n:
        raise ValueError(f"coloring n={coloring.n} does not match drawing n={d.n}")
    mode = args.mode
    if mode == "mono":
        rep = find_plane_tree(d, coloring, mode="monochromatic", allow_large=args.allow_large)
    elif mode == "hypo":
        rep = find_plane_tree(d, coloring, mode="hypochromatic", allow_large=args.allow_large)
    elif mode.startswith("avoid:"):
        color = int(mode.split(":", 1)[1])
        rep = find_plane_tree(d, coloring, mode="avoid", color=color, allow_large=args.allow_large)
    else:
        raise ValueError(f"unknown mode {mode!r} (use mono, avoid:<c>, or hypo)")
    _emit("n", d.n)
    _emit("mode", mode)
    _emit_report(rep)
    return _report_exit(rep)


def cmd_verify(args) -> int:
    long_run = args.long_run or long_run_enabled()
    jobs = args.jobs
    if args.gen is not None:
        seed = args.seed
        n = args.n
        if n is None:
            raise ValueError("verify --gen needs --n")
        if args.gen == "cylindrical":
            n_inner = args.n_inner if args.n_inner is not None else n // 2
            d = compile_layout(gen_cylindrical(n_inner, n - n_inner, seed))
        elif args.gen == "book":
            d = compile_book(gen_book(n, seed))
        elif args.gen == "points":
            d = compile_points(gen_points(n, seed))
        else:
            raise ValueError(f"unknown generator class {args.gen!r}")
        report = verify_all_colorings(d, long_run=long_run, jobs=jobs)
        _emit("n", report.n)
        _emit("colorings", report.colorings_checked)
        _emit("plane-trees", report.plane_tree_count)
        _emit("failures", len(report.failures))
        for fail in report.failures:
            _emit("failing-coloring", fail["coloring"])
        _emit("status", "verified" if report.passed else "counterexample")
        return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE

    text = _read(args.file)
    kind = formats.detect_kind(text)
    if kind == "class":
        report = verify_class_file(args.file, long_run=long_run, jobs=jobs, start_index=args.start)
        _emit("records", report.records_verified)
        _emit("colorings", report.colorings_checked)
        _emit("failures", len(report.failures))
        for rec_no, fail in report.failures:
            _emit(f"failing-record-{rec_no}", fail["coloring"])
        _emit("status", "verified" if report.passed else "counterexample")
        return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE
    d, _ = _compile_any(text)
    report = verify_all_colorings(d, long_run=long_run, jobs=jobs)
    _emit("n", report.n)
    _emit("colorings", report.colorings_checked)
    _emit("plane-trees", report.plane_tree_count)
    _emit("failures", len(report.failures))
    for fail in report.failures:
        _emit("failing-coloring", fail["coloring"])
    _emit("status", "verified" if report.passed else "counterexample")
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE


def cmd_gen(args) -> int:
    cls = args.gen_class
    if cls == "cylindrical":
        if args.n_inner is None or args.n_outer is None:
            raise ValueError("gen --class cylindrical needs --n-inner and --n-outer")
        text = formats.serialize_cylindrical(
            gen_cylindrical(args.n_inner, args.n_outer, args.seed, k=args.k)
        )
    elif cls == "book":
        if args.n is None:
            raise ValueError("gen --class book needs --n")
        text = formats.serialize_book(gen_book(args.n, args.seed, k=args.k))
    elif cls == "points":
        if args.n is None:
            raise ValueError("gen --class points needs --n")
        text = formats.serialize_points(gen_points(args.n, args.seed, k=args.k))
    elif cls == "coloring":
        if args.n is None:
            raise ValueError("gen --class coloring needs --n")
        text = formats.serialize_coloring(gen_coloring(args.n, args.k, args.seed))
    else:
        raise ValueError(f"unknown generator class {cls!r}")
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text)
        _emit("written", args.output)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_tree_file(text: str, n: int):
    tokens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            key, _, rest = line.partition(":")
            if key.strip() != "tree":
                continue
            line = rest
        tokens.extend(line.split())
    edges = set()
    for tok in tokens:
        u, _, v = tok.partition("-")
        e = edge(int(u), int(v))
        if not (0 <= e[0] < e[1] < n):
            raise ValueError(f"tree edge {tok} out of range for n={n}")
        edges.add(e)
    return frozenset(edges)


def cmd_render(args) -> int:
    text = _read(args.file)
    kind = formats.detect_kind(text)
    if kind == "drawing":
        obj = formats.parse_drawing(text)[0]
    elif kind in ("cylindrical", "book", "points"):
        obj = formats.parse_any(text)
    else:
        raise ValueError(f"cannot render {kind} files")
    tree = None
    if args.tree:
        tree = _parse_tree_file(_read(args.tree), obj.n)
    svg = render_svg(obj, tree)
    with open(args.output, "w", encoding="ascii") as fh:
        fh.write(svg)
    _emit("written", args.output)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # Usage errors are input errors (exit 1); argparse's default exit
    # code 2 is reserved for counterexamples.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="planetrees",
        description=(
            "Monochromatic and hypochromatic plane spanning trees in edge-colored "
            "simple drawings of complete graphs: constructive solvers for annulus, "
            "book, straight-line, and monotone drawings, plus a brute-force "
            "verification engine."
        ),
        epilog=LONG_RUN_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="check a file's structural axioms")
    p_val.add_argument("file")
    p_val.set_defaults(func=cmd_validate)

    p_solve = sub.add_parser("solve", help="run a constructive solver")
    p_solve.add_argument("--class", dest="solver_class", required=True,
                         choices=["cylindrical", "book", "pseudolinear", "monotone"])
    p_solve.add_argument("file")
    p_solve.add_argument("--colors", help="coloring file overriding the embedded one")
    p_solve.add_argument("--assert-invariants", action="store_true",
                         help="assert per-step sweep invariants")
    p_solve.add_argument("--group-span", type=int, default=6,
                         help="monotone group span d (default 6)")
    p_solve.set_defaults(func=cmd_solve)

    p_brute = sub.add_parser("brute", help="exhaustive plane-tree search")
    p_brute.add_argument("file")
    p_brute.add_argument("--mode", required=True,
                         help="mono, avoid:<color>, or hypo")
    p_brute.add_argument("--colors", help="coloring file")
    p_brute.add_argument("--allow-large", action="store_true",
                         help="lift the n <= 10 enumeration guard")
    p_brute.set_defaults(func=cmd_brute)

    p_verify = sub.add_parser(
        "verify",
        help="check every 2-coloring for a monochromatic plane spanning tree",
        description="Exhaustively verify drawings (single files, generated "
        "instances, or class files with one crossing-set record per line).",
        epilog=LONG_RUN_NOTE,
    )
    p_verify.add_argument("file", nargs="?", help="drawing, layout, or class file")
    p_verify.add_argument("--gen", choices=["cylindrical", "book", "points"],
                          help="verify a generated instance instead of a file")
    p_verify.add_argument("--n", type=int, help="vertex count for --gen")
    p_verify.add_argument("--n-inner", type=int, help="inner-circle size for --gen cylindrical")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--long-run", action="store_true",
                          help="allow exhaustive runs with n >= 7")
    p_verify.add_argument("--jobs", type=int,
                          default=int(os.environ.get(JOBS_ENV, "1") or "1"),
                          help="parallel verification shards")
    p_verify.add_argument("--start", type=int, default=0,
                          help="first record index for resumable class-file runs")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a seeded instance")
    p_gen.add_argument("--class", dest="gen_class", required=True,
                       choices=["cylindrical", "book", "points", "coloring"])
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--n-inner", type=int)
    p_gen.add_argument("--n-outer", type=int)
    p_gen.add_argument("--k", type=int, default=2, help="number of colors")
    p_gen.add_argument("-o", "--output")
    p_gen.set_defaults(func=cmd_gen)

    p_render = sub.add_parser("render", help="render a drawing or layout to SVG")
    p_render.add_argument("file")
    p_render.add_argument("--tree", help="file with tree edges to highlight")
    p_render.add_argument("-o", "--output", required=True)
    p_render.set_defaults(func=cmd_render)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.file is None and args.gen is None:
        parser.error("verify needs a file or --gen")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
