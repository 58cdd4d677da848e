"""Command-line front end: generation, layout, measurement, optimization,
fuzzing, exponent fits, and SVG export.

Exit codes: 0 success, 1 validation or measurement failure, 2 usage error.
Every command prints its resolved configuration (including seeds) before
doing any work, so a run is reproducible from its own output.  File outputs
are atomic (write to a temp file in the target directory, then rename).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

import numpy as np

from .families import FamilySpec, ParameterError, build_family
from .geometry import lemma_fuzz
from .graphs import (
    StructureError,
    read_embedding,
    read_graph,
    verify_planar_3tree,
    write_embedding,
    write_graph,
)
from .layout import LayoutConfig, layout_frame_fan, layout_htilde1, layout_seed_any
from .metrics import angular_resolution, read_drawing, validate_drawing, write_drawing
from .optimize import (
    OptimizeConfig,
    OptimizeFailure,
    fit_exponent,
    maximize_resolution,
    read_sweep_csv,
    sweep,
    write_sweep_csv,
)
from .svg import InvalidDrawingError, export_svg


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emb_path(graph_path: str) -> str:
    stem, _ = os.path.splitext(graph_path)
    return stem + ".emb"


def _spec_from_args(args) -> FamilySpec:
    c = args.c
    if args.family == "frame":
        c = None
    elif c is None:
        raise ParameterError(f"family {args.family!r} requires --c")
    return FamilySpec(args.family, c, args.d)


def _cmd_gen(args) -> int:
    spec = _spec_from_args(args)
    print(f"gen: family={spec.family} c={spec.c} d={spec.d} out={args.output}")
    fam = build_family(spec)
    _atomic_write(args.output, write_graph(fam.graph))
    _atomic_write(_emb_path(args.output), write_embedding(fam.embedding))
    print(f"wrote {fam.graph.n} vertices, {len(fam.graph.edges)} edges")
    return 0


def _cmd_layout(args) -> int:
    cfg = LayoutConfig(apex_angle=args.apex, ring_ratio=args.ratio)
    spec = _spec_from_args(args)
    print(
        f"layout: family={spec.family} c={spec.c} d={spec.d} "
        f"apex={cfg.apex_angle} ratio={cfg.ring_ratio} out={args.output}"
    )
    if spec.family == "frame":
        fam, coords = layout_frame_fan(spec.d, cfg)
    elif spec.family == "htilde" and spec.c == 1:
        fam, coords = layout_htilde1(spec.d, cfg)
    else:
        fam = build_family(spec)
        coords = layout_seed_any(fam.graph, fam.embedding)
    viols = validate_drawing(fam.graph, fam.embedding, coords)
    if viols:
        print(f"layout invalid: {viols[0]}", file=sys.stderr)
        return 1
    _atomic_write(args.output, write_drawing(coords))
    if args.graph_out:
        _atomic_write(args.graph_out, write_graph(fam.graph))
        _atomic_write(_emb_path(args.graph_out), write_embedding(fam.embedding))
    res = angular_resolution(fam.graph, coords).resolution
    print(f"resolution {float(res)!r}")
    return 0


def _cmd_measure(args) -> int:
    print(f"measure: graph={args.graph} drawing={args.drawing}")
    with open(args.graph) as fh:
        graph = read_graph(fh.read())
    with open(args.drawing) as fh:
        coords = read_drawing(fh.read())
    emb_file = args.emb or (_emb_path(args.graph) if os.path.exists(_emb_path(args.graph)) else None)
    if emb_file:
        with open(emb_file) as fh:
            emb = read_embedding(fh.read())
        viols = validate_drawing(graph, emb, coords)
        if viols:
            print(f"invalid drawing: {viols[0]}", file=sys.stderr)
            return 1
    report = angular_resolution(graph, coords)
    print(f"resolution {float(report.resolution)!r}")
    return 0


def _cmd_optimize(args) -> int:
    cfg = OptimizeConfig(restarts=args.restarts, seed=args.seed, max_iters=args.max_iter)
    print(
        f"optimize: graph={args.graph} emb={args.embedding} restarts={cfg.restarts} "
        f"seed={cfg.seed} max_iters={cfg.max_iters} out={args.output}"
    )
    with open(args.graph) as fh:
        graph = read_graph(fh.read())
    with open(args.embedding) as fh:
        emb = read_embedding(fh.read())
    try:
        result = maximize_resolution(graph, emb, cfg)
    except (OptimizeFailure, StructureError) as exc:
        print(f"optimize failed: {exc}", file=sys.stderr)
        return 1
    _atomic_write(args.output, write_drawing(result.coords))
    print(f"resolution {float(result.resolution)!r}")
    return 0


def _parse_spec_file(path: str) -> list[FamilySpec]:
    specs = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"spec line needs 'family c d', got {raw!r}")
            family, c_s, d_s = parts
            c = None if c_s in ("-", "none") else int(c_s)
            specs.append(FamilySpec(family, c, int(d_s)))
    return specs


def _cmd_sweep(args) -> int:
    cfg = OptimizeConfig(restarts=args.restarts, seed=args.seed, max_iters=args.max_iter)
    print(
        f"sweep: spec={args.spec} restarts={cfg.restarts} seed={cfg.seed} "
        f"max_iters={cfg.max_iters} out={args.output}"
    )
    specs = _parse_spec_file(args.spec)
    records = sweep(specs, cfg)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(args.output)) or ".",
                               prefix=".tmp-", suffix="~")
    os.close(fd)
    try:
        write_sweep_csv(records, tmp)
        os.replace(tmp, args.output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    failed = sum(1 for r in records if r.valid_restarts == 0)
    print(f"{len(records)} rows ({failed} failed)")
    return 1 if failed else 0


def _cmd_lemma_fuzz(args) -> int:
    print(f"lemma-fuzz: n={args.n} seed={args.seed}")
    report = lemma_fuzz(args.n, args.seed)
    print(f"{report.bound_holds}/{report.n} hold")
    print(
        f"worst lhs/rhs {report.worst_ratio!r}, "
        f"max sine-product error {report.max_sine_product_error:.3e}"
    )
    return 0 if report.bound_holds == report.n else 1


def _cmd_fit(args) -> int:
    print(f"fit: csv={args.csv} family={args.family} c={args.c}")
    records = read_sweep_csv(args.csv)
    fit = fit_exponent(records, args.family, args.c)
    print(f"{fit.slope!r} {fit.intercept!r} {fit.r2!r}")
    return 0


def _cmd_export_svg(args) -> int:
    print(f"export-svg: graph={args.graph} emb={args.embedding} drawing={args.drawing}")
    with open(args.graph) as fh:
        graph = read_graph(fh.read())
    with open(args.embedding) as fh:
        emb = read_embedding(fh.read())
    with open(args.drawing) as fh:
        coords = read_drawing(fh.read())
    try:
        doc = export_svg(graph, emb, coords)
    except InvalidDrawingError as exc:
        print(f"refusing to render: {exc}", file=sys.stderr)
        return 1
    _atomic_write(args.output, doc)
    print(f"wrote {args.output}")
    return 0


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=["frame", "g", "h", "htilde"])
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--d", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="angres", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="construct a family graph + embedding")
    _add_family_flags(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("layout", help="constructive drawing of a family")
    _add_family_flags(p)
    p.add_argument("--apex", type=float, default=LayoutConfig().apex_angle)
    p.add_argument("--ratio", type=float, default=LayoutConfig().ring_ratio)
    p.add_argument("--graph-out", default=None, help="also write graph + embedding files")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_layout)

    p = sub.add_parser("measure", help="angular resolution of a drawing")
    p.add_argument("graph")
    p.add_argument("drawing")
    p.add_argument("--emb", default=None)
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("optimize", help="maximize resolution for a fixed embedding")
    p.add_argument("graph")
    p.add_argument("embedding")
    p.add_argument("--restarts", type=int, default=OptimizeConfig().restarts)
    p.add_argument("--seed", type=int, default=OptimizeConfig().seed)
    p.add_argument("--max-iter", type=int, default=OptimizeConfig().max_iters)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("sweep", help="optimize a list of family specs into a CSV")
    p.add_argument("--spec", required=True, help="file of lines: family c d ('-' for no c)")
    p.add_argument("--restarts", type=int, default=OptimizeConfig().restarts)
    p.add_argument("--seed", type=int, default=OptimizeConfig().seed)
    p.add_argument("--max-iter", type=int, default=OptimizeConfig().max_iters)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("lemma-fuzz", help="randomized check of the angle-ratio bound")
    p.add_argument("--n", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_lemma_fuzz)

    p = sub.add_parser("fit", help="log-log exponent fit over sweep CSV rows")
    p.add_argument("--csv", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--c", type=int, default=None)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("export-svg", help="render a validated drawing to SVG")
    p.add_argument("graph")
    p.add_argument("embedding")
    p.add_argument("drawing")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_export_svg)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (OSError, ValueError, StructureError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
