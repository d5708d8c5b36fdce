"""Command-line front end.

Subcommands wrap the library modules one-to-one and communicate through
JSON documents on disk. Exit codes: 0 success, 1 domain failure (invalid
graph, point off locus, caps exceeded), 2 parse failure, 3 dimension
mismatch, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .config import DEFAULT_CONFIG, RunConfig
from .errors import (
    CorrectorDivergenceError,
    DimensionMismatchError,
    GraphFormatError,
    NotPositiveDefiniteError,
    PeriframeError,
)
from .graphs import graph_to_dict, load_graph, validate
from .placements import (
    edge_lengths_sq,
    flex_dimension,
    load_params,
    n_params,
    numerical_rank,
    rigidity_matrix,
    serialize_params,
)
from .symmetry import (
    automorphism_from_dict,
    enumerate_automorphisms,
    fixed_locus,
    is_symmetry,
)
from .lattices import load_sublattice, relax_graph, relax_params
from .analysis import (
    bezout_bound,
    minimal_rigidity_check,
    path_to_csv,
    symmetric_restriction,
    trace_deformation,
)
from .svgplot import render_snapshots

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_NUMERIC = 4


def _config_from_args(args) -> RunConfig:
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    for attr, key in (
        ("tol_pd", "pd_tol"),
        ("tol_sym", "sym_tol"),
        ("tol_rank", "rank_rel_tol"),
        ("tol_path", "path_tol"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            overrides[key] = value
    return DEFAULT_CONFIG.with_overrides(**overrides) if overrides else DEFAULT_CONFIG


def _emit(args, payload: dict, human: List[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in human:
            print(line)


def _load_generators(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"not valid JSON: {exc}") from exc
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list):
        raise GraphFormatError("generator file must hold one automorphism or a list")
    return [automorphism_from_dict(item) for item in doc]


def cmd_validate(args) -> int:
    g = load_graph(args.graph)
    report = validate(g)
    _emit(
        args,
        report.to_dict(),
        [
            f"vertices: {g.n}  edges: {g.m}  dimension: {g.d}",
            f"quotient connected: {report.connected}",
            f"label lattice rank: {report.label_lattice_rank}"
            + (f"  index: {report.label_lattice_index}" if report.label_lattice_index else ""),
        ]
        + [f"problem: {msg}" for msg in report.messages],
    )
    return EXIT_OK if report.ok else EXIT_DOMAIN


def cmd_analyze(args) -> int:
    config = _config_from_args(args)
    g = load_graph(args.graph)
    p = load_params(args.params)
    lengths = edge_lengths_sq(g, p)
    R = rigidity_matrix(g, p)
    rank = numerical_rank(R, config)
    flex = flex_dimension(g, p, config)
    report = bezout_bound(g)
    rigid = minimal_rigidity_check(g, config=config)
    payload = {
        "lengths_sq": [float(x) for x in lengths],
        "parameter_count": n_params(g.d, g.n),
        "rank": rank,
        "flex_dim": flex,
        "bezout": report.to_dict(),
        "minimally_rigid": rigid,
    }
    _emit(
        args,
        payload,
        [
            "squared lengths: " + " ".join(f"{x:.12g}" for x in lengths),
            f"parameters: {n_params(g.d, g.n)}  rank: {rank}  flex dimension: {flex}",
            f"non-loop edges: {report.mu}  configuration bound: {report.bound}",
            f"minimal edge count: {report.minimally_rigid_count}  generically rigid: {rigid}",
        ],
    )
    return EXIT_OK


def cmd_symmetries(args) -> int:
    config = _config_from_args(args)
    g = load_graph(args.graph)
    auts = enumerate_automorphisms(g, config)
    payload = {"count": len(auts), "automorphisms": [a.to_dict() for a in auts]}
    human = [f"{len(auts)} automorphisms (modulo translations)"]
    for idx, a in enumerate(auts):
        human.append(f"[{idx}] perm={list(a.perm)} C={[list(r) for r in a.C]} offsets={[list(r) for r in a.offsets]}")
    _emit(args, payload, human)
    return EXIT_OK


def cmd_fixed_locus(args) -> int:
    config = _config_from_args(args)
    g = load_graph(args.graph)
    gens = _load_generators(args.generators)
    locus = fixed_locus(g, gens, config)
    payload = locus.to_dict()
    human = [
        f"group order: {locus.group_order}",
        f"locus dimension: {locus.dim} (ambient {locus.ambient_dim})",
        "base: " + " ".join(str(x) for x in locus.base),
    ]
    for v in locus.directions:
        human.append("direction: " + " ".join(str(x) for x in v))
    _emit(args, payload, human)
    return EXIT_OK


def cmd_relax(args) -> int:
    config = _config_from_args(args)
    g = load_graph(args.graph)
    p = load_params(args.params)
    sub = load_sublattice(args.sublattice)
    relaxed = relax_graph(g, sub, config)
    new_params = relax_params(p, sub, g, relaxed)
    payload = {
        "graph": graph_to_dict(relaxed.graph),
        "params": new_params.to_dict(),
        "index": relaxed.cosets.k,
        "maps": relaxed.to_dict(),
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
    _emit(
        args,
        payload,
        [
            f"index: {relaxed.cosets.k}  new vertices: {relaxed.graph.n}  new edges: {relaxed.graph.m}",
            "new omega:",
        ]
        + [
            "  " + " ".join(f"{x:.12g}" for x in row)
            for row in new_params.omega
        ]
        + ([f"wrote {args.out}"] if args.out else []),
    )
    return EXIT_OK


def cmd_deform(args) -> int:
    config = _config_from_args(args)
    g = load_graph(args.graph)
    p = load_params(args.params)
    locus = None
    if args.gens:
        gens = _load_generators(args.gens)
        for a in gens:
            if not is_symmetry(g, p, a, config):
                raise PeriframeError("start parameters are not fixed by the generators")
        locus = fixed_locus(g, gens, config)
    path = trace_deformation(
        g, p, locus=locus, steps=args.steps, step_size=args.step_size, config=config
    )
    csv_text = path_to_csv(path, g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    if args.svg:
        picks = sorted({0, len(path) // 2, len(path) - 1})
        snapshot = render_snapshots(g, [path.samples[i] for i in picks], config)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(snapshot)
    worst = max(path.step_stats) if path.step_stats else 0.0
    payload = {
        "samples": len(path),
        "max_corrector_residual": worst,
        "csv": args.out,
        "svg": args.svg,
    }
    human = [f"traced {len(path)} samples, worst corrector residual {worst:.3e}"]
    if args.out:
        human.append(f"wrote {args.out}")
    if args.svg:
        human.append(f"wrote {args.svg}")
    if not args.out:
        human.append(csv_text.rstrip("\n"))
    _emit(args, payload, human)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periframe",
        description="Periodic bar-and-joint frameworks: validation, symmetry, "
        "fixed loci, sublattice relaxation, and deformation tracing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
        p.add_argument("--tol-pd", type=float, default=None, dest="tol_pd")
        p.add_argument("--tol-sym", type=float, default=None, dest="tol_sym")
        p.add_argument("--tol-rank", type=float, default=None, dest="tol_rank")
        p.add_argument("--tol-path", type=float, default=None, dest="tol_path")

    p = sub.add_parser("validate", help="structural checks on a graph file")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="lengths, rank, flexes, configuration bound")
    p.add_argument("graph")
    p.add_argument("params")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("symmetries", help="enumerate automorphisms modulo translations")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_symmetries)

    p = sub.add_parser("fixed-locus", help="affine section fixed by generators")
    p.add_argument("graph")
    p.add_argument("generators")
    common(p)
    p.set_defaults(func=cmd_fixed_locus)

    p = sub.add_parser("relax", help="relax periodicity to a sublattice")
    p.add_argument("graph")
    p.add_argument("params")
    p.add_argument("sublattice")
    p.add_argument("--out", default=None, help="write combined JSON here")
    common(p)
    p.set_defaults(func=cmd_relax)

    p = sub.add_parser("deform", help="trace a constant-length deformation path")
    p.add_argument("graph")
    p.add_argument("params")
    p.add_argument("--gens", default=None, help="restrict to the fixed locus of these generators")
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--step-size", type=float, default=0.05, dest="step_size")
    p.add_argument("--out", default=None, help="write the CSV path here")
    p.add_argument("--svg", default=None, help="write an SVG snapshot here (planar only)")
    common(p)
    p.set_defaults(func=cmd_deform)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (NotPositiveDefiniteError, CorrectorDivergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except PeriframeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
