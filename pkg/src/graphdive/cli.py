"""Command-line interface: headless benchmark, layout export, validation.

Usage:
    graphdive bench --nodes 2000 --degree 3 --scenario rotation --frames 600
    graphdive layout --in graph.json --out positions.json
    graphdive validate --in graph.json
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Optional

from .bench import Scenario, ScenarioKind, generate_er, report, run_scenario
from .graph import GraphFormatError, load_graph
from .layout import LayoutParams, init_layout, run_to_convergence

_SCENARIOS = {k.value: k for k in ScenarioKind}


def load_params(path: Optional[str]) -> Optional[LayoutParams]:
    """Read layout-parameter overrides from a JSON key/value config file."""
    if path is None:
        return None
    doc = json.loads(Path(path).read_text())
    known = {f.name for f in dataclasses.fields(LayoutParams)}
    unknown = set(doc) - known
    if unknown:
        raise SystemExit(f"unknown layout params in {path}: {sorted(unknown)}")
    return LayoutParams(**doc)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphdive", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run a scripted scenario on a generated ER graph")
    b.add_argument("--nodes", type=int, required=True)
    group = b.add_mutually_exclusive_group(required=True)
    group.add_argument("--edges", type=int, help="exact edge count m")
    group.add_argument(
        "--degree", type=int, help="sets m = degree * nodes (reported 'average degree' convention)"
    )
    b.add_argument("--seed", type=int, default=42)
    b.add_argument("--scenario", choices=sorted(_SCENARIOS), default="overview")
    b.add_argument("--frames", type=int, default=600)
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.add_argument("--out", type=Path, default=None, help="output path (default: stdout)")
    b.add_argument("--params", type=str, default=None, help="JSON file overriding layout params")

    l = sub.add_parser("layout", help="converge a layout and export positions")
    l.add_argument("--in", dest="infile", type=Path, required=True)
    l.add_argument("--out", dest="outfile", type=Path, required=True)
    l.add_argument("--seed", type=int, default=42)
    l.add_argument("--params", type=str, default=None)

    v = sub.add_parser("validate", help="validate a graph JSON document")
    v.add_argument("--in", dest="infile", type=Path, required=True)
    return parser


def _cmd_bench(args: argparse.Namespace) -> int:
    m = args.edges if args.edges is not None else args.degree * args.nodes
    graph = generate_er(args.nodes, m, args.seed)
    scenario = Scenario(kind=_SCENARIOS[args.scenario], frames=args.frames, seed=args.seed)
    timing = run_scenario(graph, scenario, params=load_params(args.params))
    text = report(timing, args.format)
    if args.out is not None:
        args.out.write_text(text)
        print(
            f"{timing.scenario}: n={timing.n} m={timing.m} frames={len(timing.samples_ms)} "
            f"mean={timing.mean_ms:.3f}ms p95={timing.p95_ms:.3f}ms "
            f"fps-equivalent={timing.fps_equivalent:.1f} -> {args.out}"
        )
    else:
        sys.stdout.write(text)
    return 0


def _cmd_layout(args: argparse.Namespace) -> int:
    graph = load_graph(args.infile.read_text())
    state = init_layout(graph, args.seed, load_params(args.params))
    positions = run_to_convergence(state, graph)
    doc = {
        "seed": args.seed,
        "ticks": state.tick_count,
        "positions": {n.id: positions[i].tolist() for i, n in enumerate(graph.nodes)},
    }
    args.outfile.write_text(json.dumps(doc, indent=1))
    print(f"laid out {graph.node_count} nodes / {graph.edge_count} edges -> {args.outfile}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        graph = load_graph(args.infile.read_text())
    except GraphFormatError as exc:
        print(f"INVALID: {exc}", file=sys.stderr)
        return 1
    print(
        f"OK: {graph.node_count} nodes, {graph.edge_count} edges, "
        f"{graph.frame_count} frame(s), directed={graph.directed}"
    )
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "bench":
        return _cmd_bench(args)
    if args.command == "layout":
        return _cmd_layout(args)
    return _cmd_validate(args)


if __name__ == "__main__":
    raise SystemExit(main())
