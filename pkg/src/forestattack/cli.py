"""Command-line front door: run attacks on edge-list files, emit CSV/JSON.

Exit codes: 0 success, 1 input parse/validation failure, 2 capacity or
enumeration-budget limits, 3 numerical failure (solver or degenerate
updates). Diagnostics go to stderr, results to --output or stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import centrality, fastgreedy, forest, greedy, oracle, sketch
from .errors import (
    CapacityError,
    DegeneracyError,
    ForestAttackError,
    GraphParseError,
    SolverConvergenceError,
    ValidationError,
)
from .graph import Graph, load_edge_list

METHODS = (
    "greedy", "fast", "optimum", "random",
    "betweenness", "degprod", "degsum", "topfegc",
)

CSV_COLUMNS = (
    "step", "edge_u", "edge_v", "weight", "marginal_gain",
    "cumulative_gain", "forest_index", "elapsed_ms",
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; 2 means "capacity" here,
    # so route usage errors to the validation exit code instead.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit_(1, message)


class SystemExit_(Exception):
    def __init__(self, code, message):
        self.code = code
        self.message = message
        super().__init__(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="forestattack", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="edge-list file (u v [w])")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--epsilon", type=float, default=0.3,
                       help="error parameter for the sketch-based methods")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--solver-tol", type=float, default=1e-8)
        p.add_argument("--sketch-dim", default="auto",
                       help="auto, theory, or an explicit integer")
        p.add_argument("--dense-limit", type=int, default=forest.DEFAULT_DENSE_LIMIT)
        p.add_argument("--budget", type=int, default=oracle.DEFAULT_SUBSET_BUDGET,
                       help="brute-force subset budget for the optimum method")

    p_attack = sub.add_parser("attack", help="run one attack strategy")
    common(p_attack)
    p_attack.add_argument("--k", type=int, required=True)
    p_attack.add_argument("--method", choices=METHODS, required=True)
    p_attack.add_argument("--scorer", choices=("exact", "sketch"), default="exact",
                          help="gain scorer for the topfegc method")

    p_cmp = sub.add_parser("compare", help="exact gain of several strategies at k=1..k-max")
    common(p_cmp)
    p_cmp.add_argument("--methods", required=True,
                       help="comma-separated subset of: " + ",".join(METHODS))
    p_cmp.add_argument("--k-max", type=int, required=True)
    return parser


def _parse_sketch_dim(value):
    if value in ("auto", "theory"):
        return value
    try:
        return int(value)
    except ValueError:
        raise ValidationError(f"--sketch-dim must be auto, theory or an int, got {value!r}")


def _run_method(g, method, k, args) -> greedy.AttackResult:
    cfg = sketch.SolverConfig(rel_tolerance=args.solver_tol)
    mode = _parse_sketch_dim(args.sketch_dim)
    if method == "greedy":
        return greedy.greedy_attack(g, k, dense_limit=args.dense_limit)
    if method == "fast":
        return fastgreedy.fast_greedy_attack(
            g, k, epsilon=args.epsilon, seed=args.seed, cfg=cfg,
            sketch_mode=mode, dense_limit=args.dense_limit,
        )
    if method == "optimum":
        ids, _ = oracle.optimum_attack(g, k, budget=args.budget)
        return greedy.evaluate_picks(g, ids, "optimum", args.dense_limit)
    if method == "random":
        ids = centrality.random_attack(g, k, args.seed)
        return greedy.evaluate_picks(g, ids, "random", args.dense_limit)
    if method in ("betweenness", "degprod", "degsum"):
        ids = centrality.rank_attack(g, k, method)
        return greedy.evaluate_picks(g, ids, method, args.dense_limit)
    if method == "topfegc":
        ids = centrality.top_k_fegc(
            g, k, scorer=args.scorer, epsilon=args.epsilon, seed=args.seed,
            cfg=cfg, sketch_dim=mode, dense_limit=args.dense_limit,
        )
        return greedy.evaluate_picks(g, ids, "topfegc", args.dense_limit)
    raise ValidationError(f"unknown method {method!r}")


def format_attack_csv(result: greedy.AttackResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for i, s in enumerate(result.steps, start=1):
        writer.writerow([
            i, s.u, s.v, repr(s.weight),
            repr(s.marginal_gain), repr(s.cumulative_gain),
            repr(s.forest_index_after), repr(s.elapsed_s * 1000.0),
        ])
    return buf.getvalue()


def read_attack_csv(text: str) -> list[dict]:
    """Parse a CSV emitted by format_attack_csv back into step dicts."""
    rows = []
    reader = csv.DictReader(io.StringIO(text))
    for row in reader:
        rows.append({
            "step": int(row["step"]),
            "edge_u": int(row["edge_u"]),
            "edge_v": int(row["edge_v"]),
            "weight": float(row["weight"]),
            "marginal_gain": float(row["marginal_gain"]),
            "cumulative_gain": float(row["cumulative_gain"]),
            "forest_index": float(row["forest_index"]),
            "elapsed_ms": float(row["elapsed_ms"]),
        })
    return rows


def format_attack_json(result: greedy.AttackResult, g: Graph) -> str:
    payload = {
        "strategy": result.strategy,
        "n": g.n,
        "m": g.m,
        "base_forest_index": result.base_forest_index,
        "delta_rho": result.delta_rho,
        "delta_is_exact": result.delta_is_exact,
        "steps": [
            {
                "step": i,
                "edge": s.edge,
                "edge_u": s.u,
                "edge_v": s.v,
                "weight": s.weight,
                "marginal_gain": s.marginal_gain,
                "cumulative_gain": s.cumulative_gain,
                "forest_index": s.forest_index_after,
                "elapsed_ms": s.elapsed_s * 1000.0,
            }
            for i, s in enumerate(result.steps, start=1)
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def run_attack(args) -> str:
    g = load_edge_list(args.input)
    result = _run_method(g, args.method, args.k, args)
    if args.format == "csv":
        return format_attack_csv(result)
    return format_attack_json(result, g)


def run_comparison(args) -> str:
    g = load_edge_list(args.input)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise ValidationError(f"unknown method {m!r}")
    k_max = args.k_max
    if not 0 <= k_max <= g.m:
        raise ValidationError(f"--k-max {k_max} out of range [0,{g.m}]")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("method", "k", "delta_rho"))
    for method in methods:
        if method == "optimum":
            # not prefix-nested: re-run the enumeration per k
            for k in range(1, k_max + 1):
                _, val = oracle.optimum_attack(g, k, budget=args.budget)
                writer.writerow(("optimum", k, repr(val)))
            continue
        result = _run_method(g, method, k_max, args)
        evaluated = greedy.evaluate_picks(g, result.edges, method, args.dense_limit)
        for k in range(1, k_max + 1):
            writer.writerow((method, k, repr(evaluated.steps[k - 1].cumulative_gain)))
    return buf.getvalue()


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        out = run_attack(args) if args.command == "attack" else run_comparison(args)
    except SystemExit_ as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code
    except (GraphParseError, ValidationError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DegeneracyError, SolverConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ForestAttackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
