"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 input error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import sweep as sweep_mod
from .bounds import alpha_of, bound_report
from .constructions import ConstructionWarning
from .edgelist import read_edge_list, write_edge_list
from .exact import SolveOptions, is_r_partite, min_deletions_exact
from .graph import GraphError, is_clique_free
from .pipeline import CliqueFoundError, run_pipeline
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    params = {k: v for k, v in vars(args).items()
              if k in ("n", "r", "alpha", "t", "seed", "sizes", "join_sizes") and v is not None}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConstructionWarning)
        G, spec = sweep_mod.make_instance(args.kind, params)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    write_edge_list(G, args.out, comments=[json.dumps(spec, sort_keys=True)])
    Path(f"{args.out}.json").write_text(json.dumps(spec, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {args.out} (n={G.n}, m={G.m})", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    G = read_edge_list(args.input)
    t, alpha = alpha_of(G, args.r)
    free, witness = is_clique_free(G, args.r + 1)
    report = {"file": str(args.input), "n": G.n, "m": G.m, "r": args.r, "t": t, "alpha": float(alpha),
              "clique_free": free, "witness": list(witness) if witness else None,
              "r_partite": is_r_partite(G, args.r)}
    _emit(report, args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    G = read_edge_list(args.input)
    t, alpha = alpha_of(G, args.r)
    report = {"file": str(args.input), "n": G.n, "m": G.m, "r": args.r, "t": t, "alpha": float(alpha)}
    code = EXIT_OK
    if args.mode in ("exact", "both"):
        opts = SolveOptions(r=args.r, time_limit=args.time_limit, node_limit=args.node_limit,
                            canonical_tiebreak=args.canonical)
        res = min_deletions_exact(G, opts)
        report["exact"] = {
            "status": res.status.value,
            "deletions": res.best_value,
            "partition": list(res.best_partition.part_of) if res.best_partition else None,
            "nodes": res.nodes_explored,
        }
    if args.mode in ("pipeline", "both"):
        try:
            pipe = run_pipeline(G, args.r)
        except CliqueFoundError as exc:
            report["pipeline"] = {"error": "input contains K_{r+1}", "witness": list(exc.witness)}
            code = EXIT_INPUT
        else:
            report["pipeline"] = {"deletions": pipe.deletions, "partition": list(pipe.partition.part_of),
                                  "trace": pipe.to_dict()}
    _emit(report, args.out)
    return code


def cmd_bounds(args) -> int:
    alpha = sweep_mod.parse_rational(args.alpha)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    _emit(bound_report(args.n, args.r, alpha).to_dict(), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = sweep_mod.load_config(args.config)
    rows = sweep_mod.run_sweep(config, jobs=args.jobs or int(config.get("jobs", 1)))
    text = sweep_mod.rows_to_csv(rows)
    out = args.out or config.get("output")
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    doc = {"suite": args.suite, "passed": all(c.passed for c in checks), "checks": [c.to_dict() for c in checks]}
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name} ({c.seconds:.3f}s)", file=sys.stderr)
    _emit(doc, args.out)
    return EXIT_OK if doc["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rpartite", description="Edge deletion to r-partiteness: solvers, constructions, bounds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a graph as an edge list plus JSON sidecar")
    gen.add_argument("kind", choices=sweep_mod.KINDS)
    gen.add_argument("--n", type=int)
    gen.add_argument("--r", type=int)
    gen.add_argument("--alpha", help="rational such as 1/12, or a decimal")
    gen.add_argument("--t", type=int)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--sizes", help="comma-separated C5 class sizes")
    gen.add_argument("--join-sizes", dest="join_sizes", help="comma-separated join class sizes")
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    check = sub.add_parser("check", help="validate an edge-list file; report t, alpha, K_{r+1}-freeness")
    check.add_argument("input")
    check.add_argument("--r", type=int, required=True)
    check.add_argument("--out")
    check.set_defaults(func=cmd_check)

    solve = sub.add_parser("solve", help="exact and/or pipeline deletion counts for an edge-list file")
    solve.add_argument("input")
    solve.add_argument("--r", type=int, required=True)
    solve.add_argument("--mode", choices=("exact", "pipeline", "both"), default="both")
    solve.add_argument("--time-limit", type=float, default=0.0)
    solve.add_argument("--node-limit", type=int, default=0)
    solve.add_argument("--canonical", action="store_true", help="lexicographically least optimal partition")
    solve.add_argument("--out")
    solve.set_defaults(func=cmd_solve)

    bounds = sub.add_parser("bounds", help="evaluate the closed-form bounds")
    bounds.add_argument("--n", type=int, required=True)
    bounds.add_argument("--r", type=int, required=True)
    bounds.add_argument("--alpha", required=True)
    bounds.add_argument("--out")
    bounds.set_defaults(func=cmd_bounds)

    sw = sub.add_parser("sweep", help="run a JSON-configured experiment grid, CSV out")
    sw.add_argument("config")
    sw.add_argument("--out")
    sw.add_argument("--jobs", type=int, default=0)
    sw.set_defaults(func=cmd_sweep)

    ver = sub.add_parser("verify", help="run an acceptance suite")
    ver.add_argument("suite", choices=list(SUITES) + ["all"])
    ver.add_argument("--out")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    try:
        if getattr(args, "r", None) is not None and args.r < 1:
            raise UsageError("--r must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(f"rpartite: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"rpartite: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
