"""Command-line entry point: ``slc <command> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .corpus import CorpusSpec, ingest, load_graph, serialize, write_cache
from .distance import app_profile
from .graph import Mode
from .hardness import closed_form_cost, gen_hard_instance
from .harness import (
    DEFAULT_EDGE_BUDGET,
    bench_csv,
    bench_profile_error,
    emit_profile_csv,
    run_estimate,
    run_exact,
)
from .rng import default_seed, make_rng
from .similarity import app_profile_sim


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.DISTANCE.value)
    p.add_argument("--eps", type=float, default=None, help="target accuracy (required with --theory)")
    p.add_argument("--r", type=int, default=None, help="samples per estimate in practical mode")
    p.add_argument("--seed", type=int, default=None, help="root seed (default: $SLC_SEED)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--theory", dest="theory", action="store_true", help="worst-case sample sizes")
    g.add_argument("--practical", dest="theory", action="store_false", help="caller-chosen r (default)")
    p.set_defaults(theory=False)
    p.add_argument("--access-model", choices=["unit", "prefix"], default="unit")
    p.add_argument("--out", default=None, help="output path; .json or .csv picks the format")


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="edge list, DIMACS file or .slcs cache")
    p.add_argument("--max-weight", type=int, default=None, help="override W from the graph header")
    p.add_argument("--no-fallback", action="store_true", help="never substitute an exact computation")


def _seed(args) -> int | None:
    return args.seed if args.seed is not None else default_seed()


def _emit_reports(reports, out) -> None:
    dicts = [r.to_dict() for r in reports]
    if out and str(out).endswith(".csv"):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=list(dicts[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(dicts)
        return
    text = json.dumps(dicts if len(dicts) > 1 else dicts[0], indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_ingest(args) -> int:
    spec = CorpusSpec(
        path=args.graph,
        format=args.format,
        weight_rule=args.weight_rule,
        coords_path=args.coords,
        eps=args.eps,
        cap=args.cap,
        dedupe=args.dedupe,
    )
    g = ingest(spec)
    out = args.out or (args.graph + ".slcs")
    if str(out).endswith(".slcs"):
        write_cache(g, out)
    else:
        serialize(g, out)
    print(json.dumps({"n": g.n, "m": g.m, "W": g.W, "weight_scale": g.weight_scale, "out": str(out)}))
    return 0


def cmd_exact(args) -> int:
    g = load_graph(args.graph)
    _emit_reports([run_exact(g, args.mode, args.access_model)], args.out)
    return 0


def cmd_estimate_cost(args) -> int:
    g = load_graph(args.graph)
    rep = run_estimate(
        g, args.mode, eps=args.eps, r=args.r, theory=args.theory, seed=_seed(args),
        access_model=args.access_model, allow_fallback=not args.no_fallback, max_weight=args.max_weight,
    )
    if args.with_exact:
        base = run_exact(g, args.mode)
        rep.attach_exact(base.exact, base.wall_time)
    _emit_reports([rep], args.out)
    return 0


def _profile(args, g):
    fn = app_profile if args.mode == Mode.DISTANCE.value else app_profile_sim
    return fn(g, args.eps, r=args.r, theory=args.theory, seed=_seed(args), access_model=args.access_model,
              allow_fallback=not args.no_fallback, max_weight=args.max_weight)


def cmd_estimate_profile(args) -> int:
    g = load_graph(args.graph)
    prof = _profile(args, g)
    emit_profile_csv(prof, args.out or sys.stdout, normalize=args.normalize, dense=args.dense)
    return 0


def cmd_profile_query(args) -> int:
    g = load_graph(args.graph)
    prof = _profile(args, g)
    answers = {str(k): prof.query(k) for k in args.k}
    text = json.dumps(answers, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def cmd_gen_hard(args) -> int:
    rng = make_rng(_seed(args))
    d = args.d if args.d is not None else 2 - 2 / args.n
    inst = gen_hard_instance(args.n, args.W, args.eps_lb, d, args.mode, args.family, rng)
    info = {"n": args.n, "W": args.W, "family": args.family, "mode": args.mode, "T_W": inst.T_W,
            "q": inst.q, "eps_lb": args.eps_lb, "closed_form_cost": closed_form_cost(inst)}
    if args.out:
        serialize(inst.graph, args.out)
        info["out"] = args.out
    print(json.dumps(info, sort_keys=True))
    return 0


def cmd_bench(args) -> int:
    g = load_graph(args.graph)
    seed0 = _seed(args) or 0
    rows = bench_profile_error(g, args.mode, args.r_list, [seed0 + i for i in range(args.seeds)],
                               edge_budget=args.edge_budget, eps=args.eps)
    text = bench_csv(rows, summary=not args.raw)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slc", description="Sublinear single-linkage cost estimation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="clean a raw edge list into a connected integer-weighted graph")
    p.add_argument("graph")
    p.add_argument("--format", choices=["weighted", "unweighted", "dimacs"], default="weighted")
    p.add_argument("--weight-rule", choices=["as-is", "euclidean", "cooccurrence"], default="as-is")
    p.add_argument("--coords", default=None, help="coordinate file for the euclidean rule")
    p.add_argument("--cap", type=int, default=None, help="clamp weights to at most this value")
    p.add_argument("--dedupe", choices=["error", "min", "max", "first"], default="error")
    _common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("exact", help="exact cost via Kruskal")
    _graph_args(p)
    _common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("estimate-cost", help="estimate the total hierarchy cost")
    _graph_args(p)
    _common(p)
    p.add_argument("--with-exact", action="store_true", help="also run Kruskal and report the error")
    p.set_defaults(func=cmd_estimate_cost)

    p = sub.add_parser("estimate-profile", help="estimate cost_k for all k, written as CSV")
    _graph_args(p)
    _common(p)
    p.add_argument("--normalize", action="store_true", help="k/n and cost_k/cost_1 columns")
    p.add_argument("--dense", action="store_true", help="one row per k instead of one per breakpoint")
    p.set_defaults(func=cmd_estimate_profile)

    p = sub.add_parser("profile-query", help="estimated cost_k for given k")
    _graph_args(p)
    _common(p)
    p.add_argument("-k", type=int, action="append", required=True)
    p.set_defaults(func=cmd_profile_query)

    p = sub.add_parser("gen-hard", help="draw a hard path instance")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--W", type=int, required=True)
    p.add_argument("--eps-lb", type=float, required=True)
    p.add_argument("--d", type=float, default=None, help="average degree (default: no padding)")
    p.add_argument("--family", type=int, choices=[0, 1], default=0)
    p.set_defaults(func=cmd_gen_hard)

    p = sub.add_parser("bench", help="accumulated profile error against the exact profile")
    _graph_args(p)
    _common(p)
    p.add_argument("--r-list", type=int, nargs="+", default=[100, 1000, 10000])
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--edge-budget", type=int, default=DEFAULT_EDGE_BUDGET)
    p.add_argument("--raw", action="store_true", help="one row per (r, seed) instead of a summary")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"slc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
