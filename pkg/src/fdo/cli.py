"""Command line entry point: ``fdo bench|stats|binpack|list-functions``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import benchmarks
from .binpack import AfdoParams, InstanceError, afdo_run, load_instance
from .results import emit_convergence, fmt_real, read_records, write_records, write_summaries
from .runner import ALGORITHMS, RunConfig, run_matrix
from .stats import summarize, wilcoxon_rank_sum
from .stochastic import derive_seed


def _csv_list(text):
    if isinstance(text, (list, tuple)):
        return [str(t).strip() for t in text if str(t).strip()]
    return [t.strip() for t in str(text).split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fdo", description="Fitness Dependent Optimizer workbench")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run an algorithm x function x run matrix")
    b.add_argument("--config", help="JSON file with default values for any flag")
    b.add_argument("--algo", default="fdo", help=f"comma list from: {','.join(ALGORITHMS)}")
    b.add_argument("--suite", default="classical", choices=("classical", "cec2019"))
    b.add_argument("--funcs", default=None, help="comma list of function ids (overrides --suite)")
    b.add_argument("--runs", type=int, default=30)
    b.add_argument("--pop", type=int, default=30)
    b.add_argument("--iters", type=int, default=500)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--dim", type=int, default=None, help="dimension for scalable functions")
    b.add_argument("--out", default="results.csv")
    b.add_argument("--summary", default=None, help="also write per-cell summaries here")
    b.add_argument("--trace", default=None, metavar="DIR", help="write convergence CSVs to DIR")
    b.add_argument("--timing", action="store_true", help="fill the wall_ms column")
    b.add_argument("--wf", type=float, default=None)
    b.add_argument("--r-mode", dest="r_mode", default=None, choices=("scalar_shared", "per_dimension"))
    b.add_argument("--boundary", default=None,
                   choices=("clamp", "reflect", "chaotic_reinsert", "random_reinsert"))
    b.add_argument("--map", default=None, help="cfdo chaotic map")
    b.add_argument("--lambda", dest="lam", type=float, default=None, help="mifdo constant")
    b.add_argument("--m", type=float, default=None, help="enhanced sine-map amplitude")
    b.add_argument("--levy-lambda", dest="levy_lambda", type=float, default=None)
    b.add_argument("--th-high", dest="th_high", type=float, default=None)
    b.add_argument("--th-low", dest="th_low", type=float, default=None)
    b.add_argument("--dh", type=float, default=None)
    b.add_argument("--dl", type=float, default=None)
    b.add_argument("--refine-map", dest="refine_map", default=None)

    s = sub.add_parser("stats", help="summarise a results CSV")
    s.add_argument("--config")
    s.add_argument("--in", dest="input", default=None)
    s.add_argument("--out", default=None, help="summary CSV (default: stdout)")
    s.add_argument("--wilcoxon", default=None, metavar="A:B",
                   help="rank-sum test of algorithm A against B on every shared function")

    k = sub.add_parser("binpack", help="run AFDO on a bin packing instance")
    k.add_argument("--config")
    k.add_argument("--instance", default=None)
    k.add_argument("--runs", type=int, default=30)
    k.add_argument("--iters", type=int, default=200)
    k.add_argument("--pop", type=int, default=30)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--wf", type=float, default=0.0)
    k.add_argument("--k-exp", dest="k_exp", type=float, default=2.0)
    k.add_argument("--literal-exponent", dest="literal_exponent", action="store_true")
    k.add_argument("--out", default=None)

    sub.add_parser("list-functions", help="print the benchmark catalogue")
    return p


def _apply_config(parser: argparse.ArgumentParser, argv) -> argparse.Namespace:
    """Parse ``argv``; values from ``--config`` become defaults that flags override."""
    args = parser.parse_args(argv)
    path = getattr(args, "config", None)
    if not path:
        return args
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {path}: {exc}")
    if not isinstance(cfg, dict):
        parser.error("config file must hold a JSON object")
    subparser = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in subparser._actions}
    defaults = {}
    for key, value in cfg.items():
        dest = {"in": "input", "lambda": "lam"}.get(key, key.replace("-", "_"))
        if dest not in known or dest in ("help", "config"):
            parser.error(f"unknown config key {key!r}")
        defaults[dest] = value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def cmd_bench(args) -> int:
    overrides = {k: getattr(args, k) for k in
                 ("wf", "r_mode", "boundary", "map", "lam", "m", "levy_lambda",
                  "th_high", "th_low", "dh", "dl", "refine_map")}
    config = RunConfig(
        algorithms=_csv_list(args.algo),
        functions=_csv_list(args.funcs) if args.funcs else None,
        suite=args.suite,
        runs=args.runs,
        pop_size=args.pop,
        iterations=args.iters,
        seed=args.seed,
        dimension=args.dim,
        overrides=overrides,
        keep_traces=bool(args.trace),
        timing=bool(args.timing),
    )
    records = run_matrix(config)
    write_records(records, args.out)
    if args.summary:
        write_summaries(summarize(records), args.summary)
    if args.trace:
        emit_convergence(records, args.trace)
    print(f"{len(records)} records written to {args.out}", file=sys.stderr)
    return 0


def cmd_stats(args) -> int:
    if not args.input:
        raise ValueError("stats needs --in")
    records = read_records(args.input)
    summaries = summarize(records)
    if args.out:
        write_summaries(summaries, args.out)
    else:
        write_summaries(summaries, sys.stdout)
    if args.wilcoxon:
        a, sep, b = args.wilcoxon.partition(":")
        if not sep or not a or not b:
            raise ValueError("--wilcoxon expects A:B")
        by = {}
        for r in records:
            by.setdefault((r.algorithm, r.function), []).append(r.best_fitness)
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(("function", "algorithm_a", "algorithm_b", "U", "p_two_sided", "method"))
        funcs = sorted({f for (alg, f) in by if alg == a} & {f for (alg, f) in by if alg == b})
        if not funcs:
            raise ValueError(f"no function has results for both {a} and {b}")
        for f in funcs:
            res = wilcoxon_rank_sum(by[(a, f)], by[(b, f)])
            w.writerow((f, a, b, fmt_real(res.statistic), fmt_real(res.p_two_sided), res.method))
    return 0


def cmd_binpack(args) -> int:
    if not args.instance:
        raise ValueError("binpack needs --instance")
    inst = load_instance(args.instance)
    rows = []
    for run_index in range(args.runs):
        seed = derive_seed(args.seed, "afdo", inst.name, run_index)
        res = afdo_run(inst, AfdoParams(pop_size=args.pop, max_iterations=args.iters, wf=args.wf,
                                        k_exp=args.k_exp, literal_exponent=args.literal_exponent,
                                        seed=seed))
        rows.append((inst.name, run_index, seed, res.best.packing.n_bins,
                     fmt_real(res.best.fitness), res.evaluations))
    header = ("instance", "run", "seed", "bins", "best_fitness", "evaluations")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows([header, *rows])
    else:
        csv.writer(sys.stdout, lineterminator="\n").writerows([header, *rows])
    print(f"lower bound {inst.volume_bound()} bins; best found {min(r[3] for r in rows)}",
          file=sys.stderr)
    return 0


def cmd_list(args) -> int:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(("suite", "id", "name", "dimension", "lower", "upper", "known_optimum"))
    for suite in ("classical", "cec2019"):
        for f in benchmarks.list_suite(suite):
            lo, hi = f.bounds()
            opt = benchmarks.known_optimum_value(f)
            w.writerow((suite, f.id, f.name, f.default_dimension,
                        "/".join(sorted({repr(float(v)) for v in lo})),
                        "/".join(sorted({repr(float(v)) for v in hi})),
                        "" if opt is None else repr(opt)))
    return 0


COMMANDS = {"bench": cmd_bench, "stats": cmd_stats, "binpack": cmd_binpack,
            "list-functions": cmd_list}


def main(argv=None) -> int:
    parser = build_parser()
    args = _apply_config(parser, argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, KeyError, InstanceError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fdo {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
