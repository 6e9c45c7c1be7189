"""Command line entry point: ``slcg <subcommand> ...``.

Exit codes: 0 success, 1 a reproduction check failed, 2 bad input or
config, 3 a runtime guard tripped (enumeration or sweep cap).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import records
from .benchmarks import DimensionError, UnknownProblemError, iter_suite
from .config import ConfigError, RunConfig, int_out
from .diagnostics import SOURCES, make_cloud, uniformity_report
from .generator import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationCapError,
    EvenBitWidthError,
    alpha_bound,
    enumerate_cycle,
    enumerate_generators,
)
from .optimizer import SweepCapError, exhaustive_sweep, lag_autocorrelation, optimize
from .reproduce import TARGETS, run_target
from .stats import ResultTable, SchemaError, friedman, holm_posthoc

EXIT_OK, EXIT_CHECK_FAILED, EXIT_SCHEMA, EXIT_GUARD = 0, 1, 2, 3
AUTOCORR_LAGS = 20


class Output:
    def __init__(self, args):
        self.fmt = args.format
        self.quiet = args.quiet

    def info(self, msg: str) -> None:
        if not self.quiet:
            print(msg, file=sys.stderr)

    def emit(self, obj, text: str | None = None, csv: tuple | None = None) -> None:
        if self.fmt == "json":
            sys.stdout.write(records.json_text(obj))
        elif self.fmt == "csv" and csv is not None:
            sys.stdout.write(records.csv_text(*csv))
        else:
            print(text if text is not None else records.json_text(obj), end="" if text is None else "\n")


# -- shared argument groups ---------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output directory or file")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--quiet", action="store_true")


def _problem_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", required=True, help="benchmark/design id, or a run config JSON file")
    p.add_argument("--dim", type=int)
    p.add_argument("--bits", type=int, help="bits per variable (default 20)")
    p.add_argument("--scheme", help="JSON file with an explicit encoding scheme")
    p.add_argument("--delta-step", type=int)
    p.add_argument("--Delta", help="integer, or comma-separated per-variable bit patterns")
    p.add_argument("--s-max", type=int)
    p.add_argument("--e-max", type=int)
    p.add_argument("--alpha-0", type=int)
    p.add_argument("--alpha-max", type=int)
    p.add_argument("--max-evals", type=int)


def _run_config(args) -> RunConfig:
    """Config from --problem (id or file) with command-line overrides applied."""
    path = Path(args.problem)
    if path.is_file():
        data = RunConfig.load(path).to_dict()
    elif path.suffix == ".json":
        raise ConfigError("problem", f"config file {path} not found")
    else:
        data = {"problem": args.problem, "bits": 20}
    if args.bits is not None:
        data["bits"] = args.bits
    if args.dim is not None:
        data["dim"] = args.dim
    if args.scheme:
        data["scheme"] = json.loads(Path(args.scheme).read_text(encoding="utf-8"))
    opt = dict(data.get("optimizer", {}))
    for flag, key in (("delta_step", "delta_step"), ("Delta", "Delta"), ("s_max", "s_max"),
                      ("e_max", "e_max"), ("alpha_0", "alpha_0"), ("alpha_max", "alpha_max"),
                      ("max_evals", "max_evals")):
        v = getattr(args, flag, None)
        if v is not None:
            opt[key] = v
    data["optimizer"] = opt
    return RunConfig.from_dict(data)


# -- subcommands --------------------------------------------------------------


def cmd_optimize(args, out: Output) -> int:
    cfg = _run_config(args)
    if args.no_history:
        cfg.emit_history = False
    problem, scheme, opt = cfg.build()
    effective = cfg.effective()
    t = time.perf_counter()
    res = optimize(problem.objective, scheme, opt)
    out.info(f"{problem.id}: {res.generators_evaluated} generators in {time.perf_counter() - t:.2f} s")
    extra = {"problem": {"id": problem.id, "known_optimum": problem.known_optimum,
                         "gap": None if problem.known_optimum is None or res.best_point is None
                         else problem.gap(res.best_value)}}
    target = args.out or cfg.out
    if target:
        for p in records.write_run(Path(target), res, effective, extra):
            out.info(f"wrote {p}")
    body = {"config": effective, "result": res.to_dict(), **extra}
    out.emit(body, text=f"best {res.best_value!r} at {res.best_point} "
                        f"({res.generators_evaluated} generators, {res.function_evaluations} evaluations)")
    return EXIT_OK


def cmd_sweep(args, out: Output) -> int:
    cfg = _run_config(args)
    problem, scheme, opt = cfg.build()
    effective = cfg.effective()
    upper = ((1 << scheme.total_bits) - 1) // 2 if args.all_generators else opt.alpha_max
    effective["sweep"] = {"upper": int_out(upper), "all_generators": args.all_generators}
    t = time.perf_counter()
    rows = exhaustive_sweep(problem.objective, scheme, upper=upper, cap=args.cap, workers=args.workers)
    out.info(f"{len(rows)} generators in {time.perf_counter() - t:.2f} s")
    g = [r.g for r in rows]
    lags = [(k, lag_autocorrelation(g, k)) for k in range(1, AUTOCORR_LAGS + 1) if len(g) > k + 1]
    best = min(rows, key=lambda r: r.g) if rows else None
    summary = {"config": effective, "generators": len(rows),
               "best_alpha": None if best is None else int_out(best.alpha),
               "best_g": None if best is None else records.fmt(best.g)}
    if args.out:
        d = Path(args.out)
        records.write_csv(d / "landscape.csv", ("alpha", "g"), ((r.alpha, r.g) for r in rows), effective)
        records.write_csv(d / "autocorr.csv", ("k", "rho"), lags, effective)
        records.write_json(d / "sweep.json", summary)
        out.info(f"wrote {d}/landscape.csv, autocorr.csv, sweep.json")
    out.emit(summary, text=f"{len(rows)} generators, best g {summary['best_g']}, lag-1 rho "
                           f"{lags[0][1]:.4f}" if lags else f"{len(rows)} generators")
    return EXIT_OK


def cmd_generators(args, out: Output) -> int:
    gens = enumerate_generators(args.n, limit=args.limit, cap=args.cap,
                                full_period_only=args.full_period_only)
    rows = [(a, enumerate_cycle(a, args.n).period, " ".join(map(str, enumerate_cycle(a, args.n).states)))
            for a in gens] if args.cycles else [(a,) for a in gens]
    header = ("generator", "period", "states") if args.cycles else ("generator",)
    body = {"n": args.n, "count": len(gens), "generators": gens}
    if args.cycles:
        body["cycles"] = {str(a): list(enumerate_cycle(a, args.n).states) for a in gens}
    if args.out:
        records.write_csv(Path(args.out), header, rows, {"n": args.n})
    text = "\n".join(" ".join(map(str, r)) if not args.cycles else f"{r[0]}: {r[2]}" for r in rows)
    out.emit(body, text=text, csv=(header, rows))
    return EXIT_OK


def cmd_alpha_max(args, out: Output) -> int:
    if args.n is not None:
        ns = [args.n]
        if args.n % 2 == 0 and not args.allow_even:
            raise EvenBitWidthError(f"bit width must be odd, got {args.n} (pass --allow-even)")
    else:
        ns = list(range(args.range[0], args.range[1] + 1))
    rows = []
    for n in ns:
        if n % 2 == 0 and not args.allow_even:
            continue
        bound, closed = alpha_bound(n, allow_even=args.allow_even)
        rows.append((n, bound, 1 << n, round(100.0 * bound / (1 << n), 3), closed))
    body = [{"n": n, "alpha_max": int_out(a), "ratio_percent": r, "closed_form": c} for n, a, _, r, c in rows]
    out.emit(body, text="\n".join(f"{n}\t{a}\t{r:.3f}%" + ("" if c else "\t(heuristic, even n)")
                                   for n, a, _, r, c in rows),
             csv=(("n", "alpha_max", "two_to_n", "ratio_percent", "closed_form"), rows))
    return EXIT_OK


def cmd_uniformity(args, out: Output) -> int:
    cloud = make_cloud(args.source, args.n, args.dim, args.count, Delta=args.Delta, seed=args.seed)
    rep = uniformity_report(cloud, args.bins)
    body = {"config": {"source": args.source, "n": args.n, "dim": args.dim, "count": args.count,
                       "bins": args.bins, **cloud.config}, "report": rep.to_dict()}
    if args.out:
        records.write_json(Path(args.out), body)
    if args.points:
        header = tuple(f"x{j + 1}" for j in range(cloud.dim))
        records.write_csv(Path(args.points), header, (tuple(map(float, p)) for p in cloud.points), body["config"])
    out.emit(body, text="\n".join(f"{k}: {v}" for k, v in rep.to_dict().items()))
    return EXIT_OK


def cmd_bench_suite(args, out: Output) -> int:
    wanted = set(args.functions.split(",")) if args.functions else None
    rows, passed = [], 0
    base = {"bits": args.bits, "d_scalable": args.dim}
    for problem in iter_suite(args.dim):
        if wanted and problem.id not in wanted:
            continue
        cfg = RunConfig(problem=problem.id, bits=args.bits, dim=problem.dim, emit_history=False,
                        optimizer={} if args.Delta is None else {"Delta": args.Delta})
        _, scheme, opt = cfg.build()
        t = time.perf_counter()
        res = optimize(problem.objective, scheme, opt)
        dt = time.perf_counter() - t
        gap = problem.gap(res.best_value)
        ok = gap is not None and gap <= args.tolerance
        passed += ok
        rows.append((problem.id, problem.dim, scheme.total_bits, res.generators_evaluated,
                     res.function_evaluations, res.best_value, problem.known_optimum, gap, ok, round(dt, 2)))
        out.info(f"{problem.id:4s} d={problem.dim} best={res.best_value:.6g} gap={gap:.3g} {'ok' if ok else 'MISS'}")
    header = ("function", "dim", "n", "generators", "evaluations", "best", "optimum", "gap", "within_tol", "seconds")
    if args.out:
        records.write_csv(Path(args.out) / "suite.csv", header, rows, {**base, "tolerance": args.tolerance})
    body = {"passed": passed, "total": len(rows), "tolerance": args.tolerance,
            "rows": [dict(zip(header, r)) for r in rows]}
    out.emit(body, text=f"{passed}/{len(rows)} within tolerance {args.tolerance}", csv=(header, rows))
    return EXIT_OK


def cmd_stats(args, out: Output) -> int:
    table = ResultTable.from_csv(args.table)
    if args.control not in table.algorithms:
        raise ConfigError("control", f"{args.control!r} is not a column of {args.table}")
    fr = friedman(table)
    holm = holm_posthoc(fr.mean_ranks, fr.k, fr.N, args.control, args.alpha)
    body = {
        "config": {"table": str(args.table), "control": args.control, "alpha": args.alpha},
        "friedman": {"mean_ranks": fr.mean_ranks, "statistic": fr.statistic, "p_value": fr.p_value,
                     "N": fr.N, "k": fr.k},
        "holm": [{"algorithm": h.algorithm, "rank": h.rank, "z": h.z, "p_raw": h.p_raw, "p_holm": h.p_holm,
                  "decision": h.decision} for h in holm],
    }
    if args.out:
        records.write_json(Path(args.out), body)
    lines = [f"Friedman chi2={fr.statistic:.4f} p={fr.p_value:.3g} (N={fr.N}, k={fr.k})"]
    lines += [f"{h.algorithm:8s} R={h.rank:.3f} Z={h.z:.4f} p={h.p_raw:.3g} p_holm={h.p_holm:.3g} {h.decision}"
              for h in holm]
    out.emit(body, text="\n".join(lines))
    return EXIT_OK


def cmd_reproduce(args, out: Output) -> int:
    checks = []
    for name in (list(TARGETS) if args.target == "all" else [args.target]):
        checks.extend(run_target(name))
    if args.out:
        records.write_json(Path(args.out), [c.to_dict() for c in checks])
    out.emit([c.to_dict() for c in checks], text="\n".join(c.line() for c in checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK_FAILED


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slcg", description="Deterministic S-LCG optimizer toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="run the adaptive optimizer on one problem")
    _problem_args(p)
    p.add_argument("--no-history", action="store_true", help="skip convergence/exploitation CSVs")
    _common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="evaluate g at every generator up to alpha_max")
    _problem_args(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int, default=2_000_000, help="maximum expected generator count")
    p.add_argument("--all-generators", action="store_true",
                   help="also include short cycles whose generator lies above alpha_max")
    _common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("generators", help="list the generators (cycle minima) for n bits")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    p.add_argument("--full-period-only", action="store_true")
    p.add_argument("--cycles", action="store_true", help="print each cycle's states")
    _common(p)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("alpha-max", help="largest generator bound for n bits")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--allow-even", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_alpha_max)

    p = sub.add_parser("uniformity", help="point-cloud uniformity statistics")
    p.add_argument("--source", choices=SOURCES, default="slcg")
    p.add_argument("--n", type=int, default=31)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--count", type=int, default=6200)
    p.add_argument("--bins", type=int, default=5)
    p.add_argument("--Delta", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--points", help="write the cloud to this CSV")
    _common(p)
    p.set_defaults(func=cmd_uniformity)

    p = sub.add_parser("bench-suite", help="one default run per benchmark function")
    p.add_argument("--dim", type=int, default=2, help="dimension for the scalable functions")
    p.add_argument("--bits", type=int, default=20)
    p.add_argument("--Delta", help="override the default exploration step")
    p.add_argument("--functions", help="comma-separated subset, e.g. F1,F8")
    p.add_argument("--tolerance", type=float, default=1e-2)
    _common(p)
    p.set_defaults(func=cmd_bench_suite)

    p = sub.add_parser("stats", help="Friedman ranks and Holm post-hoc on a result table")
    p.add_argument("--table", required=True)
    p.add_argument("--control", default="S-LCG")
    p.add_argument("--alpha", type=float, default=0.05)
    _common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("reproduce", help="run a reference reproduction with pass/fail checks")
    p.add_argument("target", choices=(*TARGETS, "all"))
    _common(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args)
    try:
        return args.func(args, out)
    except (ConfigError, SchemaError, UnknownProblemError, DimensionError, EvenBitWidthError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except (EnumerationCapError, SweepCapError) as e:
        print(f"guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, json.JSONDecodeError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
