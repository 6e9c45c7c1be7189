"""One default run per benchmark function (scalable ones at --dim, fixed at their own d).

Optionally override the first-variable step pattern to compare step rules:

    python scripts/bench_suite.py --first-pattern 2 --functions F6,F18
"""
import argparse
import time

from slcg.benchmarks import iter_suite
from slcg.encoding import build_delta
from slcg.optimizer import OptimizerConfig, optimize

ap = argparse.ArgumentParser()
ap.add_argument("--dim", type=int, default=2)
ap.add_argument("--bits", type=int, default=20)
ap.add_argument("--first-pattern", type=int, help="pattern for variable 1 (others get 1)")
ap.add_argument("--functions")
ap.add_argument("--tolerance", type=float, default=1e-2)
args = ap.parse_args()

wanted = set(args.functions.split(",")) if args.functions else None
hits = total = 0
for p in iter_suite(args.dim):
    if wanted and p.id not in wanted:
        continue
    scheme = p.scheme(args.bits)
    step = None
    if args.first_pattern is not None:
        step = build_delta([args.first_pattern] + [1] * (p.dim - 1), scheme.widths)
    t = time.perf_counter()
    res = optimize(p.objective, scheme, OptimizerConfig(explore_step=step, record_history=False))
    gap = p.gap(res.best_value)
    ok = gap <= args.tolerance
    hits += ok
    total += 1
    print(f"{p.id:4s} d={p.dim} K={res.generators_evaluated:7d} best={res.best_value:.6g} "
          f"f*={p.known_optimum:.6g} gap={gap:.3g} {'ok' if ok else 'MISS'} {time.perf_counter() - t:.1f}s",
          flush=True)
print(f"{hits}/{total} within {args.tolerance}")
