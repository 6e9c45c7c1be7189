"""Bits-per-variable and step-pattern scan for the constrained designs.

    python scripts/design_scan.py welded_beam --bits 14,16,18 --patterns 2,4,8:3
"""
import argparse
import time
import warnings

from slcg.encoding import build_delta
from slcg.engineering import constrained_problem
from slcg.optimizer import OptimizerConfig, optimize
from slcg.problems import unconstrained
from slcg.reproduce import DESIGN_TARGETS

ap = argparse.ArgumentParser()
ap.add_argument("design", choices=sorted(DESIGN_TARGETS))
ap.add_argument("--bits", default="14,16,18,20")
ap.add_argument("--patterns", default="2,4,8,16,32,64",
                help="comma-separated; a:b:c gives per-variable patterns, the last one repeats")
args = ap.parse_args()

warnings.simplefilter("ignore")
p = constrained_problem(args.design)
u = unconstrained(p)
for bits in map(int, args.bits.split(",")):
    scheme = u.scheme(bits)
    for pat in args.patterns.split(","):
        parts = [int(v) for v in pat.split(":")]
        parts += [parts[-1] if len(parts) > 1 else 1] * (p.dim - len(parts))
        step = build_delta(parts, scheme.widths)
        t = time.perf_counter()
        res = optimize(u.objective, scheme, OptimizerConfig(explore_step=step, record_history=False))
        ok = res.best_point is not None and p.is_feasible(res.best_point) and res.best_value <= DESIGN_TARGETS[p.id]
        print(f"{p.id} bits={bits} patterns={parts} K={res.generators_evaluated} best={res.best_value:.6g} "
              f"{'ok' if ok else '--'} {time.perf_counter() - t:.1f}s", flush=True)
