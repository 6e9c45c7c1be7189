"""Nearest-neighbour ratio of the S-LCG cloud over a range of walk steps.

Reference clouds (RANDU, Philox uniform) are printed first.
"""
import argparse
import warnings

import numpy as np

from slcg.diagnostics import randu_cloud, slcg_cloud, uniform_cloud, uniformity_report

ap = argparse.ArgumentParser()
ap.add_argument("--n", type=int, default=31)
ap.add_argument("--count", type=int, default=6200)
ap.add_argument("--lo", type=float, default=1e5)
ap.add_argument("--hi", type=float, default=4e6)
ap.add_argument("--steps", type=int, default=40)
args = ap.parse_args()

for name, cloud in (("randu", randu_cloud(args.count, 3)), ("uniform", uniform_cloud(args.count, 3))):
    r = uniformity_report(cloud)
    print(f"{name:8s} NN {r.nn_ratio:.4f} CV {r.nn_cv:.3f} p {r.chi2_p:.3f} |r| {r.max_abs_corr:.4f}")

warnings.simplefilter("ignore")
for D in np.unique(np.geomspace(args.lo, args.hi, args.steps).astype(np.int64) & ~1):
    r = uniformity_report(slcg_cloud(args.n, 3, Delta=int(D), count=args.count))
    print(f"Delta {int(D):9d} NN {r.nn_ratio:.4f} CV {r.nn_cv:.3f} p {r.chi2_p:.3f} |r| {r.max_abs_corr:.4f}",
          flush=True)
