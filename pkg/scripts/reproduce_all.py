"""Run every reference reproduction and print one line per check.

    python scripts/reproduce_all.py [target ...] [--json out.json]
"""
import argparse
import json
import sys

from slcg.reproduce import TARGETS, run_target


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("targets", nargs="*", default=list(TARGETS))
    ap.add_argument("--json")
    args = ap.parse_args()
    checks = []
    for name in args.targets:
        for c in run_target(name):
            print(c.line(), flush=True)
            checks.append(c)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([c.to_dict() for c in checks], fh, indent=2)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
