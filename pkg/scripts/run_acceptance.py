#!/usr/bin/env python3
"""Run the acceptance checks and write a JSON report.

    python3 scripts/run_acceptance.py [--only 1,2,3] [--out report.json]
"""

import argparse
import json
import sys
import time

from fusionlab.acceptance import CHECKS, FAIL, CheckConfig, run_check
from fusionlab.cli import SCHEMA_VERSION, jsonable


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", default=None, help="comma separated criterion numbers")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--carry-offset", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    numbers = [int(x) for x in args.only.split(",")] if args.only else range(1, len(CHECKS) + 1)
    cfg = CheckConfig(seed=args.seed, carry_offset=args.carry_offset)
    t0 = time.perf_counter()
    results = []
    for n in numbers:
        r = run_check(n, cfg)
        print(r.line(), flush=True)
        results.append(r)
    report = {"schema_version": SCHEMA_VERSION, "seed": args.seed,
              "carry_offset": args.carry_offset, "seconds": round(time.perf_counter() - t0, 3),
              "checks": [r.to_dict() for r in results]}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(jsonable(report), fh, indent=2, sort_keys=True)
    return 1 if any(r.status == FAIL for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())
