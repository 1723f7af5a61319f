#!/usr/bin/env python3
"""Time the PBW sweep case by case, grouped by N."""

import argparse
import time

from fusionlab.pbw import sweep_cases, verify_basis_property, verify_equivalence


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-dim", type=int, default=2000)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--slow", type=float, default=2.0, help="report cases slower than this")
    args = ap.parse_args()
    per_n, bad = {}, []
    t0 = time.perf_counter()
    for k, j, N in sweep_cases(args.max_dim, args.max_n):
        t = time.perf_counter()
        e = verify_equivalence(k, j, N)
        b = verify_basis_property(k, j, N)
        dt = time.perf_counter() - t
        per_n[N] = per_n.get(N, 0.0) + dt
        if not (e.ok and b.ok):
            bad.append((k, j, N))
        if dt > args.slow:
            print(f"k={k} j={j} N={N} route={b.route} {dt:.1f}s", flush=True)
    for N, secs in sorted(per_n.items()):
        print(f"N={N}: {secs:.1f}s")
    print(f"total {time.perf_counter() - t0:.1f}s, failures {bad}")


if __name__ == "__main__":
    main()
