#!/usr/bin/env python3
"""Move the last carry index of the PBW index set and see what breaks.

For every sweep case and every offset, compares |S| with the expected
dimension and, when the sizes differ or the set changes, reports a
monomial that enters or leaves.  Offset 0 is the range as defined (N-4).
"""

import argparse

from fusionlab.pbw import enumerate_S, expected_dim, sweep_cases


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-dim", type=int, default=2000)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--offsets", default="-2,-1,0,1,2")
    args = ap.parse_args()
    offsets = [int(x) for x in args.offsets.split(",")]
    for off in offsets:
        changed, wrong = 0, []
        for k, j, N in sweep_cases(args.max_dim, args.max_n):
            top = N - 4 + off
            if top > N - 2:
                continue
            base = set(enumerate_S(k, j, N))
            S = set(enumerate_S(k, j, N, carry_top=top))
            if S != base:
                changed += 1
            if len(S) != expected_dim(k, j, N):
                extra = sorted(S - base)[:1] or sorted(base - S)[:1]
                wrong.append((k, j, N, len(S), expected_dim(k, j, N), extra))
        print(f"offset {off:+d}: {changed} cases change the set, {len(wrong)} have the wrong size")
        for w in wrong[:5]:
            print("   k=%d j=%d N=%d  |S|=%d expected %d  witness %s" % w)


if __name__ == "__main__":
    main()
