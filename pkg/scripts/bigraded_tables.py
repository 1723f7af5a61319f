#!/usr/bin/env python3
"""Print both bigraded tables for the sl2 consistency cases.

Rows are u-degrees j, columns residual t-degrees s.
"""

from fusionlab.acceptance import COMPARISON_CASES
from fusionlab.toroidal import verify_theorem1_sl2


def main():
    for level, c, lam0, N in COMPARISON_CASES:
        rep = verify_theorem1_sl2(level, c, lam0, N)
        print(f"level={level} c={c} lambda0={lam0} N={N}  dim={rep.left_dim}  "
              f"{'agree' if rep.ok else 'DIFFER'}")
        for name, table in (("filtration", rep.left.table()), ("fusion", rep.right.table())):
            print(f"  {name}:")
            for j, row in enumerate(table):
                print(f"    j={j}: {row}")


if __name__ == "__main__":
    main()
