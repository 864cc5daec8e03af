#!/usr/bin/env python3
"""Run the 22-case classification and print one line per case.

Equivalent to `polyquot table1`; kept as a script for quick experiments with
different coset budgets.
"""

import argparse
import time

from polyquot.amalgam import TABLE1, classify_table1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-cosets", type=int, default=10**6)
    ap.add_argument("--stretch", action="store_true",
                    help="also enumerate case 20 over its facet subgroup")
    args = ap.parse_args()
    t0 = time.time()
    results = classify_table1(max_cosets=args.max_cosets, stretch=args.stretch)
    for case in TABLE1:
        r = results[case.number]
        order = r.order if r.group is not None else r.order_reconstructed
        dual = f" (dual of {case.dual_of})" if case.dual_of else ""
        print(f"case {case.number:2d}: {r.outcome:14s} order={order} "
              f"{{{case.facet_name},{case.vfig_name}}}{dual}")
        if r.collapse_detail:
            print(f"          {r.collapse_detail}")
    print(f"total {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
