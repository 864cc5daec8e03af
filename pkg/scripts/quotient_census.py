#!/usr/bin/env python3
"""Classify the quotients of every desk-scale universal polytope and print the
aggregate totals with the shared-quotient reconciliation.
"""

import argparse
import time

from polyquot.amalgam import build_universal, case_spec
from polyquot.quotients import (PAPER_QUOTED, aggregate_summary,
                                classify_quotients, contribution_from_report)

DESK_CASES = (7, 10, 11, 12, 13, 19, 21)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, nargs="*", default=list(DESK_CASES))
    args = ap.parse_args()
    contribs = []
    for case in args.cases:
        t0 = time.time()
        res = build_universal(case_spec(case).amalgam())
        rep = classify_quotients(res.group, f"case{case}")
        contribs.append(contribution_from_report(case, rep))
        print(f"case {case:2d}: order {res.order:5d}  {rep.total_quotients:3d} quotients "
              f"({rep.regular_count} regular, {rep.section_regular_count} section regular, "
              f"{rep.mixed_facet_count} mixed-facet)  [{time.time()-t0:.1f}s]")
    if set(args.cases) == set(DESK_CASES):
        contribs += [PAPER_QUOTED[20], PAPER_QUOTED[22]]
        s = aggregate_summary(contribs)
        print(f"\nwith the paper-quoted cases 20/22 (unverified):")
        print(f"  per-case sum {s.total_with_multiplicity}; distinct {s.total} "
              f"({s.regular} regular, {s.section_regular} section regular)")
        print(f"  plus 4 degenerate universals not quotients of the above: {s.abstract_total}")


if __name__ == "__main__":
    main()
