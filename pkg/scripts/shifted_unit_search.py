#!/usr/bin/env python3
"""Sweep shifted S-units and compare the two acceptance notions.

For every S-unit x (exponents bounded in absolute value), the full condition
asks that 1 - x be 2-full away from S; the coarser one asks that every
valuation of 1 - x outside S be divisible by 2 or by 3.  The coarse accepts
are a subset of the full accepts; this script prints both counts and the
divergence, plus the verified lifts (a, b) with a^2 b^3 = 1 - x.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cpairs.arith import format_rational
from cpairs.search import SearchConfig, search_shifted_units_2full, search_shifted_units_2or3


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", default="2,3,5", help="comma-separated primes (default 2,3,5)")
    ap.add_argument("--bound", type=int, default=6, help="exponent bound (default 6)")
    ap.add_argument("--show", type=int, default=12, help="sample rows to print per sweep")
    args = ap.parse_args()

    primes = tuple(int(p) for p in args.s.split(",") if p.strip())
    cfg = SearchConfig(s_primes=primes, exponent_bound=args.bound)
    full = search_shifted_units_2full(cfg)
    coarse = search_shifted_units_2or3(cfg)

    accepts_full = {r.x for r in full if r.verdict == "accept"}
    accepts_coarse = {r.x for r in coarse if r.verdict == "accept"}
    support = {r.x for r in full if "in_support" in r.flags}

    print(f"S = {list(primes)}, exponent bound {args.bound}: {len(full)} candidates")
    print(f"  2-full accepts        : {len(accepts_full):6d}  "
          f"({len(accepts_full - support)} outside the support divisor)")
    print(f"  2-or-3 accepts        : {len(accepts_coarse):6d}")
    print(f"  accepted only as 2full: {len(accepts_full - accepts_coarse):6d}")
    assert accepts_coarse <= accepts_full, "coarse accepts must refine the full ones"

    print("\nsample accepted records (x, 1 - x = a^2 b^3):")
    shown = 0
    for r in full:
        if r.verdict != "accept" or r.lift is None or r.x == 1:
            continue
        a, b = r.lift
        star = " " if r.x in accepts_coarse else "*"
        print(f"  {star} x = {format_rational(r.x):>12}   a = {format_rational(a):>8}   "
              f"b = {format_rational(b):>8}")
        shown += 1
        if shown >= args.show:
            break
    if accepts_full - accepts_coarse:
        print("  (* = rejected by the coarser 2-or-3 condition)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
