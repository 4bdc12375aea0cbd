#!/usr/bin/env python3
"""Tabulate achieved sumset sizes |hA| over k-subsets of [0, N-1].

Usage: python scripts/size_table.py [--hmax 4] [--kmax 4] [--N 14] [--workers 4]
"""
import argparse
import os

from sumsetlab.range_search import enumerate_sizes


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--hmax", type=int, default=4)
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--N", type=int, default=14)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    args = ap.parse_args()

    print(f"{'h':>2} {'k':>2}  {'interval':>10}  missing")
    for h in range(1, args.hmax + 1):
        for k in range(1, args.kmax + 1):
            rep = enumerate_sizes(h, k, max(args.N, k), workers=args.workers)
            span = f"[{rep.theoretical_min},{rep.theoretical_max}]"
            print(f"{h:>2} {k:>2}  {span:>10}  {rep.missing or '-'}")


if __name__ == "__main__":
    main()
