#!/usr/bin/env python3
"""Rescale random integer sets by modular dilation and report how far max|a| shrinks.

Usage: python scripts/rescale_survey.py [--trials 50] [--k 4] [--h 3] [--bound 500] [--seed 0]
"""
import argparse
import random

from sumsetlab import make_set, rescale_compress, sumset_size


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--h", type=int, default=3)
    ap.add_argument("--bound", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    shrunk = 0
    for _ in range(args.trials):
        A = make_set(rng.sample(range(-args.bound, args.bound + 1), args.k))
        res = rescale_compress(A, args.h)
        assert sumset_size(res.output, args.h) == sumset_size(A, args.h)
        m = max(abs(b) for b in res.output)
        shrunk += m < res.M
        print(f"M={res.M:5d} p={res.p:6d} r={res.r:4d} lambda={res.lam:6d} max|b|={m:5d}  {res.output}")
    print(f"{shrunk}/{args.trials} sets got a smaller max|a|")


if __name__ == "__main__":
    main()
