"""Exhaustive search for the achievable sumset sizes R_Z(h,k) and N(h,k).

Only canonical representatives are enumerated: subsets of [0, N-1] that
contain 0 and whose elements have gcd 1. Every k-subset of [0, N-1] is an
affine image of one of these, and affine maps preserve |hA|.

Work is split by the second-smallest element a_2; each unit is scanned in
lexicographic order and keeps the first witness per size, so merging by
union with the lexicographically least witness reproduces the serial run
for any worker count.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Optional

from .core import IntSet, _as_intset, _sumset_bits, check_fold, make_set, max_size, min_size, sumset_size
from .errors import BudgetExceeded, PreconditionError, SelfCheckFailure
from .freiman import centered_residue
from .primes import smallest_prime_in

CACHE_ENV = "SUMSETLAB_CACHE"
CACHE_FILE = "range_reports.ndjson"


@dataclass
class SizeRangeReport:
    h: int
    k: int
    N: int
    achieved: list[int]
    witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)
    examined: int = 0

    @property
    def theoretical_min(self) -> int:
        return min_size(self.h, self.k)

    @property
    def theoretical_max(self) -> int:
        return max_size(self.h, self.k)

    @property
    def missing(self) -> list[int]:
        got = set(self.achieved)
        return [t for t in range(self.theoretical_min, self.theoretical_max + 1) if t not in got]

    def to_json(self) -> dict:
        return {
            "h": self.h, "k": self.k, "N": self.N,
            "achieved": self.achieved,
            "min": self.theoretical_min, "max": self.theoretical_max,
            "missing": self.missing,
            "witnesses": {str(t): list(w) for t, w in sorted(self.witnesses.items())},
            "examined": self.examined,
        }


def canonical_count(k: int, N: int) -> int:
    """Number of subsets scanned (before the gcd filter): those of [0, N-1] containing 0."""
    return math.comb(N - 1, k - 1)


def _scan_unit(args) -> tuple[dict[int, tuple[int, ...]], int]:
    h, k, N, second = args
    found: dict[int, tuple[int, ...]] = {}
    n = 0
    for rest in combinations(range(second + 1, N), k - 2):
        n += 1
        if math.gcd(second, *rest) != 1:
            continue
        A = (0, second) + rest
        t = _sumset_bits(A, h).bit_count()
        if t not in found:
            found[t] = A
    return found, n


def enumerate_sizes(h: int, k: int, N: int, workers: int = 1,
                    budget: Optional[int] = None, cache: Optional["ResultsCache"] = None) -> SizeRangeReport:
    """All sizes |hA| for k-subsets A of [0, N-1], with one witness per size."""
    check_fold(h)
    if not 1 <= k <= N:
        raise PreconditionError(f"need N >= k >= 1, got k={k}, N={N}")
    if cache is not None:
        hit = cache.get(h, k, N)
        if hit is not None:
            return hit
    total = canonical_count(k, N)
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} subsets exceed the budget of {budget}")
    if k == 1:
        report = SizeRangeReport(h, k, N, [1], {1: (0,)}, 1)
    else:
        units = [(h, k, N, s) for s in range(1, N - k + 2)]
        if workers > 1 and len(units) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_scan_unit, units))
        else:
            parts = [_scan_unit(u) for u in units]
        merged: dict[int, tuple[int, ...]] = {}
        examined = 0
        for found, n in parts:
            examined += n
            for t, A in found.items():
                if t not in merged or A < merged[t]:
                    merged[t] = A
        report = SizeRangeReport(h, k, N, sorted(merged), merged, examined)
    if cache is not None:
        cache.put(report)
    return report


def audit_witnesses(report: SizeRangeReport) -> bool:
    return all(sumset_size(make_set(A), report.h) == t for t, A in report.witnesses.items())


def n_upper_bound(h: int, k: int) -> int:
    """4(8h)^(k-1) for h, k >= 3; exact small-case values otherwise.

    For h = 2 (k >= 3) there is no exact formula; 2^k is returned, which is
    a non-strict upper bound.
    """
    check_fold(h)
    if k < 1:
        raise PreconditionError("k must be positive")
    if k == 1:
        return 1
    if h == 1:
        return k
    if k == 2:
        return 2
    if h == 2:
        return 2 ** k
    return 4 * (8 * h) ** (k - 1)


@dataclass
class ExactNResult:
    h: int
    k: int
    N: int
    trust_N: int
    achieved: list[int]

    @property
    def relative(self) -> bool:
        """True when trust_N is below the proven bound, so N is exact only relative to it."""
        if self.k <= 2 or self.h == 1:
            return False
        return self.trust_N < n_upper_bound(self.h, self.k)

    def to_json(self) -> dict:
        return {"h": self.h, "k": self.k, "N": self.N, "trust_N": self.trust_N,
                "achieved": self.achieved, "relative_to_trust_N": self.relative}


def exact_N(h: int, k: int, trust_N: int, workers: int = 1, budget: Optional[int] = None,
            cache: Optional["ResultsCache"] = None) -> ExactNResult:
    """Least N whose achieved sizes already match those found in [0, trust_N - 1].

    The achieved set only grows with N, so an upward scan stops at the
    first match.
    """
    if trust_N < k:
        raise PreconditionError(f"trust_N={trust_N} must be at least k={k}")
    ref = enumerate_sizes(h, k, trust_N, workers, budget, cache).achieved
    for N in range(k, trust_N + 1):
        if enumerate_sizes(h, k, N, workers, budget, cache).achieved == ref:
            return ExactNResult(h, k, N, trust_N, ref)
    raise SelfCheckFailure("scan did not reach the reference window")  # unreachable: N = trust_N matches


def _iroot(x: int, n: int) -> int:
    """floor(x ** (1/n)) for x >= 0, exact."""
    if x < 2 or n == 1:
        return x
    r = int(round(x ** (1.0 / n))) if x.bit_length() < 1000 else 1 << (x.bit_length() // n + 1)
    while r ** n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def box_radius(p: int, k: int) -> int:
    """The integer r with (p^(1-1/k) - 1)/2 < r <= (p^(1-1/k) + 1)/2.

    Equivalently 2r - 1 <= p^((k-1)/k) < 2r + 1; computed with integer roots.
    """
    s = _iroot(p ** (k - 1), k)
    r = (s + 1) // 2
    if not p * (2 * r + 1) ** k > p ** k:
        raise SelfCheckFailure(f"box radius {r} fails p(2r+1)^k > p^k for p={p}, k={k}")
    if r > 0 and (2 * r - 1) ** k > p ** (k - 1):
        raise SelfCheckFailure(f"box radius {r} is above the bracket for p={p}, k={k}")
    return r


@dataclass
class RescaleResult:
    input: IntSet
    M: int
    p: int
    r: int
    lam: int
    output: IntSet
    images: tuple[int, ...]  # centered residue of lam*a for each a of the input, in order

    @property
    def box_bound_holds(self) -> bool:
        return max(abs(b) for b in self.output) <= 2 * self.r

    def to_json(self) -> dict:
        return {"input": self.input.to_list(), "M": self.M, "p": self.p, "r": self.r,
                "lambda": self.lam, "output": self.output.to_list(),
                "box_bound_holds": self.box_bound_holds}


def _dilated(A, lam, p) -> list[int]:
    return [centered_residue(lam * a, p) for a in A]


def min_norm_dilation(A: IntSet, p: int) -> tuple[int, int]:
    """(lam, norm) minimizing max |centered(lam*a mod p)| over lam in [1, p-1], unconstrained."""
    best = None
    for lam in range(1, p):
        m = max(abs(b) for b in _dilated(A, lam, p))
        if best is None or m < best[1]:
            best = (lam, m)
    return best


def rescale_compress(A: IntSet, h: int) -> RescaleResult:
    """Replace A by centered residues of lam*A mod p with the same |hA|.

    p is the least prime in (2hM, 4hM) for M = max|a|. Over lam in [1, p-1]
    this picks the image with the smallest max |b|, among images whose
    max |b| < p/(2h) (so they lift back isomorphically) and whose diameter
    does not exceed diam(A). lam = 1 always qualifies. Ties go to the
    smaller diameter, then the smaller lam.
    """
    A = _as_intset(A)
    check_fold(h)
    if h < 2:
        raise PreconditionError("rescaling requires h >= 2")
    k = len(A)
    M = max(abs(a) for a in A)
    if M == 0:
        p = 3
    else:
        p = smallest_prime_in(2 * h * M, 4 * h * M)
    r = box_radius(p, k)
    best = None
    for lam in range(1, p):
        b = _dilated(A, lam, p)
        m = max(abs(x) for x in b)
        if 2 * h * m >= p:
            continue
        d = max(b) - min(b)
        if d > A.diam:
            continue
        key = (m, d, lam)
        if best is None or key < best[0]:
            best = (key, b)
    (m, d, lam), images = best
    out = make_set(images)
    if len(out) != k:
        raise SelfCheckFailure("dilated residues collided")
    return RescaleResult(A, M, p, r, lam, out, tuple(images))


class ResultsCache:
    """Newline-delimited JSON records of range reports keyed by (h, k, N)."""

    def __init__(self, path):
        self.path = Path(path)
        self._mem: dict[tuple[int, int, int], SizeRangeReport] = {}
        if self.path.exists():
            with self.path.open() as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    wit = {int(t): tuple(w) for t, w in rec.get("witnesses", {}).items()}
                    rep = SizeRangeReport(rec["h"], rec["k"], rec["N"], list(rec["achieved"]), wit)
                    self._mem[(rep.h, rep.k, rep.N)] = rep

    @classmethod
    def from_env(cls) -> Optional["ResultsCache"]:
        d = os.environ.get(CACHE_ENV)
        if not d:
            return None
        Path(d).mkdir(parents=True, exist_ok=True)
        return cls(Path(d) / CACHE_FILE)

    def get(self, h: int, k: int, N: int) -> Optional[SizeRangeReport]:
        return self._mem.get((h, k, N))

    def put(self, report: SizeRangeReport) -> None:
        key = (report.h, report.k, report.N)
        if key in self._mem:
            return
        self._mem[key] = report
        rec = {"h": report.h, "k": report.k, "N": report.N, "achieved": report.achieved,
               "witnesses": {str(t): list(w) for t, w in sorted(report.witnesses.items())}}
        with self.path.open("a") as fh:
            fh.write(json.dumps(rec) + "\n")
