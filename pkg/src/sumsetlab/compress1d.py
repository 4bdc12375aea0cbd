"""Diameter compression for sets of integers.

A gap a_{j+1} - a_j that exceeds 1 + (h-1)*max(a_j - a_1, a_k - a_{j+1})
splits hA into h+1 disjoint blocks, so it can be shortened down to that
threshold without changing |hA|. Repeating this until no gap is too wide
gives a set whose diameter is bounded in terms of its smaller elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import IntSet, _as_intset, check_fold, sumset_size
from .errors import NoCompressibleGap, PreconditionError, SelfCheckFailure, ShortFormViolation


@dataclass(frozen=True)
class GapWitness:
    j: int  # 1-based: the gap between a_j and a_{j+1}
    delta: int
    threshold: int


@dataclass(frozen=True)
class TraceStep:
    j: int
    delta: int
    diam_before: int
    diam_after: int
    axis: Optional[int] = None

    def to_json(self) -> dict:
        d = {"j": self.j, "delta": self.delta,
             "diam_before": self.diam_before, "diam_after": self.diam_after}
        if self.axis is not None:
            d["axis"] = self.axis
        return d


@dataclass
class CompressionTrace:
    initial_set: object
    final_set: object
    size: int
    steps: list[TraceStep] = field(default_factory=list)
    passes: int = 1

    @property
    def total_delta(self) -> int:
        return sum(s.delta for s in self.steps)

    def to_json(self) -> dict:
        def dump(s):
            return s.to_list()
        return {
            "steps": [s.to_json() for s in self.steps],
            "initial": dump(self.initial_set),
            "final": dump(self.final_set),
            "size": self.size,
        }


def gap_threshold(elems, j: int, h: int) -> int:
    """1 + (h-1)*max(a_j - a_1, a_k - a_{j+1}) for the 1-based gap index j."""
    left = elems[j - 1] - elems[0]
    right = elems[-1] - elems[j]
    return 1 + (h - 1) * max(left, right)


def compressible_gaps(A: IntSet, h: int) -> list[GapWitness]:
    """Every gap exceeding its threshold. For h >= 2 there is at most one."""
    A = _as_intset(A)
    check_fold(h)
    a = A.elems
    out = []
    for j in range(1, len(a)):
        gap = a[j] - a[j - 1]
        t = gap_threshold(a, j, h)
        if gap > t:
            out.append(GapWitness(j, gap - t, t))
    return out


def find_compressible_gap(A: IntSet, h: int) -> Optional[GapWitness]:
    A = _as_intset(A)
    check_fold(h)
    if len(A) < 3:
        raise PreconditionError("gap compression needs at least 3 elements")
    a = A.elems
    for j in range(1, len(a)):
        gap = a[j] - a[j - 1]
        t = gap_threshold(a, j, h)
        if gap > t:
            return GapWitness(j, gap - t, t)
    return None


def _shift_tail(A: IntSet, w: GapWitness) -> IntSet:
    return IntSet(A.elems[:w.j] + tuple(x - w.delta for x in A.elems[w.j:]))


def compress_step(A: IntSet, h: int) -> tuple[IntSet, GapWitness]:
    A = _as_intset(A)
    w = find_compressible_gap(A, h)
    if w is None:
        raise NoCompressibleGap(f"no gap of {A} exceeds its threshold for h={h}")
    return _shift_tail(A, w), w


def compress_tail(A: IntSet, h: int) -> IntSet:
    """Pull the largest element down to 1 + h*a_{k-1} when it lies beyond it."""
    A = _as_intset(A)
    check_fold(h)
    if A.min != 0:
        raise PreconditionError("compress_tail expects a set with smallest element 0")
    if len(A) < 2:
        raise PreconditionError("compress_tail needs at least 2 elements")
    cap = 1 + h * A.elems[-2]
    if A.max <= cap:
        return A
    return IntSet(A.elems[:-1] + (cap,))


def compress_full(A: IntSet, h: int, check: bool = False) -> tuple[IntSet, CompressionTrace]:
    """Apply compress_step until every gap is within its threshold.

    With ``check`` the sumset size is recomputed after every step.
    """
    A = _as_intset(A)
    check_fold(h)
    if len(A) < 3:
        raise PreconditionError("gap compression needs at least 3 elements")
    size = sumset_size(A, h)
    trace = CompressionTrace(A, A, size)
    cur = A
    while (w := find_compressible_gap(cur, h)) is not None:
        nxt = _shift_tail(cur, w)
        trace.steps.append(TraceStep(w.j, w.delta, cur.diam, nxt.diam))
        if check and sumset_size(nxt, h) != size:
            raise SelfCheckFailure(f"compression step {w} changed |{h}A|")
        cur = nxt
    trace.final_set = cur
    return cur, trace


def satisfies_gap_bound(A: IntSet, h: int) -> bool:
    return not compressible_gaps(A, h)


def _short_form_ok(a, j: int, h: int) -> bool:
    # a_1 = 0 is assumed, so a_j - a_1 = a_j
    return a[j] - a[j - 1] <= 1 + (h - 1) * max(a[j - 1], a[-1] - a[j])


def geometric_bound(A: IntSet, h: int, j: int) -> int:
    """1 + h + ... + h^{k-j-1} + h^{k-j} * a_j, an upper bound for a_k when j >= r."""
    a = _as_intset(A).elems
    e = len(a) - j
    return sum(h ** i for i in range(e)) + h ** e * a[j - 1]


def short_form_split(A: IntSet, h: int) -> int:
    """The unique r in [2, k-1] with a_{r-1} + a_r < a_k <= a_r + a_{r+1}.

    Requires a_1 = 0 and the gap condition at every j in [1, k-1]. The
    geometric bound on a_k is re-checked for each j in [r, k-1].
    """
    A = _as_intset(A)
    check_fold(h)
    a = A.elems
    k = len(a)
    if k < 3:
        raise PreconditionError("short form needs at least 3 elements")
    if a[0] != 0:
        raise PreconditionError("short form expects a set with smallest element 0")
    bad = [j for j in range(1, k) if not _short_form_ok(a, j, h)]
    if bad:
        raise ShortFormViolation(f"gap condition fails at j={bad} for h={h}")
    hits = [r for r in range(2, k) if a[r - 2] + a[r - 1] < a[-1] <= a[r - 1] + a[r]]
    if len(hits) != 1:
        raise SelfCheckFailure(f"expected a unique split index, found {hits}")
    r = hits[0]
    for j in range(r, k):
        if a[-1] > geometric_bound(A, h, j):
            raise SelfCheckFailure(f"a_k exceeds the geometric bound at j={j}")
    return r
