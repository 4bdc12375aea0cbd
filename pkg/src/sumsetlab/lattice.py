"""Sumsets of lattice points and axis-wise diameter compression in Z^n.

Compression only moves points along standard basis vectors, so integer
sets stay integral. Sorting by coordinate p, a gap c_{j+1} - c_j above
1 + (h-1)*max(c_j - c_1, c_k - c_{j+1}) is shrunk to exactly that value
by translating the upper block of points along e_p.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .compress1d import CompressionTrace, TraceStep
from .core import check_fold, checked
from .errors import DimensionMismatch, DuplicateElement, EmptySetError, PreconditionError, SelfCheckFailure

Point = tuple[int, ...]


@dataclass(frozen=True)
class LatticeSet:
    """Distinct integer points of a common dimension, kept in input order.

    The order matters only as the tie-break for :func:`axis_order`.
    """

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise EmptySetError("a LatticeSet must contain at least one point")
        n = len(pts[0])
        if n < 1:
            raise DimensionMismatch("points must have at least one coordinate")
        for p in pts:
            if len(p) != n:
                raise DimensionMismatch(f"point {p} has dimension {len(p)}, expected {n}")
        if len(set(pts)) != len(pts):
            raise DuplicateElement("lattice points must be distinct")

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_frozenset(self) -> frozenset:
        return frozenset(self.points)

    def to_list(self) -> list[list[int]]:
        return [list(p) for p in self.points]


def make_lattice_set(points: Iterable[Sequence[int]]) -> LatticeSet:
    return LatticeSet(tuple(tuple(p) for p in points))


def _as_lattice(A) -> LatticeSet:
    return A if isinstance(A, LatticeSet) else make_lattice_set(A)


def _check_axis(A: LatticeSet, p: int) -> None:
    if not 1 <= p <= A.dim:
        raise PreconditionError(f"axis {p} outside [1, {A.dim}]")


def hfold_sumset_lattice(A: LatticeSet, h: int) -> LatticeSet:
    """All sums of h points of A, sorted lexicographically."""
    A = _as_lattice(A)
    check_fold(h)
    for p in A.points:
        for c in p:
            checked(h * c, "h*coordinate")
    acc = set(A.points)
    for _ in range(h - 1):
        acc = {tuple(x + y for x, y in zip(s, a)) for s in acc for a in A.points}
    return LatticeSet(tuple(sorted(acc)))


def lattice_sumset_size(A: LatticeSet, h: int) -> int:
    return len(hfold_sumset_lattice(A, h))


def axis_order(A: LatticeSet, p: int) -> list[int]:
    """1-based point indices sorted by coordinate p; ties keep input order."""
    A = _as_lattice(A)
    _check_axis(A, p)
    return [i + 1 for i in sorted(range(len(A)), key=lambda i: A.points[i][p - 1])]


def diam_axis(A: LatticeSet, p: int) -> int:
    A = _as_lattice(A)
    _check_axis(A, p)
    cs = [q[p - 1] for q in A.points]
    return max(cs) - min(cs)


@dataclass(frozen=True)
class AxisGapWitness:
    axis: int
    order: tuple[int, ...]
    j: int
    delta: int
    alpha: int = 1


def _find_axis_gap(A: LatticeSet, h: int, p: int) -> Optional[AxisGapWitness]:
    order = axis_order(A, p)
    c = [A.points[i - 1][p - 1] for i in order]
    for j in range(1, len(c)):
        t = 1 + (h - 1) * max(c[j - 1] - c[0], c[-1] - c[j])
        gap = c[j] - c[j - 1]
        if gap > t:
            return AxisGapWitness(p, tuple(order), j, gap - t)
    return None


def _apply(A: LatticeSet, w: AxisGapWitness) -> LatticeSet:
    moved = set(w.order[w.j:])
    pts = []
    for i, q in enumerate(A.points, start=1):
        if i in moved:
            q = q[:w.axis - 1] + (q[w.axis - 1] - w.delta,) + q[w.axis:]
        pts.append(q)
    return LatticeSet(tuple(pts))


def _check_compressible(A: LatticeSet, h: int) -> None:
    check_fold(h)
    if h < 2:
        raise PreconditionError("lattice compression requires h >= 2")
    if len(A) < 3:
        raise PreconditionError("lattice compression needs at least 3 points")


def axis_compress_step(A: LatticeSet, h: int, p: int) -> Optional[tuple[LatticeSet, AxisGapWitness]]:
    """One compression along e_p, or None when no gap on that axis qualifies."""
    A = _as_lattice(A)
    _check_compressible(A, h)
    _check_axis(A, p)
    w = _find_axis_gap(A, h, p)
    if w is None:
        return None
    return _apply(A, w), w


def axis_compress_full(A: LatticeSet, h: int, check: bool = False) -> tuple[LatticeSet, CompressionTrace]:
    """Compress along e_1, ..., e_n in turn, repeating until a full pass is clean.

    ``trace.passes`` counts sweeps over all axes, including the final clean one.
    """
    A = _as_lattice(A)
    _check_compressible(A, h)
    size = lattice_sumset_size(A, h)
    trace = CompressionTrace(A, A, size, passes=0)
    cur = A
    while True:
        trace.passes += 1
        changed = False
        for p in range(1, A.dim + 1):
            while (w := _find_axis_gap(cur, h, p)) is not None:
                nxt = _apply(cur, w)
                trace.steps.append(TraceStep(w.j, w.delta, diam_axis(cur, p), diam_axis(nxt, p), axis=p))
                if check and lattice_sumset_size(nxt, h) != size:
                    raise SelfCheckFailure(f"axis step {w} changed |{h}A|")
                cur = nxt
                changed = True
        if not changed:
            break
    trace.final_set = cur
    return cur, trace


def satisfies_axis_bounds(A: LatticeSet, h: int) -> bool:
    A = _as_lattice(A)
    return all(_find_axis_gap(A, h, p) is None for p in range(1, A.dim + 1))
