"""Finite integer sets and the h-fold sumset kernel.

All arithmetic here is checked against the signed 64-bit range so that
results agree with a machine-width implementation; anything larger is
reported as :class:`SumsetOverflowError` rather than silently carried.
The sumset itself is computed on a Python ``int`` used as a bit array.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .errors import DuplicateElement, EmptySetError, PreconditionError, SumsetOverflowError

INT_MIN = -(1 << 63)
INT_MAX = (1 << 63) - 1

# Above this many bits the bitset kernel falls back to hashing sums.
BITSET_LIMIT = 1 << 24


def checked(value: int, what: str = "value") -> int:
    if not INT_MIN <= value <= INT_MAX:
        raise SumsetOverflowError(f"{what} {value} does not fit in a signed 64-bit integer")
    return value


def check_fold(h: int) -> int:
    if not isinstance(h, int) or h < 1:
        raise PreconditionError(f"fold count h must be a positive integer, got {h!r}")
    return h


@dataclass(frozen=True)
class IntSet:
    """A nonempty finite set of integers stored as a strictly increasing tuple."""

    elems: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(a) for a in self.elems)
        object.__setattr__(self, "elems", elems)
        if not elems:
            raise EmptySetError("an IntSet must contain at least one element")
        for a, b in zip(elems, elems[1:]):
            if a >= b:
                raise PreconditionError(f"elements must be strictly increasing, got {a} before {b}")
        checked(elems[0], "element")
        checked(elems[-1], "element")

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elems)

    def __getitem__(self, i):
        return self.elems[i]

    def __contains__(self, x) -> bool:
        return x in self.elems

    @property
    def min(self) -> int:
        return self.elems[0]

    @property
    def max(self) -> int:
        return self.elems[-1]

    @property
    def diam(self) -> int:
        return self.elems[-1] - self.elems[0]

    def to_list(self) -> list[int]:
        return list(self.elems)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elems)) + "}"


def make_set(values: Iterable[int], strict: bool = False) -> IntSet:
    """Sort and deduplicate ``values``; with ``strict`` a repeated value is an error."""
    values = [int(v) for v in values]
    if not values:
        raise EmptySetError("cannot build a set from no values")
    distinct = sorted(set(values))
    if strict and len(distinct) != len(values):
        seen = set()
        dup = next(v for v in values if v in seen or seen.add(v))
        raise DuplicateElement(f"value {dup} occurs more than once")
    return IntSet(tuple(distinct))


def _as_intset(A) -> IntSet:
    return A if isinstance(A, IntSet) else make_set(A)


def _sumset_bits(offsets: Sequence[int], h: int) -> int:
    """Bit i of the result is set iff i is a sum of h entries of ``offsets`` (all >= 0)."""
    base = 0
    for a in offsets:
        base |= 1 << a
    acc = base
    for _ in range(h - 1):
        nxt = 0
        for a in offsets:
            nxt |= acc << a
        acc = nxt
    return acc


def _sumset_hashed(offsets: Sequence[int], h: int) -> set[int]:
    acc = set(offsets)
    for _ in range(h - 1):
        acc = {s + a for s in acc for a in offsets}
    return acc


def _bits_to_list(bits: int) -> list[int]:
    digits = bin(bits)[:1:-1]
    return [i for i, c in enumerate(digits) if c == "1"]


def _prepare(A: IntSet, h: int) -> tuple[list[int], int]:
    check_fold(h)
    checked(h * A.min, "h*min(A)")
    checked(h * A.max, "h*max(A)")
    lo = A.min
    return [a - lo for a in A.elems], lo


def hfold_sumset(A: IntSet, h: int) -> IntSet:
    """All sums of h not necessarily distinct elements of A."""
    A = _as_intset(A)
    offsets, lo = _prepare(A, h)
    if h * A.diam <= BITSET_LIMIT:
        sums = _bits_to_list(_sumset_bits(offsets, h))
    else:
        sums = sorted(_sumset_hashed(offsets, h))
    return IntSet(tuple(s + h * lo for s in sums))


def sumset_size(A: IntSet, h: int) -> int:
    A = _as_intset(A)
    offsets, _ = _prepare(A, h)
    if h * A.diam <= BITSET_LIMIT:
        return _sumset_bits(offsets, h).bit_count()
    return len(_sumset_hashed(offsets, h))


def affine_image(A: IntSet, lam: int, mu: int) -> IntSet:
    if lam == 0:
        raise PreconditionError("dilation factor must be nonzero")
    A = _as_intset(A)
    return make_set(checked(lam * a + mu, "lambda*a+mu") for a in A)


def normalize(A: IntSet) -> IntSet:
    """Translate to start at 0 and divide out the gcd of the differences.

    A singleton normalizes to ``{0}``.
    """
    A = _as_intset(A)
    lo = A.min
    shifted = [a - lo for a in A]
    g = reduce(math.gcd, shifted, 0)
    if g == 0:
        return IntSet((0,))
    return IntSet(tuple(a // g for a in shifted))


def min_size(h: int, k: int) -> int:
    check_fold(h)
    if k < 1:
        raise PreconditionError("k must be positive")
    return checked(h * k - h + 1, "hk-h+1")


def max_size(h: int, k: int) -> int:
    check_fold(h)
    if k < 1:
        raise PreconditionError("k must be positive")
    return checked(math.comb(h + k - 1, k - 1), "C(h+k-1,k-1)")


def is_bh_set(A: IntSet, h: int) -> bool:
    """True iff every h-multiset of A has a distinct sum."""
    A = _as_intset(A)
    return sumset_size(A, h) == math.comb(h + len(A) - 1, len(A) - 1)
