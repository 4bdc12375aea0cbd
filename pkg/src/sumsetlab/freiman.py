"""Freiman isomorphisms of order h between sets in Z, Z^n and Z/pZ.

Everything here uses unbounded integers: the base-g embedding grows like
g^(n-1) and must not be capped.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Any, Mapping, Optional, Sequence

from .core import IntSet, _as_intset, check_fold, make_set
from .errors import DuplicateElement, PreconditionError, UnsafeReduction
from .lattice import LatticeSet, _as_lattice
from .primes import is_prime


@dataclass(frozen=True)
class Embedding:
    g: int
    dim: int
    offset: tuple[int, ...]  # added to every point before applying f

    def __call__(self, point: Sequence[int]) -> int:
        return sum((c + o) * self.g ** i for i, (c, o) in enumerate(zip(point, self.offset)))

    def to_json(self, A: LatticeSet | None = None) -> dict:
        d: dict[str, Any] = {"g": self.g, "offset": list(self.offset)}
        if A is not None:
            d["image"] = [self(p) for p in A.points]
        return d


def embed_base_g(A: LatticeSet, h: int, g: Optional[int] = None) -> tuple[IntSet, Embedding]:
    """Map A into Z by (x_1..x_n) -> sum x_j g^(j-1) after shifting into N_0^n.

    Only coordinates with negative values are shifted. The default base is
    the least legal one, h * max ||a||_inf + 1.
    """
    A = _as_lattice(A)
    check_fold(h)
    n = A.dim
    offset = tuple(max(0, -min(p[i] for p in A.points)) for i in range(n))
    norm = max(max(c + o for c, o in zip(p, offset)) for p in A.points)
    least = h * norm + 1
    if g is None:
        g = least
    elif g < least:
        raise PreconditionError(f"base g={g} must exceed h*max||a||_inf = {least - 1}")
    emb = Embedding(g, n, offset)
    return make_set(emb(p) for p in A.points), emb


@dataclass(frozen=True)
class IsoCheck:
    ok: bool
    witness: Optional[tuple[tuple, tuple]] = None  # two h-multisets of A breaking the biconditional

    def __bool__(self) -> bool:
        return self.ok


def _elements(X) -> list:
    if isinstance(X, IntSet):
        return list(X.elems)
    if isinstance(X, LatticeSet):
        return list(X.points)
    if isinstance(X, ResidueSet):
        return list(X.residues)
    return list(X)


def _add(x, y):
    if isinstance(x, tuple):
        return tuple(a + b for a, b in zip(x, y))
    return x + y


def verify_freiman_iso(A, B, h: int, pairing: Optional[Mapping] = None,
                       modulus_a: Optional[int] = None, modulus_b: Optional[int] = None) -> IsoCheck:
    """Check that pairing: A -> B preserves and reflects equality of h-fold sums.

    ``pairing`` maps elements of A to elements of B; by default the i-th
    element of A goes to the i-th element of B in the order given. Sums
    are taken modulo ``modulus_a`` / ``modulus_b`` when set (for Z/pZ).

    Multisets are grouped by their A-sum; the map is an isomorphism iff
    each group has a single B-sum and distinct groups have distinct B-sums,
    which is the pairwise biconditional without the quadratic comparison.
    """
    check_fold(h)
    xs = _elements(A)
    if pairing is None:
        ys = _elements(B)
        if len(xs) != len(ys):
            raise PreconditionError(f"size mismatch: |A|={len(xs)}, |B|={len(ys)}")
    else:
        if set(pairing) != set(xs):
            raise PreconditionError("pairing must be defined on exactly the elements of A")
        ys = [pairing[x] for x in xs]
        if len(set(ys)) != len(ys):
            raise PreconditionError("pairing is not injective")
        targets = _elements(B)
        if set(ys) != set(targets) or len(targets) != len(ys):
            raise PreconditionError("pairing must be onto B")

    def total(vals, idx, mod):
        s = vals[idx[0]]
        for i in idx[1:]:
            s = _add(s, vals[i])
        if mod is not None:
            s = tuple(c % mod for c in s) if isinstance(s, tuple) else s % mod
        return s

    by_a: dict = {}
    by_b: dict = {}
    for idx in combinations_with_replacement(range(len(xs)), h):
        sa = total(xs, idx, modulus_a)
        sb = total(ys, idx, modulus_b)
        prev = by_a.get(sa)
        if prev is None:
            by_a[sa] = (idx, sb)
        elif prev[1] != sb:
            return IsoCheck(False, _witness(xs, prev[0], idx))
        other = by_b.get(sb)
        if other is None:
            by_b[sb] = (idx, sa)
        elif other[1] != sa:
            return IsoCheck(False, _witness(xs, other[0], idx))
    return IsoCheck(True)


def _witness(xs, i1, i2):
    return tuple(xs[i] for i in i1), tuple(xs[i] for i in i2)


@dataclass(frozen=True)
class ResidueSet:
    """Distinct residues mod an odd prime, kept in the order of their preimages."""

    modulus: int
    residues: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(int(r) for r in self.residues))
        p = self.modulus
        if p < 3 or not is_prime(p):
            raise PreconditionError(f"modulus {p} is not an odd prime")
        if any(not 0 <= r < p for r in self.residues):
            raise PreconditionError(f"residues must lie in [0, {p - 1}]")
        if len(set(self.residues)) != len(self.residues):
            raise DuplicateElement("residues must be distinct mod p")

    def __len__(self):
        return len(self.residues)

    def centered(self) -> list[int]:
        return [centered_residue(r, self.modulus) for r in self.residues]

    def norm(self) -> int:
        """Largest centered absolute value, the l-infinity norm in (Z/pZ)^k."""
        return max(abs(x) for x in self.centered())


def mod_reduce(A: IntSet, p: int, h: int, force: bool = False) -> ResidueSet:
    """Residues of A mod p. Refuses unless every |a| < p/(2h), where the map is an isomorphism."""
    A = _as_intset(A)
    check_fold(h)
    if not force:
        bad = [a for a in A if 2 * h * abs(a) >= p]
        if bad:
            raise UnsafeReduction(f"|a| < p/(2h) fails for {bad} with p={p}, h={h}")
    return ResidueSet(p, tuple(a % p for a in A))


def dilate_mod(R: ResidueSet, lam: int) -> ResidueSet:
    p = R.modulus
    if lam % p == 0:
        raise PreconditionError("dilation must be a unit mod p")
    return ResidueSet(p, tuple(lam * r % p for r in R.residues))


def centered_residue(x: int, p: int) -> int:
    """The representative of x mod p with least absolute value (p odd)."""
    r = x % p
    return r - p if r > p // 2 else r
