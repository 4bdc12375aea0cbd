"""Acceptance criteria. Each test is one criterion; conftest prints a PASS/FAIL line per criterion."""
import math
import random
import time

from oracles import naive_lattice_sumset
from sumsetlab.compress1d import compress_full, compressible_gaps, find_compressible_gap, geometric_bound, \
    satisfies_gap_bound, short_form_split
from sumsetlab.core import affine_image, make_set, max_size, min_size, sumset_size
from sumsetlab.freiman import embed_base_g, verify_freiman_iso
from sumsetlab.lattice import axis_compress_full, lattice_sumset_size, make_lattice_set
from sumsetlab.range_search import enumerate_sizes, exact_N, n_upper_bound, rescale_compress


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


def test_criterion_01_golden_tail_family():
    with Clock(1.0):
        assert sumset_size(make_set([0, 1, 3, 20, 200]), 4) == 65
        assert sumset_size(make_set([0, 1, 3, 20, 81]), 4) == 65
        for b in range(81, 121):
            assert sumset_size(make_set([0, 1, 3, 20, b]), 4) == 65
        assert sumset_size(make_set([0, 1, 3, 20, 80]), 4) == 64


def test_criterion_02_interior_gap_family():
    with Clock(1.0):
        for c in range(8):
            assert sumset_size(make_set([0, 1, 3, 20 - c, 81 - c]), 4) == 65
        assert sumset_size(make_set([0, 1, 3, 12, 73]), 4) == 64


def test_criterion_03_worked_compression_example():
    with Clock(1.0):
        A = make_set([0, 2, 7, 11, 70, 85, 91])
        final, trace = compress_full(A, 3)
        assert len(trace.steps) == 1
        assert (trace.steps[0].j, trace.steps[0].delta) == (4, 16)
        assert final.elems == (0, 2, 7, 11, 54, 69, 75)
        assert sumset_size(A, 3) == sumset_size(final, 3) == 80
        assert short_form_split(final, 3) == 5
        assert 75 < geometric_bound(final, 3, 5) == 1 + 3 + 9 * 54
        assert 75 < geometric_bound(final, 3, 6) == 1 + 3 * 69


def test_criterion_04_range_identities():
    with Clock(30.0):
        for k in (3, 4, 5):
            assert enumerate_sizes(2, k, 2 ** k).achieved == list(range(2 * k - 1, k * (k + 1) // 2 + 1))
        for h in range(1, 7):
            assert enumerate_sizes(h, 2, 2).achieved == [h + 1]
        for k in range(1, 7):
            assert enumerate_sizes(1, k, k).achieved == [k]


def test_criterion_05_n_values():
    with Clock(60.0):
        assert exact_N(3, 3, trust_N=20).N == 5
        for h in range(1, 6):
            assert exact_N(h, 1, 8).N == 1
            assert exact_N(h, 2, 8).N == 2
        for k in range(1, 7):
            assert exact_N(1, k, k + 3).N == k
        assert n_upper_bound(3, 3) == 2304


def test_criterion_06_extremal_formulas():
    with Clock(5.0):
        for h in range(1, 5):
            for k in range(1, 6):
                assert sumset_size(make_set(range(k)), h) == h * k - h + 1 == min_size(h, k)
                B = make_set((h + 1) ** i for i in range(k))
                assert sumset_size(B, h) == math.comb(h + k - 1, k - 1) == max_size(h, k)


def test_criterion_07_property_suite():
    rng = random.Random(20240607)
    cases = 10_000
    for _ in range(cases):
        k = rng.randint(3, 6)
        h = rng.randint(1, 4)
        A = make_set(rng.sample(range(-100, 301), k))
        size = sumset_size(A, h)

        lam = rng.choice([x for x in range(-7, 8) if x])
        assert sumset_size(affine_image(A, lam, rng.randint(-50, 50)), h) == size

        if h >= 2:
            assert len(compressible_gaps(A, h)) <= 1

        w = find_compressible_gap(A, h)
        final, trace = compress_full(A, h)
        if w is not None:
            assert trace.steps[0].j == w.j
            assert trace.steps[0].diam_before - trace.steps[0].diam_after == w.delta
        for s in trace.steps:
            assert s.diam_before - s.diam_after == s.delta > 0
        assert A.diam - final.diam == trace.total_delta
        assert sumset_size(final, h) == size
        assert satisfies_gap_bound(final, h)

        if h >= 2:
            L = make_lattice_set([(a,) for a in A])
            lf, lt = axis_compress_full(L, h)
            assert tuple(p[0] for p in lf.points) == final.elems
            assert [(s.j, s.delta) for s in lt.steps] == [(s.j, s.delta) for s in trace.steps]


def test_criterion_08_freiman_bridge():
    rng = random.Random(8)
    with Clock(60.0):
        for _ in range(200):
            n = rng.randint(1, 3)
            k = rng.randint(1, 5)
            h = rng.randint(1, 3)
            pts = set()
            while len(pts) < min(k, 7 ** n):
                pts.add(tuple(rng.randint(0, 6) for _ in range(n)))
            A = make_lattice_set(sorted(pts))
            B, emb = embed_base_g(A, h)
            assert len(naive_lattice_sumset(A.points, h)) == lattice_sumset_size(A, h) == sumset_size(B, h)
            assert verify_freiman_iso(A, B, h, pairing={p: emb(p) for p in A.points})


def test_criterion_09_rescaling():
    rng = random.Random(9)
    for _ in range(100):
        k = rng.randint(2, 5)
        h = rng.choice((3, 4))
        A = make_set(rng.sample(range(-500, 501), k))
        res = rescale_compress(A, h)
        assert 2 * h * res.M < res.p < 4 * h * res.M
        assert sumset_size(res.output, h) == sumset_size(A, h)
        assert res.output.diam <= A.diam
    # instances in the regime M >= 2(4h)^(k-1), where the 2r box bound applies
    for h, small, d in [(2, [0, 1], 20), (2, [0, 1, 2], 100), (2, [0, 1, 3], 60), (3, [0, 1, 2], 150)]:
        A = make_set(x * d for x in small)
        assert A.max >= 2 * (4 * h) ** (len(A) - 1)
        res = rescale_compress(A, h)
        assert max(abs(b) for b in res.output) <= 2 * res.r
        assert sumset_size(res.output, h) == sumset_size(A, h)


def test_criterion_10_parallel_determinism():
    one = enumerate_sizes(3, 4, 14, workers=1)
    four = enumerate_sizes(3, 4, 14, workers=4)
    assert one.to_json() == four.to_json()
