from __future__ import annotations

import random
from fractions import Fraction as Q

import pytest

from zvertex.linalg import hnf, snf, mat_mul, det
from zvertex.zspan import GradedSpan, certify_integral_form, span_of


def test_hnf_fixed_points():
    assert hnf([[2, 0], [0, 2]]) == [[2, 0], [0, 2]]
    assert hnf([]) == []
    assert hnf([[0, 0]]) == []


def test_hnf_hand_reduction():
    # row2 - row1 = (0,-2); sign fix and above-pivot reduction keep (1,1)
    assert hnf([[1, 1], [1, -1]]) == [[1, 1], [0, 2]]


def test_hnf_idempotent_and_order_independent():
    rng = random.Random(3)
    for _ in range(120):
        m = [[rng.randint(-8, 8) for _ in range(rng.randint(1, 5))]
             for _ in range(rng.randint(1, 6))]
        width = len(m[0])
        m = [row[:width] + [0] * (width - len(row)) for row in m]
        h = hnf(m)
        assert hnf(h) == h
        shuffled = [list(r) for r in m]
        rng.shuffle(shuffled)
        assert hnf(shuffled) == h


def test_hnf_invariant_under_row_operations():
    rng = random.Random(17)
    for _ in range(80):
        n = rng.randint(2, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(3)]
        h = hnf(rows)
        mixed = [list(r) for r in rows]
        for _ in range(5):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-2, 2)
            mixed[i] = [a + c * b for a, b in zip(mixed[i], mixed[j])]
        assert hnf(mixed) == h


def test_span_denominator_minimality():
    s = span_of([[Q(1, 2)]], 1)
    assert s.denom == 2 and s.rows == ((1,),)
    s2 = span_of([[Q(2, 4)]], 1)
    assert s2 == s
    s3 = span_of([[Q(1)], [Q(1, 1)]], 1)
    assert s3.denom == 1 and s3.rows == ((1,),)
    assert span_of([[Q(2), Q(0)], [Q(0), Q(2)]], 2).denom == 1


def test_membership_examples():
    s = span_of([[2, 0], [0, 2]], 2)
    assert s.membership([2, 2]) == [1, 1]
    assert s.membership([1, 1]) is None
    assert s.membership([0, 0]) == [0, 0]
    empty = span_of([], 2)
    assert empty.membership([0, 0]) == []
    assert empty.membership([1, 0]) is None


def test_membership_matches_hnf_growth():
    rng = random.Random(29)
    for _ in range(100):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(rng.randint(1, 4))]
        v = [rng.randint(-6, 6) for _ in range(n)]
        s = span_of(rows, n)
        grown = span_of(rows + [v], n)
        assert (s.membership(v) is not None) == (grown == s)


def test_membership_reconstructs_vector():
    rng = random.Random(41)
    for _ in range(60):
        n = rng.randint(1, 4)
        rows = [[Q(rng.randint(-5, 5), rng.choice([1, 1, 2])) for _ in range(n)]
                for _ in range(rng.randint(1, 4))]
        s = span_of(rows, n)
        coeffs = [rng.randint(-3, 3) for _ in s.rows]
        v = [sum(Q(c) * Q(x, s.denom) for c, x in zip(coeffs, col)) for col in zip(*s.rows)] \
            if s.rows else [Q(0)] * n
        got = s.membership(v)
        assert got == (coeffs if s.rows else [])


def test_rank_bounded_by_dimension():
    rng = random.Random(59)
    for _ in range(50):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(6)]
        assert span_of(rows, n).rank <= n


def test_certify_equal_and_witness():
    a = GradedSpan()
    b = GradedSpan()
    key = ((Q(0),), Q(2))
    a.set(key, span_of([[1, 0], [0, 1]], 2))
    b.set(key, span_of([[1, 0], [0, 1]], 2))
    recs = certify_integral_form(a, b)
    assert recs == [{"key": key, "dim": 2, "rank_a": 2, "rank_b": 2, "ok": True}]

    doubled = GradedSpan()
    doubled.set(key, span_of([[2, 0], [0, 2]], 2))
    recs = certify_integral_form(a, doubled)
    assert not recs[0]["ok"]
    assert recs[0]["reason"] == "span mismatch"
    assert recs[0]["witness"] in ([Q(1), Q(0)], [Q(0), Q(1)])

    deficient = GradedSpan()
    deficient.set(key, span_of([[1, 0]], 2))
    recs = certify_integral_form(deficient, a)
    assert recs[0]["reason"] == "rank below dimension"


def test_snf_factorization():
    rng = random.Random(71)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        a = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        u, d, v = snf(a)
        assert mat_mul(mat_mul(u, a), v) == d
        assert abs(det(u)) == 1
        assert abs(det(v)) == 1
        diag = [d[i][i] for i in range(min(m, n))]
        assert all(x >= 0 for x in diag)
        nonzero = [x for x in diag if x != 0]
        for i in range(len(nonzero) - 1):
            assert nonzero[i + 1] % nonzero[i] == 0
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0
