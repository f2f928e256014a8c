import math
import random
from fractions import Fraction

import pytest

from fanok3.lattice import Lattice, LatticeError, hyperbolic_plane, root_lattice, scaled, direct_sum
from fanok3.shortvec import short_vectors, vectors_norm_dot, represents


def brute_norm(lat, n, box):
    """Box-search oracle: all v with |coords| <= box and v*v == n."""
    rank = lat.rank
    out = []

    def rec(i, v):
        if i == rank:
            if any(v) and lat.norm(v) == n:
                out.append(tuple(v))
            return
        for x in range(-box, box + 1):
            v[i] = x
            rec(i + 1, v)
        v[i] = 0

    rec(0, [0] * rank)
    return sorted(out)


def test_a2_roots():
    a2 = root_lattice("A", 2)
    up = short_vectors(a2, 2)
    assert len(up) == 3
    assert len(short_vectors(a2, 2, both_signs=True)) == 6
    assert up == ((0, 1), (1, -1), (1, 0))


def test_a1_norms():
    a1 = root_lattice("A", 1)
    assert short_vectors(a1, 2) == ((1,),)
    assert short_vectors(a1, 8) == ((2,),)
    assert short_vectors(a1, 4) == ()
    assert represents(a1, 50)
    assert not represents(a1, 6)


def test_d4_and_e8_root_counts():
    assert len(short_vectors(root_lattice("D", 4), 2, both_signs=True)) == 24
    assert len(short_vectors(root_lattice("D", 4), 4, both_signs=True)) == 24
    assert len(short_vectors(root_lattice("E", 8), 2, both_signs=True)) == 240


def test_negative_definite():
    a2m = scaled(root_lattice("A", 2), -1)
    assert len(short_vectors(a2m, -2)) == 3
    assert short_vectors(a2m, 2) == ()


def test_indefinite_rejected():
    with pytest.raises(LatticeError):
        short_vectors(hyperbolic_plane(), 2)


def test_binary_form_representations():
    t = Lattice([[2, 1], [1, 4]])  # det 7
    assert represents(t, 2)
    assert not represents(Lattice([[4, 1], [1, 4]]), 2)
    assert represents(Lattice([[2, 1], [1, 8]]), 2)


def test_oracle_random_definite():
    rng = random.Random(20240817)
    cases = 0
    while cases < 60:
        rank = rng.randrange(1, 5)
        b = [[rng.randrange(-2, 3) for _ in range(rank)] for _ in range(rank)]
        g = [[2 * sum(b[i][k] * b[j][k] for k in range(rank)) for j in range(rank)]
             for i in range(rank)]
        lat = Lattice(g)
        if lat.det() == 0:
            continue
        cases += 1
        n = 2 * rng.randrange(1, 9)
        inv = lat.gram_inverse()
        box = 0
        for i in range(rank):
            f = Fraction(n) * inv[i][i]
            s = math.isqrt(f.numerator // f.denominator)
            while (s + 1) * (s + 1) <= f:
                s += 1
            box = max(box, s)
        expect = brute_norm(lat, n, box)
        got = sorted(short_vectors(lat, n, both_signs=True))
        assert got == expect


def test_vectors_norm_dot_u_example():
    u = hyperbolic_plane()
    h = (1, 2)  # h*h = 4
    assert vectors_norm_dot(u, h, -2, 1) == ((1, -1),)
    assert vectors_norm_dot(u, h, 0, 2) == ((0, 2), (1, 0))
    assert vectors_norm_dot(u, h, 0, 1) == ((0, 1),)
    # empty because n > m^2 / h^2
    assert vectors_norm_dot(u, h, 2, 1) == ()


def test_vectors_norm_dot_requires_hyperbolic():
    with pytest.raises(LatticeError):
        vectors_norm_dot(root_lattice("A", 2), (1, 0), 2, 1)


def test_vectors_norm_dot_oracle():
    rng = random.Random(99)
    u = hyperbolic_plane()
    box = 8
    for _ in range(30):
        k = 2 * rng.randrange(1, 4)
        lat = direct_sum(u, Lattice([[-k]]))
        h = None
        while h is None:
            cand = (rng.randrange(1, 4), rng.randrange(1, 4), rng.randrange(-2, 3))
            if lat.norm(cand) > 0:
                h = cand
        n = rng.choice((-4, -2, 0, 2))
        m = rng.randrange(0, 5)
        got = vectors_norm_dot(lat, h, n, m)
        for v in got:
            assert lat.norm(v) == n and lat.dot(v, h) == m
        brute = []
        for a in range(-box, box + 1):
            for b in range(-box, box + 1):
                for c in range(-box, box + 1):
                    v = (a, b, c)
                    if lat.norm(v) == n and lat.dot(v, h) == m:
                        brute.append(v)
        got_in_box = [v for v in got if all(abs(x) <= box for x in v)]
        assert sorted(got_in_box) == sorted(brute)


def test_enumeration_deterministic():
    a3 = root_lattice("A", 3)
    assert short_vectors(a3, 2) == short_vectors(a3, 2)
    vecs = short_vectors(a3, 2)
    assert vecs == tuple(sorted(vecs))
