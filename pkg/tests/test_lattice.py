import random

import pytest

from fanok3.lattice import (
    Lattice,
    LatticeError,
    apply_matrix,
    direct_sum,
    hyperbolic_plane,
    k3_lattice,
    make_named,
    parse_lattice,
    read_lattice,
    reduce_rank2,
    root_lattice,
    scaled,
    smith_normal_form,
    write_lattice,
)


def test_root_lattice_determinants():
    for p in range(1, 9):
        assert root_lattice("A", p).det() == p + 1
    for q in range(4, 9):
        assert root_lattice("D", q).det() == 4
    assert root_lattice("E", 6).det() == 3
    assert root_lattice("E", 7).det() == 2
    assert root_lattice("E", 8).det() == 1


def test_root_lattices_positive_definite():
    for name in ("A5", "D6", "E6", "E7", "E8"):
        lat = make_named(name)
        assert lat.signature() == (lat.rank, 0, 0)


def test_a2_gram():
    assert root_lattice("A", 2).gram == ((2, 1), (1, 2))


def test_hyperbolic_plane():
    u = hyperbolic_plane()
    assert u.det() == -1
    assert u.signature() == (1, 1, 0)


def test_k3_lattice():
    lam = k3_lattice()
    assert lam.rank == 22
    assert lam.det() == -1
    assert lam.signature() == (3, 19, 0)


def test_scaled():
    assert scaled(hyperbolic_plane(), 2).det() == -4
    a2m = scaled(root_lattice("A", 2), -1)
    assert a2m.det() == 3
    assert a2m.signature() == (0, 2, 0)


def test_dets():
    assert Lattice([[2, 2], [2, 20]]).det() == 36
    assert Lattice([[0, 3], [3, 0]]).det() == -9
    assert Lattice([[-4]]).det() == -4


def test_triangle_signature_kernel_quotient():
    tri = Lattice([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])
    assert tri.signature() == (0, 2, 1)
    assert tri.kernel_basis() == ((1, 1, 1),)
    q, proj = tri.quotient_by_kernel()
    assert q.rank == 2
    assert q.det() == 3
    assert q.signature() == (0, 2, 0)
    # the projection respects the pairing
    for u in ((1, 0, 0), (0, 1, 0), (1, 2, -1)):
        for v in ((0, 0, 1), (1, 1, 1)):
            assert tri.dot(u, v) == q.dot(apply_matrix(u, proj), apply_matrix(v, proj))
    assert apply_matrix((1, 1, 1), proj) == (0, 0)


def test_square_cycle_signature():
    c4 = Lattice([[-2, 1, 0, 1], [1, -2, 1, 0], [0, 1, -2, 1], [1, 0, 1, -2]])
    assert c4.signature() == (0, 3, 1)
    assert len(c4.kernel_basis()) == 1


def test_saturate():
    u = hyperbolic_plane()
    sat, index = u.saturate([(2, 0)])
    assert index == 2
    assert sat.rank == 1
    assert sat.basis in (((1, 0),), ((-1, 0),))


def test_orthogonal_complement():
    u = hyperbolic_plane()
    c = u.orthogonal_complement([(1, 0)])
    assert c.rank == 1 and c.gram == ((0,),)
    assert c.basis[0] in ((1, 0), (-1, 0))
    c2 = u.orthogonal_complement([(1, 2)])
    assert c2.rank == 1
    assert c2.gram == ((-4,),)
    # |det sub| * |det comp| = |det L| * index^2
    sub = u.sublattice([(1, 2)])
    assert abs(sub.det() * c2.det()) == 16


def test_complement_in_k3_rank():
    lam = k3_lattice()
    e8 = [tuple(1 if j == 6 + i else 0 for j in range(22)) for i in range(8)]
    comp = lam.orthogonal_complement(e8)
    assert comp.rank == 14
    assert comp.signature() == (3, 11, 0)
    assert abs(comp.det()) == 1


def test_smith_normal_form_frozen():
    d, u, v = smith_normal_form([[2, 4], [6, 8]])
    assert (d[0][0], d[1][1]) == (2, 4)


def test_smith_properties_random():
    rng = random.Random(7)
    for _ in range(40):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        m = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
        d, u, v = smith_normal_form(m)
        # U*M*V == D
        prod = [[sum(u[i][k] * m[k][j] for k in range(rows)) for j in range(cols)]
                for i in range(rows)]
        prod = [[sum(prod[i][k] * v[k][j] for k in range(cols)) for j in range(cols)]
                for i in range(rows)]
        assert [list(r) for r in d] == prod
        diag = [d[i][i] for i in range(min(rows, cols))]
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and (b == 0 or a == 0 or b % a == 0)


def test_signature_congruence_invariance():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randrange(1, 5)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = 2 * rng.randrange(-3, 4)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randrange(-3, 4)
        lat = Lattice(g)
        p, m, z = lat.signature()
        assert p + m + z == n
        assert (z > 0) == (lat.det() == 0)
        if z == 0 and m % 2 == 1:
            assert lat.det() < 0
        # random unimodular change of basis preserves everything
        t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for _ in range(6):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                sign = rng.choice((-1, 1))
                for k in range(n):
                    t[i][k] += sign * t[j][k]
        g2 = [[sum(t[i][a] * g[a][b] * t[j][b] for a in range(n) for b in range(n))
               for j in range(n)] for i in range(n)]
        lat2 = Lattice(g2)
        assert lat2.signature() == (p, m, z)
        assert lat2.det() == lat.det() * 1  # |det T| = 1


def test_kernel_is_primitive():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randrange(2, 5)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = 2 * rng.randrange(-2, 3)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randrange(-2, 3)
        lat = Lattice(g)
        ker = lat.kernel_basis()
        for row in ker:
            assert all(lat.dot(row, u) == 0
                       for u in ([1 if k == t else 0 for k in range(n)] for t in range(n)))
        if ker:
            _sat, index = lat.saturate(ker)
            assert index == 1


def test_reduce_rank2():
    assert reduce_rank2([[2, 2], [2, 20]]) == (2, 0, 18)
    assert reduce_rank2([[8, 4], [4, 8]]) == (8, 4, 8)
    assert reduce_rank2([[4, 4], [4, 16]]) == (4, 0, 12)
    assert reduce_rank2([[20, -9], [-9, 20]]) == (20, 9, 20)
    with pytest.raises(LatticeError):
        reduce_rank2([[2, 3], [3, 2]])


def test_reduce_rank2_preserves_det():
    rng = random.Random(5)
    for _ in range(50):
        a = 2 * rng.randrange(1, 9)
        b = rng.randrange(-9, 10)
        c = 2 * rng.randrange(1, 9)
        if a * c - b * b <= 0:
            continue
        r = reduce_rank2([[a, b], [b, c]])
        assert r[0] * r[2] - r[1] ** 2 == a * c - b * b
        assert 0 <= 2 * r[1] <= r[0] <= r[2]


def test_parse_lattice():
    lam = parse_lattice("U+U+U+E8(-1)+E8(-1)")
    assert lam.gram == k3_lattice().gram
    assert parse_lattice("r2:8,4,8").det() == 48
    assert parse_lattice("scale:3(U)").gram == ((0, 3), (3, 0))
    assert parse_lattice("U(3)").gram == ((0, 3), (3, 0))
    assert parse_lattice("A2(-1)+r1:4").signature() == (1, 2, 0)
    with pytest.raises(LatticeError):
        parse_lattice("Z9")


def test_text_roundtrip():
    lat = parse_lattice("U+A2(-1)")
    text = write_lattice(lat)
    assert read_lattice(text).gram == lat.gram
    assert text.splitlines()[0] == "4"


def test_invalid_gram_rejected():
    with pytest.raises(LatticeError):
        Lattice([[1]])  # odd diagonal
    with pytest.raises(LatticeError):
        Lattice([[2, 1], [0, 2]])  # not symmetric
    with pytest.raises(LatticeError):
        Lattice([[2, 1]])  # not square


def test_direct_sum_and_dot():
    s = direct_sum(root_lattice("A", 1), scaled(root_lattice("A", 1), -1))
    assert s.gram == ((2, 0), (0, -2))
    assert s.dot((1, 1), (1, -1)) == 4
    assert s.norm((1, 1)) == 0


def test_sublattice_dependent_rows_rejected():
    u = hyperbolic_plane()
    with pytest.raises(LatticeError):
        u.sublattice([(1, 0), (2, 0)])
