"""Graph layer: structure, ADE recognition, canonical labels, Aut."""

from itertools import permutations
import random

import pytest

from fanok3.graphs import (
    Graph,
    GraphError,
    affine_degree,
    affine_graph,
    aut_generators,
    aut_order,
    canonical_certificate,
    canonical_perm,
    classify,
    component_type,
    component_types,
    cycle_graph,
    degree_set,
    disjoint_union,
    dynkin_graph,
    find_induced_cycle,
    from_graph6,
    induced_subgraph_iso,
    isomorphic,
    marks,
    minimal_fiber,
    orbits,
    path_graph,
    read_graph,
    star_graph,
    to_graph6,
    write_graph,
)


def petersen():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph(10, edges)


def test_basic_structure():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.degrees() == (1, 2, 2, 1)
    assert g.has_edge(2, 1) and not g.has_edge(0, 3)
    assert g.edge_count() == 3
    h = g.with_vertex([0, 3])
    assert h.n == 5 and h.degree(4) == 2
    sub = g.induced([1, 2, 3])
    assert sub.edges() == [(0, 1), (1, 2)]


def test_validation():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 5)])
    with pytest.raises(GraphError):
        Graph(2, adj=[1, 0])   # asymmetric


def test_components():
    g = disjoint_union(cycle_graph(3), path_graph(2), Graph(1))
    assert g.components() == [[0, 1, 2], [3, 4], [5]]
    assert not g.is_connected()
    assert cycle_graph(5).is_connected()


def test_girth():
    assert cycle_graph(5).girth() == 5
    assert cycle_graph(3).girth() == 3
    assert path_graph(6).girth() is None
    assert petersen().girth() == 5
    k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert k4.girth() == 3


def test_triangle_and_biquadrangle():
    assert cycle_graph(4).triangle_free()
    assert cycle_graph(4).biquadrangle_free()
    assert not cycle_graph(3).triangle_free()
    k23 = Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    assert k23.triangle_free()
    assert not k23.biquadrangle_free()
    assert petersen().biquadrangle_free()


def test_dynkin_recognition():
    for kind, idx in [("A", 1), ("A", 5), ("D", 4), ("D", 7),
                      ("E", 6), ("E", 7), ("E", 8)]:
        g = dynkin_graph(kind, idx)
        assert component_type(g, range(g.n)) == (kind, idx)
    for kind, idx in [("tA", 2), ("tA", 7), ("tD", 4), ("tD", 5),
                      ("tD", 9), ("tE", 6), ("tE", 7), ("tE", 8)]:
        g = affine_graph(kind, idx)
        assert component_type(g, range(g.n)) == (kind, idx)


def test_non_ade():
    k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert component_type(k4, range(4)) is None
    paw = Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    assert component_type(paw, range(4)) is None
    k15 = star_graph(5)
    assert component_type(k15, range(6)) is None


def test_component_types_mixed():
    g = disjoint_union(cycle_graph(3), dynkin_graph("A", 2))
    [(t1, c1), (t2, c2)] = component_types(g)
    assert t1 == ("tA", 2) and c1 == [0, 1, 2]
    assert t2 == ("A", 2) and c2 == [3, 4]


def test_classify():
    assert classify(dynkin_graph("E", 8)) == "elliptic"
    assert classify(star_graph(3)) == "elliptic"
    assert classify(star_graph(4)) == "parabolic"
    assert classify(star_graph(5)) == "hyperbolic"
    assert classify(cycle_graph(3)) == "parabolic"
    k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert classify(k4) == "hyperbolic"
    assert classify(disjoint_union(k4, k4)) == "overpositive"
    # a fiber plus a disjoint vertex stays parabolic
    assert classify(disjoint_union(cycle_graph(3), Graph(1))) == "parabolic"


def test_marks():
    tri = cycle_graph(3)
    assert marks(tri, [0, 1, 2]) == {0: 1, 1: 1, 2: 1}
    st = star_graph(4)
    assert marks(st, range(5)) == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}
    te8 = affine_graph("tE", 8)
    assert marks(te8, range(9)) == {0: 2, 1: 4, 2: 6, 3: 5, 4: 4,
                                    5: 3, 6: 2, 7: 3, 8: 1}
    with pytest.raises(GraphError):
        marks(path_graph(3), [0, 1, 2])


def test_affine_degree():
    assert affine_degree(("tA", 2)) == 3
    assert affine_degree(("tA", 5)) == 6
    assert affine_degree(("tD", 4)) == 6
    assert affine_degree(("tD", 6)) == 10
    assert affine_degree(("tE", 6)) == 12
    assert affine_degree(("tE", 7)) == 18
    assert affine_degree(("tE", 8)) == 30
    # consistent with the multiplicity vectors
    for tag in [("tA", 4), ("tD", 5), ("tD", 7), ("tE", 6), ("tE", 8)]:
        g = affine_graph(*tag)
        assert sum(marks(g, range(g.n)).values()) == affine_degree(tag)


def test_degree_set():
    assert degree_set(("A", 3)) == frozenset({1, 2, 3})
    assert degree_set(("D", 5)) == frozenset(range(1, 8))
    assert degree_set(("E", 6)) == frozenset(range(1, 12))
    assert degree_set(("E", 7)) == frozenset(range(1, 14)) | {17}
    assert degree_set(("E", 8)) == frozenset(range(1, 17)) | {23}
    with pytest.raises(GraphError):
        degree_set(("tA", 2))


def test_induced_cycle():
    assert find_induced_cycle(cycle_graph(6), 6) is not None
    assert find_induced_cycle(cycle_graph(6), 3) is None
    assert find_induced_cycle(cycle_graph(6), 4) is None
    chord = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    assert find_induced_cycle(chord, 3) is not None
    assert find_induced_cycle(chord, 4) is not None
    assert find_induced_cycle(chord, 5) is None
    got = find_induced_cycle(petersen(), 5)
    sub = petersen().induced(got)
    assert component_type(sub, range(5)) == ("tA", 4)


def test_induced_subgraph_iso():
    assert induced_subgraph_iso(path_graph(3), cycle_graph(5)) is not None
    assert induced_subgraph_iso(star_graph(4), cycle_graph(5)) is None
    # girth 5 forces the neighborhood of any edge to induce a tD5
    assert induced_subgraph_iso(affine_graph("tD", 5), petersen()) is not None
    assert induced_subgraph_iso(cycle_graph(3), petersen()) is None


def test_minimal_fiber():
    tag, verts = minimal_fiber(cycle_graph(3))
    assert tag == ("tA", 2) and len(verts) == 3
    assert minimal_fiber(dynkin_graph("D", 4)) is None
    tag, verts = minimal_fiber(star_graph(5))
    assert tag == ("tD", 4)
    # ascending search prefers the cycle at equal Milnor number
    g = disjoint_union(cycle_graph(5), star_graph(4))
    tag, verts = minimal_fiber(g)
    assert tag == ("tA", 4)
    # and a triangle beats any fork
    g2 = disjoint_union(star_graph(4), cycle_graph(3))
    tag, verts = minimal_fiber(g2)
    assert tag == ("tA", 2)
    assert minimal_fiber(affine_graph("tE", 7))[0] == ("tE", 7)


def test_graph6_roundtrip():
    k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert to_graph6(k4) == "C~"
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randrange(0, 14)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.4]
        g = Graph(n, edges)
        assert from_graph6(to_graph6(g)) == g
    big = cycle_graph(70)
    assert from_graph6(to_graph6(big)) == big


def test_text_roundtrip():
    g = disjoint_union(petersen(), path_graph(3))
    text = write_graph(g)
    assert read_graph(text) == g
    assert read_graph("3\n0: 1\n1: 2\n# comment\n") == path_graph(3)
    with pytest.raises(GraphError):
        read_graph("")


def test_canonical_invariance():
    rng = random.Random(11)
    graphs = [petersen(), path_graph(6), star_graph(5),
              disjoint_union(cycle_graph(3), cycle_graph(3), path_graph(2)),
              affine_graph("tE", 7)]
    for g in graphs:
        cert = canonical_certificate(g)
        canon = g.relabel(canonical_perm(g))
        for _ in range(5):
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            assert canonical_certificate(h) == cert
            assert h.relabel(canonical_perm(h)) == canon
            assert isomorphic(g, h)


def test_non_isomorphic_pairs():
    assert not isomorphic(cycle_graph(6),
                          disjoint_union(cycle_graph(3), cycle_graph(3)))
    k33 = Graph(6, [(i, j + 3) for i in range(3) for j in range(3)])
    prism = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                      (0, 3), (1, 4), (2, 5)])
    assert not isomorphic(k33, prism)


def test_aut_orders_frozen():
    assert aut_order(path_graph(4)) == 2
    assert aut_order(cycle_graph(5)) == 10
    assert aut_order(cycle_graph(6)) == 12
    k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert aut_order(k4) == 24
    assert aut_order(petersen()) == 120
    k33 = Graph(6, [(i, j + 3) for i in range(3) for j in range(3)])
    assert aut_order(k33) == 72
    assert aut_order(star_graph(5)) == 120
    cube = Graph(8, [(a, a ^ b) for a in range(8) for b in (1, 2, 4)
                     if a < (a ^ b)])
    assert aut_order(cube) == 48


def test_aut_disconnected():
    g = disjoint_union(cycle_graph(3), cycle_graph(3))
    assert aut_order(g) == 72
    assert aut_order(Graph(3)) == 6
    eight = disjoint_union(*[cycle_graph(3)] * 8)
    assert aut_order(eight) == 6 ** 8 * 40320
    mixed = disjoint_union(cycle_graph(3), cycle_graph(4))
    assert aut_order(mixed) == 6 * 8


def test_aut_brute_force():
    rng = random.Random(23)
    for trial in range(30):
        n = rng.randrange(4, 8)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.45]
        g = Graph(n, edges)
        brute = 0
        for perm in permutations(range(n)):
            if g.relabel(perm) == g:
                brute += 1
        assert aut_order(g) == brute, (n, edges)
        for gen in aut_generators(g):
            assert g.relabel(gen) == g


def test_orbits():
    assert orbits(cycle_graph(6)) == [[0, 1, 2, 3, 4, 5]]
    assert orbits(path_graph(3)) == [[0, 2], [1]]
    st = star_graph(4)
    assert orbits(st) == [[0], [1, 2, 3, 4]]


def test_colored_canonical():
    p3 = path_graph(3)
    assert aut_order(p3, colors=(0, 1, 0)) == 2
    assert aut_order(p3, colors=(0, 1, 2)) == 1
    st = star_graph(4)
    assert aut_order(st, colors=(0, 1, 1, 2, 2)) == 4
    c4 = cycle_graph(4)
    assert not isomorphic(c4, c4, colors1=(0, 1, 0, 1), colors2=(0, 0, 1, 1))
    assert isomorphic(c4, c4, colors1=(0, 1, 0, 1), colors2=(1, 0, 1, 0))


def test_colored_orbit_refinement():
    g = disjoint_union(cycle_graph(3), cycle_graph(3))
    # distinct colors on one triangle stop the component swap
    assert aut_order(g, colors=(0, 0, 0, 0, 0, 1)) == 6 * 2
    assert aut_order(g, colors=(0, 0, 0, 0, 0, 0)) == 72
