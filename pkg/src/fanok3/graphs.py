"""Intersection graphs of line configurations.

Vertices are smooth rational curves of self-intersection -2; an edge
means intersection number 1.  Adjacency is stored as one bitmask per
vertex, so neighborhood algebra is integer arithmetic.

Beyond basic structure the module recognises ADE and affine ADE
components, computes the multiplicity vector of an affine component
(the integer kernel of its intersection Gram matrix), and provides
canonical labels and automorphism groups via individualization and
refinement with orbit pruning.  Disconnected graphs are canonicalised
componentwise; their automorphism groups are assembled from component
groups and swaps of isomorphic components, never by a monolithic
search.
"""

from math import prod

from .lattice import Lattice

__all__ = [
    "Graph",
    "GraphError",
    "read_graph",
    "write_graph",
    "to_graph6",
    "from_graph6",
    "disjoint_union",
    "component_type",
    "component_types",
    "classify",
    "intersection_gram",
    "config_lattice",
    "marks",
    "affine_degree",
    "degree_set",
    "dynkin_graph",
    "affine_graph",
    "cycle_graph",
    "path_graph",
    "star_graph",
    "find_induced_cycle",
    "induced_subgraph_iso",
    "minimal_fiber",
    "canonical_certificate",
    "canonical_perm",
    "aut_generators",
    "aut_order",
    "orbits",
    "isomorphic",
]


class GraphError(ValueError):
    pass


class Graph:
    """Simple undirected graph on vertices 0..n-1, immutable."""

    __slots__ = ("n", "adj")

    def __init__(self, n, edges=(), adj=None):
        if n < 0:
            raise GraphError("negative vertex count")
        if adj is not None:
            adj = tuple(int(a) for a in adj)
            if len(adj) != n:
                raise GraphError("adjacency length mismatch")
            for v, a in enumerate(adj):
                if a >> n:
                    raise GraphError("edge to nonexistent vertex")
                if (a >> v) & 1:
                    raise GraphError("loop at vertex %d" % v)
            for v in range(n):
                for u in _bits(adj[v]):
                    if not (adj[u] >> v) & 1:
                        raise GraphError("asymmetric adjacency")
            object.__setattr__(self, "n", n)
            object.__setattr__(self, "adj", adj)
            return
        masks = [0] * n
        for (u, v) in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError("edge (%d, %d) out of range" % (u, v))
            if u == v:
                raise GraphError("loop at vertex %d" % u)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(masks))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self):
        return hash(("graph", self.adj))

    def __repr__(self):
        return "Graph(%d, %r)" % (self.n, self.edges())

    def edges(self):
        out = []
        for v in range(self.n):
            m = self.adj[v] >> (v + 1)
            u = v + 1
            while m:
                if m & 1:
                    out.append((v, u))
                m >>= 1
                u += 1
        return out

    def edge_count(self):
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, v):
        return self.adj[v].bit_count()

    def degrees(self):
        return tuple(a.bit_count() for a in self.adj)

    def neighbors(self, v):
        return list(_bits(self.adj[v]))

    def has_edge(self, u, v):
        return bool((self.adj[u] >> v) & 1)

    def with_vertex(self, neighbors):
        """New graph with one extra vertex joined to `neighbors`."""
        n = self.n
        mask = 0
        adj = list(self.adj)
        for u in neighbors:
            if not 0 <= u < n:
                raise GraphError("neighbor out of range")
            mask |= 1 << u
            adj[u] |= 1 << n
        adj.append(mask)
        return Graph(n + 1, adj=adj)

    def induced(self, verts):
        verts = list(verts)
        pos = {v: i for i, v in enumerate(verts)}
        if len(pos) != len(verts):
            raise GraphError("repeated vertex")
        adj = [0] * len(verts)
        for i, v in enumerate(verts):
            for u in _bits(self.adj[v]):
                j = pos.get(u)
                if j is not None:
                    adj[i] |= 1 << j
        return Graph(len(verts), adj=adj)

    def relabel(self, perm):
        """perm[i] is the new label of vertex i."""
        n = self.n
        adj = [0] * n
        for v in range(n):
            m = 0
            for u in _bits(self.adj[v]):
                m |= 1 << perm[u]
            adj[perm[v]] = m
        return Graph(n, adj=adj)

    def components(self):
        """Vertex lists of connected components, each sorted, in order
        of smallest vertex."""
        n = self.n
        seen = 0
        out = []
        for s in range(n):
            if (seen >> s) & 1:
                continue
            comp = 1 << s
            frontier = 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            out.append(list(_bits(comp)))
        return out

    def is_connected(self):
        return self.n <= 1 or len(self.components()) == 1

    def girth(self):
        """Length of a shortest cycle, or None for a forest."""
        best = None
        n = self.n
        for s in range(n):
            dist = {s: 0}
            parent = {s: -1}
            frontier = [s]
            while frontier:
                nxt = []
                for v in frontier:
                    for u in _bits(self.adj[v]):
                        if u not in dist:
                            dist[u] = dist[v] + 1
                            parent[u] = v
                            nxt.append(u)
                        elif u != parent[v]:
                            cyc = dist[u] + dist[v] + 1
                            if best is None or cyc < best:
                                best = cyc
                frontier = nxt
                if best is not None and frontier and 2 * dist[frontier[0]] >= best:
                    break
        return best

    def triangle_free(self):
        for v in range(self.n):
            for u in _bits(self.adj[v]):
                if u > v and self.adj[v] & self.adj[u]:
                    return False
        return True

    def biquadrangle_free(self):
        """No two vertices with three or more common neighbors."""
        for v in range(self.n):
            for u in range(v + 1, self.n):
                if (self.adj[v] & self.adj[u]).bit_count() >= 3:
                    return False
        return True

    def common_neighbors(self, u, v):
        return (self.adj[u] & self.adj[v]).bit_count()


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def disjoint_union(*graphs):
    n = 0
    adj = []
    for g in graphs:
        adj.extend(a << n for a in g.adj)
        n += g.n
    return Graph(n, adj=adj)


# ---------------------------------------------------------------------------
# io


def write_graph(g):
    lines = [str(g.n)]
    for v in range(g.n):
        lines.append("%d: %s" % (v, " ".join(str(u) for u in g.neighbors(v))))
    return "\n".join(lines) + "\n"


def read_graph(text):
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise GraphError("empty graph text")
    try:
        n = int(rows[0])
    except ValueError:
        raise GraphError("first line must be the vertex count") from None
    edges = set()
    for line in rows[1:]:
        if ":" not in line:
            raise GraphError("expected 'vertex: neighbors' line, got %r" % line)
        head, tail = line.split(":", 1)
        v = int(head)
        for tok in tail.split():
            u = int(tok)
            if u == v:
                raise GraphError("loop at vertex %d" % v)
            edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


def to_graph6(g):
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    else:
        raise GraphError("graph too large for graph6")
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    chunks = []
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        chunks.append(chr(val + 63))
    return head + "".join(chunks)


def from_graph6(s):
    s = s.strip()
    if not s:
        raise GraphError("empty graph6 string")
    if s[0] == chr(126):
        if len(s) < 4:
            raise GraphError("truncated graph6 header")
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n < 0:
        raise GraphError("bad graph6 header")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError("graph6 body length %d, expected %d" % (len(body), need))
    bits = []
    for ch in body:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise GraphError("bad graph6 character %r" % ch)
        bits.extend((val >> s6) & 1 for s6 in (5, 4, 3, 2, 1, 0))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# ADE and affine ADE recognition


def component_type(g, verts):
    """Type of a connected component, or None.

    Returns ('A', p), ('D', q), ('E', k) for finite Dynkin shapes and
    ('tA', p), ('tD', q), ('tE', k) for the affine extensions.
    """
    verts = list(verts)
    k = len(verts)
    mask = 0
    for v in verts:
        mask |= 1 << v
    deg = {v: (g.adj[v] & mask).bit_count() for v in verts}
    edges = sum(deg.values()) // 2
    if k == 1:
        return ("A", 1)
    maxdeg = max(deg.values())
    if maxdeg > 3:
        if k == 5 and sorted(deg.values()) == [1, 1, 1, 1, 4]:
            return ("tD", 4)
        return None
    if edges == k and maxdeg == 2:
        return ("tA", k - 1)
    if edges != k - 1:
        return None
    branch = [v for v in verts if deg[v] == 3]
    if not branch:
        return ("A", k)
    if len(branch) == 1:
        b = branch[0]
        legs = sorted(_leg_length(g, mask, deg, b, u) for u in _bits(g.adj[b] & mask))
        if legs[0] == 1 and legs[1] == 1:
            return ("D", k)
        if legs == [1, 2, 2]:
            return ("E", 6)
        if legs == [1, 2, 3]:
            return ("E", 7)
        if legs == [1, 2, 4]:
            return ("E", 8)
        if legs == [2, 2, 2]:
            return ("tE", 6)
        if legs == [1, 3, 3]:
            return ("tE", 7)
        if legs == [1, 2, 5]:
            return ("tE", 8)
        return None
    if len(branch) == 2:
        leaves = [v for v in verts if deg[v] == 1]
        if len(leaves) != 4:
            return None
        for b in branch:
            if (g.adj[b] & mask & _mask_of(leaves)).bit_count() != 2:
                return None
        return ("tD", k - 1)
    return None


def _leg_length(g, mask, deg, b, u):
    """Length of the path leaving branch vertex b through u."""
    length = 1
    prev, cur = b, u
    while deg[cur] == 2:
        nxt = g.adj[cur] & mask & ~(1 << prev)
        prev, cur = cur, nxt.bit_length() - 1
        length += 1
    return length


def _mask_of(verts):
    m = 0
    for v in verts:
        m |= 1 << v
    return m


def component_types(g):
    """Pairs (type, vertex list) for every component; type may be None."""
    return [(component_type(g, comp), comp) for comp in g.components()]


def intersection_gram(g):
    """Gram matrix rows of the configuration: -2 diagonal, adjacency 1."""
    return [[-2 if i == j else (1 if g.has_edge(i, j) else 0)
             for j in range(g.n)] for i in range(g.n)]


def config_lattice(g):
    return Lattice(intersection_gram(g))


def classify(g):
    """'elliptic' (negative definite), 'parabolic' (semidefinite with
    kernel), 'hyperbolic' (one positive square), or 'overpositive'."""
    if g.n == 0:
        return "elliptic"
    pos, _neg, zero = config_lattice(g).signature()
    if pos == 0:
        return "parabolic" if zero else "elliptic"
    if pos == 1:
        return "hyperbolic"
    return "overpositive"


def marks(g, verts):
    """Multiplicity of each vertex of an affine component: the positive
    primitive kernel vector of its intersection Gram matrix."""
    verts = list(verts)
    sub = g.induced(verts)
    ker = config_lattice(sub).kernel_basis()
    if len(ker) != 1:
        raise GraphError("component is not affine")
    vec = ker[0]
    if all(x <= 0 for x in vec):
        vec = tuple(-x for x in vec)
    if any(x <= 0 for x in vec):
        raise GraphError("component is not affine")
    return {v: vec[i] for i, v in enumerate(verts)}


_AFFINE_DEGREE_E = {6: 12, 7: 18, 8: 30}


def affine_degree(tag):
    """Sum of multiplicities of an affine type: the degree of a fiber
    all of whose components are lines."""
    kind, idx = tag
    if kind == "tA":
        return idx + 1
    if kind == "tD":
        return 2 * idx - 2
    if kind == "tE":
        return _AFFINE_DEGREE_E[idx]
    raise GraphError("not an affine type: %r" % (tag,))


def degree_set(tag):
    """Pencil degrees an elliptic component of this type rules out."""
    kind, idx = tag
    if kind == "A":
        return frozenset(range(1, idx + 1))
    if kind == "D":
        return frozenset(range(1, 2 * idx - 2))
    if kind == "E":
        if idx == 6:
            return frozenset(range(1, 12))
        if idx == 7:
            return frozenset(range(1, 14)) | {17}
        if idx == 8:
            return frozenset(range(1, 17)) | {23}
    raise GraphError("not a finite ADE type: %r" % (tag,))


# ---------------------------------------------------------------------------
# standard diagram builders


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(k):
    """K_{1,k}: center 0 joined to k leaves."""
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def dynkin_graph(kind, idx):
    if kind == "A" and idx >= 1:
        return path_graph(idx)
    if kind == "D" and idx >= 4:
        g = path_graph(idx - 1)
        return g.with_vertex([idx - 3])
    if kind == "E" and idx in (6, 7, 8):
        g = path_graph(idx - 1)
        return g.with_vertex([2])
    raise GraphError("bad Dynkin type %s%d" % (kind, idx))


def affine_graph(kind, idx):
    if kind == "tA" and idx >= 2:
        return cycle_graph(idx + 1)
    if kind == "tD" and idx >= 4:
        if idx == 4:
            return star_graph(4)
        g = path_graph(idx - 3)
        g = g.with_vertex([0])
        g = g.with_vertex([0])
        g = g.with_vertex([idx - 4])
        g = g.with_vertex([idx - 4])
        return g
    if kind == "tE" and idx in (6, 7, 8):
        g = dynkin_graph("E", idx)
        if idx == 6:
            return g.with_vertex([idx - 1])
        if idx == 7:
            return g.with_vertex([0])
        return g.with_vertex([idx - 2])
    raise GraphError("bad affine type %s%d" % (kind, idx))


# ---------------------------------------------------------------------------
# induced subgraph searches


def find_induced_cycle(g, length):
    """Vertices of an induced cycle of exact length, or None."""
    if length < 3:
        raise GraphError("cycle length must be at least 3")
    n = g.n
    for s in range(n):
        path = [s]
        used = 1 << s
        found = _cycle_extend(g, s, path, used, length)
        if found is not None:
            return tuple(found)
    return None


def _cycle_extend(g, s, path, used, length):
    last = path[-1]
    if len(path) == length:
        return list(path) if g.has_edge(last, s) else None
    interior = used & ~(1 << s) & ~(1 << last)
    for v in _bits(g.adj[last]):
        if v <= s or (used >> v) & 1:
            continue
        # no chords: v may touch only the path end (and s when closing)
        if g.adj[v] & interior:
            continue
        if len(path) + 1 < length and g.has_edge(v, s) and len(path) >= 2:
            continue
        path.append(v)
        got = _cycle_extend(g, s, path, used | (1 << v), length)
        if got is not None:
            return got
        path.pop()
    return None


def induced_subgraph_iso(pattern, g):
    """Map pattern vertices to g vertices inducing the same graph.

    Returns a tuple img with img[p] the host of pattern vertex p, or
    None.  The first match in lexicographic search order is returned.
    """
    np, ng = pattern.n, g.n
    if np > ng:
        return None
    order = _bfs_order(pattern)
    host_deg = g.degrees()
    pat_deg = pattern.degrees()
    img = [-1] * np
    used = 0

    def place(i):
        nonlocal used
        if i == np:
            return True
        p = order[i]
        for v in range(ng):
            if (used >> v) & 1 or host_deg[v] < pat_deg[p]:
                continue
            ok = True
            for q in order[:i]:
                if pattern.has_edge(p, q) != g.has_edge(v, img[q]):
                    ok = False
                    break
            if ok:
                img[p] = v
                used |= 1 << v
                if place(i + 1):
                    return True
                used &= ~(1 << v)
                img[p] = -1
        return False

    return tuple(img) if place(0) else None


def _bfs_order(g):
    order = []
    seen = 0
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        queue = [s]
        seen |= 1 << s
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in _bits(g.adj[v]):
                if not (seen >> u) & 1:
                    seen |= 1 << u
                    queue.append(u)
    return order


def minimal_fiber(g):
    """Smallest induced affine subdiagram, scanning by Milnor number
    with cycles preferred over forks, forks over the E shapes.

    Returns (tag, vertices) or None.
    """
    n = g.n
    for mu in range(2, n + 1):
        if mu + 1 <= n:
            cyc = find_induced_cycle(g, mu + 1)
            if cyc is not None:
                return (("tA", mu), cyc)
        if 4 <= mu <= n - 1:
            hit = induced_subgraph_iso(affine_graph("tD", mu), g)
            if hit is not None:
                return (("tD", mu), hit)
        if mu in (6, 7, 8) and mu + 1 <= n:
            hit = induced_subgraph_iso(affine_graph("tE", mu), g)
            if hit is not None:
                return (("tE", mu), hit)
    return None


# ---------------------------------------------------------------------------
# canonical labels and automorphisms


def _refine(adj, cells):
    cells = [list(c) for c in cells]
    while True:
        masks = [_mask_of(c) for c in cells]
        new = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {}
            for v in cell:
                key = tuple((adj[v] & m).bit_count() for m in masks)
                sig.setdefault(key, []).append(v)
            if len(sig) == 1:
                new.append(cell)
            else:
                split = True
                for key in sorted(sig):
                    new.append(sig[key])
        cells = new
        if not split:
            return cells


def _cert_of(adj, n, colors, perm):
    rows = [0] * n
    for v in range(n):
        m = 0
        for u in _bits(adj[v]):
            m |= 1 << perm[u]
        rows[perm[v]] = m
    inv = [0] * n
    for v in range(n):
        inv[perm[v]] = v
    return (tuple(colors[inv[p]] for p in range(n)), tuple(rows))


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(p)))


def _inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _orbit(v, gens):
    orb = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for gperm in gens:
            y = gperm[x]
            if y not in orb:
                orb.add(y)
                frontier.append(y)
    return orb


def _canon_connected(adj, n, colors):
    """Returns (cert, perm, generators) for one connected graph."""
    if n == 0:
        return ((), ()), (), []
    by_color = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)
    initial = [by_color[c] for c in sorted(by_color)]
    best = [None, None]   # cert, perm
    gens = []
    ident = tuple(range(n))

    def is_aut(sigma):
        if any(colors[sigma[i]] != colors[i] for i in range(n)):
            return False
        for v in range(n):
            m = 0
            for u in _bits(adj[v]):
                m |= 1 << sigma[u]
            if m != adj[sigma[v]]:
                return False
        return True

    def recurse(cells, fixed):
        cells = _refine(adj, cells)
        target = None
        for i, cell in enumerate(cells):
            if len(cell) > 1 and (target is None
                                  or len(cell) < len(cells[target])):
                target = i
        if target is None:
            perm = [0] * n
            for pos, cell in enumerate(cells):
                perm[cell[0]] = pos
            cert = _cert_of(adj, n, colors, perm)
            if best[0] is None or cert > best[0]:
                best[0], best[1] = cert, tuple(perm)
            elif cert == best[0]:
                inv_best = _inverse(best[1])
                sigma = tuple(inv_best[perm[i]] for i in range(n))
                if sigma != ident and sigma not in gens and is_aut(sigma):
                    gens.append(sigma)
            return
        cell = cells[target]
        done = set()
        for v in cell:
            if v in done:
                continue
            sub = ([c for c in cells[:target]]
                   + [[v], [u for u in cell if u != v]]
                   + [c for c in cells[target + 1:]])
            recurse(sub, fixed + [v])
            usable = [gp for gp in gens if all(gp[x] == x for x in fixed)]
            done |= _orbit(v, usable)
    recurse(initial, [])
    return best[0], best[1], gens


def _group_order(gens, n):
    """Order of the permutation group generated by gens."""
    ident = tuple(range(n))
    gens = sorted(set(tuple(g) for g in gens) - {ident})
    if not gens:
        return 1
    b = next(x for x in range(n) if any(g[x] != x for g in gens))
    trans = {b: ident}
    frontier = [b]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = _compose(g, trans[x])
                frontier.append(y)
    schreier = set()
    for x, tx in trans.items():
        for g in gens:
            s = _compose(_inverse(trans[g[x]]), _compose(g, tx))
            if s != ident:
                schreier.add(s)
    return len(trans) * _group_order(schreier, n)


def _canon_full(g, colors):
    """Componentwise canonicalisation.

    Returns (cert, perm, generators, order).
    """
    n = g.n
    if colors is None:
        colors = (0,) * n
    else:
        colors = tuple(colors)
        if len(colors) != n:
            raise GraphError("color vector length mismatch")
    comps = g.components()
    if len(comps) <= 1:
        cert, perm, gens = _canon_connected(g.adj, n, colors)
        order = _group_order(gens, n) if n else 1
        return ("c", n, cert), perm, gens, order
    parts = []
    for comp in comps:
        sub = g.induced(comp)
        subcolors = tuple(colors[v] for v in comp)
        cert, perm, gens = _canon_connected(sub.adj, sub.n, subcolors)
        parts.append({"verts": comp, "cert": cert, "perm": perm, "gens": gens})
    parts.sort(key=lambda p: (p["cert"], p["verts"][0]))
    full_perm = [0] * n
    offset = 0
    for part in parts:
        for i, v in enumerate(part["verts"]):
            full_perm[v] = offset + part["perm"][i]
        offset += len(part["verts"])
    full_gens = []
    order = 1
    for part in parts:
        order *= _group_order(part["gens"], len(part["verts"]))
        for gp in part["gens"]:
            sigma = list(range(n))
            for i, v in enumerate(part["verts"]):
                sigma[v] = part["verts"][gp[i]]
            full_gens.append(tuple(sigma))
    run = 1
    for i in range(1, len(parts) + 1):
        if i < len(parts) and parts[i]["cert"] == parts[i - 1]["cert"]:
            run += 1
            sigma = list(range(n))
            a, b = parts[i - 1], parts[i]
            inv_b = _inverse(b["perm"])
            inv_a = _inverse(a["perm"])
            for j, v in enumerate(a["verts"]):
                sigma[v] = b["verts"][inv_b[a["perm"][j]]]
            for j, v in enumerate(b["verts"]):
                sigma[v] = a["verts"][inv_a[b["perm"][j]]]
            full_gens.append(tuple(sigma))
        else:
            order *= _factorial(run)
            run = 1
    cert = ("d", n, tuple(p["cert"] for p in parts))
    return cert, tuple(full_perm), full_gens, order


def _factorial(k):
    return prod(range(2, k + 1)) if k > 1 else 1


_CANON_CACHE = {}


def _canon_cached(g, colors):
    key = (g.adj, None if colors is None else tuple(colors))
    hit = _CANON_CACHE.get(key)
    if hit is None:
        hit = _canon_full(g, colors)
        if len(_CANON_CACHE) > 8192:
            _CANON_CACHE.clear()
        _CANON_CACHE[key] = hit
    return hit


def canonical_certificate(g, colors=None):
    return _canon_cached(g, colors)[0]


def canonical_perm(g, colors=None):
    """perm with perm[v] the canonical position of vertex v."""
    return _canon_cached(g, colors)[1]


def aut_generators(g, colors=None):
    return list(_canon_cached(g, colors)[2])


def aut_order(g, colors=None):
    return _canon_cached(g, colors)[3]


def orbits(g, colors=None):
    gens = _canon_cached(g, colors)[2]
    seen = set()
    out = []
    for v in range(g.n):
        if v in seen:
            continue
        orb = sorted(_orbit(v, gens))
        seen.update(orb)
        out.append(orb)
    return out


def isomorphic(g1, g2, colors1=None, colors2=None):
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return False
    return canonical_certificate(g1, colors1) == canonical_certificate(g2, colors2)
