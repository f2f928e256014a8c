"""Discriminant forms, even overlattices, and primitive K3 embeddings.

The discriminant group of a nondegenerate even lattice L is the finite
abelian group L*/L carrying a quadratic form q with values in Q/2Z and
the associated pairing b with values in Q/Z.  Even overlattices of L
correspond one-to-one to isotropic subgroups of (L*/L, q); that
correspondence drives all finite-index extension machinery here.

Whether a hyperbolic lattice S embeds primitively into the K3 lattice
(even unimodular, signature (3,19)) is decided in tiers:

  1. impossible when rank > 20, or the negative index exceeds 19, or
     rank + length(discr) > 22 (the orthogonal complement would need a
     discriminant group longer than its rank);
  2. guaranteed when rank <= 19 and rank + length(discr) <= 21 (an
     indefinite complement of signature (2, 20-rank) with the opposite
     discriminant form exists whenever no prime is tight, and the
     2-adic parity condition is inherited from S itself);
  3. decided exactly otherwise.  At rank 20 the complement is positive
     definite binary and the reduced-form scan is exhaustive; below
     rank 20 only rank + length = 22 remains, where the complement is
     rank-minimal at some prime and `even_lattice_exists` settles the
     question by determinant classes.  On a yes a block-sum witness is
     attached when a bounded search finds one.

Every verdict is exact; the `unknown` value survives in EmbedVerdict
for API stability but is never produced.
"""

from collections import Counter
from fractions import Fraction
from itertools import product
from math import gcd, isqrt, lcm
from typing import NamedTuple

from .lattice import (
    Lattice,
    LatticeError,
    direct_sum,
    hyperbolic_plane,
    root_lattice,
    scaled,
    smith_normal_form,
    _frac_inverse,
    _int_inverse,
)

__all__ = [
    "DiscriminantForm",
    "discriminant_form",
    "isotropic_subgroups",
    "even_overlattices",
    "Extension",
    "forms_isomorphic",
    "rank2_genus_candidates",
    "even_lattice_exists",
    "embeds_in_k3",
    "EmbedVerdict",
    "find_complement",
]

GROUP_CAP = 10 ** 4


class DiscriminantForm:
    """Finite quadratic form on a product of cyclic groups.

    `orders` are the invariant factors (> 1, each dividing the next),
    `q[i]` is q(g_i) mod 2Z and `b[i][j]` the pairing mod Z on the
    generators g_i.  `lifts` optionally stores rational coordinate rows
    of the generators in the basis of the source lattice.
    """

    __slots__ = ("orders", "q", "b", "lifts")

    def __init__(self, orders, q, b, lifts=None):
        self.orders = tuple(int(d) for d in orders)
        self.q = tuple(Fraction(x) % 2 for x in q)
        self.b = tuple(tuple(Fraction(x) % 1 for x in row) for row in b)
        self.lifts = lifts
        for d in self.orders:
            if d < 2:
                raise LatticeError("invariant factors must exceed 1")
        for a, c in zip(self.orders, self.orders[1:]):
            if c % a != 0:
                raise LatticeError("invariant factors must form a chain")

    def group_order(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    def length(self):
        """Minimal number of generators."""
        return len(self.orders)

    def minus(self):
        return DiscriminantForm(self.orders,
                                [-x for x in self.q],
                                [[-x for x in row] for row in self.b])

    def elements(self):
        return product(*[range(d) for d in self.orders])

    def q_of(self, c):
        total = Fraction(0)
        for i, ci in enumerate(c):
            if ci:
                total += ci * ci * self.q[i]
                for j in range(i + 1, len(c)):
                    if c[j]:
                        total += 2 * ci * c[j] * self.b[i][j]
        return total % 2

    def b_of(self, c1, c2):
        total = Fraction(0)
        for i, x in enumerate(c1):
            if x:
                for j, y in enumerate(c2):
                    if y:
                        # on the diagonal b(g,g) = q(g) mod 1
                        bij = self.b[i][j] if i != j else (self.q[i] % 1)
                        total += x * y * bij
        return total % 1

    def element_order(self, c):
        out = 1
        for d, ci in zip(self.orders, c):
            out = lcm(out, d // gcd(d, ci))
        return out

    def add(self, c1, c2):
        return tuple((x + y) % d for x, y, d in zip(c1, c2, self.orders))

    def key(self):
        return (self.orders, self.q, self.b)


def discriminant_form(lat):
    """The discriminant form of a nondegenerate even lattice."""
    if lat.det() == 0:
        raise LatticeError("degenerate lattice has no discriminant form")
    n = lat.rank
    d, _u, v = smith_normal_form(lat.gram)
    v_inv = _int_inverse(v)
    g_inv = lat.gram_inverse()
    gens = [i for i in range(n) if d[i][i] > 1]
    orders = [d[i][i] for i in gens]
    lifts = []
    for i in gens:
        z = v_inv[i]
        x = tuple(sum(Fraction(z[k]) * g_inv[k][j] for k in range(n)) for j in range(n))
        lifts.append(x)
    q = [lat.dot_q(x, x) % 2 for x in lifts]
    b = [[lat.dot_q(x, y) % 1 for y in lifts] for x in lifts]
    return DiscriminantForm(orders, q, b, lifts=tuple(lifts))


def isotropic_subgroups(df, cap=GROUP_CAP):
    """All subgroups on which q vanishes identically, smallest first.

    Subgroups are returned as sorted tuples of element tuples.  Found by
    breadth-first cyclic extension, deduplicating by element set.
    """
    if df.group_order() > cap:
        raise LatticeError("discriminant group of order %d exceeds cap %d"
                           % (df.group_order(), cap))
    zero = tuple(0 for _ in df.orders)
    iso = [c for c in df.elements() if df.q_of(c) == 0]
    seen = {frozenset([zero])}
    queue = [frozenset([zero])]
    out = []
    while queue:
        grp = queue.pop()
        out.append(grp)
        for x in iso:
            if x in grp:
                continue
            if any(df.b_of(x, h) != 0 for h in grp):
                continue
            new = set(grp)
            cur = x
            while cur not in new:
                for h in grp:
                    new.add(df.add(h, cur))
                cur = df.add(cur, x)
            fz = frozenset(new)
            if fz not in seen:
                seen.add(fz)
                queue.append(fz)
    return sorted((tuple(sorted(g)) for g in out), key=lambda g: (len(g), g))


class Extension(NamedTuple):
    """A finite-index even overlattice of a source lattice.

    `to_parent` holds rational rows: the overlattice basis written in the
    source basis.  `from_parent` holds integer rows embedding the source
    basis into the overlattice.  `index` is the subgroup order.
    """

    lattice: Lattice
    to_parent: tuple
    from_parent: tuple
    index: int


def even_overlattices(lat, cap=GROUP_CAP):
    """All even overlattices of finite index, one per isotropic subgroup.

    The trivial extension comes first; order is deterministic.
    """
    df = discriminant_form(lat)
    out = []
    for grp in isotropic_subgroups(df, cap=cap):
        out.append(extension_from_subgroup(lat, df, grp))
    return out


def extension_from_subgroup(lat, df, grp):
    """The even overlattice attached to one isotropic subgroup of the
    discriminant form.  `grp` is an iterable of class tuples; a
    generating set suffices, the full element list is not needed."""
    n = lat.rank
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in grp:
        if any(c):
            rows.append([sum(Fraction(ci) * df.lifts[i][j] for i, ci in enumerate(c))
                         for j in range(n)])
    basis = _hnf_rational(rows, n)
    gram = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            val = lat.dot_q(basis[i], basis[j])
            if val.denominator != 1:
                raise LatticeError("overlattice is not integral")
            gram[i][j] = int(val)
    over = Lattice(gram)
    b_inv = _frac_inverse(basis)
    from_parent = []
    for i in range(n):
        row = tuple(b_inv[i][j] for j in range(n))
        if any(x.denominator != 1 for x in row):
            raise LatticeError("source lattice does not sit inside overlattice")
        from_parent.append(tuple(int(x) for x in row))
    index = isqrt(abs(lat.det() // over.det()))
    if over.det() * index * index != lat.det():
        raise LatticeError("index does not match determinant drop")
    return Extension(over, tuple(tuple(r) for r in basis),
                     tuple(from_parent), index)


def _hnf_rational(rows, n):
    """Basis of the lattice generated by rational rows, as rational rows."""
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    mat = [[int(Fraction(x) * den) for x in row] for row in rows]
    basis = _hnf_int(mat, n)
    return [tuple(Fraction(x, den) for x in row) for row in basis]


def _hnf_int(mat, n):
    """Row-style Hermite form of an integer matrix of full column rank."""
    rows = [list(r) for r in mat if any(r)]
    out = []
    for col in range(n):
        piv = None
        for r in rows:
            if r[col] != 0:
                piv = r
                break
        if piv is None:
            raise LatticeError("generators do not have full rank")
        rows.remove(piv)
        changed = True
        while changed:
            changed = False
            for r in rows:
                if r[col] != 0:
                    a, b = piv[col], r[col]
                    if abs(b) < abs(a):
                        piv, r[:] = r[:], piv
                        a, b = piv[col], r[col]
                    q = b // a
                    for k in range(n):
                        r[k] -= q * piv[k]
                    if r[col] != 0:
                        changed = True
        rows = [r for r in rows if any(r)]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
    # reduce above-pivot entries for a canonical result
    for i in range(n - 1, -1, -1):
        for j in range(i):
            a = out[j][i]
            p = out[i][i]
            q = a // p
            if q:
                for k in range(n):
                    out[j][k] -= q * out[i][k]
    return out


# ---------------------------------------------------------------------------
# isotropic subgroups under class exclusions
#
# Large discriminant groups are never enumerated blindly.  A set of
# excluded classes (cosets known to carry forbidden vectors) prunes any
# subgroup meeting it, and the two engines below walk only what
# survives: a bitmask sweep over the 2-torsion subspace for subgroups of
# exponent two, and generator chains for everything else.


class TorsionTwoSpace:
    """The F2-space of discriminant classes of order dividing two.

    Each basis vector is half the corresponding even invariant factor;
    a subset mask denotes the sum of its bits.  `qt[m]` caches twice the
    q-value mod 4, so a mask is isotropic exactly when qt[m] == 0, and
    `good` additionally rules out excluded classes.
    """

    def __init__(self, df, excluded=()):
        self.df = df
        idx = [i for i, o in enumerate(df.orders) if o % 2 == 0]
        n = len(df.orders)
        self.gens = [tuple(df.orders[i] // 2 if j == i else 0 for j in range(n))
                     for i in idx]
        self.factor = idx
        r = len(idx)
        if r > 20:
            raise LatticeError("2-torsion rank %d too large to sweep" % r)
        self.dim = r
        q2 = [int(2 * df.q_of(g)) % 4 for g in self.gens]
        bpar = [0] * r
        for a in range(r):
            for c in range(a + 1, r):
                if df.b_of(self.gens[a], self.gens[c]) != 0:
                    bpar[a] |= 1 << c
                    bpar[c] |= 1 << a
        qt = [0] * (1 << r)
        for m in range(1, 1 << r):
            low = m & -m
            i = low.bit_length() - 1
            rest = m ^ low
            qt[m] = (qt[rest] + q2[i] + 2 * (rest & bpar[i]).bit_count()) % 4
        self.qt = qt
        blocked = set()
        for c in excluded:
            m = self.mask_of(c)
            if m is not None:
                blocked.add(m)
        self.good = bytearray(1 << r)
        for m in range(1, 1 << r):
            if qt[m] == 0 and m not in blocked:
                self.good[m] = 1

    def element(self, mask):
        """Class tuple of a mask."""
        df = self.df
        out = [0] * len(df.orders)
        m = mask
        while m:
            low = m & -m
            i = self.factor[low.bit_length() - 1]
            out[i] = df.orders[i] // 2
            m ^= low
        return tuple(out)

    def mask_of(self, c):
        """Mask of a class of order dividing two, else None."""
        m = 0
        pos = {f: b for b, f in enumerate(self.factor)}
        for i, (ci, o) in enumerate(zip(c, self.df.orders)):
            if ci == 0:
                continue
            if o % 2 or 2 * ci != o:
                return None
            m |= 1 << pos[i]
        return m

    def good_masks(self):
        return [m for m in range(1, 1 << self.dim) if self.good[m]]

    def _half_masks(self):
        # _half[b]: over all 2^dim bit positions, those with bit b clear;
        # used to permute a position set by XOR with a fixed mask.
        got = getattr(self, "_half", None)
        if got is None:
            size = 1 << self.dim
            got = []
            for b in range(self.dim):
                block = (1 << (1 << b)) - 1
                step = 1 << (b + 1)
                m = block
                while step < size:
                    m |= m << step
                    step <<= 1
                got.append(m)
            self._half = got
        return got

    def subspaces(self, dim, weight=None, budget=None):
        """Good isotropic subspaces of the given dimension, streamed as
        tuples of their nonzero element masks.

        Each subspace appears exactly once: basis vectors are taken in
        ascending order and every new vector must be minimal in its
        coset modulo the current span, which singles out the greedy
        basis chain of the subspace.

        With `weight` (nonnegative, indexed by mask) and `budget`,
        branches whose element-weight total already exceeds the budget
        are cut.  Totals only grow as elements accumulate, so no
        subspace within budget is lost.

        The candidate pool lives in one integer over the whole group:
        bit m says every sum of m with the span so far is good, so a
        basis step is one XOR-permutation and an AND instead of a scan.
        """
        if dim == 0:
            yield ()
            return
        pool = 0
        for m in range(1, 1 << self.dim):
            if self.good[m] and (weight is None or weight[m] <= budget):
                pool |= 1 << m
        half = self._half_masks()

        def xor_permute(val, x):
            while x:
                low = x & -x
                a = half[low.bit_length() - 1]
                x ^= low
                val = ((val & a) << low) | ((val >> low) & a)
            return val

        def rec(depth, elems, cand, floor, used):
            p = cand & -(1 << (floor + 1))
            while p:
                low = p & -p
                x = low.bit_length() - 1
                p ^= low
                ok = True
                tot = used if weight is None else used + weight[x]
                for e in elems:
                    v = x ^ e
                    if v < x:
                        ok = False
                        break
                    if weight is not None:
                        tot += weight[v]
                if not ok or (weight is not None and tot > budget):
                    continue
                grown = elems + [x] + [x ^ e for e in elems]
                if depth + 1 == dim:
                    yield tuple(grown)
                else:
                    yield from rec(depth + 1, grown,
                                   cand & xor_permute(cand, x), x, tot)

        yield from rec(0, [], pool, -1, 0)


def chain_subgroups(df, excluded=(), cap=300000):
    """Nontrivial isotropic subgroups avoiding the excluded classes.

    Walks ascending generator chains over all isotropic non-excluded
    elements, deduplicating by element set; handles any group shape.
    Yields frozensets of class tuples (zero included).  Raises when
    more than `cap` states appear.
    """
    zero = tuple(0 for _ in df.orders)
    excluded = frozenset(excluded)
    elems = sorted(c for c in df.elements()
                   if any(c) and df.q_of(c) == 0 and c not in excluded)
    root = frozenset([zero])
    seen = {root}
    stack = [(root, 0)]
    while stack:
        grp, start = stack.pop()
        for i in range(start, len(elems)):
            x = elems[i]
            if x in grp:
                continue
            if any(df.b_of(x, g) != 0 for g in grp):
                continue
            new = set(grp)
            cur = x
            while cur not in new:
                for g in grp:
                    new.add(df.add(g, cur))
                cur = df.add(cur, x)
            if not excluded.isdisjoint(new):
                continue
            fz = frozenset(new)
            if fz in seen:
                continue
            seen.add(fz)
            if len(seen) > cap:
                raise LatticeError("subgroup walk exceeded %d states" % cap)
            yield fz
            stack.append((fz, i + 1))


def subgroup_quotient_length(df, grp):
    """Number of invariant factors of (perp of H) / H for an isotropic
    subgroup H, computed from congruences; no overlattice is built.

    `grp` is an iterable of class tuples generating H (the zero class
    is ignored).
    """
    l = len(df.orders)
    e = df.orders[-1]
    gens = [c for c in grp if any(c)]
    units = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    if not gens:
        return l
    mat = [[int(e * df.b_of(g, u)) % e for u in units] for g in gens]
    d, _u, v = smith_normal_form(mat)
    rows = len(mat)
    mult = [1] * l
    for j in range(min(rows, l)):
        dj = d[j][j] if j < len(d) and j < len(d[j]) else 0
        mult[j] = e // gcd(dj, e)
    # basis of the perp preimage: columns of v scaled by mult
    perp = [[mult[j] * v[i][j] for i in range(l)] for j in range(l)]
    pinv = _frac_inverse(perp)
    hl = [list(g) for g in gens]
    for i in range(l):
        hl.append([df.orders[i] if j == i else 0 for j in range(l)])
    rel = []
    for hrow in hl:
        row = [sum(Fraction(hrow[k]) * pinv[k][j] for k in range(l))
               for j in range(l)]
        if any(x.denominator != 1 for x in row):
            raise LatticeError("subgroup does not lie in its perp")
        rel.append([int(x) for x in row])
    dd, _du, _dv = smith_normal_form(rel)
    count = 0
    for j in range(l):
        dj = dd[j][j] if j < len(dd) and j < len(dd[j]) else 0
        if dj == 0:
            raise LatticeError("quotient is infinite; subgroup data broken")
        if dj > 1:
            count += 1
    return count


def forms_isomorphic(df1, df2, cap=GROUP_CAP):
    """Whether two finite quadratic forms are isomorphic.

    Pre-screens by invariants, then backtracks over generator images.
    Elementary 2-groups go through a bitmask path whose pairing checks
    are single bit tests; everything else uses the generic rational
    path.  Groups larger than `cap` are rejected with an error.
    """
    if df1.orders != df2.orders:
        return False
    order = df1.group_order()
    if order > cap:
        raise LatticeError("group of order %d exceeds isomorphism cap %d"
                           % (order, cap))
    if order == 1:
        return True
    if all(o == 2 for o in df1.orders):
        return _f2_forms_isomorphic(df1, df2)
    elems2 = list(df2.elements())
    inv1 = sorted((df1.element_order(c), df1.q_of(c)) for c in df1.elements())
    inv2 = sorted((df2.element_order(c), df2.q_of(c)) for c in elems2)
    if inv1 != inv2:
        return False
    gens = list(range(len(df1.orders)))
    by_inv = {}
    for c in elems2:
        by_inv.setdefault((df2.element_order(c), df2.q_of(c)), []).append(c)
    images = []

    def backtrack(i):
        if i == len(gens):
            return _generates_all(df2, images)
        d = df1.orders[i]
        want = (d, df1.q[i] % 2)
        for c in by_inv.get(want, ()):
            ok = True
            for j in range(i):
                if df2.b_of(images[j], c) != df1.b[j][i] % 1:
                    ok = False
                    break
            if ok:
                images.append(c)
                if backtrack(i + 1):
                    return True
                images.pop()
        return False

    return backtrack(0)


def _generates_all(df, gens):
    zero = tuple(0 for _ in df.orders)
    seen = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = df.add(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return len(seen) == df.group_order()


def _f2_forms_isomorphic(df1, df2):
    # Both groups are (Z/2)^r, so elements pack into bitmasks and each
    # element's pairing row packs into one integer over the whole group.
    # Doubled q-values live in Z/4 and pairing bits in Z/2, which keeps
    # the backtracker on bit tests instead of rational arithmetic.
    r = len(df1.orders)
    n = 1 << r

    def tables(df):
        q2 = [int(df.q[i] * 2) % 4 for i in range(r)]
        bpar = []
        for i in range(r):
            m = 0
            for j in range(r):
                if df.b[i][j] % 1 != 0:
                    m |= 1 << j
            bpar.append(m)
        rows = []
        for i in range(r):
            row = 0
            for y in range(n):
                if (y & bpar[i]).bit_count() & 1:
                    row |= 1 << y
            rows.append(row)
        qt = [0] * n
        bm = [0] * n
        for m in range(1, n):
            low = m & -m
            i = low.bit_length() - 1
            rest = m ^ low
            qt[m] = (qt[rest] + q2[i] + 2 * (rest & bpar[i]).bit_count()) % 4
            bm[m] = bm[rest] ^ rows[i]
        return bpar, qt, bm

    def keys(qt, bm):
        # Per-element invariant: doubled q-value plus, for each q-level,
        # how many group elements pair trivially with the element.
        lv = [0, 0, 0, 0]
        for m in range(n):
            lv[qt[m]] |= 1 << m
        full = (1 << n) - 1
        out = []
        for m in range(n):
            z = ~bm[m] & full
            out.append((qt[m],
                        (z & lv[0]).bit_count(),
                        (z & lv[1]).bit_count(),
                        (z & lv[2]).bit_count(),
                        (z & lv[3]).bit_count()))
        return out

    bp1, qt1, bm1 = tables(df1)
    _, qt2, bm2 = tables(df2)
    k1 = keys(qt1, bm1)
    k2 = keys(qt2, bm2)
    if Counter(k1) != Counter(k2):
        return False
    buckets = {}
    for m in range(1, n):
        buckets.setdefault(k2[m], []).append(m)

    images = []
    span = {0}

    def backtrack(i):
        if i == r:
            # r independent images span the target, and matching q on
            # generators with matching pairing bits forces q everywhere.
            return True
        want = k1[1 << i]
        for c in buckets.get(want, ()):
            if c in span:
                continue
            ok = True
            for j in range(i):
                if ((bm2[images[j]] >> c) & 1) != ((bp1[i] >> j) & 1):
                    ok = False
                    break
            if not ok:
                continue
            images.append(c)
            added = [s ^ c for s in span]
            span.update(added)
            if backtrack(i + 1):
                return True
            images.pop()
            span.difference_update(added)
        return False

    return backtrack(0)


def rank2_genus_candidates(det, target=None):
    """Reduced positive even binary forms [a, b, c] of the given determinant.

    With 0 <= 2b <= a <= c every class appears exactly once, so the scan
    is exhaustive.  If `target` is given, keep only forms whose
    discriminant form is isomorphic to it.
    """
    if det <= 0:
        raise LatticeError("determinant must be positive")
    out = []
    a = 2
    while 3 * a * a <= 4 * det:
        for b in range(0, a // 2 + 1):
            num = det + b * b
            if num % a == 0:
                c = num // a
                if c >= a and c % 2 == 0:
                    out.append((a, b, c))
        a += 2
    if target is not None:
        kept = []
        for (a, b, c) in out:
            df = discriminant_form(Lattice([[a, b], [b, c]]))
            if forms_isomorphic(df, target):
                kept.append((a, b, c))
        out = kept
    return tuple(out)


# ---------------------------------------------------------------------------
# existence of an even lattice with prescribed signature and form
#
# For indefinite signatures the question is local: the signature must
# match the form's Gauss-sum signature mod 8, the rank must cover the
# group length with matching 2-adic parity, and at every prime p where
# the p-part needs as many generators as the whole lattice has rank the
# determinant's p-adic square class must be realizable by a rank-minimal
# p-adic block sum inducing the p-part of the form.


def _p_part(df, p):
    """Restriction of a finite quadratic form to its p-Sylow subgroup.

    Returns None when the group order is prime to p.
    """
    n = len(df.orders)
    gens, orders = [], []
    for i, o in enumerate(df.orders):
        pk = 1
        while o % p == 0:
            o //= p
            pk *= p
        if pk > 1:
            gens.append(tuple(o if j == i else 0 for j in range(n)))
            orders.append(pk)
    if not gens:
        return None
    q = [df.q_of(c) for c in gens]
    b = [[df.b_of(x, y) for y in gens] for x in gens]
    return DiscriminantForm(orders, q, b)


def _q_histogram(df):
    hist = {}
    for c in df.elements():
        v = df.q_of(c)
        hist[v] = hist.get(v, 0) + 1
    return hist


def _hist_add(h1, h2):
    out = {}
    for v1, c1 in h1.items():
        for v2, c2 in h2.items():
            v = (v1 + v2) % 2
            out[v] = out.get(v, 0) + c1 * c2
    return out


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _legendre(a, p):
    a %= p
    if a == 0:
        raise LatticeError("unit expected mod %d" % p)
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _scale_blocks(p, k):
    """Standard p-adic Jordan blocks of scale k, as integer lattices.

    Each entry is (unit class of the p-adic determinant, lattice, rank,
    histogram of the induced form on the p-part).  For p = 2 the rank-1
    blocks run over all four unit classes mod 8 and the rank-2 blocks
    are the even-type pair; for odd p a residue and a nonresidue block
    suffice.
    """
    out = []
    if p == 2:
        s = 1 << k
        for a in (1, 3, 5, 7):
            out.append((a, Lattice([[a * s]]), 1))
        out.append((-1, Lattice([[0, s], [s, 0]]), 2))
        out.append((3, Lattice([[2 * s, s], [s, 2 * s]]), 2))
    else:
        nr = 2
        while _legendre(nr, p) == 1:
            nr += 1
        s = p ** k
        for a in (1, nr):
            out.append((2 * a, Lattice([[2 * a * s]]), 1))
    full = []
    for unit, lat, rank in out:
        hist = _q_histogram(_p_part(discriminant_form(lat), p))
        full.append((unit, lat, rank, hist))
    return full


def _scale_multisets(blocks, r):
    """Index multisets of `blocks` with total rank r."""
    out = []

    def rec(i, left, cur):
        if left == 0:
            out.append(tuple(cur))
            return
        if i == len(blocks):
            return
        rec(i + 1, left, cur)
        if blocks[i][2] <= left:
            cur.append(i)
            rec(i, left - blocks[i][2], cur)
            cur.pop()

    rec(0, r, [])
    return out


def _tight_class_ok(dfp, p, req):
    """Whether some rank-minimal p-adic lattice inducing the form `dfp`
    has determinant in the unit class `req`.

    Candidates are sums of standard Jordan blocks with per-scale ranks
    matching the group profile; a value-histogram match filters them and
    a full form isomorphism confirms.
    """
    ks = sorted({_valuation(o, p) for o in dfp.orders})
    blocks = {k: _scale_blocks(p, k) for k in ks}
    per_scale = []
    for k in ks:
        r = sum(1 for o in dfp.orders if _valuation(o, p) == k)
        per_scale.append([(blocks[k], ms) for ms in _scale_multisets(blocks[k], r)])
    target_hist = None
    for combo in product(*per_scale):
        unit = 1
        for pool, ms in combo:
            for i in ms:
                unit *= pool[i][0]
        if p == 2:
            if unit % 8 != req:
                continue
        elif _legendre(unit, p) != req:
            continue
        if target_hist is None:
            target_hist = _q_histogram(dfp)
        hist = {Fraction(0): 1}
        for pool, ms in combo:
            for i in ms:
                hist = _hist_add(hist, pool[i][3])
        if hist != target_hist:
            continue
        cand = direct_sum(*[pool[i][1] for pool, ms in combo for i in ms])
        if forms_isomorphic(_p_part(discriminant_form(cand), p), dfp):
            return True
    return False


def _form_signature(df):
    """Signature mod 8 of a nondegenerate finite quadratic form.

    Computed per p-part from the Gauss sum; the float phase is far from
    the rounding boundary for every nondegenerate form within the group
    cap, and a degenerate part is reported rather than misread.
    """
    import cmath

    order = df.group_order()
    total = 0
    p = 2
    rest = order
    while rest > 1:
        while rest % p:
            p += 1
        while rest % p == 0:
            rest //= p
        dfp = _p_part(df, p)
        g = 0j
        for c in dfp.elements():
            g += cmath.exp(1j * cmath.pi * float(dfp.q_of(c)))
        if abs(g) < 0.5 * dfp.group_order() ** 0.5:
            raise LatticeError("quadratic form has a degenerate %d-part" % p)
        eighth = cmath.phase(g) * 4 / cmath.pi
        s = round(eighth)
        if abs(eighth - s) > 1e-6:
            raise LatticeError("quadratic form has a degenerate %d-part" % p)
        total += s
    return total % 8


_EXISTS_CACHE = {}


def even_lattice_exists(t_pos, t_neg, df):
    """Whether an even lattice of signature (t_pos, t_neg) with
    discriminant form `df` exists.

    Exact for indefinite signatures.  Definite signatures never arise
    here: the only caller asks about complements inside the even
    unimodular lattice of signature (3, 19), which are indefinite for
    every hyperbolic sublattice of rank below 20.
    """
    n = t_pos + t_neg
    length = df.length()
    if n == 0:
        return length == 0
    key = (t_pos, t_neg, df.key())
    hit = _EXISTS_CACHE.get(key)
    if hit is not None:
        return hit
    out = _exists_decide(t_pos, t_neg, df)
    if len(_EXISTS_CACHE) > 4096:
        _EXISTS_CACHE.clear()
    _EXISTS_CACHE[key] = out
    return out


def _exists_decide(t_pos, t_neg, df):
    n = t_pos + t_neg
    if n < df.length():
        return False
    l2 = sum(1 for o in df.orders if o % 2 == 0)
    if (n - l2) % 2:
        # the unimodular 2-adic part would have odd rank
        return False
    if _form_signature(df) != (t_pos - t_neg) % 8:
        return False
    order = df.group_order()
    rest = order
    p = 2
    while rest > 1:
        while rest % p:
            p += 1
        v = _valuation(rest, p)
        rest //= p ** v
        lp = sum(1 for o in df.orders if o % p == 0)
        if lp < n:
            continue
        unit = (-1) ** (t_neg % 2) * (order // p ** v)
        req = unit % 8 if p == 2 else _legendre(unit, p)
        if not _tight_class_ok(_p_part(df, p), p, req):
            return False
    return True


# ---------------------------------------------------------------------------
# primitive embeddings into the K3 lattice


class EmbedVerdict(NamedTuple):
    value: str      # 'yes' | 'no' | 'unknown'
    tier: int
    witness: object  # complement description when constructed

    def __bool__(self):
        return self.value == "yes"


_EMBED_CACHE = {}


def embeds_in_k3(lat):
    """Decide a primitive embedding of a hyperbolic even lattice into
    the even unimodular lattice of signature (3, 19)."""
    key = lat.gram
    hit = _EMBED_CACHE.get(key)
    if hit is not None:
        return hit
    pos, neg, zero = lat.signature()
    if zero != 0 or pos != 1:
        raise LatticeError("embedding test expects a hyperbolic lattice")
    verdict = _embed_decide(lat, pos, neg)
    if len(_EMBED_CACHE) > 4096:
        _EMBED_CACHE.clear()
    _EMBED_CACHE[key] = verdict
    return verdict


def _embed_decide(lat, pos, neg):
    rank = lat.rank
    if rank > 20 or neg > 19:
        return EmbedVerdict("no", 1, None)
    df = discriminant_form(lat)
    length = df.length()
    if rank + length > 22:
        # the complement would need more generators than its rank
        return EmbedVerdict("no", 1, None)
    target = df.minus()
    if rank == 20:
        cands = rank2_genus_candidates(abs(lat.det()), target)
        if cands:
            return EmbedVerdict("yes", 3, cands[0])
        return EmbedVerdict("no", 3, None)
    if rank + length <= 21:
        # no prime is tight for the complement, and the unimodular
        # 2-adic parity carries over from the lattice itself
        return EmbedVerdict("yes", 2, None)
    if even_lattice_exists(2, 20 - rank, target):
        wit = find_complement(2, 20 - rank, abs(lat.det()), target)
        return EmbedVerdict("yes", 3, wit)
    return EmbedVerdict("no", 3, None)


def _divisors(n):
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _piece_pool(pos, neg, det_abs):
    """Candidate orthogonal summands for the complement search."""
    pieces = []

    def add(tag, lat):
        p, m, _z = lat.signature()
        d = abs(lat.det())
        if p <= pos and m <= neg and det_abs % d == 0:
            pieces.append((tag, lat, p, m, d))

    add("U", hyperbolic_plane())
    for n in range(2, isqrt(det_abs) + 1):
        if det_abs % (n * n) == 0:
            add("U(%d)" % n, scaled(hyperbolic_plane(), n))
    for d in _divisors(det_abs):
        if d % 2 == 0:
            add("[%d]" % d, Lattice([[d]]))
            add("[-%d]" % d, Lattice([[-d]]))
        for (a, b, c) in rank2_genus_candidates(d) if d >= 3 else ():
            add("[%d,%d,%d]" % (a, b, c), Lattice([[a, b], [b, c]]))
            add("-[%d,%d,%d]" % (a, b, c), Lattice([[-a, -b], [-b, -c]]))
    for p in range(1, 5):
        base = root_lattice("A", p)
        n = 1
        while (p + 1) * (n ** p) <= det_abs:
            if det_abs % ((p + 1) * (n ** p)) == 0:
                add("A%d(%d)" % (p, n), scaled(base, n))
                add("A%d(-%d)" % (p, n), scaled(base, -n))
            n += 1
    for name, lat0 in (("D4", root_lattice("D", 4)),
                       ("E6", root_lattice("E", 6)),
                       ("E7", root_lattice("E", 7)),
                       ("E8", root_lattice("E", 8))):
        add(name, lat0)
        add(name + "(-1)", scaled(lat0, -1))
    # deterministic order: small rank first, then by tag
    pieces.sort(key=lambda t: (t[1].rank, t[0]))
    return pieces


def find_complement(pos, neg, det_abs, target, budget=200000):
    """Search for an even lattice of signature (pos, neg), |det| = det_abs,
    and discriminant form `target`, as a sum of standard blocks.

    Returns a description string on success, None otherwise: block sums
    need not exhaust the genus, and the search stops after `budget`
    nodes, so None carries no information.  Used to attach an explicit
    witness when existence is already settled."""
    if pos + neg == 0:
        return None
    pieces = _piece_pool(pos, neg, det_abs)
    found = []
    left = [budget]

    def rec(start, rp, rm, dleft, chosen):
        if found or left[0] <= 0:
            return
        left[0] -= 1
        if rp == 0 and rm == 0:
            if dleft == 1 and chosen:
                lat = direct_sum(*[p[1] for p in chosen])
                if forms_isomorphic(discriminant_form(lat), target):
                    found.append("+".join(p[0] for p in chosen))
            return
        for i in range(start, len(pieces)):
            tag, lat, p, m, d = pieces[i]
            if p <= rp and m <= rm and dleft % d == 0:
                chosen.append(pieces[i])
                rec(i, rp - p, rm - m, dleft // d, chosen)
                chosen.pop()
                if found or left[0] <= 0:
                    return

    rec(0, pos, neg, det_abs, [])
    return found[0] if found else None
