"""Exact arithmetic for even integral lattices.

A lattice is a free Z-module of finite rank with an even symmetric integer
Gram matrix.  Everything here is computed over Z or Q exactly; floats are
never used.  Lattices may be degenerate (nonzero kernel): the signature is
reported as a triple (positive, negative, zero) of inertia indices.

Vectors are plain tuples of integers, interpreted in the basis of the
lattice they belong to.  Moving a vector between lattices always goes
through an explicit basis map.
"""

from fractions import Fraction
import math

__all__ = [
    "Lattice",
    "LatticeError",
    "direct_sum",
    "scaled",
    "make_named",
    "parse_lattice",
    "root_lattice",
    "hyperbolic_plane",
    "k3_lattice",
    "smith_normal_form",
    "reduce_rank2",
    "read_lattice",
    "write_lattice",
]


class LatticeError(ValueError):
    """Raised for malformed Gram data or unsatisfiable lattice operations."""


def _as_gram(rows):
    gram = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(gram)
    for row in gram:
        if len(row) != n:
            raise LatticeError("Gram matrix must be square")
    for i in range(n):
        if gram[i][i] % 2 != 0:
            raise LatticeError("Gram matrix must be even on the diagonal")
        for j in range(i):
            if gram[i][j] != gram[j][i]:
                raise LatticeError("Gram matrix must be symmetric")
    return gram


class Lattice:
    """An even lattice given by its Gram matrix.

    Instances are immutable and hashable.  `ambient`/`basis` optionally
    record that this lattice arose as a sublattice: `basis` rows hold
    integer coordinates in the ambient basis and satisfy
    gram == basis * ambient.gram * basis^T.
    """

    __slots__ = ("rank", "gram", "ambient", "basis", "_cache")

    def __init__(self, gram, ambient=None, basis=None):
        object.__setattr__(self, "gram", _as_gram(gram))
        object.__setattr__(self, "rank", len(self.gram))
        if (ambient is None) != (basis is None):
            raise LatticeError("ambient and basis must be given together")
        if basis is not None:
            basis = tuple(tuple(int(x) for x in row) for row in basis)
            if len(basis) != self.rank:
                raise LatticeError("basis size does not match rank")
            for row in basis:
                if len(row) != ambient.rank:
                    raise LatticeError("basis rows must live in the ambient lattice")
            for i in range(self.rank):
                for j in range(self.rank):
                    if ambient.dot(basis[i], basis[j]) != self.gram[i][j]:
                        raise LatticeError("basis does not reproduce the Gram matrix")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Lattice objects are immutable")

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return "Lattice(rank=%d, det=%d)" % (self.rank, self.det())

    # -- pairing ---------------------------------------------------------

    def dot(self, u, v):
        """Bilinear pairing of two coordinate vectors."""
        g = self.gram
        n = self.rank
        if len(u) != n or len(v) != n:
            raise LatticeError("vector length does not match rank")
        total = 0
        for i, ui in enumerate(u):
            if ui:
                row = g[i]
                total += ui * sum(row[j] * v[j] for j in range(n) if v[j])
        return total

    def norm(self, v):
        return self.dot(v, v)

    def in_ambient(self, v):
        """Coordinates of `v` in the ambient lattice's basis."""
        if self.ambient is None:
            raise LatticeError("lattice has no ambient")
        m = self.ambient.rank
        out = [0] * m
        for c, row in zip(v, self.basis):
            if c:
                for j in range(m):
                    out[j] += c * row[j]
        return tuple(out)

    # -- invariants ------------------------------------------------------

    def det(self):
        """Determinant of the Gram matrix (0 for degenerate lattices)."""
        if "det" not in self._cache:
            self._cache["det"] = _det_bareiss(self.gram)
        return self._cache["det"]

    def signature(self):
        """Inertia indices (positive, negative, zero), computed exactly."""
        if "sig" not in self._cache:
            self._cache["sig"] = _inertia(self.gram)
        return self._cache["sig"]

    def is_definite(self):
        p, m, z = self.signature()
        return z == 0 and (p == 0 or m == 0)

    def is_hyperbolic(self):
        p, m, z = self.signature()
        return p == 1 and z == 0

    # -- kernel and quotient --------------------------------------------

    def kernel_basis(self):
        """Basis of the null sublattice {v : v.L = 0}; rows are primitive."""
        if "kernel" not in self._cache:
            d, u, _v = smith_normal_form(self.gram)
            r = sum(1 for i in range(self.rank) if d[i][i] != 0)
            self._cache["kernel"] = tuple(tuple(u[i]) for i in range(r, self.rank))
        return self._cache["kernel"]

    def quotient_by_kernel(self):
        """Nondegenerate quotient plus the projection matrix.

        Returns (Q, proj) where Q is a lattice of rank = rank - dim ker and
        proj maps coordinate vectors of self onto coordinates of Q
        (apply with `apply_matrix`).
        """
        ker = self.kernel_basis()
        k = len(ker)
        n = self.rank
        if k == 0:
            ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
            return self, ident
        d, _u, v = smith_normal_form(ker)
        for i in range(k):
            if d[i][i] not in (1, -1):
                raise LatticeError("kernel basis is not primitive")
        w = _int_inverse(v)
        # rows of w form a basis of Z^n whose first k rows span the kernel
        comp = [w[i] for i in range(k, n)]
        gram = [[self.dot(a, b) for b in comp] for a in comp]
        # coordinates in the w-basis are v-columns; drop the kernel part
        proj = tuple(tuple(v[i][j] for j in range(k, n)) for i in range(n))
        return Lattice(gram), proj

    # -- sublattices -----------------------------------------------------

    def sublattice(self, rows):
        """Sublattice spanned by the given coordinate vectors.

        The rows must be linearly independent.
        """
        rows = [tuple(int(x) for x in r) for r in rows]
        if _rank_of(rows) != len(rows):
            raise LatticeError("sublattice generators are dependent")
        gram = [[self.dot(a, b) for b in rows] for a in rows]
        return Lattice(gram, ambient=self, basis=rows)

    def saturation(self, rows):
        """Primitive closure of the span of `rows`; returns (basis, index)."""
        rows = [tuple(int(x) for x in r) for r in rows]
        m, n = len(rows), self.rank
        if m == 0:
            return (), 1
        d, _u, v = smith_normal_form(rows)
        w = _int_inverse(v)
        r = sum(1 for i in range(min(m, n)) if d[i][i] != 0)
        index = 1
        for i in range(r):
            index *= abs(d[i][i])
        return tuple(tuple(w[i]) for i in range(r)), index

    def saturate(self, rows):
        """Saturated sublattice containing the span of `rows`, with index."""
        basis, index = self.saturation(rows)
        return self.sublattice(basis), index

    def orthogonal_complement(self, rows):
        """The sublattice pairing to zero with every row; always saturated."""
        rows = [tuple(int(x) for x in r) for r in rows]
        n = self.rank
        if not rows:
            ident = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
            return self.sublattice(ident)
        mat = [[self.dot(e_i, r) for r in rows]
               for e_i in (tuple(1 if i == j else 0 for j in range(n)) for i in range(n))]
        # v is orthogonal to all rows iff v * mat == 0
        d, u, _v = smith_normal_form(mat)
        r = 0
        for i in range(min(n, len(rows))):
            if d[i][i] != 0:
                r += 1
        comp = [tuple(u[i]) for i in range(r, n)]
        return self.sublattice(comp)

    # -- rational helpers ------------------------------------------------

    def gram_inverse(self):
        """Inverse Gram matrix over Q; requires a nondegenerate lattice."""
        if "inv" not in self._cache:
            if self.det() == 0:
                raise LatticeError("degenerate lattice has no dual basis")
            self._cache["inv"] = _frac_inverse(self.gram)
        return self._cache["inv"]

    def dot_q(self, u, v):
        """Pairing of rational coordinate vectors."""
        g = self.gram
        n = self.rank
        total = Fraction(0)
        for i in range(n):
            if u[i]:
                total += u[i] * sum(Fraction(g[i][j]) * v[j] for j in range(n) if v[j])
        return total


# ---------------------------------------------------------------------------
# constructions


def direct_sum(*lattices):
    """Orthogonal direct sum."""
    if not lattices:
        raise LatticeError("empty direct sum")
    n = sum(l.rank for l in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                gram[off + i][off + j] = lat.gram[i][j]
        off += lat.rank
    return Lattice(gram)


def scaled(lat, n):
    """The lattice L(n): same module, form multiplied by n."""
    n = int(n)
    if n == 0:
        raise LatticeError("scaling by zero")
    return Lattice([[n * x for x in row] for row in lat.gram])


def root_lattice(family, index):
    """Positive definite ADE root lattice with the Cartan-style Gram
    (2 on the diagonal, 1 for adjacent nodes)."""
    family = family.upper()
    p = int(index)
    if family == "A":
        if p < 1:
            raise LatticeError("A_p needs p >= 1")
        adj = [(i, i + 1) for i in range(p - 1)]
        n = p
    elif family == "D":
        if p < 4:
            raise LatticeError("D_q needs q >= 4")
        # chain 0-1-...-(q-3), with q-2 and q-1 both attached to q-3
        adj = [(i, i + 1) for i in range(p - 3)]
        adj += [(p - 3, p - 2), (p - 3, p - 1)]
        n = p
    elif family == "E":
        if p not in (6, 7, 8):
            raise LatticeError("E_k needs k in {6,7,8}")
        # chain 0-1-...-(k-2) with the last node attached to node 2
        adj = [(i, i + 1) for i in range(p - 2)]
        adj.append((2, p - 1))
        n = p
    else:
        raise LatticeError("unknown root lattice family %r" % family)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = 2
    for i, j in adj:
        gram[i][j] = gram[j][i] = 1
    return Lattice(gram)


def hyperbolic_plane():
    return Lattice([[0, 1], [1, 0]])


def k3_lattice():
    """The even unimodular lattice of signature (3, 19)."""
    u = hyperbolic_plane()
    e8m = scaled(root_lattice("E", 8), -1)
    return direct_sum(u, u, u, e8m, e8m)


def make_named(name, *params):
    """Construct a lattice from a short name.

    Supported: A<p>, D<q>, E<k>, U, K3; `r1` with one even parameter a for
    the rank-one lattice [a]; `r2` with parameters a, b, c for the binary
    form [a, b, c].
    """
    key = name.strip()
    up = key.upper()
    if up == "U":
        return hyperbolic_plane()
    if up == "K3":
        return k3_lattice()
    if up == "R1":
        (a,) = params
        return Lattice([[int(a)]])
    if up == "R2":
        a, b, c = params
        return Lattice([[int(a), int(b)], [int(b), int(c)]])
    if up[:1] in ("A", "D", "E"):
        if params:
            (idx,) = params
        else:
            idx = int(up[1:])
        return root_lattice(up[0], idx)
    raise LatticeError("unknown lattice name %r" % name)


def parse_lattice(text):
    """Parse a lattice expression.

    Grammar: terms joined by `+` are summed orthogonally.  A term is a
    named lattice (`A2`, `D5`, `E8`, `U`, `K3`), `r1:a`, `r2:a,b,c`, or
    `scale:n(term)`; any term may carry a scaling suffix `(n)`, so
    `E8(-1)` equals `scale:-1(E8)`.  Example: `U+U+U+E8(-1)+E8(-1)`.
    """
    parts = _split_top(text, "+")
    if not parts:
        raise LatticeError("empty lattice expression")
    return direct_sum(*[_parse_term(p.strip()) for p in parts])


def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise LatticeError("unbalanced parentheses in %r" % text)
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise LatticeError("unbalanced parentheses in %r" % text)
    parts.append("".join(cur))
    return [p for p in parts if p.strip()]


def _parse_term(term):
    if term.lower().startswith("scale:"):
        rest = term[6:]
        i = rest.index("(")
        n = int(rest[:i])
        inner = rest[i + 1:]
        if not inner.endswith(")"):
            raise LatticeError("malformed scale term %r" % term)
        return scaled(parse_lattice(inner[:-1]), n)
    scale = 1
    if term.endswith(")") and "(" in term:
        i = term.rindex("(")
        head, arg = term[:i], term[i + 1:-1]
        if ":" not in head:
            try:
                scale = int(arg)
                term = head
            except ValueError:
                pass
    if ":" in term:
        key, args = term.split(":", 1)
        params = tuple(int(a) for a in args.split(",") if a.strip())
        lat = make_named(key, *params)
    else:
        lat = make_named(term)
    return scaled(lat, scale) if scale != 1 else lat


# ---------------------------------------------------------------------------
# matrix kernels (all exact)


def _det_bareiss(gram):
    n = len(gram)
    if n == 0:
        return 1
    m = [list(row) for row in gram]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _inertia(gram):
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    alive = list(range(n))
    pos = neg = zero = 0
    while alive:
        piv = None
        for i in alive:
            if m[i][i] != 0:
                piv = i
                break
        if piv is None:
            pair = None
            for i in alive:
                for j in alive:
                    if i != j and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                zero += len(alive)
                break
            i, j = pair
            # make the diagonal entry 2*m[i][j] != 0 via e_i -> e_i + e_j
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            continue
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        alive.remove(piv)
        for i in alive:
            f = m[i][piv] / d
            if f:
                for k in range(n):
                    m[i][k] -= f * m[piv][k]
                for k in range(n):
                    m[k][i] -= f * m[k][piv]
    return (pos, neg, zero)


def smith_normal_form(mat):
    """Smith normal form with transforms: returns (D, U, V), U*M*V = D.

    D is diagonal with d_1 | d_2 | ... >= 0; U and V are unimodular.
    Works for any rectangular integer matrix (given as rows).
    """
    m = [list(int(x) for x in row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, c):  # row_i += c * row_j
        for k in range(cols):
            m[i][k] += c * m[j][k]
        for k in range(rows):
            u[i][k] += c * u[j][k]

    def col_op(i, j, c):  # col_i += c * col_j
        for k in range(rows):
            m[k][i] += c * m[k][j]
        for k in range(cols):
            v[k][i] += c * v[k][j]

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for k in range(rows):
            m[k][i], m[k][j] = m[k][j], m[k][i]
        for k in range(cols):
            v[k][i], v[k][j] = v[k][j], v[k][i]

    t = 0
    while t < rows and t < cols:
        # locate a pivot of minimal absolute value
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                a = abs(m[i][j])
                if a and (best is None or a < best):
                    best, piv = a, (i, j)
        if piv is None:
            break
        i, j = piv
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)
        while True:
            # kill the rest of column t
            done = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, -q)
                    if m[i][t]:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, -q)
                    if m[t][j]:
                        col_swap(t, j)
                        done = False
            if done:
                break
        # enforce divisibility: d_t must divide every later entry
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, 1)
            continue
        if m[t][t] < 0:
            for k in range(cols):
                m[t][k] = -m[t][k]
            for k in range(rows):
                u[t][k] = -u[t][k]
        t += 1
    d = [[m[i][j] if i == j else 0 for j in range(cols)] for i in range(rows)]
    return (tuple(tuple(r) for r in d),
            tuple(tuple(r) for r in u),
            tuple(tuple(r) for r in v))


def _rank_of(rows):
    if not rows:
        return 0
    d, _u, _v = smith_normal_form(rows)
    return sum(1 for i in range(min(len(rows), len(rows[0]))) if d[i][i] != 0)


def _int_inverse(mat):
    """Inverse of a unimodular integer matrix, as integer rows."""
    n = len(mat)
    inv = _frac_inverse(mat)
    out = []
    for row in inv:
        r = []
        for x in row:
            if x.denominator != 1:
                raise LatticeError("matrix is not unimodular")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def _frac_inverse(mat):
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise LatticeError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def apply_matrix(v, mat):
    """Row vector times matrix, exact."""
    cols = len(mat[0]) if mat else 0
    out = [0] * cols
    for c, row in zip(v, mat):
        if c:
            for j in range(cols):
                out[j] += c * row[j]
    return tuple(out)


# ---------------------------------------------------------------------------
# binary forms


def reduce_rank2(gram):
    """Gauss reduction of a positive definite even binary form.

    Returns the canonical triple [a, b, c] with 0 <= 2b <= a <= c and
    a*c - b^2 = det.
    """
    a, b = int(gram[0][0]), int(gram[0][1])
    c = int(gram[1][1])
    if gram[1][0] != b:
        raise LatticeError("Gram matrix must be symmetric")
    if a <= 0 or a * c - b * b <= 0:
        raise LatticeError("form is not positive definite")
    while True:
        if a > c:
            a, c = c, a
        # shift to minimize |b|
        r = b % a
        if 2 * r > a:
            r -= a
        if r != b:
            c += (r * r - b * b) // a
            b = r
        if b < 0:
            b = -b
        if 2 * b <= a <= c:
            return (a, b, c)


# ---------------------------------------------------------------------------
# text format


def read_lattice(text):
    """Parse the simple text format: first line the rank, then Gram rows."""
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise LatticeError("empty lattice description")
    n = int(lines[0])
    if len(lines) < n + 1:
        raise LatticeError("expected %d Gram rows" % n)
    rows = []
    for ln in lines[1:n + 1]:
        row = [int(x) for x in ln.split()]
        if len(row) != n:
            raise LatticeError("Gram row has wrong length")
        rows.append(row)
    return Lattice(rows)


def write_lattice(lat):
    lines = [str(lat.rank)]
    for row in lat.gram:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"
