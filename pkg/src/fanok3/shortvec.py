"""Enumeration of lattice vectors of prescribed norm and degree.

Two enumeration problems are solved here, both in exact rational
arithmetic (a Fincke-Pohst style recursion over a Cholesky-type
decomposition, with floor/ceil bounds found by exact scanning):

* `short_vectors`: all vectors of a given norm in a definite lattice;
* `vectors_norm_dot`: all v with v*v = n and v*h = m in a hyperbolic
  lattice S with h*h = 2D > 0.  The solution set is finite precisely
  because writing v = (m/2D) h + w puts w in the negative definite part,
  so it is empty whenever n > m^2/2D.
"""

from fractions import Fraction
from math import gcd

from .lattice import Lattice, LatticeError, smith_normal_form, apply_matrix

__all__ = ["short_vectors", "vectors_norm_dot", "represents"]


def _cholesky(gram):
    """Decompose a positive definite rational matrix for the recursion.

    Returns (diag, coef) with Q(x) = sum_i diag[i] * (x_i + sum_{j>i}
    coef[i][j] * x_j)^2.
    """
    n = len(gram)
    q = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise LatticeError("matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    diag = tuple(q[i][i] for i in range(n))
    coef = tuple(tuple(q[i][j] if j > i else Fraction(0) for j in range(n))
                 for i in range(n))
    return diag, coef


def _enumerate_exact(diag, coef, target, offset=None):
    """All integer x with Q(x - offset) == target, Q positive definite."""
    n = len(diag)
    if target < 0:
        return []
    if n == 0:
        return [()] if target == 0 else []
    if offset is None:
        offset = (Fraction(0),) * n
    out = []
    x = [0] * n

    def level(i, budget):
        # centre of the admissible window for x_i
        c = offset[i] - sum(coef[i][j] * (x[j] - offset[j]) for j in range(i + 1, n))
        d = diag[i]
        base = c.numerator // c.denominator  # floor
        for start, step in ((base, -1), (base + 1, 1)):
            xi = start
            while True:
                t = d * (xi - c) ** 2
                if t > budget:
                    break
                x[i] = xi
                rem = budget - t
                if i == 0:
                    if rem == 0:
                        out.append(tuple(x))
                else:
                    level(i - 1, rem)
                xi += step

    level(n - 1, Fraction(target))
    return out


def short_vectors(lat, n, both_signs=False):
    """All vectors of norm n in a definite lattice, lexicographically sorted.

    The zero vector is never reported.  By default one vector per +-pair
    is returned (the sign making the first nonzero coordinate positive);
    pass both_signs=True for the full set.
    """
    pos, neg, zero = lat.signature()
    if zero > 0 or (pos > 0 and neg > 0):
        raise LatticeError("short_vectors needs a definite lattice")
    if lat.rank == 0 or n == 0:
        return ()
    gram = lat.gram
    if neg > 0:
        gram = [[-x for x in row] for row in gram]
        n = -n
    if n < 0:
        return ()
    diag, coef = _cholesky(gram)
    sols = _enumerate_exact(diag, coef, n)
    vecs = set()
    for v in sols:
        if any(v):
            if both_signs:
                vecs.add(v)
            else:
                w = tuple(-a for a in v)
                vecs.add(max(v, w))
    return tuple(sorted(vecs))


def represents(lat, n):
    """Whether some nonzero vector of the definite lattice has norm n."""
    return bool(short_vectors(lat, n))


def _solve_linear(w, m):
    """A particular integer solution of sum x_i w_i = m, or None."""
    n = len(w)
    g = 0
    for a in w:
        g = gcd(g, a)
    if g == 0:
        return tuple([0] * n) if m == 0 else None
    if m % g:
        return None
    # accumulate an extended gcd across the coordinates
    coeffs = [0] * n
    cur = 0  # gcd so far, combination stored in coeffs
    for i, a in enumerate(w):
        if a == 0:
            continue
        if cur == 0:
            cur = abs(a)
            coeffs[i] = 1 if a > 0 else -1
            continue
        g2, s, t = _xgcd(cur, a)
        coeffs = [c * s for c in coeffs]
        coeffs[i] = t
        cur = g2
    scale = m // cur
    return tuple(c * scale for c in coeffs)


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


_VND_CACHE = {}


def _h_decomposition(lat, h):
    """Cache the kernel/complement data used by vectors_norm_dot."""
    key = (lat.gram, tuple(h))
    hit = _VND_CACHE.get(key)
    if hit is not None:
        return hit
    n = lat.rank
    w = [lat.dot(_unit(n, i), h) for i in range(n)]
    d, u, _v = smith_normal_form([[wi] for wi in w])
    r = sum(1 for i in range(min(n, 1)) if d[i][i] != 0)
    kernel = tuple(tuple(u[i]) for i in range(r, n))
    gk = [[lat.dot(a, b) for b in kernel] for a in kernel]
    a_mat = [[-x for x in row] for row in gk]
    diag, coef = _cholesky(a_mat) if kernel else ((), ())
    a_inv = _frac_inv(a_mat) if kernel else ()
    val = (tuple(w), kernel, a_mat, a_inv, diag, coef)
    if len(_VND_CACHE) > 256:
        _VND_CACHE.clear()
    _VND_CACHE[key] = val
    return val


def _unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def _frac_inv(mat):
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] +
         [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        dd = a[col][col]
        a[col] = [x / dd for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def vectors_norm_dot(lat, h, n, m):
    """All v in a hyperbolic lattice with v*v = n and v*h = m.

    Preconditions: the lattice is nondegenerate of signature (1, rank-1)
    and h*h > 0.  Empty when n > m^2 / (h*h), since the component of v
    orthogonal to h has non-positive square.
    """
    pos, _negs, zero = lat.signature()
    if pos != 1 or zero != 0:
        raise LatticeError("vectors_norm_dot needs a hyperbolic lattice")
    hh = lat.norm(h)
    if hh <= 0:
        raise LatticeError("polarization must have positive square")
    if Fraction(n) > Fraction(m * m, hh):
        return ()
    w, kernel, _a_mat, a_inv, diag, coef = _h_decomposition(lat, h)
    x0 = _solve_linear(w, m)
    if x0 is None:
        return ()
    if not kernel:
        return (x0,) if lat.norm(x0) == n else ()
    n0 = lat.norm(x0)
    u = [lat.dot(k, x0) for k in kernel]
    t0 = tuple(sum(Fraction(u[j]) * a_inv[j][i] for j in range(len(u)))
               for i in range(len(u)))
    r = Fraction(n0 - n) + sum(Fraction(ui) * ti for ui, ti in zip(u, t0))
    if r < 0:
        return ()
    sols = _enumerate_exact(diag, coef, r, offset=t0)
    out = []
    for t in sols:
        v = list(x0)
        for c, k in zip(t, kernel):
            if c:
                for j in range(len(v)):
                    v[j] += c * k[j]
        out.append(tuple(v))
    return tuple(sorted(out))
