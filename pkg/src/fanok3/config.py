"""Polarized line configurations and their geometric realizability.

A configuration graph together with a degree D spans a lattice: one
class per vertex with self-intersection -2 and pairwise products given
by adjacency, plus a polarization class h with h^2 = 2D meeting every
vertex class in 1.  After dividing out the radical this hyperbolic
lattice is the arithmetic shadow of the configuration; everything
geometric is decided there.

Realizability runs through finite-index even extensions: the
configuration is realizable in degree D when some extension passes the
mode's admissibility test (no contracted roots, no low-degree pencil
classes that the projective model excludes) and embeds primitively in
the K3 lattice.  Fullness additionally requires that the extension
carries no lines beyond the seed vertices.  Extensions whose embedding
test returns `unknown` are counted and reported, never treated as
realizable.
"""

from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .lattice import Lattice, LatticeError, apply_matrix, smith_normal_form
from .shortvec import represents, vectors_norm_dot
from .discriminant import (
    TorsionTwoSpace,
    chain_subgroups,
    discriminant_form,
    embeds_in_k3,
    even_overlattices,
    extension_from_subgroup,
    rank2_genus_candidates,
    subgroup_quotient_length,
)
from .graphs import (
    Graph,
    GraphError,
    affine_degree,
    classify,
    component_type,
    intersection_gram,
    marks,
)

__all__ = [
    "ConfigError",
    "MODES",
    "PolarizedConfig",
    "fano_h",
    "ExtendedConfig",
    "extensions",
    "excluded_classes",
    "admissible",
    "Admissibility",
    "lines_of",
    "fn_graph",
    "is_saturated",
    "intrinsic_polarization",
    "pencil_of",
    "periodicity_reduce",
    "analyze",
    "is_subgeometric",
    "is_geometric",
    "geometric_degrees",
    "subgeometric_degrees",
    "transcendental_candidates",
    "transcendental_report",
    "has_real_model",
    "fiber_class",
    "is_pencil_geometric",
    "pencil_degrees",
    "special_octic_split",
    "hyperelliptic_analyze",
    "report",
]

MODES = ("standard", "triquadric", "special-octic", "hyperelliptic")


class ConfigError(ValueError):
    pass


class PolarizedConfig(NamedTuple):
    """Nondegenerate span of a configuration and a polarization.

    `seeds[i]` is the class of vertex i and `h` the polarization, both
    in coordinates of `lattice`.
    """

    graph: Graph
    degree: int
    lattice: Lattice
    seeds: tuple
    h: tuple


def fano_h(graph, degree):
    """Quotient of the configuration-plus-polarization span by its
    radical.  Raises if the result has more than one positive square."""
    if degree < 2:
        raise ConfigError("degree must be at least 2")
    n = graph.n
    gram = [row + [1] for row in intersection_gram(graph)]
    gram.append([1] * n + [2 * degree])
    ambient = Lattice(gram)
    if ambient.kernel_basis():
        lat, proj = ambient.quotient_by_kernel()
    else:
        lat = ambient
        proj = [tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)]
    pos, _neg, zero = lat.signature()
    if zero:
        raise ConfigError("radical not eliminated")
    if pos != 1:
        raise ConfigError(
            "configuration span has %d positive squares in degree %d"
            % (pos, degree))
    seeds = tuple(tuple(proj[i]) for i in range(n))
    return PolarizedConfig(graph, degree, lat, seeds, tuple(proj[n]))


class ExtendedConfig(NamedTuple):
    """A finite-index even extension of a polarized configuration."""

    config: PolarizedConfig
    lattice: Lattice
    seeds: tuple
    h: tuple
    index: int


def extensions(cfg):
    """All finite-index even extensions, the trivial one first."""
    out = []
    for ext in even_overlattices(cfg.lattice):
        out.append(_wrap_extension(cfg, ext))
    return out


def _wrap_extension(cfg, ext):
    seeds = tuple(tuple(apply_matrix(s, ext.from_parent)) for s in cfg.seeds)
    h = tuple(apply_matrix(cfg.h, ext.from_parent))
    return ExtendedConfig(cfg, ext.lattice, seeds, h, ext.index)


# ---------------------------------------------------------------------------
# scalable extension search
#
# For large discriminant groups the subgroup lattice cannot be listed,
# but admissibility localizes: a forbidden vector of an extension lies
# in some coset of the source, so an extension is admissible exactly
# when its glue subgroup misses every coset that carries one.  The set
# of such cosets comes from one short-vector sweep over the dual, after
# which the walk only ever visits clean subgroups.

_ENUM_CAP = 512
_STATE_CAP = 200000


def _forbidden_pairs(mode):
    if mode == "hyperelliptic":
        return ((-2, 0), (0, 1))
    if mode == "triquadric":
        return ((-2, 0), (0, 2), (0, 3))
    return ((-2, 0), (0, 2))


def excluded_classes(cfg, mode="standard"):
    """Discriminant classes whose coset carries a mode-forbidden vector.

    An extension is admissible exactly when its glue subgroup avoids
    these classes (the vector lies in the extension iff its class is
    glued in).  Returns (classes, root_hit); `root_hit` reports a
    forbidden vector in the configuration lattice itself, which poisons
    every extension at once.  The sweep runs over the rescaled dual, so
    no extension needs to be built.
    """
    lat, h = cfg.lattice, cfg.h
    df = discriminant_form(lat)
    n = lat.rank
    e = df.orders[-1]
    ginv = lat.gram_inverse()
    dual = Lattice([[int(2 * e * ginv[i][j]) for j in range(n)]
                    for i in range(n)])
    hd = tuple(sum(lat.gram[i][j] * h[j] for j in range(n)) for i in range(n))
    d, _u, v = smith_normal_form(lat.gram)
    gens = [i for i in range(n) if d[i][i] > 1]
    classes = set()
    root_hit = False
    for (nn, mm) in _forbidden_pairs(mode):
        for y in vectors_norm_dot(dual, hd, 2 * e * nn, 2 * e * mm):
            s = [sum(y[k] * v[k][i] for k in range(n)) for i in range(n)]
            c = tuple(s[i] % d[i][i] for i in gens)
            if not any(c):
                root_hit = True
            classes.add(c)
            classes.add(tuple((d[i][i] - x) % d[i][i]
                              for x, i in zip(c, gens)))
    return frozenset(classes), root_hit


def _odd_part_elements(df):
    """Elements of odd order, zero included."""
    n = len(df.orders)
    facs = []
    for i, o in enumerate(df.orders):
        m = o
        while m % 2 == 0:
            m //= 2
        if m > 1:
            facs.append((i, o // m, m))
    out = []
    for combo in product(*[range(m) for (_i, _s, m) in facs]):
        c = [0] * n
        for (i, s, _m), k in zip(facs, combo):
            c[i] = (s * k) % df.orders[i]
        out.append(tuple(c))
    return out


def _odd_iso_subgroups(df, excluded):
    """Isotropic subgroups of the odd-order part avoiding `excluded`,
    as element frozensets, the trivial one first.  Odd parts are tiny
    here; this is a plain closure walk."""
    zero = tuple(0 for _ in df.orders)
    iso = [c for c in _odd_part_elements(df)
           if any(c) and df.q_of(c) == 0 and c not in excluded]
    out = [frozenset([zero])]
    seen = {out[0]}
    queue = [out[0]]
    while queue:
        grp = queue.pop()
        for x in iso:
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
            if any(c in excluded for c in new):
                continue
            fz = frozenset(new)
            if fz not in seen:
                seen.add(fz)
                out.append(fz)
                queue.append(fz)
    return out


def _line_class_counts(cfg):
    """Count of square -2 degree 1 vectors in each dual coset, keyed by
    discriminant class.

    The zero class counts the configuration's own lines, and an
    extension's line count is the sum over its glued classes, so one
    sweep prices every candidate subgroup.
    """
    lat, h = cfg.lattice, cfg.h
    df = discriminant_form(lat)
    n = lat.rank
    e = df.orders[-1]
    ginv = lat.gram_inverse()
    dual = Lattice([[int(2 * e * ginv[i][j]) for j in range(n)]
                    for i in range(n)])
    hd = tuple(sum(lat.gram[i][j] * h[j] for j in range(n)) for i in range(n))
    d, _u, v = smith_normal_form(lat.gram)
    gens = [i for i in range(n) if d[i][i] > 1]
    counts = {}
    for y in vectors_norm_dot(dual, hd, -4 * e, 2 * e):
        s = [sum(y[k] * v[k][i] for k in range(n)) for i in range(n)]
        c = tuple(s[i] % d[i][i] for i in gens)
        counts[c] = counts.get(c, 0) + 1
    return counts


def _scalable_search(cfg, mode, need_saturated, predicate=None, line_cap=None):
    """Exact realizability search without subgroup enumeration.

    Returns (found, witness ExtendedConfig or None).  Exhaustion is
    certified: candidates are cut only by arguments that bound every
    extension through them (excluded classes, length obstructions to
    embedding, monotone line counts), so a False is a proof, and a
    search space too large to certify raises instead of guessing.
    """
    if mode == "hyperelliptic":
        raise ConfigError("scalable search does not support the "
                          "hyperelliptic mode; the required-class test "
                          "does not persist to extensions")
    lat, h = cfg.lattice, cfg.h
    df = discriminant_form(lat)
    adm = admissible(lat, h, mode)
    if not adm.ok:
        # only forbidden-vector reasons occur in these modes, and a
        # forbidden vector persists to every extension
        return False, None
    n_seeds = len(cfg.seeds)
    root = ExtendedConfig(cfg, lat, cfg.seeds, h, 1)
    root_lines = len(lines_of(lat, h))
    target = None
    if need_saturated:
        target = n_seeds
    elif line_cap is not None:
        target = line_cap
    if target is not None and root_lines > target:
        # line counts only grow under extension
        return False, None
    if embeds_in_k3(lat).value == "yes":
        if need_saturated:
            if root_lines == n_seeds:
                return True, root
        elif predicate is None or predicate(root):
            return True, root
    excluded, root_hit = excluded_classes(cfg, mode)
    if root_hit:
        raise ConfigError("dual-coset sweep found a forbidden vector "
                          "the direct admissibility test missed")
    rank = lat.rank
    l_star = 22 - rank
    lc = _line_class_counts(cfg) if target is not None else None
    zero = tuple(0 for _ in df.orders)
    if lc is not None and lc.get(zero, 0) != root_lines:
        raise ConfigError("dual line sweep disagrees with the direct "
                          "line count")

    def try_group(gens, elems):
        total = None
        if lc is not None:
            total = root_lines + sum(lc.get(c, 0) for c in elems)
            if total > target:
                return None
        lp = subgroup_quotient_length(df, gens)
        if rank + lp > 22:
            return None
        ext = _wrap_extension(cfg, extension_from_subgroup(lat, df, gens))
        adm = admissible(ext.lattice, ext.h, mode)
        if not adm.ok:
            raise ConfigError("excluded-class pruning disagrees with "
                              "direct admissibility: %s" % adm.reason)
        if embeds_in_k3(ext.lattice).value != "yes":
            return None
        if need_saturated:
            if total != n_seeds:
                return None
            if not is_saturated(ext):
                raise ConfigError("dual line sweep disagrees with the "
                                  "direct line count")
        else:
            if line_cap is not None and len(lines_of(ext.lattice, ext.h)) != total:
                raise ConfigError("dual line sweep disagrees with the "
                                  "direct line count")
            if predicate is not None and not predicate(ext):
                return None
        return ext

    if all(o % 4 for o in df.orders):
        # the 2-part is elementary: every glue splits as an exponent-two
        # subspace plus an odd-order part, and the 2-length drops by
        # exactly twice the subspace dimension
        l2 = sum(1 for o in df.orders if o % 2 == 0)
        k_min = max(0, -(-(l2 - l_star) // 2))
        t2 = TorsionTwoSpace(df, excluded)
        odd_subs = _odd_iso_subgroups(df, excluded)
        weight = budget = None
        if lc is not None:
            weight = [0] * (1 << t2.dim)
            for m in range(1, 1 << t2.dim):
                weight[m] = lc.get(t2.element(m), 0)
            budget = target - root_lines
        visited = 0
        for k in range(k_min, t2.dim + 1):
            for sp in t2.subspaces(k, weight, budget):
                h2 = [t2.element(m) for m in sp]
                for hodd in odd_subs:
                    if k == 0 and len(hodd) == 1:
                        continue  # the root, already handled
                    ok = True
                    for c2 in h2:
                        for co in hodd:
                            if any(co) and df.add(c2, co) in excluded:
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        continue
                    visited += 1
                    if visited > _STATE_CAP:
                        raise ConfigError("extension search space too "
                                          "large to certify")
                    gens = h2 + sorted(c for c in hodd if any(c))
                    elems = [df.add(c2, co) for c2 in [zero] + h2
                             for co in hodd]
                    elems.remove(zero)
                    got = try_group(gens, elems)
                    if got is not None:
                        return True, got
        return False, None

    # general shape: walk generator chains
    visited = 0
    for grp in chain_subgroups(df, excluded, cap=_STATE_CAP):
        visited += 1
        gens = sorted(c for c in grp if any(c))
        got = try_group(gens, gens)
        if got is not None:
            return True, got
    return False, None


class Admissibility(NamedTuple):
    ok: bool
    reason: str
    witness: tuple


_MISSING_PENCIL = "no genus-two pencil class"


def admissible(lat, h, mode="standard"):
    """Mode-dependent class exclusions on a hyperbolic lattice.

    standard       no (-2, 0) roots, no (0, 2) pencil classes
    triquadric     additionally no (0, 3) pencil classes
    special-octic  the standard exclusions (degree checks are the
                   caller's business; cubic pencils stay allowed)
    hyperelliptic  no (-2, 0) roots, no (0, 1) classes, and a (0, 2)
                   pencil class must exist
    """
    if mode not in MODES:
        raise ConfigError("unknown mode %r" % (mode,))
    for (nn, mm) in _forbidden_pairs(mode):
        hits = vectors_norm_dot(lat, h, nn, mm)
        if hits:
            return Admissibility(False, "class with square %d and degree %d"
                                 % (nn, mm), hits[0])
    if mode == "hyperelliptic":
        if not vectors_norm_dot(lat, h, 0, 2):
            return Admissibility(False, _MISSING_PENCIL, ())
    return Admissibility(True, "", ())


def lines_of(lat, h):
    """All classes with square -2 and degree 1."""
    return vectors_norm_dot(lat, h, -2, 1)


def fn_graph(lat, h, allow_double=False):
    """Intersection graph of all lines.

    Returns (lines, graph, doubles) where doubles lists index pairs
    meeting with multiplicity two; those occur only for hyperelliptic
    models and are rejected unless allowed.
    """
    lines = lines_of(lat, h)
    k = len(lines)
    edges = []
    doubles = []
    for i in range(k):
        for j in range(i + 1, k):
            d = lat.dot(lines[i], lines[j])
            if d == 1:
                edges.append((i, j))
            elif d == 2 and allow_double:
                doubles.append((i, j))
            elif d not in (0, 1):
                raise ConfigError(
                    "line pairing %d outside the admissible range" % d)
    return lines, Graph(k, edges), doubles


def is_saturated(ext):
    """No lines beyond the seed classes."""
    return len(lines_of(ext.lattice, ext.h)) == len(ext.seeds)


def intrinsic_polarization(graph):
    """The rational class meeting every vertex in 1, for nondegenerate
    configurations.  Returns (square, coordinates) or None."""
    n = graph.n
    if n == 0:
        return None
    rows = [[Fraction(x) for x in row] for row in intersection_gram(graph)]
    rhs = [Fraction(1)] * n
    sol = _solve_sym(rows, rhs)
    if sol is None:
        return None
    return (sum(sol), tuple(sol))


def _solve_sym(rows, rhs):
    n = len(rows)
    mat = [rows[i] + [rhs[i]] for i in range(n)]
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, n):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        d = mat[r][col]
        mat[r] = [x / d for x in mat[r]]
        for i in range(n):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
    if r < n:
        return None
    sol = [Fraction(0)] * n
    for i in range(n):
        lead = next(j for j in range(n) if mat[i][j] == 1)
        sol[lead] = mat[i][n]
    return sol


def pencil_of(graph, fiber):
    """Members of the pencil a fiber generates.

    Vertical vertices are the fiber plus everything with no neighbor in
    it; the rest are sections, returned with their intersection index
    (sum of fiber multiplicities over neighbors in the fiber).
    """
    fiber = list(fiber)
    mk = marks(graph, fiber)
    fmask = 0
    for v in fiber:
        fmask |= 1 << v
    vertical = []
    sections = {}
    for v in range(graph.n):
        hits = graph.adj[v] & fmask
        if (fmask >> v) & 1 or not hits:
            vertical.append(v)
        else:
            idx = 0
            m = hits
            while m:
                low = m & -m
                idx += mk[low.bit_length() - 1]
                m ^= low
            sections[v] = idx
    return vertical, sections


def periodicity_reduce(graph, degree):
    """Stable-range reduction for parabolic configurations.

    With fiber degree d, realizability in degree D >= d^2 + d depends
    only on D mod d; returns the smallest equivalent degree in the
    stable range, or the input when below it.
    """
    cls = classify(graph)
    if cls != "parabolic":
        raise ConfigError("stable-range reduction needs a parabolic "
                          "configuration, got %s" % cls)
    degs = set()
    for comp in graph.components():
        tag = component_type(graph, comp)
        if tag is not None and tag[0] in ("tA", "tD", "tE"):
            degs.add(affine_degree(tag))
    d = min(degs)
    base = d * d + d
    if degree >= base:
        return base + (degree - base) % d
    return degree


# ---------------------------------------------------------------------------
# realizability pipeline


class ExtensionVerdict(NamedTuple):
    index: int
    admissible: bool
    reason: str
    embed: str
    line_count: int
    saturated: bool


def analyze(graph, degree, mode="standard"):
    """Full realizability run for one configuration and degree.

    Returns a dict with the lattice invariants, the per-extension
    verdicts, and the derived subgeometric / geometric flags.  The
    "hyperbolic" entry records whether the polarized span exists at
    this degree at all; when it does not, "error" carries the reason
    and the extension list stays empty.  "classification" describes
    the bare configuration, before the polarization is added.
    """
    if mode == "special-octic" and degree != 4:
        raise ConfigError("special-octic analysis is a degree-4 notion")
    out = {
        "vertices": graph.n,
        "degree": degree,
        "mode": mode,
        "classification": classify(graph),
        "hyperbolic": False,
        "subgeometric": False,
        "geometric": False,
        "unknown_embeddings": 0,
        "extensions": [],
    }
    try:
        cfg = fano_h(graph, degree)
    except ConfigError as err:
        out["error"] = str(err)
        return out
    out["hyperbolic"] = True
    out["rank"] = cfg.lattice.rank
    out["det"] = cfg.lattice.det()
    if _use_scalable(cfg):
        return _analyze_scalable(cfg, mode, out)
    verdicts = []
    for ext in extensions(cfg):
        adm = admissible(ext.lattice, ext.h, mode)
        if not adm.ok:
            verdicts.append(ExtensionVerdict(ext.index, False, adm.reason,
                                             "", 0, False))
            continue
        emb = embeds_in_k3(ext.lattice)
        if emb.value == "unknown":
            out["unknown_embeddings"] += 1
        if emb.value != "yes":
            verdicts.append(ExtensionVerdict(ext.index, True, "",
                                             emb.value, 0, False))
            continue
        k = len(lines_of(ext.lattice, ext.h))
        sat = k == len(ext.seeds)
        verdicts.append(ExtensionVerdict(ext.index, True, "", "yes", k, sat))
        out["subgeometric"] = True
        if sat:
            out["geometric"] = True
    out["extensions"] = verdicts
    return out


def _analyze_scalable(cfg, mode, out):
    """Verdicts for a configuration whose discriminant group is too
    large to enumerate.  The flags are exact; the extension list only
    shows the trivial extension and any witnesses, flagged truncated."""
    out["truncated"] = True
    verdicts = []
    adm = admissible(cfg.lattice, cfg.h, mode)
    if adm.ok:
        emb = embeds_in_k3(cfg.lattice)
        k = len(lines_of(cfg.lattice, cfg.h))
        verdicts.append(ExtensionVerdict(1, True, "", emb.value, k,
                                         k == len(cfg.seeds)))
    else:
        verdicts.append(ExtensionVerdict(1, False, adm.reason, "", 0, False))
    sub, wit_s = _scalable_search(cfg, mode, False)
    geo, wit_g = _scalable_search(cfg, mode, True)
    out["subgeometric"] = sub
    out["geometric"] = geo
    for wit in (wit_s, wit_g):
        if wit is None or wit.index == 1:
            continue
        k = len(lines_of(wit.lattice, wit.h))
        verdicts.append(ExtensionVerdict(wit.index, True, "", "yes", k,
                                         k == len(wit.seeds)))
    out["extensions"] = verdicts
    return out


def is_subgeometric(graph, degree, mode="standard", predicate=None,
                    line_cap=None):
    """Some admissible embeddable extension exists; `predicate`, when
    given, must accept one of them (called with the ExtendedConfig).

    `line_cap` restricts to extensions with at most that many lines.
    Line counts only grow under extension, so the scalable path can
    certify exhaustion under a cap where an opaque predicate could not.
    """
    try:
        cfg = fano_h(graph, degree)
    except ConfigError:
        return False
    if _use_scalable(cfg):
        found, _w = _scalable_search(cfg, mode, False, predicate, line_cap)
        return found
    viable, root = _root_first(cfg, mode)
    if not viable:
        return False
    if root is not None:
        if line_cap is None or len(lines_of(root.lattice, root.h)) <= line_cap:
            if predicate is None or predicate(root):
                return True
    for ext in extensions(cfg):
        if not admissible(ext.lattice, ext.h, mode).ok:
            continue
        if embeds_in_k3(ext.lattice).value != "yes":
            continue
        if line_cap is not None and len(lines_of(ext.lattice, ext.h)) > line_cap:
            continue
        if predicate is None or predicate(ext):
            return True
    return False


def is_geometric(graph, degree, mode="standard"):
    try:
        cfg = fano_h(graph, degree)
    except ConfigError:
        return False
    if _use_scalable(cfg):
        found, _w = _scalable_search(cfg, mode, True)
        return found
    viable, root = _root_first(cfg, mode)
    if not viable:
        return False
    if root is not None and is_saturated(root):
        return True
    for ext in extensions(cfg):
        if not admissible(ext.lattice, ext.h, mode).ok:
            continue
        if embeds_in_k3(ext.lattice).value != "yes":
            continue
        if is_saturated(ext):
            return True
    return False


def _use_scalable(cfg):
    return discriminant_form(cfg.lattice).group_order() > _ENUM_CAP


def _root_first(cfg, mode):
    """Cheap verdicts from the trivial extension alone.

    Returns (viable, root): viable is False when the source lattice
    carries a forbidden vector, which persists to every extension;
    root is the trivial ExtendedConfig when it is admissible and
    embeds, else None.
    """
    adm = admissible(cfg.lattice, cfg.h, mode)
    if not adm.ok:
        return (adm.reason == _MISSING_PENCIL, None)
    if embeds_in_k3(cfg.lattice).value == "yes":
        return (True, ExtendedConfig(cfg, cfg.lattice, cfg.seeds, cfg.h, 1))
    return (True, None)


def geometric_degrees(graph, degrees, mode="standard"):
    return [d for d in degrees if is_geometric(graph, d, mode)]


def subgeometric_degrees(graph, degrees, mode="standard"):
    return [d for d in degrees if is_subgeometric(graph, d, mode)]


def transcendental_candidates(lat):
    """For a rank-20 hyperbolic lattice: the reduced positive binary
    forms in the genus of the transcendental complement, each with a
    flag for representing 2."""
    if lat.rank != 20:
        return None
    target = discriminant_form(lat).minus()
    out = []
    for abc in rank2_genus_candidates(abs(lat.det()), target):
        t = Lattice([[abc[0], abc[1]], [abc[1], abc[2]]])
        out.append({"form": abc, "represents_two": represents(t, 2)})
    return out


def transcendental_report(lat):
    """Summary of the orthogonal-complement data of a configuration.

    Below rank 20 only the rank and determinant are reported.  At rank
    20 the complement is a positive binary form; the report lists the
    genus candidates and whether some candidate represents 2, which
    decides realizability with all lines real.
    """
    out = {"rank": lat.rank, "det": lat.det()}
    if lat.rank != 20:
        return out
    cands = transcendental_candidates(lat)
    out["det_T"] = abs(lat.det())
    out["candidates"] = cands
    out["real"] = any(c["represents_two"] for c in cands)
    return out


def has_real_model(t_lat, box=8):
    """Whether a transcendental lattice certifies a model with all
    lines real: it must contain a vector of square 2 or a copy of the
    hyperbolic plane doubled.

    For definite forms the vector search is complete and the doubled
    plane cannot occur.  Otherwise isotropic pairs pairing to 2 are
    searched inside a coordinate box, so a False is only "not found".
    """
    pos, neg, zero = t_lat.signature()
    if zero:
        raise LatticeError("degenerate transcendental lattice")
    if pos == t_lat.rank:
        return represents(t_lat, 2)
    n = t_lat.rank
    from itertools import product as _product
    rng = range(-box, box + 1)
    iso = []
    for v in _product(rng, repeat=n):
        if not any(v):
            continue
        nv = t_lat.norm(v)
        if nv == 2:
            return True
        if nv == 0:
            iso.append(v)
    for i, u in enumerate(iso):
        for w in iso[i + 1:]:
            if t_lat.dot(u, w) == 2:
                return True
    return False


def fiber_class(graph, fiber, seeds):
    """Image of a parabolic fiber's kernel class under the seed map."""
    mk = marks(graph, list(fiber))
    total = None
    for v in fiber:
        scaled_v = [mk[v] * x for x in seeds[v]]
        total = scaled_v if total is None else [
            a + b for a, b in zip(total, scaled_v)]
    return tuple(total)


def is_pencil_geometric(graph, degree, mode="standard"):
    """Realizability of a parabolic configuration as an elliptic
    pencil: some admissible embeddable extension in which every line
    beyond the seeds is a section, meeting the fiber class positively.

    Weaker than `is_geometric`: the configuration need not be the full
    line set, only its vertical part.
    """
    if classify(graph) != "parabolic":
        raise ConfigError("pencil realizability needs a parabolic "
                          "configuration")
    fibers = [comp for comp in graph.components()
              if component_type(graph, comp) is not None
              and component_type(graph, comp)[0] in ("tA", "tD", "tE")]
    try:
        cfg = fano_h(graph, degree)
    except ConfigError:
        return False
    for ext in extensions(cfg):
        if not admissible(ext.lattice, ext.h, mode).ok:
            continue
        if embeds_in_k3(ext.lattice).value != "yes":
            continue
        k = fiber_class(graph, fibers[0], ext.seeds)
        seed_set = set(ext.seeds)
        ok = True
        for l in lines_of(ext.lattice, ext.h):
            if l in seed_set:
                continue
            if ext.lattice.dot(l, k) < 1:
                ok = False
                break
        if ok:
            return True
    return False


def pencil_degrees(graph, degrees, mode="standard"):
    return [d for d in degrees if is_pencil_geometric(graph, d, mode)]


def special_octic_split(lat, h):
    """Cubic-pencil structure of a degree-4 model.

    A degree-4 configuration carrying a class e with e^2 = 0, e.h = 3
    splits its lines by the product with e: members of cubic fibers
    (product 0, the set C0) against sections of the pencil (product 1,
    the set C1).  Returns None when no such class exists, otherwise a
    dict with the class, the split, a biquadrangle flag for the line
    graph, and for nine sections the verdict on the class relation
    3h = sum(C1) + 5e.

    Raises when the cubic class is not unique or some line meets it
    outside {0, 1}; both situations contradict the geometric setup.
    """
    if lat.dot(h, h) != 8:
        raise ConfigError("cubic-pencil split expects degree 4")
    cubes = vectors_norm_dot(lat, h, 0, 3)
    if not cubes:
        return None
    if len(cubes) > 1:
        raise ConfigError("cubic pencil class is not unique")
    e = cubes[0]
    lines, graph, _ = fn_graph(lat, h)
    c0, c1 = [], []
    for l in lines:
        p = lat.dot(l, e)
        if p == 0:
            c0.append(l)
        elif p == 1:
            c1.append(l)
        else:
            raise ConfigError(
                "line pairing %d with the cubic pencil" % p)
    relation = None
    if len(c1) == 9:
        total = [3 * x - 5 * y for x, y in zip(h, e)]
        for l in c1:
            total = [t - x for t, x in zip(total, l)]
        relation = all(t == 0 for t in total)
    return {
        "e": e,
        "C0": tuple(c0),
        "C1": tuple(c1),
        "biquadrangle": not graph.biquadrangle_free(),
        "relation": relation,
    }


def hyperelliptic_analyze(lat, h):
    """Structure of a two-to-one model of degree at least 3.

    The genus-two pencil class e (e^2 = 0, e.h = 2, unique here) splits
    the lines into C0 (product 0 with e, components of degenerate
    fibers, paired so that each pair sums to e) and C1 (product 1).
    Reports the line count with its parity and upper-bound verdicts:
    the count must be even, except a single line in degree 6, and can
    never exceed 24 - 4*(D mod 2).  C1 is empty except in degrees 3, 4
    and 6, where the polarization decomposes through the C1 lines; the
    applicable case and its witnesses are returned under
    "exceptional".
    """
    hh = lat.dot(h, h)
    if hh < 6:
        raise ConfigError("hyperelliptic structure needs degree at least 3")
    pencils = vectors_norm_dot(lat, h, 0, 2)
    if not pencils:
        raise ConfigError("no genus-two pencil class")
    if len(pencils) > 1:
        raise ConfigError("genus-two pencil class is not unique")
    if vectors_norm_dot(lat, h, 0, 1):
        raise ConfigError("fixed component present")
    e = pencils[0]
    lines = lines_of(lat, h)
    c0, c1 = [], []
    for l in lines:
        p = lat.dot(l, e)
        if p == 0:
            c0.append(l)
        elif p == 1:
            c1.append(l)
        else:
            raise ConfigError(
                "line pairing %d with the genus-two pencil" % p)
    fibers = []
    for i in range(len(c0)):
        for j in range(i + 1, len(c0)):
            if all(a + b == c for a, b, c in zip(c0[i], c0[j], e)):
                fibers.append((c0[i], c0[j]))
    case, witnesses = None, ()
    if hh == 6:
        pairs = _c1_pairs(lat, h, e, c1, 2, 1)
        if pairs:
            case, witnesses = "pair-with-meeting", pairs
    elif hh == 8:
        pairs = _c1_pairs(lat, h, e, c1, 3, 0)
        if pairs:
            case, witnesses = "disjoint-pair", pairs
    elif hh == 12:
        hits = tuple((l,) for l in c1
                     if all(2 * a + 5 * b == c for a, b, c in zip(l, e, h)))
        if hits:
            case, witnesses = "double-line", hits
    count = len(lines)
    degree = hh // 2
    bound = 24 - 4 * (degree % 2)
    return {
        "e": e,
        "C0": tuple(c0),
        "C1": tuple(c1),
        "fibers": tuple(fibers),
        "count": count,
        "parity_ok": count % 2 == 0 or (hh == 12 and count == 1),
        "bound": bound,
        "bound_ok": count <= bound,
        "exceptional": case,
        "witnesses": witnesses,
    }


def _c1_pairs(lat, h, e, c1, k, want_dot):
    out = []
    for i in range(len(c1)):
        for j in range(i + 1, len(c1)):
            li, lj = c1[i], c1[j]
            if all(a + b + k * c == d for a, b, c, d in zip(li, lj, e, h)):
                if lat.dot(li, lj) == want_dot:
                    out.append((li, lj))
    return tuple(out)


def report(graph, degree, mode="standard"):
    """JSON-ready realizability report."""
    res = analyze(graph, degree, mode)
    res["extensions"] = [v._asdict() for v in res["extensions"]]
    pol = intrinsic_polarization(graph)
    res["intrinsic_square"] = None if pol is None else str(pol[0])
    if res.get("geometric") and not res.get("truncated"):
        cfg = fano_h(graph, degree)
        for ext in extensions(cfg):
            if (admissible(ext.lattice, ext.h, mode).ok
                    and embeds_in_k3(ext.lattice).value == "yes"
                    and is_saturated(ext)):
                cands = transcendental_candidates(ext.lattice)
                if cands is not None:
                    res["transcendental"] = cands
                break
    return res
