"""The four embeddings of the plane over V into PG(8, q), plus reference
varieties (Segre, quadric Veronese, normal rational cubic scroll).

Constructions:
  matrices        -- rank-1 Hermitian 3x3 matrices over V, 9 field coordinates
  reduction       -- rank-2 K-subspaces of K^6 spanned by the basis multiples
  juxtaposition   -- row spans of 2x6 juxtaposed representing matrices,
                     mapped through Pluecker coordinates and re-coordinatized
  parametrization -- the 9 norm/trace coordinates with a twist element zeta

All four are index-aligned with the plane's point list, so projective
equivalences are fitted on known correspondences and verified on 100% of
the points.
"""
from __future__ import annotations

import itertools

from . import projgeom
from .projgeom import (Subspace, fit_projectivity, normalize, plucker,
                       rref, solve_square, span)
from .quadalg import DUAL, EXTENSION, SPLIT
from .ringplane import admissible, build_plane, canonicalize

QUADRIC_KIND = {EXTENSION: projgeom.ELLIPTIC, DUAL: projgeom.TUBE, SPLIT: projgeom.HYPO}


# ---------------------------------------------------------------------------
# Hermitian coordinates and rank-1 matrices

def herm_coords(alg, triple):
    """The 9 field coordinates (norm M, norm N, norm L, x/y of sigma(M)N,
    x/y of sigma(N)L, x/y of sigma(L)M) of an admissible triple; well-defined
    on the unit class up to the K-scalar norm(u)."""
    if not admissible(alg, triple):
        raise ValueError("triple is not admissible")
    M, N, L = triple
    mn = alg.mul(alg.sigma(M), N)
    nl = alg.mul(alg.sigma(N), L)
    lm = alg.mul(alg.sigma(L), M)
    out = (alg.norm(M), alg.norm(N), alg.norm(L))
    for w in (mn, nl, lm):
        out += alg.xy(w)
    return out


class HermMat3:
    """Hermitian 3x3 matrix over V: [[k1, R3, s(R2)], [s(R3), k2, R1],
    [R2, s(R1), k3]] with k_i in K and R_i in V."""

    __slots__ = ("alg", "k1", "k2", "k3", "R1", "R2", "R3")

    def __init__(self, alg, k1, k2, k3, R1, R2, R3):
        self.alg = alg
        self.k1, self.k2, self.k3 = k1, k2, k3
        self.R1, self.R2, self.R3 = R1, R2, R3

    @classmethod
    def from_triple(cls, alg, triple):
        """(M N L)^t (M N L)^adj: entry (i, j) = v_i * sigma(v_j)."""
        M, N, L = triple
        return cls(alg, alg.norm(M), alg.norm(N), alg.norm(L),
                   R1=alg.mul(N, alg.sigma(L)),
                   R2=alg.mul(L, alg.sigma(M)),
                   R3=alg.mul(M, alg.sigma(N)))

    @classmethod
    def from_coords(cls, alg, vec9):
        k1, k2, k3 = vec9[0], vec9[1], vec9[2]
        # the coordinate vector stores sigma(R3), sigma(R1), sigma(R2)
        sR3 = alg.el(vec9[3], vec9[4])
        sR1 = alg.el(vec9[5], vec9[6])
        sR2 = alg.el(vec9[7], vec9[8])
        return cls(alg, k1, k2, k3, alg.sigma(sR1), alg.sigma(sR2), alg.sigma(sR3))

    def coords(self):
        alg = self.alg
        out = (self.k1, self.k2, self.k3)
        for R in (self.R3, self.R1, self.R2):
            out += alg.xy(alg.sigma(R))
        return out

    def rows(self):
        alg = self.alg
        s = alg.sigma
        return ((alg.scalar(self.k1), self.R3, s(self.R2)),
                (s(self.R3), alg.scalar(self.k2), self.R1),
                (self.R2, s(self.R1), alg.scalar(self.k3)))


def is_rank1_herm(H):
    """True iff every pair of rows admits a dependency a*row_i + b*row_j = 0
    with (a, b) having no common nonzero annihilator."""
    alg = H.alg
    rows = H.rows()
    if all(all(c == 0 for c in row) for row in rows):
        return False
    n = alg.size
    for i, j in itertools.combinations(range(3), 2):
        ri, rj = rows[i], rows[j]
        found = False
        for a in range(n):
            for b in range(n):
                # (a, b) must have no common nonzero annihilator
                if not admissible(alg, (a, b, 0)):
                    continue
                if all(alg.add(alg.mul(a, u), alg.mul(b, v)) == 0
                       for u, v in zip(ri, rj)):
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


def rank1_roundtrip(H):
    """The canonical admissible triple whose Hermitian matrix is a K-scalar
    multiple of H.  Unit-diagonal case by the closed form; the all-zero
    diagonal (Split) case by exhaustive scan over zero-divisor triples."""
    alg = H.alg
    if not is_rank1_herm(H):
        raise ValueError("matrix is not rank 1")
    s = alg.sigma
    target = normalize(alg.field, H.coords())
    cands = []
    if H.k1:
        cands.append((alg.scalar(H.k1), s(H.R3), H.R2))
    if H.k2:
        cands.append((H.R3, alg.scalar(H.k2), s(H.R1)))
    if H.k3:
        cands.append((s(H.R2), H.R1, alg.scalar(H.k3)))
    for t in cands:
        if admissible(alg, t):
            t = canonicalize(alg, t)
            assert normalize(alg.field, herm_coords(alg, t)) == target
            return t
    # all diagonal entries zero: every coordinate is a zero divisor
    zd = alg.zero_divisors
    for t in itertools.product(zd, zd, zd):
        if not admissible(alg, t):
            continue
        if normalize(alg.field, herm_coords(alg, t)) == target:
            return canonicalize(alg, t)
    raise ValueError("no admissible triple reproduces the matrix")


# ---------------------------------------------------------------------------
# the model container

class XiMember:
    __slots__ = ("subspace", "quadric", "ring_line")

    def __init__(self, subspace, quadric, ring_line):
        self.subspace = subspace
        self.quadric = quadric
        self.ring_line = ring_line


class VeroneseanModel:
    """A V-set: point list X (index-aligned with plane.points), the family
    Xi of 3-spaces with their classified quadrics, and the plane."""

    def __init__(self, alg, plane, X, construction):
        if len(set(X)) != len(X):
            raise ValueError("embedding is not injective on plane points")
        self.algebra = alg
        self.plane = plane
        self.X = list(X)
        self.construction = construction
        self.ambient_dim = len(X[0]) - 1
        F = alg.field
        full = span(F, self.X)
        if full.dim != 8:
            raise ValueError("point set spans dim %d, expected 8" % full.dim)
        want = QUADRIC_KIND[alg.kind]
        self.Xi = []
        for li, on in enumerate(plane.points_on_line):
            pts = [self.X[p] for p in on]
            sub = span(F, pts)
            if sub.dim != 3:
                raise ValueError("line image spans dim %d, expected 3" % sub.dim)
            rep = projgeom.classify_quadric(sub, pts)
            if rep.kind != want:
                raise ValueError("line quadric is %s, expected %s" % (rep.kind, want))
            self.Xi.append(XiMember(sub, rep, li))
        self._check_incidence_transport()

    def _check_incidence_transport(self):
        index = {p: i for i, p in enumerate(self.X)}
        for xi in self.Xi:
            on = {index[p] for p in xi.quadric.points}
            if on != set(self.plane.points_on_line[xi.ring_line]):
                raise ValueError("incidence not transported by the embedding")

    def as_dict(self):
        d = {
            "algebra": self.algebra.as_dict(),
            "construction": self.construction,
            "ambient_dim": self.ambient_dim,
            "X": [list(p) for p in self.X],
            "Xi": [{
                "basis": [list(r) for r in xi.subspace.basis],
                "kind": xi.quadric.kind,
                "ring_line": xi.ring_line,
                **({"vertex": list(xi.quadric.vertex)} if xi.quadric.vertex else {}),
            } for xi in self.Xi],
            "pt_map": list(range(len(self.X))),
        }
        return d


# ---------------------------------------------------------------------------
# construction 1: matrices

def build_vset_matrices(alg, plane=None):
    plane = plane or build_plane(alg)
    F = alg.field
    X = [normalize(F, herm_coords(alg, t)) for t in plane.points]
    return VeroneseanModel(alg, plane, X, "matrices")


# ---------------------------------------------------------------------------
# constructions 2 and 3: reduction and juxtaposition

def _juxtaposition_rows(alg, triple):
    """The 2x6 juxtaposition [rep(M) | rep(N) | rep(L)]."""
    reps = [alg.rep_matrix(c) for c in triple]
    top = sum((list(r[0]) for r in reps), [])
    bot = sum((list(r[1]) for r in reps), [])
    return (tuple(top), tuple(bot))

def _reduction_rows(alg, triple):
    """Coordinate rows of the basis multiples (1*T, iota*T) of the triple."""
    rows = []
    for b in (alg.one, alg.iota):
        row = []
        for c in triple:
            row.extend(alg.xy(alg.mul(b, c)))
        rows.append(tuple(row))
    return tuple(rows)


def _grassmann_model(alg, plane, line_of, construction):
    F = alg.field
    raw = []
    for t in plane.points:
        L = Subspace(F, line_of(alg, t))
        if L.dim != 1:
            raise ValueError("triple rows are dependent")
        raw.append(plucker(F, L))
    hull = span(F, raw)
    if hull.dim != 8:
        raise ValueError("Grassmann image spans dim %d, expected 8" % hull.dim)
    X = [normalize(F, hull.coords_in(p)) for p in raw]
    return VeroneseanModel(alg, plane, X, construction)


def build_vset_juxtaposition(alg, plane=None):
    plane = plane or build_plane(alg)
    return _grassmann_model(alg, plane, _juxtaposition_rows, "juxtaposition")


def build_vset_reduction(alg, plane=None):
    """Same line set as juxtaposition, derived from the module structure;
    the row spans are asserted equal line by line."""
    plane = plane or build_plane(alg)
    F = alg.field
    for t in plane.points:
        if Subspace(F, _reduction_rows(alg, t)) != Subspace(F, _juxtaposition_rows(alg, t)):
            raise AssertionError("reduction and juxtaposition spans differ at %r" % (t,))
    return _grassmann_model(alg, plane, _reduction_rows, "reduction")


# ---------------------------------------------------------------------------
# construction 4: parametrization

def parametrization_coords(alg, triple, zeta):
    """(norm x, norm y, norm z, tr(s(x)y), tr(s(y)z), tr(s(z)x),
    tr(zeta s(x)y), tr(zeta s(y)z), tr(zeta s(z)x)); all lie in K."""
    x, y, z = triple
    s = alg.sigma
    pairs = (alg.mul(s(x), y), alg.mul(s(y), z), alg.mul(s(z), x))
    out = (alg.norm(x), alg.norm(y), alg.norm(z))
    out += tuple(alg.trace(w) for w in pairs)
    out += tuple(alg.trace(alg.mul(zeta, w)) for w in pairs)
    return out


def build_vset_parametrization(alg, zeta=None, plane=None, matrices_model=None):
    """Image of the plane under the parametrization; returns a report dict
    with the span dimension and, depending on the discriminant, the fitted
    identification (matrices model, quadric Veronese, or squares plane)."""
    if zeta is None:
        zeta = alg.iota
    if alg.xy(zeta)[1] == 0:
        raise ValueError("zeta must lie outside K*1")
    plane = plane or build_plane(alg)
    F = alg.field
    pts = [normalize(F, parametrization_coords(alg, t, zeta)) for t in plane.points]
    hull = span(F, pts)
    report = {"points": pts, "span_dim": hull.dim, "zeta": alg.xy(zeta),
              "discriminant": alg.discriminant}
    if alg.discriminant != 0:
        model = matrices_model or build_vset_matrices(alg, plane)
        proj = fit_model_points(F, pts, model.X)
        report["equivalent_to_matrices"] = proj is not None
        report["projectivity"] = proj
    elif F.p != 2:
        # dual numbers, odd characteristic: quadric Veronese on the r-quotient
        assert hull.dim == 5
        vero, pg2 = quadric_veronese_points(F)
        vmap = {p: vero[i] for i, p in enumerate(pg2)}
        src, dst = [], []
        for i, t in enumerate(plane.points):
            src.append(normalize(F, hull.coords_in(pts[i])))
            dst.append(vmap[plane.pt_proj_r[i]])
        proj = fit_model_points(F, src, dst)
        report["equivalent_to_veronese"] = proj is not None
        report["projectivity"] = proj
    else:
        # dual numbers, characteristic 2: the plane over the squares
        assert hull.dim == 2
        report["squares_plane"] = True
    return report


# ---------------------------------------------------------------------------
# projective equivalence on a known index correspondence

def _frame_from_points(F, pts):
    """Indices of N+2 points of pts in general position: a greedy maximal
    independent set plus a unit point with all coordinates nonzero over it;
    falls back to reversed scan order if the first pass finds no unit point."""
    n1 = len(pts[0])
    for order in (range(len(pts)), range(len(pts) - 1, -1, -1)):
        idxs, rows = [], []
        for i in order:
            red = rref(F, rows + [pts[i]])[0]
            if len(red) > len(rows):
                rows = list(red)
                idxs.append(i)
                if len(idxs) == n1:
                    break
        if len(idxs) < n1:
            return None
        cols = tuple(zip(*[pts[i] for i in idxs]))
        for i in order:
            if i in idxs:
                continue
            lam = solve_square(F, cols, pts[i])
            if lam is not None and all(lam):
                return idxs + [i]
    return None


def fit_model_points(F, src_pts, dst_pts):
    """The projectivity carrying src_pts[i] to dst_pts[i] for every i, or
    None.  Solved linearly: a greedy independent source basis B maps to the
    corresponding destination points up to unknown scalars mu_i, and every
    remaining correspondence, written in both bases, ties the mu_i of its
    support together; the result is verified on all points."""
    n1 = len(src_pts[0])
    base, rows = [], []
    for i, p in enumerate(src_pts):
        red = rref(F, rows + [p])[0]
        if len(red) > len(rows):
            rows = list(red)
            base.append(i)
            if len(base) == n1:
                break
    if len(base) < n1:
        return None
    colS = tuple(zip(*[src_pts[i] for i in base]))
    colD = tuple(zip(*[dst_pts[i] for i in base]))
    if projgeom.mat_inv(F, colD) is None:
        return None
    pairs = []
    for i, p in enumerate(src_pts):
        if i in base:
            continue
        lam = solve_square(F, colS, p)
        gam = solve_square(F, colD, dst_pts[i])
        if lam is None or gam is None:
            return None
        if any((l == 0) != (g == 0) for l, g in zip(lam, gam)):
            return None
        pairs.append((lam, gam))
    mu = [None] * n1
    progress = True
    while progress and any(m is None for m in mu):
        progress = False
        for lam, gam in pairs:
            supp = [k for k in range(n1) if lam[k]]
            known = next((k for k in supp if mu[k] is not None), None)
            if known is None:
                if any(m is not None for m in mu):
                    continue
                nu = 1  # first pair anchors the overall scalar
            else:
                nu = F.div(F.mul(mu[known], lam[known]), gam[known])
            for k in supp:
                val = F.div(F.mul(nu, gam[k]), lam[k])
                if mu[k] is None:
                    mu[k] = val
                    progress = True
    if any(m is None for m in mu):
        return None
    scaled = tuple(tuple(F.mul(mu[j], colD[i][j]) for j in range(n1)) for i in range(n1))
    M = projgeom.mat_mul(F, scaled, projgeom.mat_inv(F, colS))
    for s, d in zip(src_pts, dst_pts):
        if projgeom.apply_projectivity(F, M, s) != normalize(F, d):
            return None
    return M


def models_equivalent(model_a, model_b):
    """Fitted projectivity between two index-aligned models, or None."""
    return fit_model_points(model_a.algebra.field, model_a.X, model_b.X)


# ---------------------------------------------------------------------------
# reference varieties

def segre_points(m, n, field):
    """Products of point pairs PG(m) x PG(n) in PG((m+1)(n+1)-1, q)."""
    if (m, n) not in ((1, 2), (1, 3), (2, 2)):
        raise ValueError("unsupported Segre type (%d, %d)" % (m, n))
    F = field
    left = projgeom.enumerate_points(m, F)
    right = projgeom.enumerate_points(n, F)
    out = []
    for a in left:
        for b in right:
            out.append(normalize(F, tuple(F.mul(x, y) for x in a for y in b)))
    assert len(set(out)) == len(out)
    return out


def segre_pair_map(m, n, field):
    """{(left point, right point): product point} for correspondence fitting."""
    F = field
    out = {}
    for a in projgeom.enumerate_points(m, F):
        for b in projgeom.enumerate_points(n, F):
            out[(a, b)] = normalize(F, tuple(F.mul(x, y) for x in a for y in b))
    return out


def segre_reference_model(n, field):
    """The Segre variety S_{1,n} with its natural family of hypos
    (line x line images); returns (X, Xi list of (subspace, quadric))."""
    F = field
    left = projgeom.enumerate_points(1, F)
    right = projgeom.enumerate_points(n, F)
    prod = {}
    for a in left:
        for b in right:
            prod[(a, b)] = normalize(F, tuple(F.mul(x, y) for x in a for y in b))
    X = sorted(set(prod.values()))
    lines = set()
    for b1, b2 in itertools.combinations(right, 2):
        lines.add(projgeom.line_through(F, b1, b2))
    Xi = []
    for L in sorted(lines, key=sorted):
        pts = [prod[(a, b)] for a in left for b in L]
        sub = span(F, pts)
        rep = projgeom.classify_quadric(sub, pts)
        Xi.append((sub, rep))
    return X, Xi


def quadric_veronese_points(field):
    """((x2, y2, z2, xy, yz, zx) image, base points) of PG(2, q)."""
    F = field
    base = projgeom.enumerate_points(2, F)
    img = [normalize(F, (F.mul(x, x), F.mul(y, y), F.mul(z, z),
                         F.mul(x, y), F.mul(y, z), F.mul(z, x)))
           for (x, y, z) in base]
    return img, base


def scroll_s12(field):
    """Normal rational cubic scroll in PG(4, q): directrix line (u, v, 0, 0, 0),
    base conic (0, 0, u^2, uv, v^2), rulings joining equal parameters.
    Returns dict with points, rulings, directrix, conic (parameter-aligned)."""
    F = field
    params = projgeom.enumerate_points(1, F)
    directrix, conic, rulings = [], [], []
    pts = set()
    for (u, v) in params:
        d = normalize(F, (u, v, 0, 0, 0))
        c = normalize(F, (0, 0, F.mul(u, u), F.mul(u, v), F.mul(v, v)))
        directrix.append(d)
        conic.append(c)
        rul = projgeom.line_through(F, d, c)
        rulings.append(rul)
        pts |= rul
    return {"points": sorted(pts), "rulings": rulings,
            "directrix": directrix, "conic": conic, "params": params}


def scroll_cone(field):
    """Cone in PG(5, q) with vertex (0,...,0,1) over the embedded scroll."""
    F = field
    sc = scroll_s12(field)
    vertex = (0, 0, 0, 0, 0, 1)
    pts = {vertex}
    base = []
    for p in sc["points"]:
        p6 = tuple(p) + (0,)
        base.append(p6)
        for k in F.elements():
            pts.add(normalize(F, projgeom.vec_add(F, p6, projgeom.vec_scale(F, k, vertex))))
    return {"points": sorted(pts), "vertex": vertex, "base": base, "scroll": sc}
