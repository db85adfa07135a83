"""Axiom checkers and structural verification engines for the V-set models.

Three axiom families over a point set X with a family Xi of 3-spaces:
  V-axioms: pair coverage, controlled pairwise Xi intersections against the
            closure X-bar (X plus quadric singular points), tangent spaces
            at a point spanning at most dim 4.
  S-axioms: as above with intersections inside X itself (hyperbolic case).
  H-axioms: intersections inside X union Y where Y is the tube vertex set
            (cylindric / Hjelmslev case), plus the full Hjelmslev-plane
            tool chest: vertex plane, singular lines/planes, the quotient
            map chi, affine-plane fibers, vertex cones over the normal
            rational cubic scroll, and the embedded quadric Veronese.

Every checker is a pure predicate that reports witnesses instead of
throwing, so mutated negative controls produce inspectable failures.
"""
from __future__ import annotations

import itertools

from . import projgeom, vsets
from .projgeom import (INF, Subspace, cross_ratio, intersect, line_through,
                       normalize, span, tangent_space)
from .quadalg import DUAL, EXTENSION, SPLIT
from .ringplane import canonicalize

MAX_WITNESSES = 10


class AxiomReport:
    """Outcome of one axiom check: holds iff the witness list is empty."""

    def __init__(self, axiom, witnesses=None, stats=None):
        self.axiom = axiom
        self.witnesses = list(witnesses or [])[:MAX_WITNESSES]
        self.witness_count = len(witnesses or [])
        self.stats = dict(stats or {})

    @property
    def holds(self):
        return self.witness_count == 0

    def as_dict(self):
        return {"axiom": self.axiom, "holds": self.holds,
                "witnesses": [list(w) if isinstance(w, tuple) else w
                              for w in self.witnesses],
                "witness_count": self.witness_count,
                "stats": self.stats}

    def __repr__(self):
        return "AxiomReport(%s, %s)" % (self.axiom, "holds" if self.holds else
                                        "%d witnesses" % self.witness_count)


# ---------------------------------------------------------------------------
# generic axiom engines over (X, Xi)

def coverage_report(name, X, ptsets):
    """Every pair of X-points lies in at least one member point set."""
    index = {p: i for i, p in enumerate(X)}
    m = len(X)
    covered = set()
    for pts in ptsets:
        idxs = sorted(index[p] for p in pts)
        for a, b in itertools.combinations(idxs, 2):
            covered.add((a, b))
    witnesses = [(a, b) for a in range(m) for b in range(a + 1, m)
                 if (a, b) not in covered]
    return AxiomReport(name, witnesses, {"pairs": m * (m - 1) // 2})


def intersection_report(name, entries, allowed, codim_sets=None):
    """Pairwise Xi intersections: every point of xi_1 meet xi_2 must lie in
    `allowed(i, j, point)`; when codim_sets is given, the points of the
    intersection selected by it must additionally fit inside a single
    codimension-1 subspace of the intersection."""
    witnesses = []
    dims = {}
    F = entries[0][0].field
    n = len(entries)
    for i in range(n):
        for j in range(i + 1, n):
            S = intersect(entries[i][0], entries[j][0])
            dims[S.dim] = dims.get(S.dim, 0) + 1
            if S.dim < 0:
                continue
            pts = S.points()
            bad = [p for p in pts if not allowed(i, j, p)]
            if bad:
                witnesses.append((i, j, "outside", bad[0]))
                continue
            if codim_sets is not None:
                special = [p for p in pts if codim_sets(i, j, p)]
                if special:
                    sub = span(F, special)
                    if sub.dim > S.dim - 1:
                        witnesses.append((i, j, "codim", sub.dim, S.dim))
    return AxiomReport(name, witnesses, {"intersection_dims": dims})


def tangent_union(F, x, entries):
    """Span of the tangent spaces of x over all members containing x."""
    rows = []
    for sub, pts in entries:
        if x in pts:
            rows.extend(tangent_space(x, pts, sub).basis)
    return Subspace(F, rows)


def tangent_report(name, F, X, entries, max_dim=4):
    witnesses = []
    dims = {}
    pairs = [(sub, frozenset(pts)) for sub, pts in entries]
    for i, x in enumerate(X):
        T = tangent_union(F, x, pairs)
        dims[T.dim] = dims.get(T.dim, 0) + 1
        if T.dim > max_dim:
            witnesses.append((i, T.dim))
    return AxiomReport(name, witnesses, {"tangent_dims": dims})


# ---------------------------------------------------------------------------
# V-axioms (the Mazzocca-Melone suite)

def _model_entries(model):
    return [(xi.subspace, xi.quadric.points) for xi in model.Xi]


def check_v_axioms(model):
    F = model.algebra.field
    Xset = set(model.X)
    entries = _model_entries(model)
    closures = []
    for xi in model.Xi:
        extra = {xi.quadric.vertex} if xi.quadric.vertex else set()
        closures.append(frozenset(xi.quadric.points) | extra)
    v1 = coverage_report("V1", model.X, [pts for _, pts in entries])
    v2 = intersection_report(
        "V2", entries,
        allowed=lambda i, j, p: p in closures[i] and p in closures[j],
        codim_sets=lambda i, j, p: p not in Xset)
    v3 = tangent_report("V3*", F, model.X, entries)
    return {"V1": v1, "V2": v2, "V3*": v3}


def reference_point_index(model):
    alg = model.algebra
    triple = canonicalize(alg, (alg.one, 0, 0))
    return model.plane.point_index[triple]


def reference_line_index(model):
    alg = model.algebra
    triple = canonicalize(alg, (0, 0, alg.one))
    return model.plane.line_index[triple]


def reference_tangent_check(model):
    """In matrices coordinates, the tangent space at the image of
    V*(1, 0, 0) must be exactly {X1 = X2 = X5 = X6 = 0}."""
    F = model.algebra.field
    x = model.X[reference_point_index(model)]
    entries = [(xi.subspace, frozenset(xi.quadric.points)) for xi in model.Xi]
    T = tangent_union(F, x, entries)
    unit = [0] * 9
    rows = []
    for k in (0, 3, 4, 7, 8):
        row = list(unit)
        row[k] = 1
        rows.append(tuple(row))
    return T == Subspace(F, rows), T


def reference_line_quadric_check(model):
    """The 3-space of the line V*[0, 0, 1] is {X2=X5=X6=X7=X8=0} and its
    quadric is exactly the solution set of X0 X1 = X3^2 + t X3 X4 + n X4^2."""
    alg = model.algebra
    F = alg.field
    xi = model.Xi[reference_line_index(model)]
    unit = [0] * 9
    rows = []
    for k in (0, 1, 3, 4):
        row = list(unit)
        row[k] = 1
        rows.append(tuple(row))
    sub = Subspace(F, rows)
    if xi.subspace != sub:
        return False

    def on_quadric(p):
        lhs = F.mul(p[0], p[1])
        rhs = F.add(F.mul(p[3], p[3]),
                    F.add(F.mul(alg.t, F.mul(p[3], p[4])),
                          F.mul(alg.n, F.mul(p[4], p[4]))))
        return lhs == rhs

    solutions = {p for p in sub.points() if on_quadric(p)}
    expected = set(xi.quadric.points)
    if xi.quadric.vertex is not None:
        expected.add(xi.quadric.vertex)  # the cone point the tube excludes
    return solutions == expected


# ---------------------------------------------------------------------------
# S-axioms and Segre identification

def s_axiom_reports(F, X, entries):
    Xset = set(X)
    s1 = coverage_report("S1", X, [pts for _, pts in entries])
    s2 = intersection_report("S2", entries,
                             allowed=lambda i, j, p: p in Xset)
    s3 = tangent_report("S3*", F, X, entries)
    return {"S1": s1, "S2": s2, "S3*": s3}


def segre_identification(model):
    """Fitted projectivity from the Split model onto the Segre variety of
    type (2, 2), through the two neighbor-quotient projections (both
    orders tried)."""
    alg = model.algebra
    F = alg.field
    plane = model.plane
    pm = vsets.segre_pair_map(2, 2, F)
    for first, second in ((plane.pt_proj_r, plane.pt_proj_s),
                          (plane.pt_proj_s, plane.pt_proj_r)):
        dst = [pm[(first[i], second[i])] for i in range(len(plane.points))]
        M = vsets.fit_model_points(F, model.X, dst)
        if M is not None:
            return M
    return None


def check_s_axioms(model):
    if model.algebra.kind != SPLIT:
        raise ValueError("S-axioms apply to the Split kind only")
    F = model.algebra.field
    out = s_axiom_reports(F, model.X, _model_entries(model))
    M = segre_identification(model)
    out["segre_projectivity"] = M
    out["segre_equivalent"] = M is not None
    out["singular_plane_census"] = singular_plane_census(F, model.X)
    return out


def check_s_reference(n, field):
    """S-axiom positive control on the Segre variety S_{1,n}, n in {2, 3},
    with its natural family of hypos."""
    X, Xi = vsets.segre_reference_model(n, field)
    entries = [(sub, rep.points) for sub, rep in Xi]
    bad_kind = [i for i, (_, rep) in enumerate(Xi) if rep.kind != projgeom.HYPO]
    out = s_axiom_reports(field, X, entries)
    out["ambient_dim"] = 2 * (n + 1) - 1
    out["all_hypos"] = not bad_kind
    return out


def singular_plane_census(F, X):
    """Full projective planes inside X and the per-point membership counts."""
    Xset = set(X)
    full_lines = set()
    Xl = sorted(Xset)
    for a, b in itertools.combinations(Xl, 2):
        L = line_through(F, a, b)
        if L <= Xset:
            full_lines.add(L)
    planes = set()
    for L in full_lines:
        base = sorted(L)
        for p in Xl:
            if p in L:
                continue
            P = span(F, base[:2] + [p])
            if P.dim == 2 and set(P.points()) <= Xset:
                planes.add(P)
    counts = {p: 0 for p in Xl}
    for P in planes:
        for p in P.points():
            counts[p] += 1
    hist = {}
    for v in counts.values():
        hist[v] = hist.get(v, 0) + 1
    return {"planes": sorted(planes, key=lambda s: s.basis),
            "per_point_counts": hist, "full_lines": len(full_lines)}


# ---------------------------------------------------------------------------
# conic cross-ratio

def conic_tangent(F, plane_sub, conic_pts, x):
    """The unique line of the plane through x meeting the conic only in x."""
    tangents = []
    seen = set()
    for y in plane_sub.points():
        if y == x or y in seen:
            continue
        L = line_through(F, x, y)
        seen |= L - {x}
        if L & set(conic_pts) == {x}:
            tangents.append(L)
    if len(tangents) != 1:
        raise ValueError("no unique tangent (%d found)" % len(tangents))
    return tangents[0]


def conic_cross_ratio(F, conic_pts, four):
    """Cross-ratio of four conic points, via projection from a fifth conic
    point (or, when the conic has only four points, from the first of the
    four using its tangent line)."""
    plane_sub = span(F, conic_pts)
    others = [p for p in conic_pts if p not in four]
    center = others[0] if others else four[0]
    screen_pts = [p for p in conic_pts if p != center][:2]
    screen = span(F, screen_pts)
    images = []
    for p in four:
        if p == center:
            T = conic_tangent(F, plane_sub, conic_pts, center)
            hit = [t for t in T if screen.contains(t)]
            assert len(hit) == 1
            images.append(hit[0])
        else:
            images.append(projgeom.project_from(span(F, [center]), p, screen))
    return cross_ratio(F, *images)


# ---------------------------------------------------------------------------
# Hjelmslev machinery

def _plane_is_singular(F, P, Xset, Yset):
    """A plane is singular iff its points are q^2 X-points plus a full line
    of Y-points (the radical); returns the radical or None."""
    pts = set(P.points())
    inY = pts & Yset
    inX = pts & Xset
    if inX | inY != pts or not inY:
        return None
    rad = span(F, sorted(inY))
    if rad.dim != 1 or set(rad.points()) != inY:
        return None
    return frozenset(inY)


def _fit_free(F, src_pts, dst_pts):
    """Like vsets.fit_model_points, but when the correspondences do not tie
    all basis scalars together, the loose ones are anchored at 1 (used when
    any completion is acceptable and verified downstream)."""
    n1 = len(src_pts[0])
    base, rows = [], []
    for i, p in enumerate(src_pts):
        red = projgeom.rref(F, rows + [p])[0]
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
        lam = projgeom.solve_square(F, colS, p)
        gam = projgeom.solve_square(F, colD, dst_pts[i])
        if lam is None or gam is None:
            return None
        if any((l == 0) != (g == 0) for l, g in zip(lam, gam)):
            return None
        pairs.append((lam, gam))
    mu = [None] * n1
    while any(m is None for m in mu):
        progress = False
        for lam, gam in pairs:
            supp = [k for k in range(n1) if lam[k]]
            known = next((k for k in supp if mu[k] is not None), None)
            if known is None:
                continue
            nu = F.div(F.mul(mu[known], lam[known]), gam[known])
            for k in supp:
                val = F.div(F.mul(nu, gam[k]), lam[k])
                if mu[k] is None:
                    mu[k] = val
                    progress = True
        if not progress:
            mu[mu.index(None)] = 1  # anchor the next loose scalar group
    scaled = tuple(tuple(F.mul(mu[j], colD[i][j]) for j in range(n1))
                   for i in range(n1))
    M = projgeom.mat_mul(F, scaled, projgeom.mat_inv(F, colS))
    for s, t in zip(src_pts, dst_pts):
        if projgeom.apply_projectivity(F, M, s) != normalize(F, t):
            return None
    return M


def identify_scroll_cone(F, y, ruling_planes, tubes_at_y, piY_pts):
    """Projectivity from the projection of the vertex cone at y onto the
    reference normal rational cubic scroll in PG(4, q), or None.

    ruling_planes: the singular planes through y; tubes_at_y: point sets of
    the tubes with vertex y (candidate transversal conics)."""
    cone_pts = set(piY_pts)
    for P in ruling_planes:
        cone_pts |= set(P.points())
    S5 = span(F, sorted(cone_pts))
    if S5.dim != 5:
        return None
    cy = S5.coords_in(y)
    j = next(k for k, c in enumerate(cy) if c)
    screen = span(F, [S5.basis[k] for k in range(6) if k != j])
    center = span(F, [y])

    def proj(p):
        return projgeom.project_from(center, p, screen)

    directrix = {proj(p) for p in piY_pts if p != y}
    rulings = []
    for P in ruling_planes:
        img = {proj(p) for p in P.points() if p != y}
        rulings.append(sorted(img))
    q = F.q
    if any(len(r) != q + 1 for r in rulings) or len(rulings) != q + 1:
        return None
    d = []
    for r in rulings:
        hit = [p for p in r if p in directrix]
        if len(hit) != 1:
            return None
        d.append(hit[0])
    # parameter of each ruling, via the cross-ratio against the first three
    params = [(1, 0), (0, 1), (1, 1)]
    for i in range(3, q + 1):
        t = cross_ratio(F, d[0], d[1], d[2], d[i])
        params.append((1, 0) if t == INF else (t, 1))

    def ref_ruling(u, v):
        dd = normalize(F, (u, v, 0, 0, 0))
        cc = normalize(F, (0, 0, F.mul(u, u), F.mul(u, v), F.mul(v, v)))
        return dd, cc

    scroll_pts = set(vsets.scroll_s12(F)["points"])
    all_imgs = [normalize(F, screen.coords_in(p))
                for r in rulings for p in r]
    for tube in tubes_at_y:
        conic = {proj(p) for p in tube}
        src, dst = [], []
        ok = True
        for i, r in enumerate(rulings):
            hits = [p for p in r if p in conic]
            if len(hits) != 1:
                ok = False
                break
            dd, cc = ref_ruling(*params[i])
            src.extend([normalize(F, screen.coords_in(d[i])),
                        normalize(F, screen.coords_in(hits[0]))])
            dst.extend([dd, cc])
        if not ok:
            continue
        # a map aligning directrix and one transversal conic sends every
        # ruling line onto the matching reference ruling; certify by mapping
        # the whole projected cone onto the reference scroll point set
        M = _fit_free(F, src, dst)
        if M is None:
            continue
        image = {projgeom.apply_projectivity(F, M, p) for p in all_imgs}
        if image == scroll_pts:
            return {"projectivity": M, "directrix": sorted(directrix),
                    "rulings": rulings, "params": params, "screen": screen}
    return None


def scroll_cross_ratio_check(F, scroll_info, tubes_at_y, y, center_sub=None):
    """For every 4-subset of rulings: the cross-ratio of the directrix
    points equals the conic cross-ratio of the corresponding transversal
    conic points (checked on each projected tube conic); q >= 3 only."""
    q = F.q
    if q < 3:
        return AxiomReport("scroll-cross-ratio", [], {"skipped": "q < 3"})
    rulings = scroll_info["rulings"]
    directrix = set(scroll_info["directrix"])
    d = []
    for r in rulings:
        d.append(next(p for p in r if p in directrix))
    witnesses = []
    checked = 0
    center = span(F, [y])
    # reuse the projection through which the scroll was identified
    for tube in tubes_at_y[:2]:
        conic = sorted({projgeom.project_from(center, p, scroll_info["screen"])
                        for p in tube})
        cmap = []
        for r in rulings:
            hit = [p for p in r if p in conic]
            if len(hit) != 1:
                cmap = None
                break
            cmap.append(hit[0])
        if cmap is None:
            continue
        for quad in itertools.combinations(range(q + 1), 4):
            cr_d = cross_ratio(F, *[d[i] for i in quad])
            cr_c = conic_cross_ratio(F, conic, [cmap[i] for i in quad])
            checked += 1
            if cr_d != cr_c:
                witnesses.append((quad, cr_d, cr_c))
    return AxiomReport("scroll-cross-ratio", witnesses, {"checked": checked})


def affine_plane_report(name, points, lines):
    """Axiomatic affine-plane check: two points on exactly one line, the
    parallel axiom, and uniform line size."""
    points = set(points)
    lines = [frozenset(l) for l in lines]
    n = len(points)
    q = round(n ** 0.5)
    witnesses = []
    if q * q != n:
        witnesses.append(("point-count", n))
    if any(len(l) != q for l in lines):
        witnesses.append(("line-size", sorted({len(l) for l in lines})))
    for a, b in itertools.combinations(sorted(points), 2):
        cnt = sum(1 for l in lines if a in l and b in l)
        if cnt != 1:
            witnesses.append(("join", a, b, cnt))
            if len(witnesses) > MAX_WITNESSES:
                break
    for l in lines:
        for p in sorted(points - l):
            par = [m for m in lines if p in m and not (m & l)]
            if len(par) != 1:
                witnesses.append(("parallel", sorted(l)[0], p, len(par)))
                break
    return AxiomReport(name, witnesses, {"order": q, "lines": len(lines)})


def check_h_axioms(model):
    """The full Hjelmslev verification suite on a Dual-kind model."""
    alg = model.algebra
    if alg.kind != DUAL:
        raise ValueError("H-axioms apply to the Dual kind only")
    F = alg.field
    q = F.q
    X = model.X
    Xset = set(X)
    index = {p: i for i, p in enumerate(X)}
    entries = _model_entries(model)
    out = {}

    # vertex set and its plane
    vertices = [xi.quadric.vertex for xi in model.Xi]
    Y = sorted(set(vertices))
    Yset = set(Y)
    piY = span(F, Y)
    out["Y"] = Y
    out["pi_Y"] = piY
    out["Y_is_plane"] = (piY.dim == 2 and set(piY.points()) == Yset
                         and len(Y) == q * q + q + 1)

    # H1 / H2 / H3*
    out["H1"] = coverage_report("H1", X, [pts for _, pts in entries])
    subs = [sub for sub, _ in entries]
    # the "Y meets both" clause of H2: if every member's 3-space carries a
    # Y-point (each tube space contains its vertex), the clause is vacuous
    has_Y = [any(p in Yset for p in sub.points()) for sub in subs]
    h2_extra = []
    if not all(has_Y):
        for i in range(len(subs)):
            for j in range(i + 1, len(subs)):
                if has_Y[i] and has_Y[j]:
                    continue
                S = intersect(subs[i], subs[j])
                if S.dim >= 0 and any(p in Yset for p in S.points()):
                    h2_extra.append((i, j))
    out["H2"] = intersection_report(
        "H2", entries,
        allowed=lambda i, j, p: p in Xset or p in Yset,
        codim_sets=lambda i, j, p: p in Yset)
    if h2_extra:
        out["H2"] = AxiomReport("H2", out["H2"].witnesses + h2_extra,
                                out["H2"].stats)
    out["H3*"] = tangent_report("H3*", F, X, entries)

    # singular lines (tube generators completed by their vertex)
    singular_lines = {}
    for li, xi in enumerate(model.Xi):
        v = xi.quadric.vertex
        for gen in xi.quadric.generators:
            sl = frozenset(gen) | {v}
            singular_lines.setdefault(sl, set()).add(li)
    out["singular_lines"] = singular_lines

    tubes_through = [set() for _ in X]
    for li, xi in enumerate(model.Xi):
        for p in xi.quadric.points:
            tubes_through[index[p]].add(li)
    g_x = {i: sum(1 for sl in singular_lines if X[i] in sl) for i in range(len(X))}
    n_x = {i: len(tubes_through[i]) for i in range(len(X))}

    # singular planes and the quotient map chi
    lines_at = {}
    for sl in singular_lines:
        for p in sl:
            if p in Xset:
                lines_at.setdefault(p, []).append(sl)
    planes = {}
    for p, sls in lines_at.items():
        for a, b in itertools.combinations(sls, 2):
            P = span(F, sorted(a | b))
            if P.dim != 2 or P in planes:
                continue
            rad = _plane_is_singular(F, P, Xset, Yset)
            if rad is not None:
                planes[P] = rad
    out["singular_planes"] = planes
    chi = {}
    chi_fail = []
    for i, x in enumerate(X):
        mine = [P for P in planes if P.contains(x)]
        if len(mine) != 1:
            chi_fail.append((i, len(mine)))
        else:
            chi[i] = planes[mine[0]]
    out["chi_well_defined"] = AxiomReport("chi", chi_fail,
                                          {"planes": len(planes)})

    # singular line/plane corollaries
    line_plane = []
    for sl in singular_lines:
        holders = [P for P in planes if sl <= set(P.points())]
        if len(holders) != 1:
            line_plane.append((sorted(sl)[0], len(holders)))
    out["line_in_unique_plane"] = AxiomReport("line-in-unique-plane",
                                              line_plane, {})
    piY_lines = set()
    for a, b in itertools.combinations(Y, 2):
        piY_lines.add(line_through(F, a, b))
    radicals = {}
    for P, rad in planes.items():
        radicals.setdefault(rad, []).append(P)
    union = set()
    for P in planes:
        union |= set(P.points())
    out["radical_bijection"] = (set(radicals) == piY_lines
                                and all(len(v) == 1 for v in radicals.values())
                                and union == Xset | Yset)

    # Hj1 / Hj2
    hj1_wit = []
    for i, j in itertools.combinations(range(len(X)), 2):
        cnt = len(tubes_through[i] & tubes_through[j])
        if cnt < 1 or ((cnt == 1) != (chi.get(i) != chi.get(j))):
            hj1_wit.append((i, j, cnt))
    out["Hj1"] = AxiomReport("Hj1", hj1_wit, {})
    hj2_wit = []
    ptsets = [frozenset(xi.quadric.points) for xi in model.Xi]
    for i, j in itertools.combinations(range(len(model.Xi)), 2):
        cnt = len(ptsets[i] & ptsets[j])
        if cnt < 1 or ((cnt == 1) != (vertices[i] != vertices[j])):
            hj2_wit.append((i, j, cnt))
    out["Hj2"] = AxiomReport("Hj2", hj2_wit, {})

    # Hj3: chi-fibers with tube traces are affine planes
    hj3 = []
    singles = 0
    for P, rad in planes.items():
        fiber = {p for p in P.points() if p in Xset}
        traces = set()
        for pts in ptsets:
            tr = frozenset(pts & fiber)
            if len(tr) >= 2:
                traces.add(tr)
            elif len(tr) == 1:
                singles += 1
        rep = affine_plane_report("Hj3-fiber", fiber, sorted(traces, key=sorted))
        if not rep.holds or len(fiber) != q * q:
            hj3.append((sorted(rad)[0], rep.witnesses[:2], len(fiber)))
    out["Hj3"] = AxiomReport("Hj3", hj3, {"singleton_traces": singles})

    # Hj4: tubes with a common vertex, lines = generator pencils
    hj4 = []
    for y in Y:
        tubes_y = [li for li in range(len(model.Xi)) if vertices[li] == y]
        gens_y = [sl for sl in singular_lines if y in sl]
        pencils = []
        for g in gens_y:
            pencils.append(frozenset(li for li in tubes_y
                                     if (g - {y}) <= ptsets[li]))
        rep = affine_plane_report("Hj4-pencil", tubes_y, pencils)
        if not rep.holds:
            hj4.append((y, rep.witnesses[:2]))
    out["Hj4"] = AxiomReport("Hj4", hj4, {})

    # vertex cones over the scroll
    scroll_ok, cr_reports = [], []
    for y in Y:
        tubes_y = [sorted(ptsets[li]) for li in range(len(model.Xi))
                   if vertices[li] == y]
        ruling_planes = [P for P in planes if P.contains(y)]
        Xy = set()
        for sl in singular_lines:
            if y in sl:
                Xy |= (sl - {y})
        ok_size = len(Xy) == q * q * (q + 1)
        ok_span = span(F, sorted(Xy)).dim == 5
        info = identify_scroll_cone(F, y, ruling_planes, tubes_y, piY.points())
        scroll_ok.append(bool(info) and ok_size and ok_span)
        if info and q >= 3:
            cr_reports.append(scroll_cross_ratio_check(F, info, tubes_y, y))
    out["scroll_cones"] = AxiomReport(
        "scroll-cones", [Y[i] for i, ok in enumerate(scroll_ok) if not ok],
        {"vertices": len(Y)})
    out["scroll_cross_ratio"] = AxiomReport(
        "scroll-cross-ratio",
        sum((r.witnesses for r in cr_reports), []),
        {"checked": sum(r.stats.get("checked", 0) for r in cr_reports)})

    # embedded quadric Veronese (images of the scalar triples)
    scalars = {alg.scalar(k) for k in F.elements()}
    vero_idx = [i for i, t in enumerate(model.plane.points)
                if all(c in scalars for c in t)]
    Vpts = [X[i] for i in vero_idx]
    Vspan = span(F, Vpts)
    vero_ref, base = vsets.quadric_veronese_points(F)
    vmap = {b: v for b, v in zip(base, vero_ref)}
    src, dst = [], []
    for i in vero_idx:
        t = model.plane.points[i]
        kpt = normalize(F, tuple(alg.xy(c)[0] for c in t))
        src.append(normalize(F, Vspan.coords_in(X[i])))
        dst.append(vmap[kpt])
    fitted = vsets.fit_model_points(F, src, dst)
    out["veronese"] = {
        "span_dim": Vspan.dim,
        "skew_to_pi_Y": intersect(Vspan, piY).dim < 0,
        "projectivity": fitted,
        "identified": fitted is not None and Vspan.dim == 5,
    }

    # census
    gh, nh, xs = {}, {}, {}
    for v in g_x.values():
        gh[v] = gh.get(v, 0) + 1
    for v in n_x.values():
        nh[v] = nh.get(v, 0) + 1
    for y in Y:
        sz = sum(len(sl) - 1 for sl in singular_lines if y in sl)
        xs[sz] = xs.get(sz, 0) + 1
    census = {"n": len(X), "g_x": gh, "n_x": nh, "X_y_sizes": xs}
    if q == 2:
        gx0 = next(iter(gh)) if len(gh) == 1 else None
        nx0 = next(iter(nh)) if len(nh) == 1 else None
        census["identity_4nx_gx_1"] = (gx0 is not None and nx0 is not None
                                       and len(X) == 4 * nx0 + gx0 + 1)
    out["census"] = census
    return out


# ---------------------------------------------------------------------------
# uniqueness of quadrics inside X

def containment_uniqueness(model):
    """Exhaustive scan of the 3-spaces spanned by 4-subsets of X: no subset
    of X with the structure of the model's quadric kind (cap / tube / hypo)
    lives in a 3-space outside Xi."""
    alg = model.algebra
    F = alg.field
    if F.q > 3:
        raise ValueError("scan guarded to q <= 3")
    kind = {EXTENSION: projgeom.ELLIPTIC, DUAL: projgeom.TUBE,
            SPLIT: projgeom.HYPO}[alg.kind]
    quad_size = {EXTENSION: F.q ** 2 + 1, DUAL: F.q * (F.q + 1),
                 SPLIT: (F.q + 1) ** 2}[alg.kind]
    Xset = set(model.X)
    xi_bases = {xi.subspace.basis for xi in model.Xi}
    seen = {}
    for quad in itertools.combinations(model.X, 4):
        rows = projgeom.rref(F, quad)[0]
        if len(rows) == 4:
            seen[rows] = None
    witnesses = []
    outside_max = 0
    for rows in seen:
        S = Subspace(F, rows)
        meet = [p for p in S.points() if p in Xset]
        if rows in xi_bases:
            if len(meet) != quad_size:
                witnesses.append(("member-size", len(meet)))
            continue
        outside_max = max(outside_max, len(meet))
        if len(meet) < quad_size:
            continue
        for sub in itertools.combinations(meet, quad_size):
            if projgeom.classify_quadric(S, sub).kind == kind:
                witnesses.append(("outside", rows[0], len(meet)))
                break
    return AxiomReport("containment-uniqueness", witnesses,
                       {"spans": len(seen), "xi": len(xi_bases),
                        "quadric_size": quad_size,
                        "max_meet_outside": outside_max})


# ---------------------------------------------------------------------------
# per-point regular/singular labeling of a point set in a 3-space

def hypersurface_check(space, pts):
    """For each point: T_x computed inside the 3-space; 'regular' when it is
    a hyperplane of the space, 'singular' when it is the whole space."""
    out = []
    for x in sorted(set(pts)):
        T = tangent_space(x, pts, space)
        if T.dim == space.dim - 1:
            label = "regular"
        elif T.dim == space.dim:
            label = "singular"
        else:
            label = "dim-%d" % T.dim
        out.append((x, T.dim, label))
    return out
