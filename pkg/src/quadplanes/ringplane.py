"""The projective plane over a quadratic 2-dimensional algebra V.

Points and lines are unit-classes V*(x, y, z) of admissible triples
(triples with no nonzero annihilator), with incidence a*x + b*y + c*z = 0.
Canonical class representative: the lexicographically least triple of the
unit orbit.  Includes the neighboring relations, meets/joins of
non-neighboring elements, proper triangles/quadrangles, and the GL3(V)
action with its sharp-transitivity bookkeeping.
"""
from __future__ import annotations

import itertools

import numpy as np

from . import projgeom
from .quadalg import DUAL, EXTENSION, SPLIT


def admissible(alg, triple):
    """True iff no nonzero v in V annihilates the whole triple."""
    if alg.kind == EXTENSION:
        return any(triple)
    mt = alg.mul_table
    r, s = alg.r, alg.s
    if all(mt[r][t] == 0 for t in triple):
        return False
    if alg.kind == SPLIT and all(mt[s][t] == 0 for t in triple):
        return False
    return any(triple)


def canonicalize(alg, triple):
    """Lexicographically least triple in the unit orbit."""
    mt = alg.mul_table
    best = None
    for u in alg.units:
        row = mt[u]
        cand = (row[triple[0]], row[triple[1]], row[triple[2]])
        if best is None or cand < best:
            best = cand
    return best


def neighboring_pp_definition(alg, t1, t2):
    """Brute-force neighboring test: some (k, l) != (0, 0) with
    k*t1 = l*t2 componentwise."""
    mt = alg.mul_table
    for k in range(alg.size):
        rk = mt[k]
        a = (rk[t1[0]], rk[t1[1]], rk[t1[2]])
        for l in range(alg.size):
            if k == 0 and l == 0:
                continue
            rl = mt[l]
            if a == (rl[t2[0]], rl[t2[1]], rl[t2[2]]):
                return True
    return False


class PlaneModel:
    """The plane over alg: indexed points/lines, incidence, neighbor sets."""

    def __init__(self, alg):
        self.alg = alg
        self.points = self._enumerate_classes()
        self.lines = list(self.points)  # same canonical triples by duality
        self.point_index = {t: i for i, t in enumerate(self.points)}
        self.line_index = dict(self.point_index)
        self._build_projections()
        self._build_incidence()
        self.neighbor_pp = self._neighbor_sets(self.pt_proj_r, self.pt_proj_s)
        self.neighbor_ll = self._neighbor_sets(self.ln_proj_r, self.ln_proj_s)

    # ---- construction ------------------------------------------------------
    def _enumerate_classes(self):
        alg = self.alg
        n = alg.size
        mt = alg.mul_table
        visited = bytearray(n * n * n)
        out = []
        for x in range(n):
            for y in range(n):
                base = (x * n + y) * n
                for z in range(n):
                    if visited[base + z]:
                        continue
                    if not admissible(alg, (x, y, z)):
                        continue
                    out.append((x, y, z))
                    for u in alg.units:
                        row = mt[u]
                        visited[(row[x] * n + row[y]) * n + row[z]] = 1
        return out

    def _build_projections(self):
        alg = self.alg
        if alg.kind == EXTENSION:
            self.pt_proj_r = self.pt_proj_s = None
            self.ln_proj_r = self.ln_proj_s = None
            return
        K = alg.field

        def proj(gen):
            gmap = {alg.k_mul(k, gen): k for k in K.elements()}
            mt = alg.mul_table[gen]
            out = []
            for t in self.points:
                lam = (gmap[mt[t[0]]], gmap[mt[t[1]]], gmap[mt[t[2]]])
                out.append(projgeom.normalize(K, lam))
            return out

        self.pt_proj_r = proj(alg.r)
        self.pt_proj_s = proj(alg.s) if alg.kind == SPLIT else self.pt_proj_r
        self.ln_proj_r = self.pt_proj_r
        self.ln_proj_s = self.pt_proj_s

    def _neighbor_sets(self, proj_r, proj_s):
        m = len(self.points)
        if proj_r is None:
            return [frozenset([i]) for i in range(m)]
        groups_r, groups_s = {}, {}
        for i in range(m):
            groups_r.setdefault(proj_r[i], set()).add(i)
            groups_s.setdefault(proj_s[i], set()).add(i)
        return [frozenset(groups_r[proj_r[i]] | groups_s[proj_s[i]])
                for i in range(m)]

    def _build_incidence(self):
        alg = self.alg
        pts = np.array(self.points, dtype=np.int64)
        X, Y, Z = pts[:, 0], pts[:, 1], pts[:, 2]
        MT, AT = alg.np_mul, alg.np_add
        self.points_on_line = []
        self.incidence_value = []
        for (a, b, c) in self.lines:
            val = AT[AT[MT[a][X], MT[b][Y]], MT[c][Z]]
            self.incidence_value.append(val)
            self.points_on_line.append(frozenset(np.nonzero(val == 0)[0].tolist()))
        m = len(self.points)
        lt = [set() for _ in range(m)]
        for li, row in enumerate(self.points_on_line):
            for p in row:
                lt[p].add(li)
        self.lines_through_point = [frozenset(x) for x in lt]

    # ---- basic queries -----------------------------------------------------
    def incident(self, pi, li):
        return pi in self.points_on_line[li]

    def eval_incidence(self, line_triple, point_triple):
        alg = self.alg
        out = 0
        for a, x in zip(line_triple, point_triple):
            out = alg.add(out, alg.mul(a, x))
        return out

    def neighboring_pp(self, i, j):
        return j in self.neighbor_pp[i]

    def neighboring_ll(self, i, j):
        return j in self.neighbor_ll[i]

    def neighboring_pl(self, pi, li):
        val = self.eval_incidence(self.lines[li], self.points[pi])
        return not self.alg.is_unit(val)

    # ---- meets, joins, line points ------------------------------------------
    def cross(self, t1, t2):
        alg = self.alg
        a1, b1, c1 = t1
        a2, b2, c2 = t2
        A = alg.sub(alg.mul(b1, c2), alg.mul(b2, c1))
        B = alg.sub(alg.mul(c1, a2), alg.mul(c2, a1))
        C = alg.sub(alg.mul(a1, b2), alg.mul(a2, b1))
        return (A, B, C)

    def meet(self, l1, l2):
        """The unique common point of two non-neighboring lines."""
        if self.neighboring_ll(l1, l2):
            raise ValueError("meet undefined for neighboring lines (>= 2 common points)")
        triple = canonicalize(self.alg, self.cross(self.lines[l1], self.lines[l2]))
        assert admissible(self.alg, triple)
        pi = self.point_index[triple]
        common = self.points_on_line[l1] & self.points_on_line[l2]
        assert common == {pi}, "meet is not the unique common point"
        return pi

    def join(self, p1, p2):
        """The unique common line of two non-neighboring points."""
        if self.neighboring_pp(p1, p2):
            raise ValueError("join undefined for neighboring points")
        triple = canonicalize(self.alg, self.cross(self.points[p1], self.points[p2]))
        assert admissible(self.alg, triple)
        li = self.line_index[triple]
        common = self.lines_through_point[p1] & self.lines_through_point[p2]
        assert common == {li}, "join is not the unique common line"
        return li

    def line_points(self, p1, p2):
        """Points of the join of two non-neighboring points, generated as
        a1*P1 + a2*P2 with at most one of a1, a2 in K*r and at most one
        in K*s; asserted equal to the incidence row of the join line."""
        alg = self.alg
        li = self.join(p1, p2)
        kr = alg.k_line(alg.r) if alg.kind != EXTENSION else {0}
        ks = alg.k_line(alg.s) if alg.kind != EXTENSION else {0}
        t1, t2 = self.points[p1], self.points[p2]
        out = set()
        for a1 in range(alg.size):
            for a2 in range(alg.size):
                if (a1, a2) == (0, 0):
                    continue
                if a1 in kr and a2 in kr:
                    continue
                if a1 in ks and a2 in ks:
                    continue
                triple = tuple(alg.add(alg.mul(a1, u), alg.mul(a2, v))
                               for u, v in zip(t1, t2))
                assert admissible(alg, triple)
                out.add(self.point_index[canonicalize(alg, triple)])
        assert out == set(self.points_on_line[li]), "generated points != incidence row"
        return sorted(out)

    # ---- triangles and quadrangles ------------------------------------------
    def det3(self, rows):
        alg = self.alg
        (a, b, c), (d, e, f), (g, h, i) = rows
        m1 = alg.sub(alg.mul(e, i), alg.mul(f, h))
        m2 = alg.sub(alg.mul(d, i), alg.mul(f, g))
        m3 = alg.sub(alg.mul(d, h), alg.mul(e, g))
        return alg.sub(alg.add(alg.mul(a, m1), alg.mul(c, m3)), alg.mul(b, m2))

    def is_proper_triangle(self, p1, p2, p3):
        """Pairwise non-neighboring points with pairwise non-neighboring joins."""
        for a, b in ((p1, p2), (p1, p3), (p2, p3)):
            if self.neighboring_pp(a, b):
                return False
        joins = [self.join(*pair) for pair in ((p1, p2), (p1, p3), (p2, p3))]
        for a, b in itertools.combinations(joins, 2):
            if self.neighboring_ll(a, b):
                return False
        return True

    def is_proper_quadrangle(self, p1, p2, p3, p4):
        """Unit-determinant criterion: det(P1,P2,P3) a unit and the Cramer
        coefficients a1, a2, a3 of P4 over (P1,P2,P3) all units — equivalently,
        all four omit-one determinants of the quadruple are units."""
        alg = self.alg
        rows = [self.points[p] for p in (p1, p2, p3, p4)]
        for omit in range(4):
            d = self.det3([rows[i] for i in range(4) if i != omit])
            if not alg.is_unit(d):
                return False
        return True

    def quadrangle_cramer(self, p1, p2, p3, p4):
        """(D, (a1, a2, a3)) with (a1 a2 a3) . M = P4, rows of M = P1..P3."""
        alg = self.alg
        M = [self.points[p] for p in (p1, p2, p3)]
        b = self.points[p4]
        D = self.det3(M)
        if not alg.is_unit(D):
            return D, None
        dinv = alg.inverse(D)
        coeffs = []
        for i in range(3):
            Mi = list(M)
            Mi[i] = b
            coeffs.append(alg.mul(dinv, self.det3(Mi)))
        return D, tuple(coeffs)

    def standard_quadrangle(self):
        alg = self.alg
        e1 = self.point_index[canonicalize(alg, (alg.one, 0, 0))]
        e2 = self.point_index[canonicalize(alg, (0, alg.one, 0))]
        e3 = self.point_index[canonicalize(alg, (0, 0, alg.one))]
        e = self.point_index[canonicalize(alg, (alg.one, alg.one, alg.one))]
        return (e1, e2, e3, e)

    # ---- GL3(V) action -------------------------------------------------------
    def mat_det(self, M):
        return self.det3(M)

    def mat_adj(self, M):
        alg = self.alg

        def cof(i, j):
            sub = [[M[r][c] for c in range(3) if c != j] for r in range(3) if r != i]
            d = alg.sub(alg.mul(sub[0][0], sub[1][1]), alg.mul(sub[0][1], sub[1][0]))
            return d if (i + j) % 2 == 0 else alg.neg(d)

        # adjugate: entry (i, j) is the (j, i) cofactor
        return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))

    def mat_inv(self, M):
        alg = self.alg
        d = self.det3(M)
        dinv = alg.inverse(d)
        adj = self.mat_adj(M)
        return tuple(tuple(alg.mul(dinv, x) for x in row) for row in adj)

    def mat_mul(self, A, B):
        alg = self.alg
        return tuple(tuple(
            alg.add(alg.add(alg.mul(A[i][0], B[0][j]), alg.mul(A[i][1], B[1][j])),
                    alg.mul(A[i][2], B[2][j]))
            for j in range(3)) for i in range(3))

    def row_apply(self, triple, M):
        alg = self.alg
        return tuple(
            alg.add(alg.add(alg.mul(triple[0], M[0][j]), alg.mul(triple[1], M[1][j])),
                    alg.mul(triple[2], M[2][j]))
            for j in range(3))

    def gl3_apply(self, M, pi):
        """Image point index of the point pi under the unit-determinant M."""
        if not self.alg.is_unit(self.det3(M)):
            raise ValueError("matrix determinant is not a unit")
        return self.point_index[canonicalize(self.alg, self.row_apply(self.points[pi], M))]

    def gl3_apply_line(self, M, li):
        """Lines transform by the transposed inverse, preserving incidence."""
        Minv = self.mat_inv(M)
        Mstar = tuple(tuple(Minv[j][i] for j in range(3)) for i in range(3))
        return self.line_index[canonicalize(self.alg, self.row_apply(self.lines[li], Mstar))]

    def random_gl3(self, rng):
        while True:
            M = tuple(tuple(rng.randrange(self.alg.size) for _ in range(3))
                      for _ in range(3))
            if self.alg.is_unit(self.det3(M)):
                return M

    # ---- neighbor classes -----------------------------------------------------
    def neighbor_classes(self):
        """Quotient structure of the pp/ll neighbor relations.

        Reports whether the relation is transitive; when it is, the classes
        form a projective plane PG(2, q) for Dual kind and singletons for
        Extension.  For Split the relation need not be transitive; instead
        the two projection quotients (one per zero-divisor line) are each a
        PG(2, q) and the pair map is a bijection onto their product.
        """
        alg = self.alg
        m = len(self.points)
        nb = self.neighbor_pp
        transitive = all(nb[j] == nb[i] for i in range(m) for j in nb[i])
        out = {"transitive": transitive, "kind": alg.kind}
        if transitive:
            classes = sorted({nb[i] for i in range(m)}, key=min)
            out["point_classes"] = classes
            out["class_count"] = len(classes)
            out["class_sizes"] = sorted({len(c) for c in classes})
        if alg.kind == SPLIT:
            r_vals = sorted(set(self.pt_proj_r))
            s_vals = sorted(set(self.pt_proj_s))
            pairs = {(self.pt_proj_r[i], self.pt_proj_s[i]) for i in range(m)}
            out["r_class_count"] = len(r_vals)
            out["s_class_count"] = len(s_vals)
            out["pair_map_bijective"] = len(pairs) == m == len(r_vals) * len(s_vals)
        return out

    # ---- serialization ---------------------------------------------------------
    def _bit_rows_hex(self, sets):
        m = len(self.points)
        rows = []
        for i in range(len(sets)):
            bits = 0
            for j in (sets[i] if isinstance(sets[i], frozenset) else sets[i]):
                bits |= 1 << j
            rows.append(format(bits, "0%dx" % ((m + 3) // 4)))
        return rows

    def as_dict(self):
        alg = self.alg
        inc = self._bit_rows_hex(self.points_on_line)
        return {
            "algebra": alg.as_dict(),
            "points": [[list(alg.xy(c)) for c in t] for t in self.points],
            "lines": [[list(alg.xy(c)) for c in t] for t in self.lines],
            "incidence": inc,
            "neighbor_pp": self._bit_rows_hex(self.neighbor_pp),
            "neighbor_ll": self._bit_rows_hex(self.neighbor_ll),
        }


def build_plane(alg):
    return PlaneModel(alg)


def expected_point_count(alg):
    q = alg.q
    return {EXTENSION: q ** 4 + q ** 2 + 1,
            DUAL: q * q * (q * q + q + 1),
            SPLIT: (q * q + q + 1) ** 2}[alg.kind]


def expected_line_size(alg):
    q = alg.q
    return {EXTENSION: q * q + 1, DUAL: q * (q + 1), SPLIT: (q + 1) ** 2}[alg.kind]


# ---------------------------------------------------------------------------
# sharp transitivity bookkeeping (enumeration-based)

def _det3_batch(alg, a, b, c, d, e, f, g, h, i):
    """Vectorized 3x3 determinant over V on index arrays."""
    MT, AT = alg.np_mul, alg.np_add
    NT = np.array(alg.neg_table, dtype=np.int64)

    def sub(x, y):
        return AT[x, NT[y]]

    m1 = sub(MT[e, i], MT[f, h])
    m2 = sub(MT[d, i], MT[f, g])
    m3 = sub(MT[d, h], MT[e, g])
    return sub(AT[MT[a, m1], MT[c, m3]], MT[b, m2])


def count_gl3(alg):
    """(group_order, scalar_order) by enumerating all 3x3 matrices over V.

    Also counts the stabilizer of the standard quadrangle: a matrix fixes
    the classes of E1, E2, E3 iff each row is a unit multiple of the
    corresponding basis vector, and then fixes V*(1,1,1) iff the three
    units coincide — so the stabilizer scan reduces to the diagonal scan.
    """
    n = alg.size
    inner = n ** 6
    idx = np.arange(inner, dtype=np.int64)
    cols = [(idx // (n ** k)) % n for k in range(6)]
    unit = alg.np_is_unit
    group = 0
    for first in range(n ** 3):
        a, b, c = first % n, (first // n) % n, (first // (n * n)) % n
        det = _det3_batch(alg, a, b, c, *cols)
        group += int(unit[det].sum())
    scalars = len(alg.units)
    # diagonal unit matrices diag(u1,u2,u3) fixing V*(1,1,1): u1 = u2 = u3
    stab = 0
    for u1 in alg.units:
        for u2 in alg.units:
            for u3 in alg.units:
                if canonicalize(alg, (u1, u2, u3)) == canonicalize(alg, (alg.one,) * 3):
                    stab += 1
    return group, scalars, stab


def count_proper_quadrangles(model):
    """Number of proper ordered quadrangles, via the four omit-one
    unit-determinant criterion, fully enumerated."""
    alg = model.alg
    pts = np.array(model.points, dtype=np.int64)
    X, Y, Z = pts[:, 0], pts[:, 1], pts[:, 2]
    m = len(model.points)
    i = np.arange(m).reshape(m, 1, 1)
    j = np.arange(m).reshape(1, m, 1)
    k = np.arange(m).reshape(1, 1, m)
    det = _det3_batch(alg, X[i], Y[i], Z[i], X[j], Y[j], Z[j], X[k], Y[k], Z[k])
    U = alg.np_is_unit[det]
    # ordered 4-tuples (i, j, k, l) with all four omit-one determinants units
    Ui = U.astype(np.int64)
    count = np.einsum("ijk,ljk,ilk,ijl->", Ui, Ui, Ui, Ui, optimize=True)
    return int(count)


def quadrangle_transitivity_report(model):
    """Enumerative comparison of |GL3(V)| with the number of proper ordered
    quadrangles.

    Scalar matrices u*I (u a unit) act trivially on the plane, so the
    stabilizer of the standard quadrangle always contains the |V*| scalars;
    the action is sharply transitive modulo scalars.  The report exposes
    both readings: sharp_projective (group = quadrangles x scalars and the
    stabilizer is exactly the scalars) and sharp_literal (raw counts equal,
    which holds only when |V*| = 1).
    """
    if model.alg.q > 3:
        raise ValueError("enumeration guarded to q <= 3")
    group, scalars, stab = count_gl3(model.alg)
    quads = count_proper_quadrangles(model)
    return {
        "count_quadrangles": quads,
        "group_order": group,
        "scalar_order": scalars,
        "stabilizer_order": stab,
        "projective_group_order": group // scalars,
        "sharp_projective": group == quads * scalars and stab == scalars,
        "sharp_literal": group == quads and stab == 1,
    }


def extend_flag(model, pi, li, rng=None):
    """A proper ordered quadrangle whose first point is pi and whose first
    join P1P2 is the flag's line li; brute-force search."""
    if pi not in model.points_on_line[li]:
        raise ValueError("not a flag")
    m = len(model.points)
    order = list(range(m))
    if rng is not None:
        rng.shuffle(order)
    for p2 in model.points_on_line[li]:
        if model.neighboring_pp(pi, p2) or model.join(pi, p2) != li:
            continue
        for p3 in order:
            if not model.is_proper_triangle(pi, p2, p3):
                continue
            for p4 in order:
                if model.is_proper_quadrangle(pi, p2, p3, p4):
                    return (pi, p2, p3, p4)
    return None
