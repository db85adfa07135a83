"""Projective spaces PG(N, q) over the fields of gf.py.

Points are normalized coordinate tuples (first nonzero coordinate 1),
subspaces are canonical reduced-row-echelon bases, so equality and
hashing are exact.  Includes span/intersection, Pluecker coordinates,
cross-ratio, projectivity fitting, and a combinatorial classifier for
quadric point sets in 3-spaces (elliptic / tube / hypo).
"""
from __future__ import annotations

import functools
import itertools

INF = "inf"  # cross-ratio value for the point at infinity of the parametrization


# ---------------------------------------------------------------------------
# vectors

def vec_add(F, u, v):
    A = F.add_table
    return tuple(A[a][b] for a, b in zip(u, v))

def vec_scale(F, k, v):
    M = F.mul_table
    return tuple(M[k][a] for a in v)

def vec_sub(F, u, v):
    A, N = F.add_table, F.neg_table
    return tuple(A[a][N[b]] for a, b in zip(u, v))

def normalize(F, v):
    """Scale so the first nonzero coordinate is 1; None for the zero vector."""
    for a in v:
        if a:
            if a == 1:
                return tuple(v)
            return vec_scale(F, F.inv_table[a], v)
    return None


def enumerate_points(N, field):
    """All points of PG(N, field.q), normalized, sorted lexicographically."""
    q = field.q
    pts = []
    for lead in range(N, -1, -1):
        # first nonzero coordinate at position `lead`, scaled to 1
        tail = N - lead
        for idx in range(q ** tail):
            rest = []
            k = idx
            for _ in range(tail):
                rest.append(k % q)
                k //= q
            pts.append((0,) * lead + (1,) + tuple(rest))
    pts.sort()
    return pts


# ---------------------------------------------------------------------------
# row reduction and subspaces

def rref(F, rows):
    """Canonical reduced row echelon form; returns (rows, pivot columns)."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    A, M, Ng, Iv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = Iv[mat[r][c]]
        mat[r] = [M[inv][x] for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = Ng[mat[i][c]]
                mat[i] = [A[x][M[f][y]] for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    out = [tuple(row) for row in mat[:r] if any(row)]
    return tuple(out), tuple(pivots[: len(out)])


def nullspace(F, rows, ncols):
    """Canonical basis of {x : rows . x = 0} (right nullspace)."""
    red, pivots = rref(F, rows) if rows else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    Ng = F.neg_table
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = Ng[red[i][fc]]
        basis.append(tuple(v))
    red2, _ = rref(F, basis)
    return red2


class Subspace:
    """A projective subspace as a canonical RREF basis (immutable, hashable)."""

    __slots__ = ("field", "basis", "pivots", "dim", "_pts")

    def __init__(self, field, rows):
        self.field = field
        self.basis, self.pivots = rref(field, rows)
        self.dim = len(self.basis) - 1
        self._pts = None

    @property
    def ncols(self):
        return len(self.basis[0])

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return "Subspace(dim=%d, ncols=%d)" % (self.dim, self.ncols if self.basis else -1)

    def contains(self, v):
        return self.coords_in(v) is not None

    def coords_in(self, v):
        """Coefficients expressing v in the RREF basis, or None if outside."""
        F = self.field
        coeffs = []
        rem = list(v)
        A, M, Ng = F.add_table, F.mul_table, F.neg_table
        for row, pc in zip(self.basis, self.pivots):
            c = rem[pc]
            coeffs.append(c)
            if c:
                f = Ng[c]
                rem = [A[x][M[f][y]] for x, y in zip(rem, row)]
        if any(rem):
            return None
        return tuple(coeffs)

    def lift(self, coeffs):
        """The ambient vector with the given coefficients in the basis."""
        F = self.field
        out = (0,) * len(self.basis[0])
        for c, row in zip(coeffs, self.basis):
            if c:
                out = vec_add(F, out, vec_scale(F, c, row))
        return out

    def points(self):
        """All projective points of the subspace (cached)."""
        if self._pts is None:
            F = self.field
            k = len(self.basis)
            pts = []
            for cf in enumerate_points(k - 1, F):
                pts.append(normalize(F, self.lift(cf)))
            self._pts = tuple(sorted(pts))
        return self._pts


def span(field, vectors):
    return Subspace(field, list(vectors))


def intersect(A, B):
    F = A.field
    n = A.ncols
    dualA = nullspace(F, A.basis, n)
    dualB = nullspace(F, B.basis, n)
    return Subspace(F, nullspace(F, tuple(dualA) + tuple(dualB), n))


def line_through(F, p, q):
    """The q+1 points of the line through two distinct points."""
    pts = [normalize(F, p), normalize(F, q)]
    for k in range(1, F.q):
        pts.append(normalize(F, vec_add(F, p, vec_scale(F, k, q))))
    return frozenset(pts)


# ---------------------------------------------------------------------------
# matrices over the field (square, row-major tuples)

def mat_vec(F, Mx, v):
    A, M = F.add_table, F.mul_table
    out = []
    for row in Mx:
        s = 0
        for a, b in zip(row, v):
            s = A[s][M[a][b]]
        out.append(s)
    return tuple(out)

def mat_mul(F, X, Y):
    A, M = F.add_table, F.mul_table
    cols = list(zip(*Y))
    out = []
    for row in X:
        orow = []
        for col in cols:
            s = 0
            for a, b in zip(row, col):
                s = A[s][M[a][b]]
            orow.append(s)
        out.append(tuple(orow))
    return tuple(out)

def mat_inv(F, Mx):
    """Inverse of a square matrix, or None if singular."""
    n = len(Mx)
    aug = [list(Mx[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, pivots = rref(F, aug)
    if len(red) < n or any(p >= n for p in pivots) or pivots != tuple(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in red)


def solve_square(F, Mx, b):
    """Solution x of Mx . x = b for invertible Mx, else None."""
    inv = mat_inv(F, Mx)
    if inv is None:
        return None
    return mat_vec(F, inv, b)


def apply_projectivity(F, Mx, p):
    v = mat_vec(F, Mx, p)
    return normalize(F, v)


def fit_projectivity(F, src_frame, dst_frame):
    """The unique projectivity sending the i-th source frame point to the
    i-th destination frame point; frames are N+2 points in general position.
    Returns the (N+1)x(N+1) matrix or None for a degenerate frame."""
    n1 = len(src_frame[0])
    if len(src_frame) != n1 + 1 or len(dst_frame) != n1 + 1:
        raise ValueError("frames must have N+2 points in PG(N, q)")

    def frame_matrix(frame):
        base = frame[:n1]
        cols = tuple(zip(*base))  # columns = base points
        lam = solve_square(F, cols, frame[n1])
        if lam is None or any(l == 0 for l in lam):
            return None
        M = F.mul_table
        return tuple(tuple(M[lam[j]][base[j][i]] for j in range(n1)) for i in range(n1))

    Msrc = frame_matrix(src_frame)
    Mdst = frame_matrix(dst_frame)
    if Msrc is None or Mdst is None:
        return None
    inv = mat_inv(F, Msrc)
    if inv is None:
        return None
    return mat_mul(F, Mdst, inv)


# ---------------------------------------------------------------------------
# Pluecker coordinates

PLUCKER_PAIRS = tuple((i, j) for i in range(6) for j in range(i + 1, 6))

def plucker(F, line):
    """Grassmann image of a line of PG(5,q) in PG(14,q); minors in
    lexicographic (i, j) order."""
    if not isinstance(line, Subspace) or line.dim != 1 or line.ncols != 6:
        raise ValueError("plucker input must be a line of PG(5, q)")
    (a, b) = line.basis
    M, A, Ng = F.mul_table, F.add_table, F.neg_table
    out = tuple(A[M[a[i]][b[j]]][Ng[M[a[j]][b[i]]]] for i, j in PLUCKER_PAIRS)
    return normalize(F, out)


# ---------------------------------------------------------------------------
# cross-ratio

def cross_ratio(F, a, b, c, d):
    """Cross-ratio (a, b; c, d) of four distinct collinear points, in
    K union {INF}; parameters (inf, 0, 1, t) give t."""
    pts = [normalize(F, p) for p in (a, b, c, d)]
    if len(set(pts)) != 4:
        raise ValueError("cross-ratio needs four distinct points")
    L = span(F, [pts[0], pts[1]])
    if L.dim != 1:
        raise ValueError("points are not distinct")
    params = []
    for p in pts:
        cf = L.coords_in(p)
        if cf is None:
            raise ValueError("points are not collinear")
        params.append(cf)
    M, Ng, A = F.mul_table, F.neg_table, F.add_table

    def det2(u, v):
        return A[M[u[0]][v[1]]][Ng[M[u[1]][v[0]]]]

    pa, pb, pc, pd = params
    num = M[det2(pa, pc)][det2(pb, pd)]
    den = M[det2(pa, pd)][det2(pb, pc)]
    if den == 0:
        return INF
    return M[num][F.inv_table[den]]


# ---------------------------------------------------------------------------
# the PG(3, q) combinatorial chart (points, lines, lines through a point)

class Chart3:
    __slots__ = ("field", "points", "index", "lines", "lines_through")

    def __init__(self, field):
        self.field = field
        self.points = tuple(enumerate_points(3, field))
        self.index = {p: i for i, p in enumerate(self.points)}
        npts = len(self.points)
        seen = [[False] * npts for _ in range(npts)]
        lines = []
        lt = [[] for _ in range(npts)]
        for i in range(npts):
            for j in range(i + 1, npts):
                if seen[i][j]:
                    continue
                idxs = tuple(sorted(self.index[p] for p in
                                    line_through(field, self.points[i], self.points[j])))
                li = len(lines)
                lines.append(frozenset(idxs))
                for u in idxs:
                    lt[u].append(li)
                for u, v in itertools.combinations(idxs, 2):
                    seen[u][v] = seen[v][u] = True
        self.lines = tuple(lines)
        self.lines_through = tuple(tuple(x) for x in lt)


@functools.lru_cache(maxsize=None)
def chart3(field):
    return Chart3(field)


# ---------------------------------------------------------------------------
# quadric classification in a 3-space

ELLIPTIC = "Elliptic"
TUBE = "Tube"
HYPO = "Hypo"
OTHER = "Other"


class QuadricReport:
    """Combinatorial classification of a point set inside a 3-space.

    kind: Elliptic (q^2+1-cap), Tube (cone minus vertex: q(q+1) points on
    q+1 concurrent generator lines, vertex outside the set), Hypo
    (hyperbolic: (q+1)^2 points, 2(q+1) generators in two rulings), or
    Other.  All coordinates are ambient.
    """

    __slots__ = ("kind", "point_count", "points", "vertex", "generators", "rulings")

    def __init__(self, kind, points, vertex=None, generators=(), rulings=()):
        self.kind = kind
        self.points = frozenset(points)
        self.point_count = len(self.points)
        self.vertex = vertex
        self.generators = tuple(generators)
        self.rulings = tuple(rulings)

    def __repr__(self):
        return "QuadricReport(%s, %d points)" % (self.kind, self.point_count)


def classify_quadric(space, pts):
    """Classify a point set inside a 3-dimensional subspace."""
    if space.dim != 3:
        raise ValueError("classification requires a 3-space, got dim %d" % space.dim)
    F = space.field
    q = F.q
    ch = chart3(F)
    local = {}
    for p in pts:
        cf = space.coords_in(p)
        if cf is None:
            raise ValueError("point outside the given 3-space")
        local[ch.index[normalize(F, cf)]] = normalize(F, p)
    inside = set(local)
    m = len(inside)

    full = [li for li, L in enumerate(ch.lines) if L <= inside]

    def ambient_line(li):
        return frozenset(local[u] for u in ch.lines[li] if u in inside)

    if m == q * q + 1 and not full:
        if all(len(L & inside) <= 2 for L in ch.lines):
            return QuadricReport(ELLIPTIC, local.values())

    if m == (q + 1) ** 2 and len(full) == 2 * (q + 1):
        g0 = ch.lines[full[0]]
        rul_a = [li for li in full if li == full[0] or not (ch.lines[li] & g0)]
        rul_b = [li for li in full if li not in rul_a]
        ok = len(rul_a) == q + 1 and len(rul_b) == q + 1
        for rul in (rul_a, rul_b):
            for x, y in itertools.combinations(rul, 2):
                ok = ok and not (ch.lines[x] & ch.lines[y])
        for x in rul_a:
            for y in rul_b:
                ok = ok and len(ch.lines[x] & ch.lines[y]) == 1
        if ok:
            gens = [ambient_line(li) for li in full]
            rulings = (tuple(full.index(li) for li in rul_a),
                       tuple(full.index(li) for li in rul_b))
            return QuadricReport(HYPO, local.values(), generators=gens, rulings=rulings)

    if m == q * (q + 1) and not full:
        for w in range(len(ch.points)):
            if w in inside:
                continue
            gens = [li for li in ch.lines_through[w]
                    if ch.lines[li] - {w} <= inside]
            if len(gens) != q + 1:
                continue
            covered = set()
            for li in gens:
                covered |= ch.lines[li] - {w}
            if covered != inside:
                continue
            # base ovalness: no plane through the vertex holds 3 generators
            oval = True
            reps = [next(iter(ch.lines[li] - {w})) for li in gens]
            for trio in itertools.combinations(reps, 3):
                rows = [ch.points[w]] + [ch.points[u] for u in trio]
                if len(rref(F, rows)[0]) < 4:
                    oval = False
                    break
            if oval:
                vert = normalize(F, space.lift(ch.points[w]))
                return QuadricReport(TUBE, local.values(), vertex=vert,
                                     generators=[ambient_line(li) for li in gens])
        # fall through to Other if no valid vertex found

    return QuadricReport(OTHER, local.values())


# ---------------------------------------------------------------------------
# tangent spaces

def tangent_space(x, pts, within):
    """Span of the lines through x inside `within` that either lie fully in
    pts or meet pts in {x} only."""
    F = within.field
    x = normalize(F, x)
    ptset = {normalize(F, p) for p in pts}
    if x not in ptset:
        raise ValueError("tangent space base point must belong to the point set")
    rows = [x]
    seen_dirs = set()
    for y in within.points():
        if y == x or y in seen_dirs:
            continue
        L = line_through(F, x, y)
        seen_dirs |= L - {x}
        inter = L & ptset
        if inter == {x} or L <= ptset:
            rows.extend(L - {x})
    return Subspace(F, rows)


def project_from(center, p, screen):
    """Projection of p from the subspace `center` onto `screen`:
    the unique point of screen on span(center, p)."""
    F = center.field
    through = Subspace(F, tuple(center.basis) + (tuple(p),))
    hit = intersect(through, screen)
    if hit.dim != 0:
        raise ValueError("projection not unique (dim %d)" % hit.dim)
    return normalize(F, hit.basis[0])
