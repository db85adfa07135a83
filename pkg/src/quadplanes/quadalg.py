"""Two-dimensional commutative algebras V = K[i]/(i^2 - t*i + n) over F_q.

An element x*R + y*I (R the identity, I the generator with I^2 = t*I - n*R)
is encoded as the single index  idx = x + q*y.  The representing 2x2 matrix
is [[x, y], [-n*y, x + t*y]]; the adjugate involution is
sigma(x, y) = (x + t*y, -y), norm(x, y) = x^2 + t*x*y + n*y^2 and
trace(x, y) = 2*x + t*y.

Depending on the number of roots of z^2 - t*z + n in K, the algebra is a
quadratic field extension ("Extension", no roots), the dual numbers
("Dual", a double root) or the split algebra K x K ("Split", two roots).
The zero divisors form K*r (Dual) or K*r union K*s (Split) where r, s are
the canonical generators (-root, 1).
"""
from __future__ import annotations

import functools

import numpy as np

from .gf import make_field

EXTENSION = "Extension"
DUAL = "Dual"
SPLIT = "Split"


class AlgebraCtx:
    """Immutable context for the algebra with parameters (t, n) over a field."""

    def __init__(self, field, t, n):
        F = field
        F._check(t, n)
        self.field = F
        self.t = t
        self.n = n
        self.q = F.q
        self.size = F.q * F.q
        self.discriminant = F.sub(F.mul(t, t), self._four_n())
        roots = [z for z in F.elements()
                 if F.add(F.mul(z, z), F.sub(n, F.mul(t, z))) == 0]
        if not roots:
            self.kind = EXTENSION
            self.r = self.s = 0
        elif len(roots) == 1:
            self.kind = DUAL
            self.r = self.s = self.el(F.neg(roots[0]), 1)
        else:
            self.kind = SPLIT
            g1 = self.el(F.neg(roots[0]), 1)
            g2 = self.el(F.neg(roots[1]), 1)
            self.r, self.s = (g1, g2) if g1 < g2 else (g2, g1)
        self._build_tables()

    def _four_n(self):
        F = self.field
        four = F.add(F.add(1, 1), F.add(1, 1))
        return F.mul(four, self.n)

    # ---- encoding ---------------------------------------------------------
    def el(self, x, y):
        return x + self.q * y

    def xy(self, a):
        return a % self.q, a // self.q

    @property
    def one(self):
        return self.el(1, 0)

    @property
    def iota(self):
        return self.el(0, 1)

    def scalar(self, k):
        """The element k*R for k in K."""
        return self.el(k, 0)

    # ---- tables -----------------------------------------------------------
    def _build_tables(self):
        F, q = self.field, self.q
        t, n = self.t, self.n
        size = self.size
        add = [[0] * size for _ in range(size)]
        mul = [[0] * size for _ in range(size)]
        FA, FM = F.add_table, F.mul_table
        fneg = F.neg_table
        for a in range(size):
            x1, y1 = self.xy(a)
            for b in range(a, size):
                x2, y2 = self.xy(b)
                s = self.el(FA[x1][x2], FA[y1][y2])
                add[a][b] = add[b][a] = s
                # (x1,y1)*(x2,y2) = (x1x2 - n y1y2, x1y2 + x2y1 + t y1y2)
                yy = FM[y1][y2]
                mx = FA[FM[x1][x2]][fneg[FM[n][yy]]]
                my = FA[FA[FM[x1][y2]][FM[x2][y1]]][FM[t][yy]]
                mul[a][b] = mul[b][a] = self.el(mx, my)
        self.add_table = add
        self.mul_table = mul
        self.neg_table = [self.el(fneg[a % q], fneg[a // q]) for a in range(size)]
        self.sigma_table = [self.el(FA[a % q][FM[t][a // q]], fneg[a // q])
                            for a in range(size)]
        self.norm_table = [self._norm_raw(a) for a in range(size)]
        self.trace_table = [FA[FA[a % q][a % q]][FM[t][a // q]] for a in range(size)]
        self.is_unit_table = [nv != 0 for nv in self.norm_table]
        inv = [None] * size
        for a in range(size):
            if self.is_unit_table[a]:
                ninv = F.inv_table[self.norm_table[a]]
                sx, sy = self.xy(self.sigma_table[a])
                inv[a] = self.el(FM[ninv][sx], FM[ninv][sy])
        self.inv_table = inv
        self.units = [a for a in range(size) if self.is_unit_table[a]]
        self.zero_divisors = [a for a in range(size) if not self.is_unit_table[a]]
        self.np_add = np.array(add, dtype=np.int64)
        self.np_mul = np.array(mul, dtype=np.int64)
        self.np_is_unit = np.array(self.is_unit_table, dtype=bool)

    def _norm_raw(self, a):
        F = self.field
        x, y = self.xy(a)
        return F.add(F.mul(x, x),
                     F.add(F.mul(self.t, F.mul(x, y)), F.mul(self.n, F.mul(y, y))))

    # ---- operations -------------------------------------------------------
    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def sigma(self, a):
        return self.sigma_table[a]

    def norm(self, a):
        return self.norm_table[a]

    def trace(self, a):
        return self.trace_table[a]

    def is_unit(self, a):
        return self.is_unit_table[a]

    def inverse(self, a):
        v = self.inv_table[a]
        if v is None:
            raise ZeroDivisionError("inverse of the zero divisor %r" % (self.xy(a),))
        return v

    def k_mul(self, k, a):
        """Scalar action of k in K on the element a."""
        x, y = self.xy(a)
        FM = self.field.mul_table
        return self.el(FM[k][x], FM[k][y])

    def rep_matrix(self, a):
        """The representing 2x2 matrix [[x, y], [-n*y, x + t*y]] over K."""
        F = self.field
        x, y = self.xy(a)
        return ((x, y),
                (F.neg(F.mul(self.n, y)), F.add(x, F.mul(self.t, y))))

    def coord_matrix(self, m):
        """[[x(R*m), y(R*m)], [x(I*m), y(I*m)]]; equals rep_matrix(m)."""
        rm = self.xy(self.mul(self.one, m))
        im = self.xy(self.mul(self.iota, m))
        out = (rm, im)
        assert out == self.rep_matrix(m), "coordinate matrix mismatch for %r" % (self.xy(m),)
        return out

    def juxtaposition_minors(self, m, n_el):
        """The six 2x2 minors of the 2x4 juxtaposition [rep(m) | rep(n_el)].

        Asserts they agree, up to sign and as a multiset, with the four
        entries of adj(n_el)*m together with det(m) and det(n_el).
        """
        F = self.field
        a, b = self.rep_matrix(m)
        c, d = self.rep_matrix(n_el)
        cols = list(zip(a, b)) + list(zip(c, d))  # four columns (top, bottom)
        minors = []
        for i in range(4):
            for j in range(i + 1, 4):
                (t0, b0), (t1, b1) = cols[i], cols[j]
                minors.append(F.sub(F.mul(t0, b1), F.mul(t1, b0)))
        adj_nm = self.mul(self.sigma(n_el), m)
        ref = list(self.rep_matrix(adj_nm)[0]) + list(self.rep_matrix(adj_nm)[1])
        ref += [self.norm(m), self.norm(n_el)]

        def canon(vals):
            return sorted(min(v, F.neg(v)) for v in vals)

        assert canon(minors) == canon(ref), \
            "minor multiset mismatch for %r, %r" % (self.xy(m), self.xy(n_el))
        return minors

    def product_surjectivity(self):
        """True iff every element of V is a product of two elements."""
        seen = set()
        for a in range(self.size):
            row = self.mul_table[a]
            for b in range(a, self.size):
                seen.add(row[b])
            if len(seen) == self.size:
                return True
        return len(seen) == self.size

    def v0(self):
        """The zero divisors, as a set; equals K*r union K*s."""
        return set(self.zero_divisors)

    def k_line(self, a):
        """The set K*a."""
        return {self.k_mul(k, a) for k in self.field.elements()}

    def annihilator(self, a):
        return {b for b in range(self.size) if self.mul_table[a][b] == 0}

    def as_dict(self):
        return {
            "field": self.field.as_dict(),
            "t": self.t,
            "n": self.n,
            "kind": self.kind,
            "r": list(self.xy(self.r)),
            "s": list(self.xy(self.s)),
        }

    def __repr__(self):
        return "AlgebraCtx(q=%d, t=%d, n=%d, %s)" % (self.q, self.t, self.n, self.kind)


def canonical_params(field, kind):
    """Canonical (t, n) per kind: Extension -> least (t, n) with the
    quadratic irreducible; Dual -> (0, 0); Split -> (1, 0)."""
    kind = kind.capitalize()
    if kind == DUAL:
        return 0, 0
    if kind == SPLIT:
        return 1, 0
    if kind == EXTENSION:
        F = field
        for t in F.elements():
            for n in F.elements():
                roots = [z for z in F.elements()
                         if F.add(F.mul(z, z), F.sub(n, F.mul(t, z))) == 0]
                if not roots:
                    return t, n
        raise ValueError("no irreducible quadratic over this field (impossible)")
    raise ValueError("unknown kind %r" % (kind,))


@functools.lru_cache(maxsize=None)
def make_algebra(field, t, n):
    return AlgebraCtx(field, t, n)


@functools.lru_cache(maxsize=None)
def make_algebra_kind(field, kind):
    t, n = canonical_params(field, kind)
    return make_algebra(field, t, n)


def make_algebra_q(p, e, kind):
    return make_algebra_kind(make_field(p, e), kind)
