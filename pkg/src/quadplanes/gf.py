"""Exact arithmetic for small finite fields F_q, q = p^e.

Elements are dense integer indices in [0, q).  The index encodes the
coefficient vector of the element over F_p in base p, low coefficient
first, so 0 is the additive identity and 1 the multiplicative identity.
All arithmetic goes through precomputed add/mul tables, which is the
right trade-off here: everything downstream is enumeration-bound and
q <= 16 in every supported configuration.
"""
from __future__ import annotations

import functools


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient tuples, low degree first)

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m, over F_p."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        a = [x % p for x in a]
        lead = a[-1]
        if lead == 0:
            a.pop()
            continue
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _poly_trim([x % p for x in a])


def _poly_is_irreducible(m, p):
    """Trial division by all monic polynomials of degree 1..deg(m)//2."""
    deg = len(m) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for idx in range(p ** d):
            # monic candidate of degree d, coefficients from idx in base p
            cand = []
            k = idx
            for _ in range(d):
                cand.append(k % p)
                k //= p
            cand.append(1)
            if not _poly_mod(m, tuple(cand), p):
                return False
    return True


def _auto_modulus(p, e):
    """Lexicographically least irreducible monic polynomial of degree e.

    Candidates are ordered by their base-p coefficient encoding
    c0 + c1*p + ... which is the lexicographic order on (c0, .., c_{e-1}).
    """
    if e == 1:
        return (0, 1)
    for idx in range(p ** e):
        cand = []
        k = idx
        for _ in range(e):
            cand.append(k % p)
            k //= p
        cand.append(1)
        cand = tuple(cand)
        if _poly_is_irreducible(cand, p):
            return cand
    raise ArithmeticError("no irreducible polynomial found (impossible)")


# ---------------------------------------------------------------------------

class FieldCtx:
    """Immutable context for F_q = F_p[x]/(modulus)."""

    def __init__(self, p, e, modulus="auto"):
        if not is_prime(p):
            raise ValueError("p = %r is not prime" % (p,))
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus == "auto":
            modulus = _auto_modulus(p, e)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree e")
            if e > 1 and not _poly_is_irreducible(modulus, p):
                raise ValueError("modulus %r is reducible over F_%d" % (modulus, p))
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self._build_tables()

    # encoding: idx <-> coefficient tuple, low coefficient first
    def coeffs(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, c):
        out = 0
        for ci in reversed(list(c)):
            out = out * self.p + (ci % self.p)
        return out

    def _build_tables(self):
        p, q = self.p, self.q
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = self.coeffs(a)
            for b in range(a, q):
                cb = self.coeffs(b)
                s = self.from_coeffs((x + y) % p for x, y in zip(ca, cb))
                add[a][b] = add[b][a] = s
                pr = _poly_mod(_poly_mul(_poly_trim(ca), _poly_trim(cb), p),
                               self.modulus, p)
                m = self.from_coeffs(pr + (0,) * (self.e - len(pr)))
                mul[a][b] = mul[b][a] = m
        self.add_table = tuple(tuple(r) for r in add)
        self.mul_table = tuple(tuple(r) for r in mul)
        neg = [0] * q
        for a in range(q):
            for b in range(q):
                if add[a][b] == 0:
                    neg[a] = b
                    break
        self.neg_table = tuple(neg)
        inv = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise ArithmeticError("element %d has no inverse; modulus reducible?" % a)
        self.inv_table = tuple(inv)
        # least square root of each square, None for non-squares
        sqrt = [None] * q
        for a in range(q):
            s = mul[a][a]
            if sqrt[s] is None:
                sqrt[s] = a
        self.sqrt_table = tuple(sqrt)

    def _check(self, *ops):
        for a in ops:
            if not (0 <= a < self.q):
                raise ValueError("element index %r out of range [0,%d)" % (a, self.q))

    def add(self, a, b):
        self._check(a, b)
        return self.add_table[a][b]

    def sub(self, a, b):
        self._check(a, b)
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        self._check(a, b)
        return self.mul_table[a][b]

    def neg(self, a):
        self._check(a)
        return self.neg_table[a]

    def inv(self, a):
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        self._check(a)
        if k < 0:
            a, k = self.inv(a), -k
        out = 1
        base = a
        while k:
            if k & 1:
                out = self.mul_table[out][base]
            base = self.mul_table[base][base]
            k >>= 1
        return out

    def sqrt(self, a):
        """A square root of a, or None if a is a non-square."""
        self._check(a)
        return self.sqrt_table[a]

    def frobenius(self, a):
        return self.pow(a, self.p)

    def elements(self):
        return range(self.q)

    def generator(self):
        """An element of multiplicative order q - 1."""
        for g in range(1, self.q):
            o, x = 1, g
            while x != 1:
                x = self.mul_table[x][g]
                o += 1
            if o == self.q - 1:
                return g
        raise ArithmeticError("no generator found (impossible)")

    def as_dict(self):
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __repr__(self):
        return "FieldCtx(q=%d)" % self.q


@functools.lru_cache(maxsize=None)
def make_field(p, e=1, modulus="auto"):
    """Cached constructor; modulus is "auto" or a tuple of e+1 coefficients."""
    return FieldCtx(p, e, modulus)
