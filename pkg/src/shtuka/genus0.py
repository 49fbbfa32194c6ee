"""Genus-zero sign-normalized rank-one modules, arbitrary degree at infinity.

The base field is F_q(x) with infinity given by a monic irreducible P_inf of
degree d.  The coefficient ring A consists of h(x)/P_inf(x)^k with
deg h <= k*d; its Picard group is cyclic of order d, generated by the class
of the pole-of-x prime P, with P^d = (1/P_inf)A.

The normalizing field is modeled as the Kummer ring
F_(q^d)(x)[g] / (g^(q^d - 1) - c) with c = prod_k (zeta - x^(q^k)), zeta the
chosen root of P_inf.  This ring is a field (the factor x - zeta divides c
exactly once, so c is never a proper power).  The shtuka is
f = (z - x)/(z - zeta) * g^(1-q); everything else (module coefficients,
ideal operators, the Artin action, the special function, the period) is
derived from it by exact arithmetic in that ring and checked against series
images in F_(q^d)((u)) with u^(q^d - 1) = -P_inf(x).
"""

from __future__ import annotations

import functools

from .carlitz import gauss_sum, make_carlitz_context, x_embedding
from .poly import FPoly, UFrac, monic_polys
from .series import PREC_EXACT, TateSeries, eval_fpoly, inf_product, make_series_context
from .skew import SkewPoly, right_gcd


class GenusZeroContext:
    """P_inf, the chosen root zeta, the Kummer modulus c, and cached series
    embeddings of x and the Gauss sum g."""

    def __init__(self, q: int, pinf_encs):
        self.cc = make_carlitz_context(q)
        self.q = q
        self.base_field = self.cc.field
        P = FPoly.from_encs(self.base_field, list(pinf_encs))
        from .carlitz import _check_modulus

        _check_modulus(self.cc, P)
        self.P_inf = P
        self.d = P.degree()
        self.M = q ** self.d - 1
        self.sctx0 = make_series_context(q, self.d, ())
        self.ffield = self.sctx0.field
        Pe = P.map_field(self.ffield)
        self.P_ext = Pe
        self.zeta = None
        for y in range(self.ffield.q):
            if Pe.eval_enc(y) == 0:
                self.zeta = y
                break
        assert self.zeta is not None
        # c = prod_k (zeta - x^(q^k)); the root zeta must be simple in c
        F = self.ffield
        c = FPoly.one(F)
        for k in range(self.d):
            c = c * (FPoly.const(F, self.zeta) - FPoly.x(F).spread(q ** k))
        self.c_poly = c
        lin = FPoly.from_encs(F, [F.neg(self.zeta), 1])
        q1, r1 = c.divmod(lin)
        assert r1.is_zero()
        _, r2 = q1.divmod(lin)
        assert not r2.is_zero(), "x - zeta divides the Kummer modulus more than once"
        # Pic(A) is cyclic of order d: P^j is non-principal for 0 < j < d
        # (degree j not divisible by d) and P^d = (1/P_inf)A by construction.
        self._cpow = {0: FPoly.one(F), 1: c}
        self._series_cache = {}
        self._ideal_cache = {}
        self._artin_cache = {}
        self._fvalue_cache = {}

    def c_pow(self, j: int) -> FPoly:
        assert j >= 0
        if j not in self._cpow:
            self._cpow[j] = self.c_pow(j - 1) * self.c_poly
        return self._cpow[j]

    def x_series(self, N: int) -> TateSeries:
        key = ("x", N)
        if key not in self._series_cache:
            self._series_cache[key] = x_embedding(self.cc, self.P_inf, N)
        return self._series_cache[key]

    def g_series(self, N: int) -> TateSeries:
        key = ("g", N)
        if key not in self._series_cache:
            self._series_cache[key] = gauss_sum(self.cc, self.P_inf, N)
        return self._series_cache[key]

    def __repr__(self):
        return "GenusZeroContext(q=%d, P_inf=%r)" % (self.q, self.P_inf)


def make_context(q: int, pinf_encs) -> GenusZeroContext:
    return GenusZeroContext(q, tuple(pinf_encs))


# -- the Kummer ring -------------------------------------------------------


class HElem:
    """Element of F_(q^d)(x)[g]/(g^M - c): sparse map from g-exponent in
    [0, M) to a rational function of x."""

    __slots__ = ("ctx", "comps")

    def __init__(self, ctx: GenusZeroContext, comps: dict | None = None, fold: bool = True):
        self.ctx = ctx
        if comps is None:
            comps = {}
        if fold:
            comps = self._fold(ctx, comps)
        self.comps = comps

    @staticmethod
    def _fold(ctx, comps: dict) -> dict:
        out: dict = {}
        M = ctx.M
        for e, u in comps.items():
            if u.is_zero():
                continue
            j, r = divmod(e, M)
            if j > 0:
                u = u * UFrac(ctx.c_pow(j))
            elif j < 0:
                u = u * UFrac(FPoly.one(ctx.ffield), ctx.c_pow(-j))
            prev = out.get(r)
            out[r] = u if prev is None else prev + u
        return {e: u for e, u in out.items() if not u.is_zero()}

    @staticmethod
    def zero(ctx) -> "HElem":
        return HElem(ctx, {}, fold=False)

    @staticmethod
    def one(ctx) -> "HElem":
        return HElem(ctx, {0: UFrac.one(ctx.ffield)}, fold=False)

    @staticmethod
    def const(ctx, enc: int) -> "HElem":
        if enc == 0:
            return HElem.zero(ctx)
        return HElem(ctx, {0: UFrac.const(ctx.ffield, enc)}, fold=False)

    @staticmethod
    def from_ufrac(ctx, u: UFrac, gexp: int = 0) -> "HElem":
        return HElem(ctx, {gexp: u})

    @staticmethod
    def g_pow(ctx, e: int) -> "HElem":
        return HElem(ctx, {e: UFrac.one(ctx.ffield)})

    def is_zero(self) -> bool:
        return all(u.is_zero() for u in self.comps.values())

    def is_in_H(self) -> bool:
        """Exponents all divisible by q - 1 (the subfield fixed by the
        Kummer characters trivial on (q-1)-th powers)."""
        return all(e % (self.ctx.q - 1) == 0 for e, u in self.comps.items() if not u.is_zero())

    def single(self) -> tuple[int, UFrac]:
        items = [(e, u) for e, u in self.comps.items() if not u.is_zero()]
        assert len(items) == 1, "element is not a single g-component"
        return items[0]

    def __add__(self, other: "HElem") -> "HElem":
        out = dict(self.comps)
        for e, u in other.comps.items():
            prev = out.get(e)
            out[e] = u if prev is None else prev + u
        return HElem(self.ctx, {e: u for e, u in out.items() if not u.is_zero()}, fold=False)

    def __neg__(self) -> "HElem":
        return HElem(self.ctx, {e: -u for e, u in self.comps.items()}, fold=False)

    def __sub__(self, other: "HElem") -> "HElem":
        return self + (-other)

    def __mul__(self, other: "HElem") -> "HElem":
        out: dict = {}
        for e1, u1 in self.comps.items():
            for e2, u2 in other.comps.items():
                e = e1 + e2
                p = u1 * u2
                prev = out.get(e)
                out[e] = p if prev is None else prev + p
        return HElem(self.ctx, out)

    def smul(self, s) -> "HElem":
        if isinstance(s, int):
            if s == 0:
                return HElem.zero(self.ctx)
            s = UFrac.const(self.ctx.ffield, s)
        return HElem(self.ctx, {e: u * s for e, u in self.comps.items()}, fold=False)

    def tau(self, k: int = 1) -> "HElem":
        """Frobenius twist: rational coefficients c(x) -> c(x)^(q^k),
        g -> g^(q^k) with folding by g^M = c."""
        if k == 0:
            return self
        qk = self.ctx.q ** k
        return HElem(self.ctx, {e * qk: u.frob(qk) for e, u in self.comps.items()})

    def inverse(self) -> "HElem":
        a = [self.comps.get(e, UFrac.zero(self.ctx.ffield)) for e in range(self.ctx.M)]
        while len(a) > 1 and a[-1].is_zero():
            a.pop()
        if len(a) == 1 and not a[0].is_zero():
            return HElem(self.ctx, {0: a[0].inverse()}, fold=False)
        F = self.ctx.ffield
        mod = [UFrac(self.ctx.c_poly).__neg__()] + [UFrac.zero(F)] * (self.ctx.M - 1) + [UFrac.one(F)]
        s = _poly_modinv(a, mod, F)
        return HElem(self.ctx, {e: u for e, u in enumerate(s)})

    def normalize(self) -> "HElem":
        return HElem(
            self.ctx,
            {e: u.normalize() for e, u in self.comps.items() if not u.is_zero()},
            fold=False,
        )

    def eq(self, other: "HElem") -> bool:
        keys = set(self.comps) | set(other.comps)
        z = UFrac.zero(self.ctx.ffield)
        return all(self.comps.get(e, z).eq(other.comps.get(e, z)) for e in keys)

    __eq__ = eq

    def __hash__(self):
        n = self.normalize()
        return hash(tuple(sorted((e, hash(u)) for e, u in n.comps.items())))

    def series(self, N: int, pad: int | None = None) -> TateSeries:
        """Image in F_(q^d)((u)) under x -> x(u), g -> g(u)."""
        ctx = self.ctx
        if pad is None:
            pad = 2 * ctx.M + 8
        xs = ctx.x_series(N + pad)
        gs = ctx.g_series(N + pad)
        acc = TateSeries.zero(ctx.sctx0, N)
        for e, u in self.comps.items():
            un = u.normalize()
            num = eval_fpoly(un.num.map_field(ctx.ffield), xs)
            den = eval_fpoly(un.den.map_field(ctx.ffield), xs)
            den = den.truncate(den.valuation() + N + pad)
            t = num * den.inverse()
            if e:
                t = t * (gs ** e)
            acc = acc + t.truncate(N)
        return acc

    def __repr__(self):
        if not self.comps:
            return "HElem(0)"
        parts = []
        for e in sorted(self.comps):
            u = self.comps[e]
            parts.append("(%r)*g^%d" % (u, e) if e else "(%r)" % (u,))
        return "HElem(%s)" % " + ".join(parts)


def _poly_divmod_u(a: list, b: list, F) -> tuple[list, list]:
    """Dense division of UFrac-coefficient polynomials (lists, low first)."""
    a = list(a)
    db = len(b) - 1
    while db > 0 and b[db].is_zero():
        db -= 1
    inv = b[db].inverse()
    q = [UFrac.zero(F)] * max(0, len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db] * inv
        if c.is_zero():
            continue
        q[i] = c
        for j in range(db + 1):
            a[i + j] = a[i + j] - c * b[j]
    r = a[:db]
    return q, [x.normalize() for x in r] if r else r


def _poly_modinv(a: list, mod: list, F) -> list:
    """Inverse of a modulo mod over the rational function field, by the
    extended Euclid algorithm."""
    r0, r1 = list(mod), list(a)
    s0, s1 = [UFrac.zero(F)], [UFrac.one(F)]

    def trim(p):
        while len(p) > 1 and p[-1].is_zero():
            p.pop()
        return p

    r1 = trim(r1)
    while not (len(r1) == 1 and r1[0].is_zero()):
        q, r = _poly_divmod_u(r0, r1, F)
        r = trim(r if r else [UFrac.zero(F)])
        # s2 = s0 - q*s1
        s2 = [UFrac.zero(F)] * max(len(s0), len(q) + len(s1) - 1)
        for i, c in enumerate(s0):
            s2[i] = s2[i] + c
        for i, qc in enumerate(q):
            if qc.is_zero():
                continue
            for j, sc in enumerate(s1):
                s2[i + j] = s2[i + j] - qc * sc
        r0, r1 = r1, r
        s0, s1 = s1, trim([x.normalize() for x in s2])
    assert len(r0) == 1 and not r0[0].is_zero(), "modulus not coprime: ring is not a field"
    inv = r0[0].inverse()
    return [(c * inv).normalize() for c in s0]


class KummerDomain:
    """Coefficient domain of the Kummer field for twisted polynomials."""

    is_field = True

    def __init__(self, ctx: GenusZeroContext):
        self.ctx = ctx
        self.field = ctx.ffield
        self.qtw = ctx.q

    def zero(self):
        return HElem.zero(self.ctx)

    def one(self):
        return HElem.one(self.ctx)

    def is_zero(self, c) -> bool:
        return c.is_zero()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def frob(self, c, k: int):
        return c.tau(k)

    def eq(self, a, b) -> bool:
        return a.eq(b)

    def normalize(self, c):
        return c.normalize()


# -- rational functions of z with Kummer coefficients ----------------------


class ZRat:
    """N(z) / prod_r (z - r)^m_r with N a polynomial in z over the Kummer
    ring and the roots r constants in F_(q^d).  This covers the shtuka, its
    twisted products, and the ideal functions u_I."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: GenusZeroContext, num: list, den: dict | None = None, reduce: bool = True):
        self.ctx = ctx
        while len(num) > 1 and num[-1].is_zero():
            num = num[:-1]
        self.num = num
        self.den = {r: m for r, m in (den or {}).items() if m > 0}
        if reduce:
            self._reduce()

    @staticmethod
    def from_helem(ctx, h: HElem) -> "ZRat":
        return ZRat(ctx, [h], {}, reduce=False)

    @staticmethod
    def one(ctx) -> "ZRat":
        return ZRat.from_helem(ctx, HElem.one(ctx))

    @staticmethod
    def zero(ctx) -> "ZRat":
        return ZRat.from_helem(ctx, HElem.zero(ctx))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.num)

    def _eval_num(self, r: int) -> HElem:
        acc = HElem.zero(self.ctx)
        rc = HElem.const(self.ctx, r)
        for c in reversed(self.num):
            acc = acc * rc + c
        return acc

    def _reduce(self):
        if self.is_zero():
            self.den = {}
            return
        changed = True
        while changed:
            changed = False
            for r in list(self.den):
                if self.den[r] > 0 and self._eval_num(r).is_zero():
                    # synthetic division by (z - r)
                    rc = HElem.const(self.ctx, r)
                    out = []
                    carry = HElem.zero(self.ctx)
                    for c in reversed(self.num):
                        carry = carry * rc + c if out else c
                        out.append(carry)
                    # redo properly: divide num by (z - r)
                    n = len(self.num) - 1
                    qc = [HElem.zero(self.ctx)] * n
                    carry = self.num[n]
                    for i in range(n - 1, -1, -1):
                        qc[i] = carry
                        carry = self.num[i] + carry * rc
                    assert carry.is_zero()
                    self.num = qc
                    self.den[r] -= 1
                    if self.den[r] == 0:
                        del self.den[r]
                    changed = True

    def _scale_den(self, extra: dict) -> list:
        """num * prod (z - r)^m for the missing den factors."""
        num = list(self.num)
        for r, m in extra.items():
            rc = HElem.const(self.ctx, r)
            for _ in range(m):
                shifted = [HElem.zero(self.ctx)] + num
                num = [
                    shifted[i] - (num[i] * rc if i < len(num) else HElem.zero(self.ctx))
                    for i in range(len(num) + 1)
                ]
        return num

    def __add__(self, other: "ZRat") -> "ZRat":
        den = {}
        for r in set(self.den) | set(other.den):
            den[r] = max(self.den.get(r, 0), other.den.get(r, 0))
        na = self._scale_den({r: den[r] - self.den.get(r, 0) for r in den})
        nb = other._scale_den({r: den[r] - other.den.get(r, 0) for r in den})
        n = max(len(na), len(nb))
        z = HElem.zero(self.ctx)
        num = [(na[i] if i < len(na) else z) + (nb[i] if i < len(nb) else z) for i in range(n)]
        return ZRat(self.ctx, num, den)

    def __neg__(self) -> "ZRat":
        return ZRat(self.ctx, [-c for c in self.num], dict(self.den), reduce=False)

    def __sub__(self, other: "ZRat") -> "ZRat":
        return self + (-other)

    def __mul__(self, other: "ZRat") -> "ZRat":
        z = HElem.zero(self.ctx)
        num = [z] * (len(self.num) + len(other.num) - 1)
        for i, a in enumerate(self.num):
            if a.is_zero():
                continue
            for j, b in enumerate(other.num):
                if b.is_zero():
                    continue
                num[i + j] = num[i + j] + a * b
        den = dict(self.den)
        for r, m in other.den.items():
            den[r] = den.get(r, 0) + m
        return ZRat(self.ctx, num, den)

    def scale(self, h: HElem) -> "ZRat":
        return ZRat(self.ctx, [c * h for c in self.num], dict(self.den), reduce=False)

    def twist(self, k: int = 1) -> "ZRat":
        F = self.ctx.ffield
        qk = self.ctx.q ** k
        num = [c.tau(k) for c in self.num]
        den = {}
        for r, m in self.den.items():
            rr = F.frob(r, 0, base=qk) if False else F.pow(r, qk)
            den[rr] = den.get(rr, 0) + m
        return ZRat(self.ctx, num, den, reduce=False)

    def eval_helem(self, v: HElem) -> HElem:
        acc = HElem.zero(self.ctx)
        for c in reversed(self.num):
            acc = acc * v + c
        dv = HElem.one(self.ctx)
        for r, m in self.den.items():
            lin = v - HElem.const(self.ctx, r)
            for _ in range(m):
                dv = dv * lin
        return acc * dv.inverse()

    def at_xi(self, i: int = 0) -> HElem:
        """Evaluation at z = x^(q^i)."""
        x = UFrac(FPoly.x(self.ctx.ffield).spread(self.ctx.q ** i))
        return self.eval_helem(HElem.from_ufrac(self.ctx, x))

    def apply_sigma(self, sig: "GaloisElem") -> "ZRat":
        F = self.ctx.ffield
        qk = self.ctx.q ** sig.k
        num = [sig.apply(c) for c in self.num]
        den = {}
        for r, m in self.den.items():
            rr = F.pow(r, qk)
            den[rr] = den.get(rr, 0) + m
        return ZRat(self.ctx, num, den, reduce=False)

    def eq(self, other: "ZRat") -> bool:
        a = self._scale_den({r: other.den.get(r, 0) for r in other.den})
        b = other._scale_den({r: self.den.get(r, 0) for r in self.den})
        n = max(len(a), len(b))
        z = HElem.zero(self.ctx)
        return all(
            ((a[i] if i < len(a) else z) - (b[i] if i < len(b) else z)).is_zero() for i in range(n)
        )

    __eq__ = eq

    def __repr__(self):
        return "ZRat(num=%r, den=%r)" % (self.num, self.den)


# -- elements of A ---------------------------------------------------------


class AElem:
    """h(x)/P_inf(x)^k with deg h <= k*d, in lowest terms."""

    def __init__(self, ctx: GenusZeroContext, h: FPoly, k: int):
        assert h.field == ctx.base_field
        while k > 0:
            q, r = h.divmod(ctx.P_inf)
            if r.is_zero():
                h, k = q, k - 1
            else:
                break
        assert not h.is_zero(), "zero is not a unit-normalizable A-element"
        assert h.degree() <= k * ctx.d, "not integral at the pole of x"
        self.ctx = ctx
        self.h = h
        self.k = k

    @staticmethod
    def const(ctx, enc: int) -> "AElem":
        return AElem(ctx, FPoly.const(ctx.base_field, enc), 0)

    @staticmethod
    def theta(ctx) -> "AElem":
        """1/P_inf, the distinguished element of degree d with sgn 1."""
        return AElem(ctx, FPoly.one(ctx.base_field), 1)

    def degree(self) -> int:
        return self.ctx.d * self.k

    def sgn(self) -> int:
        return self.h.map_field(self.ctx.ffield).eval_enc(self.ctx.zeta)

    def ufrac(self) -> UFrac:
        return UFrac(self.h.map_field(self.ctx.ffield), self.ctx.P_ext ** self.k)

    def value_at_xi(self, i: int) -> UFrac:
        """a(x^(q^i)) as a rational function of x."""
        qi = self.ctx.q ** i
        num = self.h.map_field(self.ctx.ffield).spread(qi)
        den = self.ctx.P_ext.spread(qi) ** self.k
        return UFrac(num, den)

    def __mul__(self, other: "AElem") -> "AElem":
        return AElem(self.ctx, self.h * other.h, self.k + other.k)

    def eq(self, other: "AElem") -> bool:
        return self.k == other.k and self.h == other.h

    __eq__ = eq

    def __repr__(self):
        return "AElem((%r)/P_inf^%d)" % (self.h, self.k)


# -- the shtuka and the module ---------------------------------------------


def shtuka(ctx: GenusZeroContext) -> ZRat:
    """f = (z - x)/(z - zeta) * g^(1-q)."""
    gpart = HElem.g_pow(ctx, 1 - ctx.q)
    x = HElem.from_ufrac(ctx, UFrac(FPoly.x(ctx.ffield)))
    return ZRat(ctx, [(-x) * gpart, gpart], {ctx.zeta: 1}, reduce=False)


def shtuka_product(ctx: GenusZeroContext, i: int) -> ZRat:
    """F_i = f f^(1) ... f^(i-1) = prod_j (z-x^(q^j))/(z-zeta^(q^j)) * g^(1-q^i)."""
    F = ctx.ffield
    gpart = HElem.g_pow(ctx, 1 - ctx.q ** i)
    out = ZRat.from_helem(ctx, gpart)
    den = {}
    for j in range(i):
        xq = HElem.from_ufrac(ctx, UFrac(FPoly.x(F).spread(ctx.q ** j)))
        out = out * ZRat(ctx, [-xq, HElem.one(ctx)], {}, reduce=False)
        r = F.pow(ctx.zeta, ctx.q ** j)
        den[r] = den.get(r, 0) + 1
    return ZRat(ctx, out.num, den, reduce=False)


def shtuka_value(ctx: GenusZeroContext, i: int, l: int) -> HElem:
    """F_i evaluated at z = x^(q^l); zero for l < i, a single g-component
    times a rational function otherwise."""
    key = (i, l)
    if key in ctx._fvalue_cache:
        return ctx._fvalue_cache[key]
    F = ctx.ffield
    q = ctx.q
    if l < i:
        val = HElem.zero(ctx)
    else:
        x = FPoly.x(F)
        num = FPoly.one(F)
        den = FPoly.one(F)
        for j in range(i):
            num = num * (x.spread(q ** l) - x.spread(q ** j))
            den = den * (x.spread(q ** l) - FPoly.const(F, F.pow(ctx.zeta, q ** j)))
        val = HElem.from_ufrac(ctx, UFrac(num, den), 1 - q ** i)
    ctx._fvalue_cache[key] = val
    return val


def drinfeld_coeffs(ctx: GenusZeroContext, a: AElem) -> SkewPoly:
    """phi_a, solved from a(z) = sum_i phi_(a,i) F_i(z) by evaluating at
    z = x^(q^l) (the system is triangular since F_i vanishes there for
    l < i).  Constant term a, top coefficient sgn(a)."""
    dom = KummerDomain(ctx)
    n = a.degree()
    coeffs = []
    for l in range(n + 1):
        rhs = HElem.from_ufrac(ctx, a.value_at_xi(l))
        for i in range(l):
            rhs = rhs - coeffs[i] * shtuka_value(ctx, i, l)
        coeffs.append((rhs * shtuka_value(ctx, l, l).inverse()).normalize())
    phi = SkewPoly(dom, coeffs)
    assert phi.coeff(0).eq(HElem.from_ufrac(ctx, a.ufrac()))
    assert phi.coeff(n).eq(HElem.const(ctx, a.sgn()))
    return phi


def exp_coeffs_phi(ctx: GenusZeroContext, i_max: int, route: str = "both") -> list:
    """e_i(phi): route "eval" inverts F_i at z = x^(q^i); route "closed"
    uses g^(q^i - 1) prod_k (x^(q^i)-zeta^(q^k))/(x^(q^i)-x^(q^k)); "both"
    computes the two and asserts exact agreement."""
    F = ctx.ffield
    q = ctx.q
    out_eval = None
    out_closed = None
    if route in ("eval", "both"):
        out_eval = [shtuka_value(ctx, i, i).inverse().normalize() for i in range(i_max + 1)]
    if route in ("closed", "both"):
        out_closed = []
        x = FPoly.x(F)
        for i in range(i_max + 1):
            num = FPoly.one(F)
            den = FPoly.one(F)
            for k in range(i):
                num = num * (x.spread(q ** i) - FPoly.const(F, F.pow(ctx.zeta, q ** k)))
                den = den * (x.spread(q ** i) - x.spread(q ** k))
            out_closed.append(HElem.from_ufrac(ctx, UFrac(num, den), q ** i - 1).normalize())
    if route == "both":
        for a, b in zip(out_eval, out_closed):
            assert a.eq(b), "exponential coefficient routes disagree"
        return out_eval
    return out_eval if out_eval is not None else out_closed


# -- ideals ----------------------------------------------------------------


class FractionalIdeal:
    """Integral ideal determined by its finite part h = prod Q^(e_Q) (a
    monic polynomial coprime to P_inf) and the exponent e_P at the
    pole-of-x prime.  deg I = deg h + e_P; the Picard class is deg I mod d.
    The spec form a*P^j is recovered by generator_and_class()."""

    def __init__(self, ctx: GenusZeroContext, h: FPoly, e_P: int):
        assert h.is_monic() and e_P >= 0
        _, r = h.divmod(ctx.P_inf)
        assert not r.is_zero() or h.degree() < ctx.P_inf.degree(), "finite part must avoid P_inf"
        self.ctx = ctx
        self.h = h
        self.e_P = e_P

    @staticmethod
    def unit(ctx) -> "FractionalIdeal":
        return FractionalIdeal(ctx, FPoly.one(ctx.base_field), 0)

    def degree(self) -> int:
        return self.h.degree() + self.e_P

    def pic_class(self) -> int:
        return self.degree() % self.ctx.d

    def is_principal(self) -> bool:
        return self.pic_class() == 0

    def generators(self) -> list:
        """Two A-elements generating the ideal: h x^m / P_inf^k and
        h (x^m + 1) / P_inf^k, degenerating to one generator when the
        class is trivial (m = 0)."""
        ctx = self.ctx
        k = -(-self.degree() // ctx.d)
        m = k * ctx.d - self.degree()
        x = FPoly.x(ctx.base_field)
        a1 = AElem(ctx, self.h * x ** m if m else self.h, k)
        if m == 0:
            return [a1]
        a2 = AElem(ctx, self.h * (x ** m + FPoly.one(ctx.base_field)), k)
        return [a1, a2]

    def generator_and_class(self) -> tuple:
        """The spec's (a, j) form: I = (a) P^j with 0 <= j < d."""
        j = self.pic_class()
        k = (self.degree() - j) // self.ctx.d
        return (self.h, k, j)

    def __mul__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return FractionalIdeal(self.ctx, self.h * other.h, self.e_P + other.e_P)

    def key(self) -> tuple:
        encs = [int(v) for v in self.h.encs()]
        code = 0
        for e in reversed(encs):
            code = code * self.ctx.q + e
        return (self.degree(), self.e_P, code)

    def eq(self, other) -> bool:
        return self.e_P == other.e_P and self.h == other.h

    __eq__ = eq

    def __hash__(self):
        return hash((self.e_P, self.h))

    def __repr__(self):
        return "FractionalIdeal(h=%r, e_P=%d)" % (self.h, self.e_P)


def ideal_count(q: int, n: int) -> int:
    """Number of integral ideals of degree n: the degree-n coefficient of
    the zeta function of the projective line with the infinite place
    removed, (1 - T^d)/((1-T)(1-qT)) restored by the extra pole-of-x
    place; independent of d it collapses to 1 + q + ... + q^n."""
    return (q ** (n + 1) - 1) // (q - 1)


def enumerate_ideals(ctx: GenusZeroContext, D: int) -> list:
    """All integral ideals of degree <= D, ordered by (degree, e_P, finite
    part encoding)."""
    out = []
    for n in range(D + 1):
        level = []
        for e_P in range(n + 1):
            for h in monic_polys(ctx.base_field, n - e_P):
                _, r = h.divmod(ctx.P_inf)
                if r.is_zero() and h.degree() >= ctx.d:
                    continue
                level.append(FractionalIdeal(ctx, h, e_P))
        level.sort(key=lambda I: I.key())
        out.extend(level)
    return out


def ideal_skew(ctx: GenusZeroContext, I: FractionalIdeal) -> tuple:
    """(phi_I, psi): the monic right gcd of the phi_a over a generating
    set, and its constant term.  deg_tau phi_I = deg I."""
    key = (I.h, I.e_P)
    if key in ctx._ideal_cache:
        return ctx._ideal_cache[key]
    gens = I.generators()
    ops = [drinfeld_coeffs(ctx, a) for a in gens]
    if len(ops) == 1:
        phi = ops[0].monic().normalize_coeffs()
    else:
        phi = right_gcd(ops[0], ops[1])
    assert phi.degree() == I.degree(), "ideal operator degree mismatch"
    psi = phi.coeff(0)
    ctx._ideal_cache[key] = (phi, psi)
    return phi, psi


def u_ideal(ctx: GenusZeroContext, I: FractionalIdeal) -> ZRat:
    """u_I = sum_j phi_(I,j) F_j(z); a z-rational function with Kummer
    coefficients whose denominator divides prod_(l<deg I) (z - zeta^(q^l))."""
    phi, _ = ideal_skew(ctx, I)
    acc = ZRat.zero(ctx)
    for j in range(phi.degree() + 1):
        c = phi.coeff(j)
        if c.is_zero():
            continue
        acc = acc + shtuka_product(ctx, j).scale(c)
    return acc


class GaloisElem:
    """Artin symbol data: Frobenius exponent k on F_(q^d) (x fixed) and the
    image w of g^(q-1); acts on elements of H (g-exponents divisible by
    q-1) by coefficient Frobenius and g^((q-1)l) -> w^l."""

    def __init__(self, ctx: GenusZeroContext, k: int, w: HElem):
        self.ctx = ctx
        self.k = k % ctx.d
        self.w = w

    @staticmethod
    def identity(ctx) -> "GaloisElem":
        return GaloisElem(ctx, 0, HElem.g_pow(ctx, ctx.q - 1))

    def apply(self, h: HElem) -> HElem:
        q = self.ctx.q
        qk = q ** self.k
        out = HElem.zero(self.ctx)
        wpow = {0: HElem.one(self.ctx)}
        for e, u in h.comps.items():
            assert e % (q - 1) == 0, "sigma acts only on elements of H"
            l = e // (q - 1)
            if l not in wpow:
                p = HElem.one(self.ctx)
                for _ in range(l):
                    p = p * self.w
                wpow[l] = p
            out = out + wpow[l].smul(u.frob(qk))
        return out

    def compose(self, other: "GaloisElem") -> "GaloisElem":
        """self o other (apply other first)."""
        return GaloisElem(self.ctx, self.k + other.k, self.apply(other.w))

    def key(self) -> tuple:
        e, u = self.w.normalize().single()
        un = u.normalize()
        return (self.k, e, hash(un))

    def eq(self, other) -> bool:
        return self.k == other.k and self.w.eq(other.w)

    __eq__ = eq

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "GaloisElem(k=%d, w=%r)" % (self.k, self.w)


def artin(ctx: GenusZeroContext, I: FractionalIdeal) -> GaloisElem:
    """sigma_I, solved from sigma_I(f) u_I = f twist(u_I): with k = deg I
    mod d the image w of g^(q-1) satisfies
    w (z - zeta^(q^k)) N^(1) D = g^(q-1) (z - zeta) N D^(1)
    where u_I = N/D; w is read off the leading coefficients and the full
    identity is then asserted."""
    key = (I.h, I.e_P)
    if key in ctx._artin_cache:
        return ctx._artin_cache[key]
    F = ctx.ffield
    q = ctx.q
    k = I.degree() % ctx.d
    uI = u_ideal(ctx, I)
    N = ZRat(ctx, list(uI.num), {}, reduce=False)
    D = ZRat.one(ctx)
    for r, m in uI.den.items():
        for _ in range(m):
            D = D * ZRat(ctx, [-HElem.const(ctx, r), HElem.one(ctx)], {}, reduce=False)
    lin = lambda r: ZRat(ctx, [-HElem.const(ctx, r), HElem.one(ctx)], {}, reduce=False)
    lhs = lin(F.pow(ctx.zeta, q ** k)) * N.twist(1) * D
    rhs = (lin(ctx.zeta) * N * D.twist(1)).scale(HElem.g_pow(ctx, q - 1))
    la, lb = lhs.num[-1], rhs.num[-1]
    w = (lb * la.inverse()).normalize()
    assert lhs.scale(w).eq(rhs), "Artin action is inconsistent with the ideal function"
    e, _ = w.single()
    assert e % (q - 1) == 0
    sig = GaloisElem(ctx, k, w)
    ctx._artin_cache[key] = sig
    return sig


def galois_group(ctx: GenusZeroContext) -> list:
    """All |G| = d (q^d - 1)/(q - 1) Artin symbols, generated by the
    symbols of small primes; closure under composition."""
    target = ctx.d * ctx.M // (ctx.q - 1)
    gens = []
    for I in enumerate_ideals(ctx, ctx.d + 1):
        if I.degree() > 0:
            gens.append(artin(ctx, I))
    seen = {}
    frontier = [GaloisElem.identity(ctx)]
    seen[frontier[0].key()] = frontier[0]
    while frontier:
        cur = frontier.pop()
        for s in gens:
            nxt = s.compose(cur)
            kk = nxt.key()
            if kk not in seen:
                seen[kk] = nxt
                frontier.append(nxt)
        if len(seen) > target:
            break
    assert len(seen) == target, "Galois closure size %d, expected %d" % (len(seen), target)
    return list(seen.values())


# -- special function and period -------------------------------------------


def special_U(ctx: GenusZeroContext, N: int) -> TateSeries:
    """U = prod_(i>=0) (1 + (zeta-x)^(q^i)/(z - zeta^(q^i)))^(-1) in the
    Tate algebra: u-series whose coefficients are rational in z with
    denominators among (z - zeta^(q^i))."""
    sctx = make_series_context(ctx.q, ctx.d, ("z",))
    F = sctx.field
    xs = ctx.x_series(N + 1)
    zc = TateSeries.const(sctx, ctx.zeta, PREC_EXACT)
    base = _lift_to_z(sctx, zc - _lift_to_z(sctx, None, other=xs), None)

    def factors():
        i = 0
        while True:
            num = (zc - _lift_var_free(sctx, xs)).twist(i) if False else None
            yield _u_factor(ctx, sctx, xs, i, N + 1)
            i += 1

    prod = inf_product(sctx, factors(), N + 1)
    return prod.inverse().truncate(N)


def _lift_var_free(sctx, s: TateSeries) -> TateSeries:
    """Reinterpret a variable-free series in the z-variable context."""
    return TateSeries(
        sctx,
        {e: sctx.coef_const(c.const_value()) for e, c in s.terms.items()},
        s.prec,
    )


def _lift_to_z(sctx, a, other=None):
    if a is None:
        return _lift_var_free(sctx, other)
    return a


def _u_factor(ctx, sctx, xs: TateSeries, i: int, prec: int) -> TateSeries:
    """1 + (zeta - x)^(q^i) / (z - zeta^(q^i)) as a series with a single
    denominator factor."""
    F = sctx.field
    zc = TateSeries.const(sctx, ctx.zeta, PREC_EXACT)
    diff = (zc - _lift_var_free(sctx, xs)).twist(i)
    from .series import Coef
    from .poly import MPoly

    root = F.pow(ctx.zeta, ctx.q ** i)
    invden = Coef(sctx, sctx.expand_den((((0, root), 1),)) * 0 + MPoly.const(F, 1, 1), (((0, root), 1),), reduce=False)
    tail = diff.smul(invden)
    return TateSeries.one(sctx, prec) + tail.truncate(prec)


def omega_general(ctx: GenusZeroContext, N: int) -> TateSeries:
    """omega = g^(-1) U; satisfies twist(omega) = f omega and
    sgn(omega u) = 1."""
    U = special_U(ctx, N + 1)
    gs = _lift_var_free(U.ctx, ctx.g_series(N + 2))
    return (U * gs.inverse()).truncate(N)


def shtuka_series(ctx: GenusZeroContext, N: int, sctx=None) -> TateSeries:
    """The series image of f: (z - x(u))/(z - zeta) g(u)^(1-q) with the
    z-rational part carried in the coefficients."""
    if sctx is None:
        sctx = make_series_context(ctx.q, ctx.d, ("z",))
    from .poly import MPoly
    from .series import Coef

    F = sctx.field
    xs = ctx.x_series(N + 2)
    gs = ctx.g_series(N + 2)
    gpart = _lift_var_free(sctx, (gs ** (ctx.q - 1)).truncate(N + 1).inverse())
    den = (((0, ctx.zeta), 1),)
    zvar = Coef(sctx, MPoly.var(F, 1, 0), den, reduce=False)
    one_over = Coef(sctx, MPoly.const(F, 1, 1), den, reduce=False)
    znum = TateSeries(sctx, {0: zvar}, PREC_EXACT)
    xpart = _lift_var_free(sctx, xs).smul(one_over)
    return ((znum - xpart) * gpart).truncate(N)


def pi_tilde_general(ctx: GenusZeroContext, N: int) -> TateSeries:
    """The period: the cancelled product for (z-x) omega at z = x,
    (x - zeta) prod_(i>=1) (1 + (zeta-x)^(q^i)/(x - zeta^(q^i)))^(-1) / g,
    scaled by 1/P_inf(x)^2 (d = 1) or 1/P_inf(x) (d > 1) to the valuation
    of the kernel generator, then sgn-normalized by a constant."""
    q = ctx.q
    M = ctx.M
    pad = 2 * M + q + 8
    work = N + 2 * M + pad
    xs = ctx.x_series(work)
    sctx = ctx.sctx0
    zc = TateSeries.const(sctx, ctx.zeta, PREC_EXACT)
    diff = zc - xs  # zeta - x, valuation M

    def factors():
        i = 1
        while True:
            d = diff.twist(i)
            base = xs - zc.twist(i) if False else xs - TateSeries.const(sctx, sctx.field.pow(ctx.zeta, q ** i), PREC_EXACT)
            b = base.truncate(base.valuation() + work)
            yield TateSeries.one(sctx, work) + d * b.inverse()
            i += 1

    prod = inf_product(sctx, factors(), work)
    gs = ctx.g_series(work)
    rho = (xs - zc) * prod.truncate(prod.valuation() + work).inverse() * gs.truncate(gs.valuation() + work).inverse()
    kappa = 2 if ctx.d == 1 else 1
    pser = eval_fpoly(ctx.P_ext, xs)
    scale = (pser ** kappa).truncate(kappa * M + work)
    pit = rho * scale.inverse()
    # sgn normalization: sgn(pi u) = 1
    v = pit.valuation()
    assert (v + 1) % M == 0
    lead = pit.terms[v].const_value()
    F = sctx.field
    if ((v + 1) // M) % 2:
        lead = F.neg(lead)
    pit = pit.smul(F.inv(lead))
    return pit.truncate(N)


def kummer_unit(ctx: GenusZeroContext) -> HElem:
    """The unit u of B = A[F_inf][u]: g^(q-1)/(zeta - x), whose
    (q^d-1)/(q-1)-th power is prod_k (zeta - x^(q^k))/(zeta^(q^k) - x^(q^k))."""
    F = ctx.ffield
    den = FPoly.const(F, ctx.zeta) - FPoly.x(F)
    return HElem.from_ufrac(ctx, UFrac(FPoly.one(F), den), ctx.q - 1)
