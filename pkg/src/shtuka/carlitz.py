"""The rank-one module over F_q[x] with operator x + tau, and the objects
hanging off it: exponential/logarithm coefficients, division-point series,
Gauss sums, and (in the degree-one-at-infinity coordinates) the product
formulas for the special function omega and the period pi_tilde.

Series conventions: the context at a modulus P_inf of degree d works in
F_(q^d)((u)) with u^(q^d - 1) = -P_inf(x); x itself embeds as the Hensel
root of P_inf(X) + u^(q^d - 1) near the chosen root zeta of P_inf.  In the
degree-one theta-coordinates (P_inf linear in 1/theta), theta = -u^(1-q)
and the root (-theta)^(1/(q-1)) is realized as u^(-1).
"""

from __future__ import annotations

import functools

from .ff import make_field
from .poly import FPoly, UFrac, monic_polys
from .series import (
    PREC_EXACT,
    SeriesContext,
    TateSeries,
    eval_fpoly,
    hensel_root,
    inf_product,
    make_series_context,
)
from .skew import FracDomain, SkewPoly


class CarlitzContext:
    """Base field F_q and the operator ring F_q(x){tau} with C_x = x + tau."""

    def __init__(self, q: int, var: str = "x"):
        self.q = q
        p = 2
        while q % p:
            p += 1
        e = 0
        m = q
        while m > 1:
            assert m % p == 0, "q must be a prime power"
            m //= p
            e += 1
        self.field = make_field(p, e)
        self.var = var
        self.dom = FracDomain(self.field, q)
        self.Cx = SkewPoly(self.dom, [UFrac(FPoly.x(self.field)), self.dom.one()])

    def __repr__(self):
        return "CarlitzContext(q=%d, var=%r)" % (self.q, self.var)


@functools.lru_cache(maxsize=None)
def make_carlitz_context(q: int, var: str = "x") -> CarlitzContext:
    return CarlitzContext(q, var)


def carlitz_op(ctx: CarlitzContext, a: FPoly) -> SkewPoly:
    """C_a = a(C_x), by Horner in the skew ring; tau-degree = deg a."""
    assert a.field == ctx.field
    acc = SkewPoly.zero(ctx.dom)
    for c in [int(v) for v in a.encs()][::-1]:
        acc = acc * ctx.Cx + SkewPoly.const(ctx.dom, UFrac.const(ctx.field, c))
    assert acc.degree() == a.degree()
    return acc


class ExpData:
    """Exponential and logarithm coefficients e_i, l_i in F_q(x):
    exp = sum e_i tau^i, log = sum l_i tau^i, with e_0 = l_0 = 1."""

    def __init__(self, e: list[UFrac], l: list[UFrac]):
        self.e = e
        self.l = l


def carlitz_exp_coeffs(ctx: CarlitzContext, n: int) -> ExpData:
    """First n+1 coefficients of exp and log for the operator x + tau.

    e_i = tau(e_{i-1}) / (x^(q^i) - x); the l_i are determined by
    log being the compositional inverse (sum l_j tau^j(e_k) = 0, j+k = i)."""
    q = ctx.q
    F = ctx.field
    x = FPoly.x(F)
    e = [UFrac.one(F)]
    for i in range(1, n + 1):
        den = UFrac(x.spread(q ** i) - x)
        e.append((e[-1].frob(q) / den).normalize())
    l = [UFrac.one(F)]
    for i in range(1, n + 1):
        acc = UFrac.zero(F)
        for j in range(i):
            acc = acc + l[j] * e[i - j].frob(q ** j)
        l.append((-acc).normalize())
    return ExpData(e, l)


def sgn_of(s: TateSeries) -> int:
    """sgn of a variable-free series: requires valuation divisible by M;
    equals lead * (-1)^(v/M) since u^M = -pi and sgn(pi) = 1."""
    v = s.valuation()
    M = s.ctx.M
    assert v % M == 0, "element is not sgn-graded: valuation %d not divisible by %d" % (v, M)
    lead = s.terms[v].const_value()
    F = s.ctx.field
    if (v // M) % 2:
        lead = F.neg(lead)
    return lead


def _check_modulus(ctx: CarlitzContext, P_inf: FPoly):
    assert P_inf.field == ctx.field
    assert P_inf.is_monic(), "P_inf must be monic (sign-normalized)"
    assert _is_irreducible(P_inf), "P_inf must be irreducible"


def _is_irreducible(P: FPoly) -> bool:
    d = P.degree()
    if d <= 0:
        return False
    for m in range(1, d // 2 + 1):
        for div in monic_polys(P.field, m):
            if (P % div).is_zero():
                return False
    return True


def zeta_root(ctx: CarlitzContext, P_inf: FPoly):
    """The deterministic (least-encoding) root zeta of P_inf in F_(q^d)."""
    d = P_inf.degree()
    sctx = make_series_context(ctx.q, d, ())
    Pe = P_inf.map_field(sctx.field)
    for y in range(sctx.field.q):
        if Pe.eval_enc(y) == 0:
            return sctx, y
    raise ArithmeticError("P_inf has no root in its residue field")


def x_embedding(ctx: CarlitzContext, P_inf: FPoly, N: int) -> TateSeries:
    """The series of x in F_(q^d)((u)): Hensel root of P_inf(X) + u^M near
    zeta, so that P_inf(x(u)) = -u^M = pi."""
    _check_modulus(ctx, P_inf)
    sctx, zeta = zeta_root(ctx, P_inf)
    M = sctx.M
    Pe = P_inf.map_field(sctx.field)
    coeffs = []
    for i, enc in enumerate([int(v) for v in Pe.encs()]):
        c = TateSeries.const(sctx, enc, PREC_EXACT)
        if i == 0:
            c = c + TateSeries(sctx, {M: sctx.coef_const(1)}, PREC_EXACT)
        coeffs.append(c)
    seed = TateSeries.const(sctx, zeta, N)
    xs = hensel_root(coeffs, seed, N)
    return xs


def torsion_root(ctx: CarlitzContext, P_inf: FPoly, N: int) -> TateSeries:
    """The P_inf-division point lambda with C_{P_inf}(lambda) = 0,
    v(lambda) = 1 and sgn(lambda/u) = 1, to precision N.

    Solved by hensel_root on the degree-(q^d - 1) equation satisfied by
    w = lambda/u, namely sum_i c_i(x) u^(q^i - M - 1) w^(q^i - 1) = 0 with
    c_i the tau-coefficients of C_{P_inf}; the seed digit is 1."""
    _check_modulus(ctx, P_inf)
    q = ctx.q
    d = P_inf.degree()
    sctx = make_series_context(q, d, ())
    M = sctx.M
    xs = x_embedding(ctx, P_inf, N + M + 1)
    CP = carlitz_op(ctx, P_inf)
    # coefficient of w^(q^i - 1) is b_i = c_i(x(u)) * u^(q^i - M - 1)
    coeffs = [TateSeries.zero(sctx, N + M + 1) for _ in range(q ** d)]
    for i in range(d + 1):
        ci = CP.coeff(i)
        num = ci.num.map_field(sctx.field)
        assert ci.den.degree() == 0
        b = eval_fpoly(num, xs).smul(sctx.field.inv(ci.den.lead()))
        coeffs[q ** i - 1] = b.shift(q ** i - M - 1)
    seed = TateSeries.one(sctx, N)
    w = hensel_root(coeffs, seed, N - 1)
    lam = w.shift(1)
    assert lam.valuation() == 1
    assert lam.terms[1].const_value() == 1  # sgn(lambda/u) = 1
    return lam


def carlitz_apply(ctx: CarlitzContext, op: SkewPoly, xs: TateSeries, s: TateSeries) -> TateSeries:
    """Evaluate a skew operator with F_q(x) coefficients at a variable-free
    series s, embedding x as the series xs."""
    F = xs.ctx.field

    def mul(c: UFrac, y: TateSeries) -> TateSeries:
        num = eval_fpoly(c.num.map_field(F), xs)
        den = eval_fpoly(c.den.map_field(F), xs)
        return num * den.inverse() * y

    return op.apply(s, mul=mul, twist=lambda y: y.twist(1))


def gauss_sum(ctx: CarlitzContext, P_inf: FPoly, N: int) -> TateSeries:
    """The sum -sum_y sgn(y)^(-1) C_y(lambda) over nonzero y in F_q[x] of
    degree < d; satisfies g^(q^d - 1) = prod_k (zeta - x^(q^k)) and
    sgn(g/u) = 1."""
    q = ctx.q
    d = P_inf.degree()
    sctx, zeta = zeta_root(ctx, P_inf)
    F = sctx.field
    lam = torsion_root(ctx, P_inf, N)
    xs = x_embedding(ctx, P_inf, N + 1)
    # S_j = C_{x^j}(lambda) via S_{j+1} = x * S_j + tau(S_j)
    S = [lam]
    for _ in range(1, d):
        S.append(xs * S[-1] + S[-1].twist(1))
    # g = -sum_j alpha_j S_j with alpha_j = sum_y y(zeta)^(-1) y_j
    alphas = [0] * d
    for ycode in range(1, q ** d):
        digs = []
        m = ycode
        while m:
            digs.append(m % q)
            m //= q
        acc = 0
        for c in reversed(digs):
            acc = F.add(F.mul(acc, zeta), c)
        inv = F.inv(acc)
        for j, c in enumerate(digs):
            if c:
                alphas[j] = F.add(alphas[j], F.mul(inv, c))
    g = TateSeries.zero(sctx, N)
    for j, a in enumerate(alphas):
        if a:
            g = g + S[j].smul(a)
    g = -g
    assert g.valuation() == 1 and g.terms[1].const_value() == 1
    return g


# -- degree-one infinity, theta coordinates --------------------------------


def theta_context(q: int, s: int = 1) -> SeriesContext:
    """d_inf = 1 context with variables t_1..t_s (named t when s = 1)."""
    if s == 0:
        return make_series_context(q, 1, ())
    if s == 1:
        return make_series_context(q, 1, ("t",))
    return make_series_context(q, 1, tuple("t%d" % (i + 1) for i in range(s)))


def theta_series(sctx: SeriesContext, j: int = 1, prec: int = PREC_EXACT) -> TateSeries:
    """theta^j as an exact monomial: theta = -u^(1-q)."""
    q = sctx.q
    assert sctx.d_inf == 1
    c = 1 if (j % 2 == 0 or sctx.p == 2) else sctx.field.neg(1)
    return TateSeries(sctx, {-(q - 1) * j: sctx.coef_const(c)}, prec)


def omega_carlitz(q: int, N: int, sctx: SeriesContext | None = None, tvar: int = 0) -> TateSeries:
    """omega = u^(-1) * prod_i (1 - t/theta^(q^i))^(-1) to precision N;
    satisfies twist(omega) = (t - theta) * omega and v(omega) = -1."""
    if sctx is None:
        sctx = theta_context(q, 1)
    assert sctx.d_inf == 1

    def factors():
        i = 0
        while True:
            # 1 - t/theta^(q^i) = 1 + t * u^((q-1) q^i)
            e = (q - 1) * q ** i
            yield TateSeries(
                sctx,
                {0: sctx.coef_const(1), e: sctx.coef_var(tvar)},
                N + 1,
            )
            i += 1

    prod = inf_product(sctx, factors(), N + 1)
    return prod.inverse().shift(-1)


def pi_tilde_product(q: int, N: int, sctx: SeriesContext | None = None) -> TateSeries:
    """pi_tilde = u^(-1) * theta * prod_{i>=1} (1 - theta^(1-q^i))^(-1) to
    precision N; v = -q in u-units, i.e. -q/(q-1) in pi-units."""
    if sctx is None:
        sctx = theta_context(q, 0)
    assert sctx.d_inf == 1
    neg1 = sctx.field.neg(1)

    def factors():
        i = 1
        while True:
            # theta^(1-q^i) = u^((q-1)(q^i-1)) exactly
            e = (q - 1) * (q ** i - 1)
            yield TateSeries(sctx, {0: sctx.coef_const(1), e: sctx.coef_const(neg1)}, N + q)
            i += 1

    prod = inf_product(sctx, factors(), N + q)
    return (theta_series(sctx).shift(-1) * prod.inverse()).truncate(N)
