"""Rank-one module over F_q[x]: exp/log data, torsion points, Gauss sums,
and the degree-one-at-infinity product formulas."""

import random

from shtuka.carlitz import (
    carlitz_apply,
    carlitz_exp_coeffs,
    carlitz_op,
    gauss_sum,
    make_carlitz_context,
    omega_carlitz,
    pi_tilde_product,
    sgn_of,
    theta_series,
    torsion_root,
    x_embedding,
    zeta_root,
)
from shtuka.poly import FPoly, UFrac
from shtuka.series import PREC_EXACT, TateSeries, eval_fpoly, make_series_context
from shtuka.skew import SkewPoly


def test_exp_log_compositional_inverse():
    for q in (2, 3):
        ctx = make_carlitz_context(q)
        ed = carlitz_exp_coeffs(ctx, 5)
        for i in range(1, 6):
            # sum_j l_j tau^j(e_{i-j}) = 0 and sum_j e_j tau^j(l_{i-j}) = 0
            a = UFrac.zero(ctx.field)
            b = UFrac.zero(ctx.field)
            for j in range(i + 1):
                a = a + ed.l[j] * ed.e[i - j].frob(q ** j)
                b = b + ed.e[j] * ed.l[i - j].frob(q ** j)
            assert a.is_zero() and b.is_zero()


def test_exp_denominators():
    # e_i = 1 / ([i] [i-1]^q ... [1]^(q^(i-1))),  [j] = x^(q^j) - x
    for q in (2, 3):
        ctx = make_carlitz_context(q)
        x = FPoly.x(ctx.field)
        ed = carlitz_exp_coeffs(ctx, 4)
        for i in range(1, 5):
            den = FPoly.one(ctx.field)
            for j in range(1, i + 1):
                br = x.spread(q ** j) - x
                den = den * br.frob(q ** (i - j))
            ei = ed.e[i].normalize()
            assert ei.num == FPoly.one(ctx.field)
            assert ei.den == den.monic()


def test_exp_functional_equation():
    # exp . a = C_a . exp in the twisted ring, compared through tau^4
    rng = random.Random(7)
    for q in (2, 3):
        ctx = make_carlitz_context(q)
        ed = carlitz_exp_coeffs(ctx, 4)
        exp_op = SkewPoly(ctx.dom, list(ed.e))
        for _ in range(4):
            encs = [rng.randrange(q) for _ in range(3)] + [1]
            a = FPoly.from_encs(ctx.field, encs)
            lhs = exp_op * SkewPoly.const(ctx.dom, UFrac(a))
            rhs = carlitz_op(ctx, a) * exp_op
            for i in range(5):
                assert lhs.coeff(i).eq(rhs.coeff(i))


def test_x_embedding():
    cases = [(2, [1, 1]), (3, [2, 1]), (2, [1, 1, 1]), (3, [1, 0, 1])]
    for q, encs in cases:
        ctx = make_carlitz_context(q)
        P = FPoly.from_encs(ctx.field, encs)
        sctx, zeta = zeta_root(ctx, P)
        xs = x_embedding(ctx, P, 30)
        assert xs.valuation() == 0
        assert xs.terms[0].const_value() == zeta
        # P(x(u)) = -u^M
        val = eval_fpoly(P.map_field(sctx.field), xs)
        target = TateSeries(sctx, {sctx.M: sctx.coef_const(sctx.field.neg(1))}, val.prec)
        assert (val - target).is_zero_to_prec()


def test_degree_one_torsion_and_gauss_are_u():
    # for a linear modulus the division point and the gauss sum both
    # collapse to the uniformizer itself
    for q, encs in [(2, [1, 1]), (3, [2, 1]), (3, [1, 1]), (4, [2, 1])]:
        ctx = make_carlitz_context(q)
        P = FPoly.from_encs(ctx.field, encs)
        for s in (torsion_root(ctx, P, 25), gauss_sum(ctx, P, 25)):
            assert list(s.terms.keys()) == [1]
            assert s.terms[1].const_value() == 1


def test_torsion_quadratic_modulus():
    for q, encs in [(2, [1, 1, 1]), (3, [1, 0, 1])]:
        ctx = make_carlitz_context(q)
        P = FPoly.from_encs(ctx.field, encs)
        lam = torsion_root(ctx, P, 25)
        assert lam.valuation() == 1
        assert lam.terms[1].const_value() == 1
        xs = x_embedding(ctx, P, 30)
        res = carlitz_apply(ctx, carlitz_op(ctx, P), xs, lam)
        assert res.is_zero_to_prec()
        # other division points C_y(lambda), y nonzero of lower degree,
        # are nonzero of valuation 1
        for yencs in ([1], [0, 1], [1, 1]):
            y = FPoly.from_encs(ctx.field, yencs)
            val = carlitz_apply(ctx, carlitz_op(ctx, y), xs, lam)
            assert val.valuation() == 1


def test_gauss_sum_power_law():
    # g^(q^d - 1) = prod_k (zeta - x^(q^k)), with sgn(g/u) = 1
    for q, encs in [(2, [1, 1, 1]), (3, [1, 0, 1])]:
        ctx = make_carlitz_context(q)
        P = FPoly.from_encs(ctx.field, encs)
        d = P.degree()
        sctx, zeta = zeta_root(ctx, P)
        g = gauss_sum(ctx, P, 30)
        assert g.valuation() == 1
        assert g.terms[1].const_value() == 1
        xs = x_embedding(ctx, P, 30 + sctx.M)
        gM = g ** sctx.M
        prod = TateSeries.one(sctx, gM.prec)
        xq = xs
        for _ in range(d):
            prod = prod * (TateSeries.const(sctx, zeta, PREC_EXACT) - xq)
            xq = xq.twist(1)
        assert (gM - prod.truncate(gM.prec)).is_zero_to_prec()


def test_theta_inverts_modulus_value():
    # theta = -u^(1-q) is exactly 1/P_inf(x(u)) when P_inf is linear
    for q, encs in [(2, [1, 1]), (3, [2, 1])]:
        ctx = make_carlitz_context(q)
        P = FPoly.from_encs(ctx.field, encs)
        sctx, _ = zeta_root(ctx, P)
        xs = x_embedding(ctx, P, 30)
        th = theta_series(sctx)
        val = th * eval_fpoly(P.map_field(sctx.field), xs)
        assert (val - TateSeries.one(sctx, val.prec)).is_zero_to_prec()


def test_omega_functional_equation():
    # tau(omega) = (t - theta) omega, v(omega) = -1, residue digit 1
    for q in (2, 3):
        sctx = make_series_context(q, 1, ("t",))
        om = omega_carlitz(q, 40)
        assert om.valuation() == -1
        assert om.terms[-1].const_value() == 1
        tw = om.twist(1)
        tmth = TateSeries(sctx, {0: sctx.coef_var(0)}, PREC_EXACT) - theta_series(sctx)
        rhs = tmth * om
        n = min(tw.prec, rhs.prec)
        assert (tw.truncate(n) - rhs.truncate(n)).is_zero_to_prec()


def test_pi_tilde_in_exp_kernel():
    # the period product lands in the kernel of the exponential: the
    # series sum_i pi^(q^i) / D_i(theta) vanishes to precision
    for q in (2, 3):
        ctx = make_carlitz_context(q, "theta")
        ed = carlitz_exp_coeffs(ctx, 4)
        s0 = make_series_context(q, 1, ())
        pit = pi_tilde_product(q, 80)
        assert pit.valuation() == -q
        th = theta_series(s0)
        acc = TateSeries.zero(s0, 80)
        for i, e in enumerate(ed.e):
            en = e.normalize()
            num = eval_fpoly(en.num.map_field(s0.field), th)
            den = eval_fpoly(en.den.map_field(s0.field), th)
            den = den.truncate(den.valuation() + 200)
            term = num * den.inverse() * (pit ** (q ** i))
            acc = acc + term.truncate(acc.prec)
        assert acc.is_zero_to_prec()


def test_sgn_of_graded_elements():
    q = 3
    sctx = make_series_context(q, 1, ())
    # pi = -u^M has sgn 1; u^M = -pi has sgn -1; theta = 1/pi has sgn 1
    pi = TateSeries(sctx, {sctx.M: sctx.coef_const(sctx.field.neg(1))}, PREC_EXACT)
    assert sgn_of(pi) == 1
    assert sgn_of(-pi) == sctx.field.neg(1)
    assert sgn_of(theta_series(sctx)) == 1
    assert sgn_of(pi * pi) == 1
