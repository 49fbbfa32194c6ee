"""Series layer: precision rules, twist, products, Hensel, serialization."""

import random
from fractions import Fraction

import pytest

from shtuka.poly import MPoly
from shtuka.series import (
    Coef,
    TateSeries,
    coef_from_str,
    coef_to_str,
    hensel_root,
    inf_product,
    make_series_context,
    series_dumps,
    series_from_obj,
    series_loads,
    series_to_obj,
)


def _ctx(q=3, d=1, vars=()):
    return make_series_context(q, d, vars)


def _geom(ctx, N):
    # 1 - u
    return TateSeries(ctx, {0: ctx.coef_const(1), 1: ctx.coef_const(ctx.field.neg(1))}, N)


def test_inverse_geometric_series():
    ctx = _ctx(3)
    N = 40
    inv = _geom(ctx, N).inverse()
    assert inv.prec == N
    for e in range(N):
        assert inv.coeff(e).const_value() == 1


def test_inverse_with_valuation_shift():
    ctx = _ctx(2)
    N = 30
    s = _geom(ctx, N).shift(2)  # u^2 (1 - u), precision N + 2
    inv = s.inverse()
    assert inv.valuation() == -2
    prod = s * inv
    ok, bound = (prod - TateSeries.one(ctx, prod.prec)).residual_valuation()
    assert ok and bound == prod.prec


def test_precision_rules_add_mul():
    ctx = _ctx(3)
    a = TateSeries(ctx, {2: ctx.coef_const(1)}, 10)
    b = TateSeries(ctx, {5: ctx.coef_const(2)}, 7)
    assert (a + b).prec == 7
    # mul: min(prec_a + val_b, prec_b + val_a) = min(10+5, 7+2) = 9
    assert (a * b).prec == 9
    assert (a * b).coeff(7).const_value() == 2


def test_twist_scales_exponents_and_precision():
    ctx = _ctx(3, 2, ("t",))
    F = ctx.field
    c = Coef(ctx, MPoly(F, 1, {(1,): 5}))  # 5 * t with 5 an F_9 encoding
    s = TateSeries(ctx, {2: c}, 11)
    tw = s.twist(1)
    assert tw.prec == 33
    assert sorted(tw.terms) == [6]
    # coefficient constant is cubed (q = 3), the variable t is fixed
    assert tw.coeff(6).num.terms == {(1,): F.pow(5, 3)}


def test_twist_is_multiplicative():
    ctx = _ctx(3, 1, ("t",))
    rng = random.Random(41)
    F = ctx.field

    def rand_series():
        terms = {}
        for _ in range(6):
            e = rng.randrange(-3, 12)
            terms[e] = Coef(ctx, MPoly(F, 1, {(rng.randrange(3),): 1 + rng.randrange(2)}))
        return TateSeries(ctx, terms, 15)

    for _ in range(10):
        a, b = rand_series(), rand_series()
        lhs = (a * b).twist(1)
        rhs = a.twist(1) * b.twist(1)
        ok, _ = lhs.residual_valuation(rhs)
        assert ok


def test_inf_product_binary_partitions():
    # over F_2: prod (1 + u^(2^i)) = sum_n u^n by uniqueness of binary digits
    ctx = _ctx(2)
    N = 64

    def factors():
        i = 0
        while True:
            yield TateSeries(ctx, {0: ctx.coef_const(1), 2 ** i: ctx.coef_const(1)}, N)
            i += 1

    prod = inf_product(ctx, factors(), N)
    for e in range(N):
        assert prod.coeff(e).const_value() == 1


def test_inf_product_requires_increasing_valuations():
    ctx = _ctx(2)
    N = 16

    def bad():
        while True:
            yield TateSeries(ctx, {0: ctx.coef_const(1), 3: ctx.coef_const(1)}, N)

    with pytest.raises(ValueError):
        inf_product(ctx, bad(), N)


def test_hensel_sqrt():
    ctx = _ctx(3)
    N = 50
    one = TateSeries.one(ctx, N)
    target = TateSeries(ctx, {0: ctx.coef_const(1), 2: ctx.coef_const(1)}, N)  # 1 + u^2
    # E(X) = X^2 - (1 + u^2)
    root = hensel_root([-target, TateSeries.zero(ctx, N), one], one, N)
    ok, bound = (root * root).residual_valuation(target)
    assert ok and bound >= N


def test_hensel_condition_failure():
    ctx = _ctx(3)
    N = 20
    one = TateSeries.one(ctx, N)
    u = TateSeries(ctx, {1: ctx.coef_const(1)}, N)
    # X^2 - u has no root on the integer exponent lattice; Hensel must refuse
    with pytest.raises(ArithmeticError):
        hensel_root([-u, TateSeries.zero(ctx, N), one], one, N)


def test_coef_reduction_and_inverse():
    ctx = _ctx(2, 2, ("z",))
    F = ctx.field
    zeta = 2
    z2 = MPoly(F, 1, {(2,): 1})
    c2 = MPoly.const(F, 1, F.mul(zeta, zeta))
    num = z2 - c2  # z^2 - zeta^2 = (z - zeta)^2 over char 2
    c = Coef(ctx, num, {(0, zeta): 1})
    assert c.den == ()  # reduced: (z-zeta) divides
    assert c.num.terms == {(1,): 1, (0,): zeta}
    # inverse of a constant-over-factors coefficient
    d = Coef(ctx, MPoly.const(F, 1, 3), {(0, zeta): 2})
    di = d.inverse()
    assert (d * di).eq(ctx.coef_const(1))


def test_sgn_lead_and_valuation_units():
    ctx = _ctx(2, 2)  # M = 3
    s = TateSeries(ctx, {-6: ctx.coef_const(1), -2: ctx.coef_const(1)}, 10)
    v, lead = s.sgn_lead()
    assert v == Fraction(-2, 1) and lead.const_value() == 1
    s2 = s.shift(1)
    assert s2.sgn_lead()[0] == Fraction(-5, 3)


def test_integrality_check():
    ctx = _ctx(2, 2, ("z",))
    F = ctx.field
    zeta = 2
    good = TateSeries(
        ctx,
        {0: Coef(ctx, MPoly.const(F, 1, 1), {(0, zeta): 2}), 3: ctx.coef_const(1)},
        8,
    )
    assert good.integrality_check([(0, zeta)])
    assert not good.integrality_check([(0, 1)])
    assert good.integrality_check([(0, zeta), (0, 1)])


def test_serialization_round_trip_bit_exact():
    ctx = _ctx(3, 2, ("z", "t"))
    F = ctx.field
    num = MPoly(F, 2, {(0, 2): 7, (1, 0): 3, (0, 0): 1})
    c = Coef(ctx, num, {(0, 4): 2, (1, 1): 1})
    s = TateSeries(ctx, {-3: c, 0: ctx.coef_const(5), 9: ctx.coef_var(1)}, 17)
    text = series_dumps(s)
    back = series_loads(text, ctx)
    assert back.prec == s.prec
    assert set(back.terms) == set(s.terms)
    for e in s.terms:
        assert back.terms[e].eq(s.terms[e])
    assert series_dumps(back) == text  # byte-identical round trip
    # and context-free loading rebuilds an equal context
    back2 = series_from_obj(series_to_obj(s))
    assert series_dumps(back2) == text


def test_coef_str_round_trip():
    ctx = _ctx(3, 2, ("z", "t"))
    F = ctx.field
    for c in [
        ctx.coef_zero(),
        ctx.coef_const(8),
        Coef(ctx, MPoly(F, 2, {(2, 1): 4, (0, 0): 2})),
        Coef(ctx, MPoly(F, 2, {(1, 1): 1}), {(0, 3): 2, (1, 2): 1}, reduce=False),
    ]:
        s = coef_to_str(c)
        back = coef_from_str(ctx, s)
        assert coef_to_str(back) == s
        assert back.eq(c)
