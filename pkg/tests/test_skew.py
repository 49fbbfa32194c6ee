"""Skew polynomial ring: twisted product, right division, right gcd."""

import random

import pytest

from shtuka.ff import make_field
from shtuka.poly import FPoly, UFrac
from shtuka.skew import (
    FracDomain,
    PolyDomain,
    SkewPoly,
    conjugate_twist,
    right_divmod,
    right_gcd,
)


def _carlitz_x(dom):
    # the rank-one operator x + tau over F_q(x)
    return SkewPoly(dom, [UFrac(FPoly.x(dom.field)), dom.one()])


def _carlitz(dom, a: FPoly) -> SkewPoly:
    """a(C_x) by Horner; the Carlitz module ring map for F_q[x]."""
    Cx = _carlitz_x(dom)
    acc = SkewPoly.zero(dom)
    for c in list(a.encs())[::-1]:
        acc = acc * Cx + SkewPoly.const(dom, UFrac.const(dom.field, int(c)))
    return acc


def test_square_of_x_plus_tau():
    for q in (2, 3, 5):
        F = make_field(q, 1)
        dom = FracDomain(F, q)
        sq = _carlitz_x(dom) * _carlitz_x(dom)
        x = FPoly.x(F)
        # (x + tau)^2 = x^2 + (x^q + x) tau + tau^2
        assert sq.coeff(0).eq(UFrac(x * x))
        assert sq.coeff(1).eq(UFrac(x.frob(q) + x))
        assert sq.coeff(2).eq(UFrac.one(F))


def test_mul_degree_adds_and_not_commutative():
    F = make_field(3, 1)
    dom = FracDomain(F, 3)
    x = UFrac(FPoly.x(F))
    a = SkewPoly(dom, [x, dom.one()])
    t = SkewPoly.tau(dom)
    assert (a * t).degree() == 2
    # tau * x = x^3 tau != x tau
    assert not (t * SkewPoly.const(dom, x)).eq(SkewPoly.const(dom, x) * t)


def test_right_divmod_reconstruction_random():
    rng = random.Random(23)
    F = make_field(3, 1)
    dom = FracDomain(F, 3)

    def rand_skew(maxdeg):
        n = rng.randrange(1, maxdeg + 2)
        cs = []
        for _ in range(n):
            num = FPoly.from_encs(F, [rng.randrange(3) for _ in range(3)])
            cs.append(UFrac(num))
        return SkewPoly(dom, cs)

    for _ in range(40):
        a, b = rand_skew(4), rand_skew(3)
        if b.is_zero():
            continue
        q, r = right_divmod(a, b)
        assert (q * b + r).eq(a)
        assert r.degree() < b.degree()


def test_right_gcd_matches_carlitz_gcd():
    # right_gcd(C_a, C_b) = C_{gcd(a,b)} made monic, since C is a ring map
    for q in (2, 3):
        F = make_field(q, 1)
        dom = FracDomain(F, q)
        rng = random.Random(31 + q)
        for _ in range(10):
            g = FPoly.from_encs(F, [rng.randrange(q) for _ in range(3)] + [1])
            u = FPoly.from_encs(F, [rng.randrange(q), 1])
            v = u + FPoly.one(F)  # coprime to u
            a, b = g * u, g * v
            got = right_gcd(_carlitz(dom, a), _carlitz(dom, b))
            want = _carlitz(dom, g.monic()).monic()
            assert got.eq(want)
            # symmetric in the arguments
            assert right_gcd(_carlitz(dom, b), _carlitz(dom, a)).eq(got)


def test_conjugate_twist_on_commuting_pair():
    # X * C_a = C_a * C_b has the solution X = C_b in the commutative image
    F = make_field(2, 1)
    dom = FracDomain(F, 2)
    a = FPoly.from_encs(F, [1, 1, 1])
    b = FPoly.from_encs(F, [0, 1, 1])
    Ca, Cb = _carlitz(dom, a), _carlitz(dom, b)
    X = conjugate_twist(Ca, Cb)
    assert X.eq(Cb)


def test_conjugate_twist_no_solution_raises():
    F = make_field(2, 1)
    dom = FracDomain(F, 2)
    x = UFrac(FPoly.x(F))
    phi = SkewPoly(dom, [x, dom.one()])
    bad = SkewPoly(dom, [dom.one(), x, dom.one()])
    # generic ill-matched pair: remainder does not vanish
    with pytest.raises(ValueError):
        conjugate_twist(phi + SkewPoly.tau(dom, 2), bad)


def test_right_gcd_refuses_non_field_domain():
    F = make_field(2, 1)
    dom = PolyDomain(F, 2)
    a = SkewPoly(dom, [FPoly.x(F), FPoly.one(F)])
    with pytest.raises(TypeError):
        right_gcd(a, a)


def test_apply_evaluates_operator():
    # (x + tau) applied to a scalar y in the closure: x*y + y^q; check over
    # the base field where twist is the q-power map
    F = make_field(5, 1)
    dom = FracDomain(F, 5)
    Cx = _carlitz_x(dom)

    class Scal:
        def __init__(self, n):
            self.n = n

        def __add__(self, o):
            return Scal(F.add(self.n, o.n))

    for y in range(5):
        for pt in range(5):
            val = Cx.apply(
                Scal(y),
                mul=lambda c, s: Scal(F.mul(c.eval_enc(pt), s.n)),
                twist=lambda s: Scal(F.pow(s.n, 5)),
            )
            assert val.n == F.add(F.mul(pt, y), F.pow(y, 5))
