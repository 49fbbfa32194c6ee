"""Polynomial layer: FPoly ring ops, UFrac, MPoly, root finding."""

import random

from shtuka.ff import make_field
from shtuka.poly import FPoly, MPoly, UFrac, roots_in_extension


def _rand_poly(rng, F, maxdeg):
    return FPoly.from_encs(F, [rng.randrange(F.q) for _ in range(rng.randrange(maxdeg + 2))])


def test_fpoly_ring_axioms_random():
    rng = random.Random(11)
    for (p, e) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)]:
        F = make_field(p, e)
        for _ in range(60):
            a, b, c = (_rand_poly(rng, F, 6) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a - a).is_zero()


def test_fpoly_mul_degree_and_known_product():
    F2 = make_field(2, 1)
    a = FPoly.from_encs(F2, [1, 1])        # 1 + x
    b = FPoly.from_encs(F2, [1, 1, 1])     # 1 + x + x^2
    assert (a * b).encs().tolist() == [1, 0, 0, 1]  # 1 + x^3 over F_2
    F5 = make_field(5, 1)
    c = FPoly.from_encs(F5, [2, 3])
    d = FPoly.from_encs(F5, [4, 1])
    assert (c * d).encs().tolist() == [3, 4, 3]  # (2+3x)(4+x) = 8 + 14x + 3x^2


def test_divmod_and_gcd():
    rng = random.Random(13)
    for (p, e) in [(2, 1), (2, 2), (3, 2), (5, 1)]:
        F = make_field(p, e)
        for _ in range(50):
            a = _rand_poly(rng, F, 8)
            b = _rand_poly(rng, F, 5)
            if b.is_zero():
                continue
            q, r = a.divmod(b)
            assert q * b + r == a
            assert r.degree() < b.degree() or r.is_zero()
        # gcd of products shares the common factor
        g = _rand_poly(rng, F, 3)
        while g.degree() < 1:
            g = _rand_poly(rng, F, 3)
        u, v = _rand_poly(rng, F, 3), _rand_poly(rng, F, 3)
        if not (u.is_zero() or v.is_zero()):
            gg = (g * u).gcd(g * v)
            assert (gg % g.monic()).is_zero() or (g.monic() % gg).is_zero() or gg == g.monic()


def test_eval_and_frobenius_twist():
    # P.frob(q) is the function P(x)^q, so it evaluates to P(y)^q pointwise
    F4 = make_field(2, 2)
    P = FPoly.from_encs(F4, [2, 1, 3])  # w + x + (w+1) x^2
    for q in (2, 4):
        Pq = P.frob(q)
        for y in F4.elements():
            assert Pq.eval_enc(y) == F4.pow(P.eval_enc(y), q)


def test_spread_and_coeff_frob_commute_into_frob():
    F9 = make_field(3, 2)
    rng = random.Random(5)
    P = _rand_poly(rng, F9, 5)
    assert P.frob(3) == P.coeff_frob(3).spread(3)
    assert P.frob(9) == P.coeff_frob(9).spread(9)


def test_ufrac_field_axioms():
    rng = random.Random(17)
    F = make_field(3, 1)
    for _ in range(40):
        a_n, b_n = _rand_poly(rng, F, 4), _rand_poly(rng, F, 4)
        a_d, b_d = _rand_poly(rng, F, 3), _rand_poly(rng, F, 3)
        if a_d.is_zero() or b_d.is_zero():
            continue
        a, b = UFrac(a_n, a_d), UFrac(b_n, b_d)
        assert (a + b) - b == a
        if not b.is_zero():
            assert (a * b) / b == a
        n = (a + b).normalize()
        assert n == a + b
        assert n.den.is_monic() or n.num.is_zero()
        assert n.num.gcd(n.den).degree() <= 0


def test_mpoly_arith_and_divide_linear():
    F = make_field(2, 2)
    t, z = MPoly.var(F, 2, 0), MPoly.var(F, 2, 1)
    one = MPoly.const(F, 2, 1)
    p = (t + z) * (t + z) + one  # t^2 + z^2 + 1 over char 2
    assert p.degree_in(0) == 2 and p.degree_in(1) == 2
    # divide t^2 + z^2 + 1 by (t - c): remainder = c^2 + z^2 + 1
    for c in F.elements():
        quo, rem = p.divide_linear(0, c)
        back = quo * (t - MPoly.const(F, 2, c)) + rem
        assert back == p
        assert rem.degree_in(0) <= 0
    # exact divisibility: (z - c) divides z^2 - c^2
    c = 2
    zz = z * z - MPoly.const(F, 2, F.mul(c, c))
    quo, rem = zz.divide_linear(1, c)
    assert rem.is_zero()
    assert quo == z + MPoly.const(F, 2, c)


def test_mpoly_eval_and_rename():
    F = make_field(3, 1)
    t1, t2 = MPoly.var(F, 2, 0), MPoly.var(F, 2, 1)
    p = t1 * t1 * t2 + t2.smul(2)
    assert p.eval_var(0, 2).eval_var(1, 1).const_value() == (4 * 1 + 2) % 3
    r = p.rename([1, 0], 2)
    assert r == t2 * t2 * t1 + t1.smul(2)


def test_roots_in_extension_known_cases():
    F2 = make_field(2, 1)
    # x^2 + x + 1 splits in F_4 with the two primitive cube roots of unity
    P = FPoly.from_encs(F2, [1, 1, 1])
    roots = roots_in_extension(P, 2)
    assert [r.n for r in roots] == [2, 3]
    ext = roots[0].field
    for r in roots:
        assert P.map_field(ext).eval_enc(r.n) == 0
    # multiplicity: (x+1)^2 over F_2 in any extension
    P2 = FPoly.from_encs(F2, [1, 0, 1])  # x^2 + 1 = (x+1)^2
    roots2 = roots_in_extension(P2, 2)
    assert [r.n for r in roots2] == [1, 1]
    # irreducible of degree 2 over F_3 has no roots in F_3 but two in F_9
    F3 = make_field(3, 1)
    P3 = FPoly.from_encs(F3, [1, 0, 1])  # x^2 + 1
    assert roots_in_extension(P3, 1) == []
    assert len(roots_in_extension(P3, 2)) == 2
