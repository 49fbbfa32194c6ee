"""Twisted polynomial rings R{tau} with tau * c = c^q * tau.

SkewPoly keeps its coefficients in a pluggable domain: a small adapter
object that knows how to add, multiply, invert and twist coefficients.
Fraction fields of F_q[x] and (later) the Kummer ring of a genus-zero
context both conform, so the same Euclid code serves the Carlitz module
and the ideal-to-skew machinery.

Right division is the operative one throughout: a = q*b + r with
deg_tau r < deg_tau b, matching kernels-of-operators semantics.
"""

from __future__ import annotations

from .ff import Field
from .poly import FPoly, UFrac


class FracDomain:
    """Coefficients in Frac(F[x]) with twist c(x) -> c(x)^(q^k)."""

    is_field = True

    def __init__(self, field: Field, qtw: int):
        self.field = field
        self.qtw = qtw

    def zero(self):
        return UFrac.zero(self.field)

    def one(self):
        return UFrac.one(self.field)

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
        return c.frob(self.qtw ** k) if k else c

    def eq(self, a, b) -> bool:
        return a.eq(b)

    def normalize(self, c):
        return c.normalize()


class PolyDomain:
    """Coefficients in F[x] itself; inversion only for nonzero constants."""

    is_field = False

    def __init__(self, field: Field, qtw: int):
        self.field = field
        self.qtw = qtw

    def zero(self):
        return FPoly.zero(self.field)

    def one(self):
        return FPoly.one(self.field)

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
        if a.degree() != 0:
            raise ZeroDivisionError("not a unit in F[x]")
        return FPoly.const(self.field, self.field.inv(a.lead()))

    def frob(self, c, k: int):
        return c.frob(self.qtw ** k) if k else c

    def eq(self, a, b) -> bool:
        return a == b

    def normalize(self, c):
        return c


class SkewPoly:
    """Sum coeffs[i] * tau^i over a coefficient domain."""

    __slots__ = ("dom", "coeffs")

    def __init__(self, dom, coeffs: list):
        self.dom = dom
        self.coeffs = coeffs
        self._trim()

    def _trim(self):
        while self.coeffs and self.dom.is_zero(self.coeffs[-1]):
            self.coeffs.pop()

    @staticmethod
    def zero(dom) -> "SkewPoly":
        return SkewPoly(dom, [])

    @staticmethod
    def one(dom) -> "SkewPoly":
        return SkewPoly(dom, [dom.one()])

    @staticmethod
    def const(dom, c) -> "SkewPoly":
        return SkewPoly(dom, [c])

    @staticmethod
    def tau(dom, k: int = 1) -> "SkewPoly":
        return SkewPoly(dom, [dom.zero()] * k + [dom.one()])

    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero operator: -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.dom.zero()

    def lead(self):
        assert self.coeffs
        return self.coeffs[-1]

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        dom = self.dom
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            out.append(dom.add(self.coeff(i), other.coeff(i)))
        return SkewPoly(dom, out)

    def __neg__(self) -> "SkewPoly":
        return SkewPoly(self.dom, [self.dom.neg(c) for c in self.coeffs])

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        dom = self.dom
        if self.is_zero() or other.is_zero():
            return SkewPoly.zero(dom)
        out = [dom.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if dom.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if dom.is_zero(b):
                    continue
                out[i + j] = dom.add(out[i + j], dom.mul(a, dom.frob(b, i)))
        return SkewPoly(dom, out)

    def lmul_coeff(self, c) -> "SkewPoly":
        dom = self.dom
        return SkewPoly(dom, [dom.mul(c, a) for a in self.coeffs])

    def twist(self, k: int) -> "SkewPoly":
        """tau^k conjugation of the coefficient list (coefficientwise)."""
        dom = self.dom
        return SkewPoly(dom, [dom.frob(c, k) for c in self.coeffs])

    def right_divmod(self, other: "SkewPoly") -> tuple["SkewPoly", "SkewPoly"]:
        """a = q * other + r with deg_tau r < deg_tau other."""
        dom = self.dom
        assert not other.is_zero()
        db = other.degree()
        r = list(self.coeffs)
        if len(r) - 1 < db:
            return SkewPoly.zero(dom), SkewPoly(dom, r)
        qc = [dom.zero()] * (len(r) - db)
        lead_b = other.lead()
        for k in range(len(r) - 1 - db, -1, -1):
            top = r[k + db]
            if dom.is_zero(top):
                continue
            c = dom.mul(top, dom.inv(dom.frob(lead_b, k)))
            c = dom.normalize(c)
            qc[k] = c
            for j, b in enumerate(other.coeffs):
                r[k + j] = dom.sub(r[k + j], dom.mul(c, dom.frob(b, k)))
            r[k + db] = dom.zero()
        return SkewPoly(dom, qc), SkewPoly(dom, r[:db])

    def monic(self) -> "SkewPoly":
        dom = self.dom
        if self.is_zero():
            return self
        il = dom.inv(self.lead())
        return SkewPoly(dom, [dom.normalize(dom.mul(il, c)) for c in self.coeffs])

    def normalize_coeffs(self) -> "SkewPoly":
        dom = self.dom
        return SkewPoly(dom, [dom.normalize(c) for c in self.coeffs])

    def apply(self, x, mul, twist):
        """Evaluate sum c_i tau^i at x: needs a scalar action mul(c, y) and the
        twist map on operands; used for torsion points and Gauss sums."""
        acc = None
        xi = x
        for i, c in enumerate(self.coeffs):
            if not self.dom.is_zero(c):
                term = mul(c, xi)
                acc = term if acc is None else acc + term
            if i + 1 < len(self.coeffs):
                xi = twist(xi)
        return acc

    def eq(self, other: "SkewPoly") -> bool:
        if self.degree() != other.degree():
            return False
        return all(self.dom.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    __eq__ = eq

    def __repr__(self):
        return "SkewPoly(deg %d)" % self.degree()


def skew_mul(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    return a * b


def right_divmod(a: SkewPoly, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    return a.right_divmod(b)


def right_gcd(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Monic generator of the right ideal (a, b); coefficient domain must be
    a field (refuses otherwise)."""
    if not a.dom.is_field:
        raise TypeError("right_gcd needs a coefficient field")
    while not b.is_zero():
        a, b = b, a.right_divmod(b)[1].normalize_coeffs()
    return a.monic().normalize_coeffs()


def conjugate_twist(phi_I: SkewPoly, phi_a: SkewPoly) -> SkewPoly:
    """The unique X with X * phi_I = phi_I * phi_a; ValueError if none."""
    rhs = phi_I * phi_a
    X, r = rhs.right_divmod(phi_I)
    if not r.is_zero():
        raise ValueError("conjugation equation has no solution")
    return X.normalize_coeffs()
