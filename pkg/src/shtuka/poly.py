"""Polynomials and fractions over GF(p^e).

Three representations, chosen by role:

FPoly   dense univariate polynomials, numpy int64 digit arrays of shape
        (deg+1, e).  Row i holds the base-p digits of coefficient i, so
        multiplication is a 2-D integer convolution mod p followed by a
        fold of the digit axis through the field modulus.  This is the
        workhorse under the Kummer-ring and skew-Euclid paths where
        degrees reach the hundreds.

UFrac   quotients of FPoly.  Reduction (gcd + monic denominator) is NOT
        automatic; heavy pipelines call normalize() at checkpoints and
        compare by cross-multiplication.

MPoly   sparse multivariate polynomials, dict from exponent tuple to
        coefficient encoding.  Used for series coefficients in the t/z
        variables, which stay small.
"""

from __future__ import annotations

import numpy as np

from .ff import Field, FieldElem, make_field

_WRED_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _wred(field: Field) -> np.ndarray:
    """Rows j = digits of w^(e+j) reduced mod the field modulus, j < e-1."""
    key = (field.p, field.e)
    rows = _WRED_CACHE.get(key)
    if rows is None:
        e = field.e
        rows = np.zeros((max(e - 1, 0), e), dtype=np.int64)
        for j in range(e - 1):
            enc = field.pow(field.p, e + j)  # encoding p is the element w
            for i in range(e):
                rows[j, i] = (enc // field.p ** i) % field.p
        _WRED_CACHE[key] = rows
    return rows


def _pvec(field: Field) -> np.ndarray:
    return field.p ** np.arange(field.e, dtype=np.int64)


def rows_to_encs(field: Field, rows: np.ndarray) -> np.ndarray:
    return rows @ _pvec(field)


def encs_to_rows(field: Field, encs: np.ndarray) -> np.ndarray:
    return (np.asarray(encs, dtype=np.int64)[:, None] // _pvec(field)) % field.p


def _fold_digits(field: Field, wide: np.ndarray) -> np.ndarray:
    """Reduce digit columns >= e using w^e = (modulus tail); returns (n, e)."""
    e = field.e
    if wide.shape[1] <= e:
        out = np.zeros((wide.shape[0], e), dtype=np.int64)
        out[:, : wide.shape[1]] = wide
        return out % field.p
    red = _wred(field)
    out = wide[:, :e].astype(np.int64).copy()
    for col in range(e, wide.shape[1]):
        c = wide[:, col]
        if c.any():
            out += c[:, None] * red[col - e][None, :]
    return out % field.p


def smul_rows(field: Field, rows: np.ndarray, s_enc: int) -> np.ndarray:
    """Multiply every coefficient row by the scalar with encoding s_enc."""
    if s_enc == 0 or rows.size == 0:
        return np.zeros_like(rows)
    e = field.e
    if e == 1:
        return rows * s_enc % field.p
    sd = [(s_enc // field.p ** i) % field.p for i in range(e)]
    wide = np.zeros((rows.shape[0], 2 * e - 1), dtype=np.int64)
    for j, c in enumerate(sd):
        if c:
            wide[:, j : j + e] += c * rows
    return _fold_digits(field, wide)


class FPoly:
    """Univariate polynomial over a Field; immutable by convention."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, a: np.ndarray):
        self.field = field
        self.a = a  # shape (deg+1, e); empty (0, e) means the zero polynomial

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_encs(field: Field, encs) -> "FPoly":
        v = np.asarray(list(encs), dtype=np.int64)
        if v.size == 0:
            return FPoly.zero(field)
        rows = encs_to_rows(field, v)
        return FPoly(field, rows)._trim()

    @staticmethod
    def zero(field: Field) -> "FPoly":
        return FPoly(field, np.zeros((0, field.e), dtype=np.int64))

    @staticmethod
    def one(field: Field) -> "FPoly":
        return FPoly.const(field, 1)

    @staticmethod
    def const(field: Field, enc: int) -> "FPoly":
        if enc == 0:
            return FPoly.zero(field)
        return FPoly.from_encs(field, [enc])

    @staticmethod
    def x(field: Field) -> "FPoly":
        return FPoly.from_encs(field, [0, 1])

    @staticmethod
    def x_pow(field: Field, k: int) -> "FPoly":
        return FPoly.from_encs(field, [0] * k + [1])

    def _trim(self) -> "FPoly":
        a = self.a
        n = a.shape[0]
        while n > 0 and not a[n - 1].any():
            n -= 1
        if n != a.shape[0]:
            self.a = a[:n]
        return self

    # -- inspection --------------------------------------------------------

    def degree(self) -> int:
        return self.a.shape[0] - 1  # zero polynomial: -1

    def is_zero(self) -> bool:
        return self.a.shape[0] == 0

    def encs(self) -> np.ndarray:
        return rows_to_encs(self.field, self.a)

    def coeff(self, i: int) -> int:
        if i < 0 or i >= self.a.shape[0]:
            return 0
        return int(self.a[i] @ _pvec(self.field))

    def lead(self) -> int:
        assert not self.is_zero()
        return self.coeff(self.degree())

    def is_monic(self) -> bool:
        return not self.is_zero() and self.lead() == 1

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "FPoly") -> "FPoly":
        f = self.field
        n = max(self.a.shape[0], other.a.shape[0])
        out = np.zeros((n, f.e), dtype=np.int64)
        out[: self.a.shape[0]] += self.a
        out[: other.a.shape[0]] += other.a
        return FPoly(f, out % f.p)._trim()

    def __neg__(self) -> "FPoly":
        return FPoly(self.field, (-self.a) % self.field.p)

    def __sub__(self, other: "FPoly") -> "FPoly":
        return self + (-other)

    def __mul__(self, other: "FPoly") -> "FPoly":
        f = self.field
        if self.is_zero() or other.is_zero():
            return FPoly.zero(f)
        e = f.e
        na, nb = self.a.shape[0], other.a.shape[0]
        wide = np.zeros((na + nb - 1, 2 * e - 1), dtype=np.int64)
        for i in range(e):
            ai = self.a[:, i]
            if not ai.any():
                continue
            for j in range(e):
                bj = other.a[:, j]
                if bj.any():
                    wide[:, i + j] += np.convolve(ai, bj)
        wide %= f.p
        return FPoly(f, _fold_digits(f, wide))._trim()

    def smul(self, s_enc: int) -> "FPoly":
        if s_enc == 0 or self.is_zero():
            return FPoly.zero(self.field)
        return FPoly(self.field, smul_rows(self.field, self.a, s_enc))._trim()

    def shift(self, k: int) -> "FPoly":
        """Multiply by x^k."""
        if self.is_zero() or k == 0:
            return self
        out = np.zeros((self.a.shape[0] + k, self.field.e), dtype=np.int64)
        out[k:] = self.a
        return FPoly(self.field, out)

    def divmod(self, other: "FPoly") -> tuple["FPoly", "FPoly"]:
        f = self.field
        assert not other.is_zero()
        db = other.degree()
        ilead = f.inv(other.lead())
        r = self.a.copy()
        if r.shape[0] == 0:
            return FPoly.zero(f), FPoly.zero(f)
        qn = self.degree() - db
        if qn < 0:
            return FPoly.zero(f), self
        qrows = np.zeros((qn + 1, f.e), dtype=np.int64)
        pv = _pvec(f)
        for k in range(self.degree(), db - 1, -1):
            lead_enc = int(r[k] @ pv)
            if lead_enc == 0:
                continue
            c = f.mul(lead_enc, ilead)
            qrows[k - db] = encs_to_rows(f, np.array([c]))[0]
            sub = smul_rows(f, other.a, c)
            r[k - db : k + 1] = (r[k - db : k + 1] - sub) % f.p
        return FPoly(f, qrows)._trim(), FPoly(f, r[:db] if db > 0 else r[:0])._trim()

    def __mod__(self, other: "FPoly") -> "FPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "FPoly") -> "FPoly":
        return self.divmod(other)[0]

    def monic(self) -> "FPoly":
        if self.is_zero() or self.lead() == 1:
            return self
        return self.smul(self.field.inv(self.lead()))

    def gcd(self, other: "FPoly") -> "FPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "FPoly":
        f = self.field
        if self.degree() < 1:
            return FPoly.zero(f)
        rows = self.a[1:].copy()
        mult = np.arange(1, self.a.shape[0], dtype=np.int64) % f.p
        rows = rows * mult[:, None] % f.p
        return FPoly(f, rows)._trim()

    # -- semantics over the variable --------------------------------------

    def eval_enc(self, y_enc: int) -> int:
        """Horner evaluation at the field element with encoding y_enc."""
        f = self.field
        acc = 0
        for row in self.a[::-1]:
            acc = f.add(f.mul(acc, y_enc), int(row @ _pvec(f)))
        return acc

    def coeff_frob(self, qexp: int) -> "FPoly":
        """Apply c -> c**qexp to every coefficient (variable untouched)."""
        if self.is_zero():
            return self
        f = self.field
        tab = np.asarray(f.frob_table(qexp), dtype=np.int64)
        encs = rows_to_encs(f, self.a)
        return FPoly(f, encs_to_rows(f, tab[encs]))._trim()

    def spread(self, m: int) -> "FPoly":
        """Substitute x -> x^m."""
        if self.is_zero() or m == 1:
            return self
        out = np.zeros(((self.a.shape[0] - 1) * m + 1, self.field.e), dtype=np.int64)
        out[::m] = self.a
        return FPoly(self.field, out)

    def frob(self, qexp: int) -> "FPoly":
        """The twist c(x) -> c^(qexp)(x^qexp) (both coefficients and x)."""
        return self.coeff_frob(qexp).spread(qexp)

    def map_field(self, big: Field) -> "FPoly":
        """Reinterpret coefficients inside the extension field big."""
        if big is self.field or big == self.field:
            return self
        encs = [big.embed(self.field, int(c)) for c in self.encs()]
        return FPoly.from_encs(big, encs)

    def __eq__(self, other):
        return (
            isinstance(other, FPoly)
            and self.field == other.field
            and self.a.shape == other.a.shape
            and bool((self.a == other.a).all())
        )

    def __hash__(self):
        return hash((self.field.q, self.a.tobytes()))

    def __repr__(self):
        if self.is_zero():
            return "FPoly(0)"
        parts = []
        for i, c in enumerate(self.encs()):
            if c:
                parts.append("%d*x^%d" % (c, i))
        return "FPoly(" + " + ".join(parts) + ")"


class UFrac:
    """num/den of FPoly over one Field.  Not automatically reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: FPoly, den: FPoly | None = None):
        if den is None:
            den = FPoly.one(num.field)
        assert not den.is_zero()
        self.num = num
        self.den = den

    @property
    def field(self) -> Field:
        return self.num.field

    @staticmethod
    def const(field: Field, enc: int) -> "UFrac":
        return UFrac(FPoly.const(field, enc))

    @staticmethod
    def zero(field: Field) -> "UFrac":
        return UFrac(FPoly.zero(field))

    @staticmethod
    def one(field: Field) -> "UFrac":
        return UFrac(FPoly.one(field))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "UFrac") -> "UFrac":
        if self.den == other.den:
            return UFrac(self.num + other.num, self.den)
        return UFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "UFrac") -> "UFrac":
        if self.den == other.den:
            return UFrac(self.num - other.num, self.den)
        return UFrac(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "UFrac":
        return UFrac(-self.num, self.den)

    def __mul__(self, other: "UFrac") -> "UFrac":
        return UFrac(self.num * other.num, self.den * other.den)

    def inverse(self) -> "UFrac":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return UFrac(self.den, self.num)

    def __truediv__(self, other: "UFrac") -> "UFrac":
        return self * other.inverse()

    def smul(self, enc: int) -> "UFrac":
        return UFrac(self.num.smul(enc), self.den)

    def frob(self, qexp: int) -> "UFrac":
        return UFrac(self.num.frob(qexp), self.den.frob(qexp))

    def coeff_frob(self, qexp: int) -> "UFrac":
        return UFrac(self.num.coeff_frob(qexp), self.den.coeff_frob(qexp))

    def normalize(self) -> "UFrac":
        if self.num.is_zero():
            return UFrac(FPoly.zero(self.field))
        g = self.num.gcd(self.den)
        num, den = self.num, self.den
        if g.degree() > 0:
            num = num // g
            den = den // g
        lead = den.lead()
        if lead != 1:
            il = self.field.inv(lead)
            num, den = num.smul(il), den.smul(il)
        return UFrac(num, den)

    def eq(self, other: "UFrac") -> bool:
        return (self.num * other.den) == (other.num * self.den)

    __eq__ = eq

    def __hash__(self):
        n = self.normalize()
        return hash((n.num, n.den))

    def degree_size(self) -> int:
        return max(self.num.degree(), self.den.degree())

    def eval_enc(self, y_enc: int) -> int:
        d = self.den.eval_enc(y_enc)
        if d == 0:
            raise ZeroDivisionError("fraction has a pole at the point")
        return self.field.div(self.num.eval_enc(y_enc), d)

    def __repr__(self):
        return "UFrac(%r / %r)" % (self.num, self.den)


class MPoly:
    """Sparse multivariate polynomial; dict from exponent tuples to encodings."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: dict | None = None):
        self.field = field
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    @staticmethod
    def const(field: Field, nvars: int, enc: int) -> "MPoly":
        z = (0,) * nvars
        return MPoly(field, nvars, {z: enc} if enc else {})

    @staticmethod
    def var(field: Field, nvars: int, i: int, exp: int = 1) -> "MPoly":
        mono = tuple(exp if j == i else 0 for j in range(nvars))
        return MPoly(field, nvars, {mono: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(not any(m) for m in self.terms)

    def const_value(self) -> int:
        if not self.terms:
            return 0
        assert self.is_const()
        return self.terms[(0,) * self.nvars]

    def copy(self) -> "MPoly":
        return MPoly(self.field, self.nvars, dict(self.terms))

    def __add__(self, other: "MPoly") -> "MPoly":
        f = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MPoly(f, self.nvars, out)

    def __neg__(self) -> "MPoly":
        f = self.field
        return MPoly(f, self.nvars, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        f = self.field
        out: dict = {}
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = f.add(out.get(m, 0), f.mul(c1, c2))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MPoly(f, self.nvars, out)

    def smul(self, enc: int) -> "MPoly":
        f = self.field
        if enc == 0:
            return MPoly(f, self.nvars)
        return MPoly(f, self.nvars, {m: f.mul(c, enc) for m, c in self.terms.items()})

    def frob(self, qexp: int) -> "MPoly":
        """Coefficients to the qexp power; variables fixed."""
        f = self.field
        tab = f.frob_table(qexp)
        return MPoly(f, self.nvars, {m: tab[c] for m, c in self.terms.items()})

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def eval_var(self, i: int, enc: int) -> "MPoly":
        """Substitute variable i by the constant enc (exponent slot kept, 0)."""
        f = self.field
        out: dict = {}
        for m, c in self.terms.items():
            v = f.mul(c, f.pow(enc, m[i])) if m[i] else c
            mm = m[:i] + (0,) + m[i + 1 :]
            s = f.add(out.get(mm, 0), v)
            if s:
                out[mm] = s
            else:
                out.pop(mm, None)
        return MPoly(f, self.nvars, out)

    def divide_linear(self, i: int, c_enc: int) -> tuple["MPoly", "MPoly"]:
        """Divide by (x_i - c): returns (quotient, remainder with x_i-exp 0)."""
        f = self.field
        by_exp: dict[int, dict] = {}
        for m, c in self.terms.items():
            by_exp.setdefault(m[i], {})[m[:i] + (0,) + m[i + 1 :]] = c
        if not by_exp:
            return MPoly(f, self.nvars), MPoly(f, self.nvars)
        top = max(by_exp)
        carry: dict = {}
        quot: dict = {}
        for j in range(top, 0, -1):
            layer = by_exp.get(j, {})
            for m, c in layer.items():
                s = f.add(carry.get(m, 0), c)
                if s:
                    carry[m] = s
                else:
                    carry.pop(m, None)
            for m, c in carry.items():
                mm = m[:i] + (j - 1,) + m[i + 1 :]
                quot[mm] = c
            if c_enc:
                carry = {m: f.mul(c, c_enc) for m, c in carry.items()}
            else:
                carry = {}
        rem: dict = dict(by_exp.get(0, {}))
        for m, c in carry.items():
            s = f.add(rem.get(m, 0), c)
            if s:
                rem[m] = s
            else:
                rem.pop(m, None)
        return MPoly(f, self.nvars, quot), MPoly(f, self.nvars, rem)

    def rename(self, perm: list[int], new_nvars: int) -> "MPoly":
        """Move variable i to slot perm[i] in a ring with new_nvars variables."""
        out: dict = {}
        for m, c in self.terms.items():
            mm = [0] * new_nvars
            for i, e in enumerate(m):
                if e:
                    mm[perm[i]] = e
            out[tuple(mm)] = c
        return MPoly(self.field, new_nvars, out)

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field.q, tuple(sorted(self.terms.items()))))

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __repr__(self):
        return "MPoly(%s)" % (self.sorted_terms(),)


def monic_polys(field: Field, m: int):
    """All monic degree-m polynomials over the field, ascending by the
    integer whose base-q digits are the low coefficient encodings."""
    q = field.q
    for idx in range(q ** m):
        encs = []
        v = idx
        for _ in range(m):
            encs.append(v % q)
            v //= q
        encs.append(1)
        yield FPoly.from_encs(field, encs)


def roots_in_extension(P: FPoly, m: int) -> list[FieldElem]:
    """All roots of P in GF(q^m), q the size of P's field, with multiplicity,
    ordered by ascending canonical encoding.  Exhaustive search; the
    extension must stay within the 2^16 exhaustive-search bound."""
    base = P.field
    ext = make_field(base.p, base.e * m)
    assert ext.q <= 1 << 16, "extension too large for exhaustive root search"
    Pe = P.map_field(ext)
    assert not Pe.is_zero()
    roots: list[FieldElem] = []
    for y in range(ext.q):
        if Pe.eval_enc(y) == 0:
            mult = 0
            lin = FPoly.from_encs(ext, [ext.neg(y), 1])
            while True:
                quo, rem = Pe.divmod(lin)
                if rem.is_zero():
                    Pe = quo
                    mult += 1
                else:
                    break
            roots.extend([ext.elem(y)] * mult)
    return roots
