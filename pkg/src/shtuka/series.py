"""Precision-tracked Laurent series in the uniformizer root u.

Exponents are integers in units of 1/(q^d_inf - 1) of the pi-valuation:
u satisfies u^(q^d_inf - 1) = -pi, every object in scope has its valuation
in this integer lattice, and the twist tau acts by coefficient Frobenius
plus exponent scaling by q (the variables are fixed points of tau).

Coefficients (Coef) are rational functions in the declared variables over
F_(q^d_inf), held as a sparse multivariate numerator and a fully factored
denominator, a multiset of linear factors (var - c).  Every denominator
that occurs in scope is a product of such factors, which keeps reduction
exact and cheap (divide out a linear factor whenever the numerator allows).

A series knows its precision: coefficients at exponents >= prec are
unknown.  Arithmetic propagates precision with the usual rules
(min on addition; min(prec_a + val_b, prec_b + val_a) on multiplication;
prec - 2*val on inversion; scaling by q^k under twist).
"""

from __future__ import annotations

import functools
import json
import re
from fractions import Fraction

from .ff import Field, make_field
from .poly import FPoly, MPoly


def _prime_power(q: int) -> tuple[int, int]:
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    e = 0
    m = q
    while m > 1:
        assert m % p == 0, "q must be a prime power"
        m //= p
        e += 1
    return p, e


class SeriesContext:
    """Fixes q, d_inf and the variable list; owns the coefficient field."""

    def __init__(self, q: int, d_inf: int, vars: tuple[str, ...] = ()):
        self.q = q
        self.d_inf = d_inf
        self.M = q ** d_inf - 1  # u^M = -pi
        p, e = _prime_power(q)
        self.p = p
        self.base_e = e
        self.base_field = make_field(p, e)
        self.field = make_field(p, e * d_inf)
        self.vars = tuple(vars)
        self.nvars = len(self.vars)
        self._pow_cache: dict = {}

    def var_index(self, name: str) -> int:
        return self.vars.index(name)

    def coef_const(self, enc: int) -> "Coef":
        return Coef(self, MPoly.const(self.field, self.nvars, enc))

    def coef_zero(self) -> "Coef":
        return Coef(self, MPoly(self.field, self.nvars))

    def coef_var(self, i: int) -> "Coef":
        return Coef(self, MPoly.var(self.field, self.nvars, i))

    def expand_den(self, den: tuple) -> MPoly:
        """The product of the factored denominator as an MPoly (cached)."""
        key = den
        got = self._pow_cache.get(key)
        if got is None:
            acc = MPoly.const(self.field, self.nvars, 1)
            for (vi, c), m in den:
                lin = MPoly.var(self.field, self.nvars, vi) - MPoly.const(
                    self.field, self.nvars, c
                )
                for _ in range(m):
                    acc = acc * lin
            self._pow_cache[key] = acc
            got = acc
        return got

    def key(self) -> tuple:
        return (self.q, self.d_inf, self.vars)

    def __eq__(self, other):
        return isinstance(other, SeriesContext) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "SeriesContext(q=%d, d_inf=%d, vars=%r)" % (self.q, self.d_inf, self.vars)


@functools.lru_cache(maxsize=None)
def make_series_context(q: int, d_inf: int, vars: tuple[str, ...] = ()) -> SeriesContext:
    return SeriesContext(q, d_inf, vars)


class Coef:
    """num / prod (var_i - c)^m over the context's coefficient field."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: SeriesContext, num: MPoly, den=(), reduce: bool = True):
        self.ctx = ctx
        if isinstance(den, dict):
            den = tuple(sorted((k, m) for k, m in den.items() if m))
        if num.is_zero():
            den = ()
        elif reduce and den:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return not self.den and self.num.is_const()

    def const_value(self) -> int:
        assert self.is_const(), "coefficient is not a constant"
        return self.num.const_value()

    def _unify(self, other: "Coef"):
        """Common denominator; returns (num_self_scaled, num_other_scaled, den)."""
        if self.den == other.den:
            return self.num, other.num, self.den
        da, db = dict(self.den), dict(other.den)
        union: dict = dict(da)
        for k, m in db.items():
            union[k] = max(union.get(k, 0), m)
        extra_a = tuple(sorted((k, m - da.get(k, 0)) for k, m in union.items() if m - da.get(k, 0)))
        extra_b = tuple(sorted((k, m - db.get(k, 0)) for k, m in union.items() if m - db.get(k, 0)))
        na = self.num * self.ctx.expand_den(extra_a) if extra_a else self.num
        nb = other.num * self.ctx.expand_den(extra_b) if extra_b else other.num
        return na, nb, tuple(sorted(union.items()))

    def __add__(self, other: "Coef") -> "Coef":
        na, nb, den = self._unify(other)
        return Coef(self.ctx, na + nb, den)

    def __sub__(self, other: "Coef") -> "Coef":
        na, nb, den = self._unify(other)
        return Coef(self.ctx, na - nb, den)

    def __neg__(self) -> "Coef":
        return Coef(self.ctx, -self.num, self.den, reduce=False)

    def __mul__(self, other: "Coef") -> "Coef":
        if self.is_zero() or other.is_zero():
            return self.ctx.coef_zero()
        den: dict = dict(self.den)
        for k, m in other.den:
            den[k] = den.get(k, 0) + m
        return Coef(self.ctx, self.num * other.num, den)

    def smul(self, enc: int) -> "Coef":
        if enc == 0:
            return self.ctx.coef_zero()
        return Coef(self.ctx, self.num.smul(enc), self.den, reduce=False)

    def inverse(self) -> "Coef":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero coefficient")
        if not self.num.is_const():
            raise ValueError("coefficient inverse needs a constant numerator")
        c = self.ctx.field.inv(self.num.const_value())
        return Coef(self.ctx, self.ctx.expand_den(self.den).smul(c), (), reduce=False)

    def frob(self, k: int) -> "Coef":
        """tau^k: coefficient constants to the q^k, variables fixed."""
        if k == 0:
            return self
        qexp = self.ctx.q ** k
        tab = self.ctx.field.frob_table(qexp)
        den = tuple(sorted(((vi, tab[c]), m) for (vi, c), m in self.den))
        return Coef(self.ctx, self.num.frob(qexp), den, reduce=False)

    def eq(self, other: "Coef") -> bool:
        if self.den == other.den:
            return self.num == other.num
        na, nb, _ = self._unify(other)
        return na == nb

    __eq__ = eq

    def __hash__(self):
        return hash((tuple(sorted(self.num.terms.items())), self.den))

    def __repr__(self):
        return "Coef(%s)" % coef_to_str(self)


def _reduce(num: MPoly, den: tuple):
    out = []
    for (vi, c), m in den:
        while m > 0:
            quo, rem = num.divide_linear(vi, c)
            if rem.is_zero():
                num = quo
                m -= 1
            else:
                break
        if m:
            out.append(((vi, c), m))
    return num, tuple(out)


class TateSeries:
    """Laurent series: dict exponent -> Coef, plus a precision bound."""

    __slots__ = ("ctx", "terms", "prec")

    def __init__(self, ctx: SeriesContext, terms: dict, prec: int):
        self.ctx = ctx
        self.prec = prec
        self.terms = {e: c for e, c in terms.items() if e < prec and not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ctx: SeriesContext, prec: int) -> "TateSeries":
        return TateSeries(ctx, {}, prec)

    @staticmethod
    def one(ctx: SeriesContext, prec: int) -> "TateSeries":
        return TateSeries(ctx, {0: ctx.coef_const(1)}, prec)

    @staticmethod
    def monomial(ctx: SeriesContext, exp: int, coef: "Coef", prec: int) -> "TateSeries":
        return TateSeries(ctx, {exp: coef}, prec)

    @staticmethod
    def const(ctx: SeriesContext, enc: int, prec: int) -> "TateSeries":
        return TateSeries(ctx, {0: ctx.coef_const(enc)}, prec)

    def copy(self) -> "TateSeries":
        return TateSeries(self.ctx, dict(self.terms), self.prec)

    # -- inspection --------------------------------------------------------

    def val_lb(self) -> int:
        """Lower bound for the valuation: min stored exponent, else prec."""
        return min(self.terms) if self.terms else self.prec

    def valuation(self) -> int:
        assert self.terms, "series is zero to its precision; no exact valuation"
        return min(self.terms)

    def is_zero_to_prec(self) -> bool:
        return not self.terms

    def coeff(self, e: int) -> "Coef":
        if e >= self.prec:
            raise ValueError("coefficient %d beyond precision %d" % (e, self.prec))
        return self.terms.get(e, self.ctx.coef_zero())

    # -- ring ops ----------------------------------------------------------

    def __add__(self, other: "TateSeries") -> "TateSeries":
        prec = min(self.prec, other.prec)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return TateSeries(self.ctx, out, prec)

    def __neg__(self) -> "TateSeries":
        return TateSeries(self.ctx, {e: -c for e, c in self.terms.items()}, self.prec)

    def __sub__(self, other: "TateSeries") -> "TateSeries":
        return self + (-other)

    def __mul__(self, other: "TateSeries") -> "TateSeries":
        prec = min(self.prec + other.val_lb(), other.prec + self.val_lb())
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                if e >= prec:
                    continue
                prod = ca * cb
                s = out.get(e)
                out[e] = prod if s is None else s + prod
        return TateSeries(self.ctx, out, prec)

    def __pow__(self, n: int) -> "TateSeries":
        assert n >= 0
        result = TateSeries.one(self.ctx, self.prec - self.val_lb() + n * self.val_lb())
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def smul(self, c) -> "TateSeries":
        if isinstance(c, int):
            c = self.ctx.coef_const(c)
        return TateSeries(self.ctx, {e: v * c for e, v in self.terms.items()}, self.prec)

    def shift(self, k: int) -> "TateSeries":
        """Multiply by u^k."""
        return TateSeries(self.ctx, {e + k: c for e, c in self.terms.items()}, self.prec + k)

    def truncate(self, N: int) -> "TateSeries":
        return TateSeries(self.ctx, self.terms, min(self.prec, N))

    def with_prec(self, N: int) -> "TateSeries":
        """Assert-free reinterpretation; only for exactly-known series."""
        return TateSeries(self.ctx, self.terms, N)

    def inverse(self) -> "TateSeries":
        assert self.terms, "cannot invert a series that is zero to precision"
        v = self.valuation()
        lead = self.terms[v]
        ilead = lead.inverse()
        if len(self.terms) == 1:
            # exact monomial: no tail recurrence, precision carries over
            return TateSeries(self.ctx, {-v: ilead}, self.prec - 2 * v)
        r = self.prec - v  # relative precision
        assert r <= 1 << 24, "refusing dense inversion at near-exact precision; truncate first"
        # normalized tail: self = u^v * lead * (1 + t), t = sum_{k>=1} a_k u^k
        a: dict = {}
        for e, c in self.terms.items():
            if e > v:
                a[e - v] = c * ilead
        b: dict = {0: self.ctx.coef_const(1)}
        for n in range(1, r):
            acc = None
            for k, ck in a.items():
                if k <= n:
                    prev = b.get(n - k)
                    if prev is not None:
                        term = ck * prev
                        acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                b[n] = -acc
        out = {}
        for e, c in b.items():
            cc = c * ilead
            if not cc.is_zero():
                out[e - v] = cc
        return TateSeries(self.ctx, out, self.prec - 2 * v)

    def twist(self, k: int = 1) -> "TateSeries":
        """tau^k: coefficients Frobenius, exponents and precision scaled by q^k."""
        if k == 0:
            return self
        s = self.ctx.q ** k
        return TateSeries(
            self.ctx, {e * s: c.frob(k) for e, c in self.terms.items()}, self.prec * s
        )

    # -- queries -----------------------------------------------------------

    def sgn_lead(self) -> tuple[Fraction, "Coef"]:
        """(valuation in pi-units, leading coefficient)."""
        v = self.valuation()
        return Fraction(v, self.ctx.M), self.terms[v]

    def residual_valuation(self, other: "TateSeries | None" = None) -> tuple[bool, int]:
        """(vanishes to joint precision, bound): for self - other (or self),
        True means the difference is 0 with coefficients known below bound."""
        d = self if other is None else self - other
        if d.is_zero_to_prec():
            return True, d.prec
        return False, d.valuation()

    def eq_to_prec(self, other: "TateSeries") -> bool:
        return (self - other).is_zero_to_prec()

    def integrality_check(self, allowed: list[tuple[int, int]]) -> bool:
        """True iff every stored coefficient, in lowest terms, has all its
        denominator factors among the allowed linear factors (var, const)."""
        allow = set(allowed)
        for c in self.terms.values():
            for (fac, _m) in c.den:
                if fac not in allow:
                    return False
        return True

    def __repr__(self):
        items = sorted(self.terms)[:6]
        body = ", ".join("%d: %s" % (e, coef_to_str(self.terms[e])) for e in items)
        return "TateSeries({%s%s}, prec=%d)" % (
            body, ", ..." if len(self.terms) > 6 else "", self.prec
        )


def inf_product(ctx: SeriesContext, factors, N: int) -> TateSeries:
    """Product of factors 1 + tail with strictly increasing tail valuations;
    stops at the first factor with tail valuation >= N, which certifies the
    truncation.  factors: iterable of TateSeries at precision >= N."""
    acc = TateSeries.one(ctx, N)
    last_v = None
    for f in factors:
        tail = f - TateSeries.one(ctx, f.prec)
        if tail.is_zero_to_prec():
            v = tail.prec
        else:
            v = tail.valuation()
        assert v > 0, "inf_product factor must be 1 + positive-valuation tail"
        if last_v is not None and v <= last_v:
            raise ValueError("inf_product factor valuations must strictly increase")
        last_v = v
        if v >= N:
            break
        acc = (acc * f).truncate(N)
    else:
        raise ValueError("factor iterator exhausted before reaching precision")
    return acc


def hensel_root(coeffs: list[TateSeries], seed: TateSeries, N: int) -> TateSeries:
    """Newton iteration for a simple root of E(X) = sum coeffs[i] X^i with
    initial approximation seed; returns the root to precision N.  Raises
    ArithmeticError when the Hensel condition v(E(seed)) > 2 v(E'(seed))
    fails."""
    ctx = seed.ctx
    p = ctx.p
    cs = [c.truncate(N + max(0, -c.val_lb())) for c in coeffs]
    dcs = [c.smul(i % p) for i, c in enumerate(cs[1:], start=1)]

    def ev(poly, x):
        acc = None
        for c in reversed(poly):
            acc = c if acc is None else acc * x + c
        return acc if acc is not None else TateSeries.zero(ctx, N)

    x = seed
    E = ev(cs, x)
    dE = ev(dcs, x)
    if E.is_zero_to_prec():
        return x.truncate(N)
    vE = E.valuation()
    vdE = dE.valuation() if not dE.is_zero_to_prec() else dE.prec
    if not vE > 2 * vdE:
        raise ArithmeticError(
            "Hensel condition fails: v(E(x0)) = %d, v(E'(x0)) = %d" % (vE, vdE)
        )
    for _ in range(200):
        if E.is_zero_to_prec():
            break
        x = x - E * dE.inverse()
        E = ev(cs, x)
        dE = ev(dcs, x)
    else:
        raise ArithmeticError("Newton iteration failed to converge")
    return x.truncate(N)


# -- canonical text form of coefficients -----------------------------------


def coef_to_str(c: Coef) -> str:
    num = _mpoly_to_str(c.num, c.ctx.vars)
    if not c.den:
        return num
    parts = []
    for (vi, cc), m in c.den:
        fac = "(%s - %d)" % (c.ctx.vars[vi], cc)
        parts.append(fac if m == 1 else fac + "^%d" % m)
    return "(" + num + ")/" + "*".join(parts)


def _mpoly_to_str(p: MPoly, names: tuple[str, ...]) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for mono, c in p.sorted_terms():
        bits = [str(c)]
        for i, e in enumerate(mono):
            if e:
                bits.append(names[i] if e == 1 else "%s^%d" % (names[i], e))
        parts.append("*".join(bits))
    return " + ".join(parts)


_TERM_RE = re.compile(r"^(\d+)((?:\*[A-Za-z][A-Za-z0-9]*(?:\^\d+)?)*)$")
_FACT_RE = re.compile(r"^\(([A-Za-z][A-Za-z0-9]*) - (\d+)\)(?:\^(\d+))?$")


_DEN_RE = re.compile(r"\(([A-Za-z][A-Za-z0-9]*) - (\d+)\)(?:\^(\d+))?")


def coef_from_str(ctx: SeriesContext, s: str) -> Coef:
    s = s.strip()
    if "/" in s:
        numpart, denpart = s.split(")/", 1)
        num = _mpoly_from_str(ctx, numpart[1:])
        den: dict = {}
        matched = 0
        for m in _DEN_RE.finditer(denpart):
            key = (ctx.var_index(m.group(1)), int(m.group(2)))
            den[key] = den.get(key, 0) + int(m.group(3) or 1)
            matched += 1
        assert matched, "bad denominator %r" % denpart
        return Coef(ctx, num, den, reduce=False)
    return Coef(ctx, _mpoly_from_str(ctx, s))


def _mpoly_from_str(ctx: SeriesContext, s: str) -> MPoly:
    s = s.strip()
    if s == "0":
        return MPoly(ctx.field, ctx.nvars)
    terms: dict = {}
    for part in s.split(" + "):
        m = _TERM_RE.match(part.strip())
        assert m, "bad term %r" % part
        c = int(m.group(1))
        mono = [0] * ctx.nvars
        rest = m.group(2)
        if rest:
            for piece in rest[1:].split("*"):
                if "^" in piece:
                    name, e = piece.split("^")
                    mono[ctx.var_index(name)] = int(e)
                else:
                    mono[ctx.var_index(piece)] = 1
        terms[tuple(mono)] = c
    return MPoly(ctx.field, ctx.nvars, terms)


# -- JSON ------------------------------------------------------------------


def series_to_obj(s: TateSeries) -> dict:
    return {
        "context": {"q": s.ctx.q, "d_inf": s.ctx.d_inf, "vars": list(s.ctx.vars)},
        "precision": s.prec,
        "terms": [[e, coef_to_str(s.terms[e])] for e in sorted(s.terms)],
    }


def series_dumps(s: TateSeries) -> str:
    return json.dumps(series_to_obj(s), sort_keys=True, separators=(",", ":"))


def series_from_obj(obj: dict, ctx: SeriesContext | None = None) -> TateSeries:
    c = obj["context"]
    if ctx is None:
        ctx = make_series_context(c["q"], c["d_inf"], tuple(c["vars"]))
    else:
        assert ctx.key() == (c["q"], c["d_inf"], tuple(c["vars"])), "context mismatch"
    terms = {int(e): coef_from_str(ctx, cs) for e, cs in obj["terms"]}
    return TateSeries(ctx, terms, int(obj["precision"]))


def series_loads(text: str, ctx: SeriesContext | None = None) -> TateSeries:
    return series_from_obj(json.loads(text), ctx)


PREC_EXACT = 10 ** 9  # precision tag for exactly-known series (constants)


def eval_fpoly(P: FPoly, x: TateSeries) -> TateSeries:
    """P(x) for P a univariate polynomial over the series coefficient field."""
    ctx = x.ctx
    assert P.field == ctx.field, "embed the polynomial into the context field first"
    acc = None
    for enc in [int(v) for v in P.encs()][::-1]:
        c = TateSeries.const(ctx, enc, PREC_EXACT)
        acc = c if acc is None else acc * x + c
    if acc is None:
        return TateSeries.zero(ctx, x.prec)
    return acc
