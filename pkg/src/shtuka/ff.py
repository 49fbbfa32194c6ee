"""Finite fields GF(p^e) with deterministic moduli and table arithmetic.

An element of GF(p^e) is stored as its canonical integer encoding
n = sum(c_i * p^i), standing for sum(c_i * w^i) with w the class of the
variable in F_p[w]/(modulus).  The modulus is the lexicographically least
monic irreducible of degree e (coefficients compared from the top degree
down, which is the same as minimizing the integer encoding), so two fields
built with the same (p, e) agree element for element.

Multiplication, inversion and Frobenius powers go through discrete
log/antilog tables built once per field; this keeps the scalar arithmetic
behind the polynomial and series layers O(1).
"""

from __future__ import annotations

import functools


def _pdigits(n: int, p: int) -> list[int]:
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out


def _pencode(digits, p: int) -> int:
    n = 0
    for c in reversed(list(digits)):
        n = n * p + c
    return n


def _poly_mulmod(a: int, b: int, modulus: int, p: int) -> int:
    """Product of encoded F_p[w] polynomials, reduced mod the encoded modulus."""
    da, db = _pdigits(a, p), _pdigits(b, p)
    if not da or not db:
        return 0
    prod = [0] * (len(da) + len(db) - 1)
    for i, ca in enumerate(da):
        if ca:
            for j, cb in enumerate(db):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    dm = _pdigits(modulus, p)
    e = len(dm) - 1
    # modulus monic: w^e = -(lower part)
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(e):
                prod[k - e + j] = (prod[k - e + j] - c * dm[j]) % p
    return _pencode(prod, p)


def _poly_is_irreducible(m: int, p: int, e: int) -> bool:
    """Trial division of the encoded monic degree-e polynomial by every monic
    polynomial of degree up to e//2."""
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in range(p ** d):
            div = p ** d + low
            if _poly_divides(div, m, p):
                return False
    return True


def _poly_divides(a: int, b: int, p: int) -> bool:
    da, db = _pdigits(a, p), list(_pdigits(b, p))
    na = len(da) - 1
    inv_lead = pow(da[-1], p - 2, p)
    while len(db) - 1 >= na and any(db):
        if db[-1] == 0:
            db.pop()
            continue
        c = db[-1] * inv_lead % p
        shift = len(db) - 1 - na
        for j, ca in enumerate(da):
            db[shift + j] = (db[shift + j] - c * ca) % p
        db.pop()
    return not any(db)


def _least_irreducible(p: int, e: int) -> int:
    """Encoded lexicographically least monic irreducible of degree e over F_p."""
    for low in range(p ** e):
        cand = p ** e + low
        if _poly_is_irreducible(cand, p, e):
            return cand
    raise ArithmeticError("no irreducible found")  # unreachable


def _factor(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """GF(p^e) operating on integer encodings.

    The methods add/mul/inv/... take and return raw encodings; FieldElem is a
    thin wrapper for code that wants operator syntax.  Raw encodings are what
    the polynomial and series layers use internally.
    """

    def __init__(self, p: int, e: int):
        assert e >= 1 and p >= 2 and _is_prime(p), (p, e)
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = _least_irreducible(p, e) if e > 1 else p  # e=1: marker
        self._build_tables()
        self._embed_cache: dict[int, list[int]] = {}
        self._frob_cache: dict[int, list[int]] = {}

    # -- construction of tables -------------------------------------------

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        # multiplicative generator
        fac = _factor(q - 1) if q > 2 else []
        gen = None
        for g in range(1, q):
            if all(self._pow_nomul(g, (q - 1) // r) != 1 for r in fac):
                gen = g
                break
        assert gen is not None
        self.gen = gen
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._mul_raw(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log
        if p == 2:
            self._add_mode = "xor"
        elif e == 1:
            self._add_mode = "mod"
        elif q <= 4096:
            self._add_mode = "table"
            self._add_table = [
                [self._add_digitwise(a, b) for b in range(q)] for a in range(q)
            ]
        else:
            self._add_mode = "digit"

    def _mul_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        return _poly_mulmod(a, b, self.modulus, self.p)

    def _pow_nomul(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            n >>= 1
        return r

    def _add_digitwise(self, a: int, b: int) -> int:
        p = self.p
        r, mult = 0, 1
        while a or b:
            r += (a % p + b % p) % p * mult
            a //= p
            b //= p
            mult *= p
        return r

    # -- arithmetic on encodings ------------------------------------------

    def add(self, a: int, b: int) -> int:
        m = self._add_mode
        if m == "xor":
            return a ^ b
        if m == "mod":
            return (a + b) % self.p
        if m == "table":
            return self._add_table[a][b]
        return self._add_digitwise(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        r, mult = 0, 1
        while a:
            r += (-a % p) % p * mult
            a //= p
            mult *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError
            return 0 if n else 1
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frob(self, a: int, k: int = 1, base: int | None = None) -> int:
        """a ** (base ** k); base defaults to this field's full size q."""
        if base is None:
            base = self.q
        if a == 0:
            return 0
        return self._exp[(self._log[a] * pow(base, k, self.q - 1)) % (self.q - 1)]

    def frob_table(self, qexp: int) -> list[int]:
        """Lookup table a -> a**qexp (qexp reduced mod q-1 on nonzero)."""
        key = qexp % (self.q - 1) if self.q > 2 else 1
        tab = self._frob_cache.get(key)
        if tab is None:
            tab = [0] + [self._exp[(self._log[a] * key) % (self.q - 1)]
                         for a in range(1, self.q)]
            self._frob_cache[key] = tab
        return tab

    # -- structure ---------------------------------------------------------

    def elements(self):
        return range(self.q)

    def elem(self, n: int) -> "FieldElem":
        assert 0 <= n < self.q
        return FieldElem(self, n)

    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def from_int(self, c: int) -> int:
        """Prime-subfield constant c mod p as an encoding."""
        return c % self.p

    def embed_root(self, sub: "Field") -> list[int]:
        """Powers [r^0, .., r^{e_sub-1}] of the least root in self of sub's
        modulus; the data of the embedding sub -> self."""
        assert sub.p == self.p and self.e % sub.e == 0
        key = sub.e
        cached = self._embed_cache.get(key)
        if cached is not None:
            return cached
        if sub.e == 1:
            pows = [1]
        else:
            dm = _pdigits(sub.modulus, self.p)  # coefficients in F_p
            root = None
            for y in range(self.q):
                acc = 0
                for c in reversed(dm):
                    acc = self.add(self.mul(acc, y), c % self.p)
                if acc == 0:
                    root = y
                    break
            assert root is not None, "modulus has no root in the extension"
            pows = [1]
            for _ in range(1, sub.e):
                pows.append(self.mul(pows[-1], root))
        self._embed_cache[key] = pows
        return pows

    def embed(self, sub: "Field", a: int) -> int:
        """Encoding of sub's element a inside self."""
        if sub is self:
            return a
        pows = self.embed_root(sub)
        digs = _pdigits(a, sub.p)
        acc = 0
        for c, rp in zip(digs, pows):
            if c:
                acc = self.add(acc, self.mul(c, rp))
        return acc

    def __repr__(self):
        return "GF(%d)" % self.q

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldElem:
    """An element of a Field; wraps the integer encoding with operators."""

    __slots__ = ("field", "n")

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.n, _enc(self, other)))

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.n, _enc(self, other)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.n))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.n, _enc(self, other)))

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.n, _enc(self, other)))

    def __pow__(self, n):
        return FieldElem(self.field, self.field.pow(self.n, n))

    __radd__ = __add__
    __rmul__ = __mul__

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.n))

    def frobenius(self, k: int = 1, base: int | None = None):
        return FieldElem(self.field, self.field.frob(self.n, k, base))

    def is_zero(self) -> bool:
        return self.n == 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.n == other.n
        if isinstance(other, int):
            return self.n == other % self.field.p if other else self.n == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.n))

    def __repr__(self):
        return "GF(%d):%d" % (self.field.q, self.n)


def _enc(ref: FieldElem, other) -> int:
    if isinstance(other, FieldElem):
        assert other.field == ref.field
        return other.n
    if isinstance(other, int):
        return other % ref.field.p
    raise TypeError(other)


@functools.lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> Field:
    """The field GF(p^e) with the deterministic least modulus (cached)."""
    return Field(p, e)


def frobenius(x: FieldElem, k: int = 1, base: int | None = None) -> FieldElem:
    """x ** (base ** k) with base defaulting to the field size q = p^e."""
    return x.frobenius(k, base)
