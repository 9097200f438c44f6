"""
Finite fields with integer-encoded elements.

An element of GF(p^m) is stored as the integer whose little-endian base-p
digits are its coordinates in the polynomial basis 1, x, ..., x^(m-1).  The
quadratic extension GF(q^2) reuses the scheme one level up: base-q digits
over GF(q).  In both cases the prime subfield is {0, ..., p-1} and the
integers 0 and 1 encode the field's zero and one.

Scalar arithmetic goes through methods on `Field` (``F.add(a, b)`` etc.) so
that the enumerative code can stay on plain ints; `FieldElement` wraps an
encoding for interactive use.
"""

from __future__ import annotations

import math
from functools import cached_property, lru_cache

import numpy as np

from .errors import BoundExceededError

DEFAULT_MAX_ORDER = 2 ** 16
# full q x q numpy tables are only built up to this order
TABLE_LIMIT = 1024

NEG_INF = float("-inf")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
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


def to_digits(n: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        n, r = divmod(n, base)
        out.append(r)
    return out


def from_digits(digits, base: int) -> int:
    n = 0
    for d in reversed(digits):
        n = n * base + d
    return n


class _Infinity:
    """The point at infinity of the projective line over a field."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def ext_key(t, q: int) -> int:
    """Sort key for F_q U {inf}: finite encodings first, inf last."""
    return q if t is INF else t


class Field:
    """
    A finite field GF(g^d) built as ground[x]/(modulus).

    ``ground`` is None for fields over the prime field GF(p) (coefficients
    are plain residues mod p); otherwise it is a `Field` and digits are its
    encodings.  Use `make_field` / `quadratic_extension` rather than calling
    this directly.
    """

    def __init__(self, p: int, modulus, ground: Field | None = None):
        self.p = p
        self.ground = ground
        self.modulus = tuple(modulus)
        self.degree = len(self.modulus) - 1
        self.base = p if ground is None else ground.q
        self.q = self.base ** self.degree
        self.m = self.degree * (1 if ground is None else ground.m)
        self.is_prime_field = ground is None and self.degree == 1
        self._reducer = None
        if self.is_prime_field:
            self.add = self._add_prime
            self.sub = self._sub_prime
            self.mul = self._mul_prime
            self.neg = self._neg_prime
            return
        if ground is None:
            self._gadd = lambda a, b: (a + b) % p
            self._gsub = lambda a, b: (a - b) % p
            self._gmul = lambda a, b: (a * b) % p
        else:
            self._gadd, self._gsub, self._gmul = ground.add, ground.sub, ground.mul
        self._neg_list = [self._neg_digits(a) for a in range(self.q)]
        if p == 2:
            self.add = self.sub = self._xor
        elif self.q <= TABLE_LIMIT:
            self._add_list = self.add_table.tolist()
            self.add = self._add_lookup
            self.sub = self._sub_lookup
        else:
            self.add = self._add_digits
            self.sub = self._sub_digits
        self.neg = self._neg_list.__getitem__
        self.mul = self._mul_log
        self._build_log_tables()

    def __repr__(self):
        if self.ground is None:
            return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"
        return f"GF({self.ground.q}^{self.degree})"

    def __reduce__(self):
        if self.ground is None:
            return (make_field, (self.p, self.m, self.q))
        return (_extension_field_of, (self.ground,))

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    def __len__(self):
        return self.q

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, a) for a in range(self.q)]

    # -- prime field
    def _add_prime(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def _sub_prime(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def _mul_prime(self, a, b):
        return a * b % self.p

    def _neg_prime(self, a):
        return (self.p - a) % self.p

    # -- extension field
    def _xor(self, a, b):
        return a ^ b

    def _add_lookup(self, a, b):
        return self._add_list[a][b]

    def _sub_lookup(self, a, b):
        return self._add_list[a][self._neg_list[b]]

    def digits(self, a: int) -> list[int]:
        return to_digits(a, self.base, self.degree)

    def from_digits(self, digits) -> int:
        return from_digits(digits, self.base)

    def _add_digits(self, a, b):
        return self.from_digits([self._gadd(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def _sub_digits(self, a, b):
        return self.from_digits([self._gsub(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def _neg_digits(self, a):
        return self.from_digits([self._gsub(0, x) for x in self.digits(a)])

    def _mul_log(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def _slow_mul(self, a, b):
        """Schoolbook product in ground[x]/(modulus); used to seed the log tables."""
        d = self.degree
        if self.ground is None and self.p == 2:
            if self._reducer is None:
                self._reducer = from_digits(self.modulus, 2)
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> d & 1:
                    a ^= self._reducer
            return r
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = self._gadd(prod[i + j], self._gmul(x, y))
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                for j in range(d):
                    prod[i - d + j] = self._gsub(prod[i - d + j], self._gmul(c, self.modulus[j]))
                prod[i] = 0
        return self.from_digits(prod[:d])

    def _slow_pow(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return r

    def _build_log_tables(self):
        n = self.q - 1
        cofactors = [n // r for r in prime_factors(n)]
        gen = next(
            g for g in range(2, self.q)
            if all(self._slow_pow(g, e) != 1 for e in cofactors)
        )
        exp = [0] * (2 * n)
        log = [0] * self.q
        x = 1
        for i in range(n):
            exp[i] = exp[i + n] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        if x != 1:
            raise ArithmeticError(f"modulus {self.modulus} is not irreducible")
        self._exp, self._log = exp, log
        self.generator = gen

    # -- public scalar API
    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime_field:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        if self.is_prime_field:
            return pow(a, n % (self.p - 1), self.p)
        return self._exp[self._log[a] * n % (self.q - 1)]

    def scalar(self, n: int) -> int:
        """The integer n as a field element (n * 1)."""
        return n % self.p

    def mul_int(self, n: int, a: int) -> int:
        return self.mul(n % self.p, a)

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        if self.is_prime_field:
            return self._prime_log[a]
        return self._log[a]

    @cached_property
    def generator(self) -> int:
        # extension fields overwrite this while building their log tables
        if self.q == 2:
            return 1
        cofactors = [(self.q - 1) // r for r in prime_factors(self.q - 1)]
        return next(g for g in range(2, self.q) if all(pow(g, e, self.p) != 1 for e in cofactors))

    @cached_property
    def _prime_log(self) -> list:
        log = [0] * self.q
        x = 1
        for i in range(self.q - 1):
            log[x] = i
            x = x * self.generator % self.p
        return log

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        for d in sorted(_divisors(n)):
            if self.pow(a, d) == 1:
                return d
        return n  # unreachable

    def check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element encoding of {self}")
        return int(a)

    # -- vectorised tables
    def _require_tables(self):
        if self.q > TABLE_LIMIT:
            raise BoundExceededError(f"{self} is too large for dense tables (q > {TABLE_LIMIT})")

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        q = self.q
        a = np.arange(q)
        if self.is_prime_field:
            return ((a[:, None] + a[None, :]) % q).astype(np.int32)
        if self.p == 2:
            return (a[:, None] ^ a[None, :]).astype(np.int32)
        dig = np.array([self.digits(x) for x in range(q)])
        if self.ground is None:
            s = (dig[:, None, :] + dig[None, :, :]) % self.p
        else:
            s = self.ground.add_table[dig[:, None, :], dig[None, :, :]]
        w = self.base ** np.arange(self.degree)
        return (s * w).sum(axis=2).astype(np.int32)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        q = self.q
        if self.is_prime_field:
            a = np.arange(q)
            return ((a[:, None] * a[None, :]) % q).astype(np.int32)
        log = np.array(self._log)
        exp = np.array(self._exp)
        t = exp[log[:, None] + log[None, :]]
        t[0, :] = 0
        t[:, 0] = 0
        return t.astype(np.int32)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int32)

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Inverse table with the convention inv(0) = 0."""
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int32)


def _divisors(n):
    return {d for i in range(1, math.isqrt(n) + 1) if n % i == 0 for d in (i, n // i)}


class FieldElement:
    """An element of a `Field` with operator overloading; plain ints are read as encodings."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = field.check(value)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError(f"operands belong to different fields ({self.field} vs {other.field})")
            return other.value
        if isinstance(other, int):
            return self.field.check(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.value, n))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field}({self.value})"


def enumerate_elements(F: Field) -> list[FieldElement]:
    """Elements in ascending encoding order; this is the alpha_1..alpha_q order."""
    return F.elements()


class Poly:
    """Univariate polynomial over a `Field`, coefficients low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        c = [field.check(int(x)) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, field, n, coeff=1):
        return cls(field, [0] * n + [coeff])

    @classmethod
    def x(cls, field):
        return cls.monomial(field, 1)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def __call__(self, x: int) -> int:
        F = self.field
        r = 0
        for c in reversed(self.coeffs):
            r = F.add(F.mul(r, x), c)
        return r

    def __add__(self, other):
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __sub__(self, other):
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            return Poly(F, [F.mul(c, other) for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly(F, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = len(other.coeffs) - 1
        inv_lead = F.inv(other.leading)
        quo = [0] * max(len(r) - d, 0)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c:
                f = F.mul(c, inv_lead)
                quo[i - d] = f
                for j, b in enumerate(other.coeffs):
                    r[i - d + j] = F.sub(r[i - d + j], F.mul(f, b))
        return Poly(F, quo), Poly(F, r[:d])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no monic form")
        return self * self.field.inv(self.leading)

    def powmod(self, n: int, modulus: Poly) -> Poly:
        result = Poly(self.field, [1]) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def encode(self) -> int:
        """Little-endian base-q integer of the coefficient vector."""
        return from_digits(self.coeffs, self.field.q)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def is_irreducible(f: Poly) -> bool:
    if f.is_zero():
        raise ValueError("the zero polynomial is neither reducible nor irreducible")
    n = f.degree
    F = f.field
    if n <= 0:
        return False
    if n == 1:
        return True
    if n <= 3:
        return all(f(x) != 0 for x in range(F.q))
    f = f.monic()
    x = Poly.x(F)
    h = x
    for _ in range(n // 2):
        h = h.powmod(F.q, f)
        if poly_gcd(f, h - x).degree > 0:
            return False
    return True


@lru_cache(maxsize=None)
def _field(p: int, m: int) -> Field:
    if m == 1:
        return Field(p, (0, 1))
    Fp = _field(p, 1)
    for c in range(p ** m):
        coeffs = to_digits(c, p, m) + [1]
        if is_irreducible(Poly(Fp, coeffs)):
            return Field(p, coeffs)
    raise ArithmeticError(f"no irreducible polynomial of degree {m} over GF({p})")  # unreachable


def make_field(p: int, m: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> Field:
    """
    GF(p^m) with the canonical modulus: the first monic irreducible
    degree-m polynomial over GF(p) in little-endian integer-encoding order.
    Fields are cached, so equal parameters give the identical object.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"degree must be a positive integer, got {m}")
    if p ** m > max_order:
        raise BoundExceededError(f"field order {p}^{m} exceeds bound {max_order}")
    return _field(p, m)


def field_of_order(q: int, max_order: int = DEFAULT_MAX_ORDER) -> Field:
    for p in prime_factors(q)[:1]:
        m = round(math.log(q, p))
        if p ** m == q:
            return make_field(p, m, max_order)
    raise ValueError(f"{q} is not a prime power")


@lru_cache(maxsize=None)
def monic_irreducible_quadratics(F: Field) -> list[Poly]:
    """All x^2 + c1 x + c0 irreducible over F, sorted by (c1, c0)."""
    q = F.q
    reducible = set()
    for r in range(q):
        for s in range(r, q):
            reducible.add((F.neg(F.add(r, s)), F.mul(r, s)))
    return [
        Poly(F, (c0, c1, 1))
        for c1 in range(q) for c0 in range(q)
        if (c1, c0) not in reducible
    ]


class QuadraticExtension:
    """GF(q^2) = F[X]/(r) with r the first monic irreducible quadratic over F."""

    def __init__(self, base: Field):
        self.base = base
        self.modulus = monic_irreducible_quadratics(base)[0]
        self.E = Field(base.p, self.modulus.coeffs, ground=base)

    def __repr__(self):
        return f"QuadraticExtension({self.base} -> {self.E})"

    def embed(self, a: int) -> int:
        # (a, 0) in base-q digits is a itself
        return self.base.check(a)

    def is_rational(self, x: int) -> bool:
        return x < self.base.q

    def project(self, x: int) -> int:
        if x >= self.base.q:
            raise ValueError(f"{x} does not lie in the embedded base field")
        return x

    def frobenius(self, x: int) -> int:
        return self.E.pow(x, self.base.q)

    @cached_property
    def _roots(self) -> dict:
        # every mu outside F is a root of exactly one monic irreducible quadratic;
        # scanning in encoding order picks the smaller root first
        E, q = self.E, self.base.q
        roots = {}
        for mu in range(q, E.q):
            conj = self.frobenius(mu)
            key = (self.project(E.mul(mu, conj)), self.project(E.neg(E.add(mu, conj))))
            roots.setdefault(key, mu)
        return roots

    def designated_root(self, poly: Poly) -> int:
        """The root of a monic irreducible quadratic with the smaller encoding."""
        if poly.field is not self.base or poly.degree != 2 or not poly.is_monic():
            raise ValueError(f"{poly} is not a monic quadratic over {self.base}")
        try:
            return self._roots[(poly.coeffs[0], poly.coeffs[1])]
        except KeyError:
            raise ValueError(f"{poly} is reducible over {self.base}") from None

    def eval_base_poly(self, poly: Poly, x: int) -> int:
        E = self.E
        r = 0
        for c in reversed(poly.coeffs):
            r = E.add(E.mul(r, x), self.embed(c))
        return r


_extensions: dict = {}


def quadratic_extension(F: Field, max_order: int = DEFAULT_MAX_ORDER) -> QuadraticExtension:
    if F.q ** 2 > max_order:
        raise BoundExceededError(f"extension order {F.q}^2 exceeds bound {max_order}")
    if F not in _extensions:
        _extensions[F] = QuadraticExtension(F)
    return _extensions[F]


def _extension_field_of(F: Field) -> Field:
    return quadratic_extension(F, max_order=math.inf).E
