"""Finite fields GF(p^m) in a polynomial basis over GF(p).

Elements are stored as integer codes: the coefficient vector
``(c_0, ..., c_{m-1})`` of ``c_0 + c_1 x + ... + c_{m-1} x^{m-1}`` maps to
``sum(c_i * p**i)``.  The :class:`Field` methods ``add``/``mul``/... work on
codes and on numpy integer arrays of codes alike, which is what the linear
algebra layer uses.  :class:`FieldElem` is the scalar wrapper with operators.
"""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

MAX_ORDER = 2**20
# extension fields up to this order get full addition/multiplication tables
TABLE_MAX_ORDER = 256


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# Scalar polynomial helpers over GF(p); coefficient lists, lowest degree first.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, mod, p)


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for dd in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=dd):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``m`` with the smallest integer code.

    The code of ``x^m + c_{m-1} x^{m-1} + ... + c_0`` is ``sum(c_i p^i)``,
    so e.g. ``x^3 + x + 1`` is chosen over ``x^3 + x^2 + 1`` for GF(8).
    """
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


class Field:
    """The finite field GF(p^m).

    ``irreducible`` is a monic coefficient list of length ``m + 1``, lowest
    degree first. It is ignored for prime fields; when omitted for ``m > 1``
    the smallest one (see :func:`smallest_irreducible`) is used.
    """

    def __init__(self, p: int, m: int = 1, irreducible=None):
        p, m = int(p), int(m)
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError(f"extension degree must be >= 1, got {m}")
        if p**m > MAX_ORDER:
            raise FieldError(f"field order {p}^{m} exceeds cap {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = p**m
        if m == 1:
            self.irreducible = (0, 1)
        else:
            if irreducible is None:
                irr = smallest_irreducible(p, m)
            else:
                irr = tuple(int(c) % p for c in irreducible)
                if len(irr) != m + 1 or irr[-1] != 1:
                    raise FieldError(f"irreducible must be monic of degree {m}, got {list(irreducible)}")
                if not is_irreducible(irr, p):
                    raise FieldError(f"polynomial {list(irr)} is reducible over GF({p})")
            self.irreducible = irr
        self._build_tables()

    @classmethod
    def of_order(cls, q: int, irreducible=None) -> Field:
        q = int(q)
        if q < 2:
            raise FieldError(f"no field of order {q}")
        factors = _prime_factors(q)
        if len(factors) != 1:
            raise FieldError(f"{q} is not a prime power")
        p = factors[0]
        m = 0
        while q > 1:
            q //= p
            m += 1
        return cls(p, m, irreducible)

    def _mul_scalar_slow(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        pa, pb = self.coeffs(a), self.coeffs(b)
        r = _poly_mulmod(list(pa), list(pb), list(self.irreducible), self.p)
        return self.from_coeffs(r)

    def _build_tables(self):
        q = self.q
        order = q - 1
        exps = [order // r for r in _prime_factors(order)] if order > 1 else []
        gen = None
        # x is often primitive and multiplying by it is cheap
        candidates = itertools.chain([self.p] if self.m > 1 else [], range(1, q))
        for g in candidates:
            if all(self._pow_slow(g, e) != 1 for e in exps):
                gen = g
                break
        exp = np.zeros(2 * order if order else 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_scalar_slow(x, gen)
        exp[order:] = exp[:order]
        inv_t = np.zeros(q, dtype=np.int64)
        inv_t[1:] = exp[(-log[1:]) % order] if order else 0
        self._inv_t = inv_t
        self._exp = exp
        self._log = log
        self.generator = gen
        self._digit_pows = np.array([self.p**i for i in range(self.m)], dtype=np.int64)
        self._tables = None
        if self.m > 1 and q <= TABLE_MAX_ORDER:
            codes = np.arange(q, dtype=np.int64)
            self._tables = (
                self._add_digits(codes[:, None], codes[None, :]),
                self._mul_log(codes[:, None], codes[None, :]),
                self._neg_digits(codes),
            )

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_scalar_slow(result, base)
            base = self._mul_scalar_slow(base, base)
            e >>= 1
        return result

    # identity / repr

    def _key(self):
        return (self.p, self.m, self.irreducible)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, irreducible={list(self.irreducible)})"

    # code <-> coefficients

    def coeffs(self, code: int) -> tuple[int, ...]:
        code = int(code)
        return tuple((code // self.p**i) % self.p for i in range(self.m))

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            if any(c % self.p for c in coeffs[self.m:]):
                raise FieldError(f"coefficient vector {coeffs} longer than extension degree {self.m}")
            coeffs = coeffs[: self.m]
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    # vectorised arithmetic on codes

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._tables is not None:
            return self._tables[0][a, b]
        return self._add_digits(a, b)

    def _add_digits(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pw in self._digit_pows:
            out += ((a // pw + b // pw) % self.p) * pw
        return out

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        if self._tables is not None:
            return self._tables[2][a]
        return self._neg_digits(a)

    def _neg_digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        for pw in self._digit_pows:
            out += ((-(a // pw)) % self.p) * pw
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        if self._tables is not None:
            return self._tables[1][a, b]
        return self._mul_log(a, b)

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv_t[a]

    def pow(self, a, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # element-level API

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldError(f"element of {value.field!r} is not in {self!r}")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.from_coeffs(value))
        value = int(value)
        if not 0 <= value < self.q:
            raise FieldError(f"code {value} out of range for {self!r}")
        return FieldElem(self, value)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def elements(self) -> list[FieldElem]:
        """All q elements, zero first, ordered by integer code (c_0 varies fastest)."""
        return [FieldElem(self, c) for c in range(self.q)]

    # text form

    @cached_property
    def _wide_digits(self) -> bool:
        return self.p > 36

    def to_text(self, code: int) -> str:
        cs = self.coeffs(code)
        if self._wide_digits:
            return ".".join(str(c) for c in cs)
        return "".join(np.base_repr(c, 36).lower() for c in cs)

    def from_text(self, token: str) -> int:
        token = token.strip()
        try:
            if self._wide_digits:
                cs = [int(t) for t in token.split(".")]
            else:
                cs = [int(ch, 36) for ch in token]
        except ValueError:
            raise FieldError(f"bad element token {token!r}") from None
        if len(cs) != self.m or any(not 0 <= c < self.p for c in cs):
            raise FieldError(f"bad element token {token!r} for {self!r}")
        return self.from_coeffs(cs)


def field_new(p: int, m: int = 1, irreducible=None) -> Field:
    return Field(p, m, irreducible)


def enumerate_elements(field: Field) -> list[FieldElem]:
    return field.elements()


class FieldElem:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", int(value))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _check(self, other) -> FieldElem:
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.field != self.field:
            raise FieldError(f"mixed-field operands: {self.field!r} and {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, int(e)))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.to_text(self.value)

    def __repr__(self):
        if self.field.m == 1:
            return f"{self.value} mod {self.field.p}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}{'' if i == 0 else '*' + mono}")
        return " + ".join(terms) or "0"


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def neg(a: FieldElem) -> FieldElem:
    return -a


def inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def power(a: FieldElem, e: int) -> FieldElem:
    return a**e
