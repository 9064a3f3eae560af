"""Forms of degree d in X_0..X_n, the d-uple map and osculating cones.

Monomials of degree ``d`` are ordered graded-lex descending with
``X_0 > X_1 > ... > X_n``: position 0 is ``X_0^d`` and the last position is
``X_n^d``.  This order fixes the coordinates of every packet, so it is part
of the serialized code format.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .gf import Field, FieldError
from .linalg import Subspace, span

MultiIndex = tuple[int, ...]


def _exponents(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _exponents(nvars - 1, d - first):
            yield (first,) + rest


@dataclass(frozen=True)
class MonomialBasis:
    n: int
    d: int
    monomials: tuple[MultiIndex, ...]

    @property
    def size(self) -> int:
        return len(self.monomials)

    def monomial_at(self, i: int) -> MultiIndex:
        return self.monomials[i]

    def index_of(self, alpha) -> int:
        return _index_table(self.n, self.d)[tuple(alpha)]

    def __len__(self):
        return len(self.monomials)

    def names(self) -> list[str]:
        return [monomial_name(a) for a in self.monomials]


@lru_cache(maxsize=None)
def _index_table(n: int, d: int) -> dict[MultiIndex, int]:
    return {a: i for i, a in enumerate(monomial_basis(n, d).monomials)}


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> MonomialBasis:
    """Degree-``d`` monomials in ``n + 1`` variables; ``C(n+d, d)`` of them."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 0:
        raise ValueError(f"degree must be >= 0, got {d}")
    mons = tuple(_exponents(n + 1, d))
    assert len(mons) == comb(n + d, d)
    return MonomialBasis(n, d, mons)


def monomial_name(alpha: MultiIndex) -> str:
    parts = []
    for i, e in enumerate(alpha):
        if e == 1:
            parts.append(f"X{i}")
        elif e > 1:
            parts.append(f"X{i}^{e}")
    return "*".join(parts) or "1"


@lru_cache(maxsize=None)
def _product_index(n: int, a: int, b: int) -> np.ndarray:
    """target[i, j] = position of monomial_i(deg a) * monomial_j(deg b) in degree a+b."""
    ba, bb = monomial_basis(n, a), monomial_basis(n, b)
    table = _index_table(n, a + b)
    out = np.empty((ba.size, bb.size), dtype=np.int64)
    for i, x in enumerate(ba.monomials):
        for j, y in enumerate(bb.monomials):
            out[i, j] = table[tuple(u + v for u, v in zip(x, y))]
    return out


class DensePoly:
    """A form of degree ``d`` in ``n + 1`` variables as a dense coefficient vector."""

    __slots__ = ("field", "basis", "coeffs")

    def __init__(self, field: Field, n: int, d: int, coeffs):
        basis = monomial_basis(n, d)
        coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        if coeffs.shape[0] != basis.size:
            raise ValueError(f"need {basis.size} coefficients for degree {d}, got {coeffs.shape[0]}")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        self.field = field
        self.basis = basis
        self.coeffs = coeffs

    @property
    def n(self) -> int:
        return self.basis.n

    @property
    def degree(self) -> int:
        return self.basis.d

    @classmethod
    def monomial(cls, field: Field, n: int, alpha) -> DensePoly:
        d = sum(alpha)
        c = np.zeros(comb(n + d, d), dtype=np.int64)
        c[monomial_basis(n, d).index_of(alpha)] = 1
        return cls(field, n, d, c)

    @classmethod
    def constant(cls, field: Field, n: int, value: int = 1) -> DensePoly:
        return cls(field, n, 0, [value])

    def __mul__(self, other: DensePoly) -> DensePoly:
        return poly_mul(self, other)

    def __add__(self, other: DensePoly) -> DensePoly:
        if self.field != other.field or self.basis != other.basis:
            raise ValueError("can only add forms of the same degree over the same field")
        return DensePoly(self.field, self.n, self.degree, self.field.add(self.coeffs, other.coeffs))

    def __eq__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self.field == other.field and self.basis == other.basis and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.field, self.n, self.degree, self.coeffs.tobytes()))

    def __repr__(self):
        terms = []
        for c, a in zip(self.coeffs, self.basis.monomials):
            if c:
                name = monomial_name(a)
                terms.append(name if c == 1 else f"{self.field.to_text(c)}*{name}")
        return " + ".join(terms) or "0"


def poly_mul(f: DensePoly, g: DensePoly) -> DensePoly:
    if f.field != g.field:
        raise FieldError("polynomials over different fields")
    if f.n != g.n:
        raise ValueError(f"variable counts differ: {f.n + 1} vs {g.n + 1}")
    field = f.field
    n, a, b = f.n, f.degree, g.degree
    target = _product_index(n, a, b)
    out = np.zeros(comb(n + a + b, a + b), dtype=np.int64)
    fi = np.flatnonzero(f.coeffs)
    gj = np.flatnonzero(g.coeffs)
    # accumulate one row of f at a time so that no target slot repeats in a batch
    for i in fi:
        idx = target[i, gj]
        terms = field.mul(f.coeffs[i], g.coeffs[gj])
        out[idx] = field.add(out[idx], terms)
    return DensePoly(field, n, a + b, out)


class LinearForm:
    """A nonzero linear form normalized so its first nonzero coefficient is 1.

    This is the representative of a point of P^n(F_q).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs, normalize: bool = True):
        c = np.array([field(v).value for v in coeffs], dtype=np.int64)
        nz = np.flatnonzero(c)
        if nz.size == 0:
            raise ValueError("the zero form is not a point of projective space")
        if c[nz[0]] != 1:
            if not normalize:
                raise ValueError("leading coefficient must be 1")
            c = np.asarray(field.mul(c, field.inv(c[nz[0]])), dtype=np.int64)
        c.setflags(write=False)
        self.field = field
        self.coeffs = c

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def as_poly(self) -> DensePoly:
        # degree-1 monomial order is X0, X1, ..., Xn
        return DensePoly(self.field, self.n, 1, self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs.tobytes()))

    def __repr__(self):
        return f"LinearForm({self.as_poly()!r})"

    def to_text(self) -> str:
        return " ".join(self.field.to_text(c) for c in self.coeffs)

    @classmethod
    def from_text(cls, field: Field, text: str) -> LinearForm:
        return cls(field, [field.from_text(t) for t in text.split()], normalize=False)


def poly_power(f: DensePoly, e: int) -> DensePoly:
    """``f**e`` by repeated multiplication."""
    result = DensePoly.constant(f.field, f.n)
    for _ in range(e):
        result = poly_mul(result, f)
    return result


def veronese_point(form: LinearForm, d: int) -> DensePoly:
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    return poly_power(form.as_poly(), d)


def multiple_space(factor: DensePoly, k: int) -> Subspace:
    """The subspace ``{factor * F : F of degree k}`` of forms of degree deg(factor)+k."""
    n = factor.n
    # factor * X^alpha just relocates the coefficients of factor
    target = _product_index(n, factor.degree, k)
    rows = np.zeros((target.shape[1], comb(n + factor.degree + k, n)), dtype=np.int64)
    rows[np.arange(target.shape[1])[None, :], target] = factor.coeffs[:, None]
    return span(rows, factor.field, rows.shape[1])


def osculating_cone(form: LinearForm, n: int, d: int, k: int, field: Field | None = None) -> Subspace:
    """Affine cone over the k-osculating space at the point ``form^d``.

    Spanned by ``form^(d-k) * X^alpha`` over all monomials of degree ``k``;
    dimension ``C(k+n, n)``.
    """
    field = form.field if field is None else field
    if form.field != field:
        raise FieldError("linear form is over a different field")
    if form.n != n:
        raise ValueError(f"linear form has {form.n + 1} coefficients, expected {n + 1}")
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={d}")
    return multiple_space(poly_power(form.as_poly(), d - k), k)


def intersection_prediction(l1: LinearForm, l2: LinearForm, d: int, k: int) -> Subspace:
    """``{l1^(d-k) l2^(d-k) G : deg G = 2k - d}``, for ``2k >= d``."""
    if 2 * k < d:
        raise ValueError("prediction only defined for 2k >= d")
    base = poly_mul(poly_power(l1.as_poly(), d - k), poly_power(l2.as_poly(), d - k))
    return multiple_space(base, 2 * k - d)


def multinomial_power(form: LinearForm, d: int) -> DensePoly:
    """``form**d`` via multinomial coefficients reduced mod p; cross-check for :func:`veronese_point`."""
    field = form.field
    basis = monomial_basis(form.n, d)
    out = np.zeros(basis.size, dtype=np.int64)
    for i, alpha in enumerate(basis.monomials):
        coef = 1
        rest = d
        for e in alpha:
            coef *= comb(rest, e)
            rest -= e
        term = coef % field.p
        for c, e in zip(form.coeffs, alpha):
            term = field.mul(term, field.pow(int(c), e))
        out[i] = int(term)
    return DensePoly(field, form.n, d, out)

