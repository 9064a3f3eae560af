"""Exact linear algebra over GF(q) on integer-coded numpy matrices.

Matrices are 2-D ``int64`` arrays whose entries are field codes (see
:mod:`oscnet.gf`).  A :class:`Subspace` keeps its basis in reduced row
echelon form, so equality of subspaces is equality of basis arrays.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .gf import Field, FieldError

ENUM_CAP = 2**20


class AmbientMismatch(ValueError):
    pass


def as_matrix(rows, field: Field, ncols: int | None = None) -> np.ndarray:
    """Coerce rows (codes or FieldElems) into an int64 matrix, checking shape and range."""
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    width = len(rows[0]) if ncols is None else ncols
    if any(len(r) != width for r in rows):
        raise ValueError("ragged rows")
    out = np.empty((len(rows), width), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = field(v).value
    return out


def _rref_inplace(a: np.ndarray, field: Field) -> tuple[int, list[int]]:
    nrows, ncols = a.shape
    r = 0
    pivots = []
    prime = field.m == 1
    p = field.p
    for c in range(ncols):
        if r == nrows:
            break
        nz = a[r:, c].nonzero()[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        lead = a[r, c]
        if lead != 1:
            a[r] = field.mul(a[r], field.inv(lead))
        col = a[:, c].copy()
        col[r] = 0
        hit = col.nonzero()[0]
        if hit.size:
            if prime:
                a[hit] = (a[hit] - col[hit, None] * a[r][None, :]) % p
            else:
                a[hit] = field.sub(a[hit], field.mul(col[hit, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return r, pivots


def rref(m, field: Field) -> tuple[np.ndarray, int]:
    """Reduced row echelon form of ``m`` and its rank.

    The result keeps the input shape (zero rows at the bottom); ``m`` is not
    modified.
    """
    a = np.array(m, dtype=np.int64, copy=True)
    if a.ndim != 2:
        a = a.reshape(len(a), -1)
    rank, _ = _rref_inplace(a, field)
    return a, rank


def _int_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 BLAS is exact while every partial sum stays below 2^53
    if (p - 1) ** 2 * max(a.shape[1], 1) < 2**52:
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return a @ b


def matmul(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    p, m = field.p, field.m
    if m == 1:
        return _int_matmul(a, b, p) % p
    if field._tables is not None:
        add_t, mul_t, _ = field._tables
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for j in range(a.shape[1]):
            out = add_t[out, mul_t[a[:, j, None], b[None, j, :]]]
        return out
    # multiply digit planes as integer matrices, then reduce the product
    # polynomial modulo the defining irreducible
    pw = [p**i for i in range(m)]
    ad = [(a // w) % p for w in pw]
    bd = [(b // w) % p for w in pw]
    prod = [np.zeros((a.shape[0], b.shape[1]), dtype=np.int64) for _ in range(2 * m - 1)]
    for i in range(m):
        for j in range(m):
            prod[i + j] += _int_matmul(ad[i], bd[j], p)
    prod = [c % p for c in prod]
    irr = field.irreducible
    for t in range(2 * m - 2, m - 1, -1):
        top = prod[t]
        for s_ in range(m):
            if irr[s_]:
                prod[t - m + s_] = (prod[t - m + s_] - top * irr[s_]) % p
    out = np.zeros_like(prod[0])
    for i in range(m):
        out += prod[i] * pw[i]
    return out


class Subspace:
    """A linear subspace of GF(q)^N with a canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "_pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: np.ndarray, _checked: bool = False):
        basis = np.asarray(basis, dtype=np.int64).reshape(-1, ambient_dim)
        if not _checked:
            basis, rank = rref(basis, field)
            basis = basis[:rank]
        basis = basis.copy()
        basis.setflags(write=False)
        self.field = field
        self.ambient_dim = int(ambient_dim)
        self.basis = basis
        self._pivots = tuple(int(c) for c in (basis != 0).argmax(axis=1))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.basis)

    def _compatible(self, other: Subspace):
        if self.field != other.field:
            raise FieldError(f"subspaces over different fields: {self.field!r}, {other.field!r}")
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis.shape, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, N={self.ambient_dim}, {self.field!r})"

    def contains(self, vectors) -> np.ndarray:
        """Boolean mask: which rows of ``vectors`` lie in this subspace."""
        v = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        if self.dim == 0:
            return ~v.any(axis=1)
        coef = v[:, list(self._pivots)]
        residual = self.field.sub(v, matmul(coef, self.basis, self.field))
        return ~np.asarray(residual).any(axis=1)

    def __le__(self, other: Subspace) -> bool:
        self._compatible(other)
        return bool(other.contains(self.basis).all()) if self.dim else True


def zero_subspace(field: Field, n: int) -> Subspace:
    return Subspace(field, n, np.zeros((0, n), dtype=np.int64), _checked=True)


def whole_space(field: Field, n: int) -> Subspace:
    return Subspace(field, n, np.eye(n, dtype=np.int64), _checked=True)


def span(vectors, field: Field, n: int) -> Subspace:
    """Canonical subspace spanned by ``vectors`` (each of length ``n``)."""
    if isinstance(vectors, np.ndarray):
        if vectors.size == 0:
            return zero_subspace(field, n)
        if vectors.ndim != 2 or vectors.shape[1] != n:
            raise ValueError(f"expected vectors of length {n}, got shape {vectors.shape}")
        return Subspace(field, n, vectors)
    vectors = list(vectors)
    if any(len(v) != n for v in vectors):
        raise ValueError(f"ragged input: every vector must have length {n}")
    if not vectors:
        return zero_subspace(field, n)
    return Subspace(field, n, as_matrix(vectors, field, n))


def zassenhaus(v1: Subspace, v2: Subspace) -> tuple[Subspace, Subspace]:
    """Sum and intersection from one reduction of ``[[B1, B1], [B2, 0]]``."""
    v1._compatible(v2)
    n = v1.ambient_dim
    top = np.hstack([v1.basis, v1.basis])
    bottom = np.hstack([v2.basis, np.zeros_like(v2.basis)])
    block = np.vstack([top, bottom])
    if block.shape[0] == 0:
        return zero_subspace(v1.field, n), zero_subspace(v1.field, n)
    rank, pivots = _rref_inplace(block, v1.field)
    n_sum = sum(1 for c in pivots if c < n)
    # rows with a pivot on the left are an RREF of the sum; the rest, restricted
    # to the right block, are an RREF of the intersection
    sum_basis = block[:n_sum, :n]
    int_basis = block[n_sum:rank, n:]
    return (
        Subspace(v1.field, n, sum_basis, _checked=True),
        Subspace(v1.field, n, int_basis, _checked=True),
    )


def subspace_sum(v1: Subspace, v2: Subspace) -> Subspace:
    v1._compatible(v2)
    return Subspace(v1.field, v1.ambient_dim, np.vstack([v1.basis, v2.basis]))


def intersect(v1: Subspace, v2: Subspace) -> Subspace:
    return zassenhaus(v1, v2)[1]


def subspace_distance(v1: Subspace, v2: Subspace) -> int:
    """dim(V1 + V2) - dim(V1 ∩ V2), computed as 2 dim(V1 + V2) - dim V1 - dim V2."""
    v1._compatible(v2)
    stacked = np.vstack([v1.basis, v2.basis])
    rank, _ = _rref_inplace(stacked, v1.field) if stacked.shape[0] else (0, [])
    return 2 * rank - v1.dim - v2.dim


@lru_cache(maxsize=64)
def _coefficient_grid(q: int, k: int) -> np.ndarray:
    if k == 0:
        grid = np.zeros((1, 0), dtype=np.int64)
    else:
        grid = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64)
    grid.setflags(write=False)
    return grid


def enumerate_vectors(v: Subspace, cap: int = ENUM_CAP) -> np.ndarray:
    """All ``q**dim`` vectors of ``v`` as rows, each exactly once."""
    q = v.field.q
    if q**v.dim > cap:
        raise ValueError(f"{q}^{v.dim} vectors exceeds enumeration cap {cap}")
    coef = _coefficient_grid(q, v.dim)
    if v.dim == 0:
        return np.zeros((1, v.ambient_dim), dtype=np.int64)
    return matmul(coef, v.basis, v.field)


def intersect_oracle(v1: Subspace, v2: Subspace, cap: int = ENUM_CAP) -> int:
    """Dimension of V1 ∩ V2 by counting members of V1 that lie in V2."""
    v1._compatible(v2)
    count = int(v2.contains(enumerate_vectors(v1, cap)).sum())
    q = v1.field.q
    dim = round(math.log(count, q))
    if q**dim != count:
        raise AssertionError(f"member count {count} is not a power of {q}")
    return dim


def enumerate_rref(k: int, n: int, q: int):
    """Yield every k x n RREF matrix of rank k over a field of order q (as codes)."""
    for pivots in itertools.combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n) if j not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            m = np.zeros((k, n), dtype=np.int64)
            for i, c in enumerate(pivots):
                m[i, c] = 1
            for (i, j), val in zip(free, vals):
                m[i, j] = val
            yield m


def enumerate_subspaces(v: Subspace, k: int):
    """Yield every k-dimensional subspace of ``v``."""
    if not 0 <= k <= v.dim:
        raise ValueError(f"no {k}-dimensional subspaces in a {v.dim}-dimensional space")
    for coef in enumerate_rref(k, v.dim, v.field.q):
        yield Subspace(v.field, v.ambient_dim, matmul(coef, v.basis, v.field))


# text format: "N q dim" then one line of N element tokens per basis row

def format_subspace(v: Subspace) -> str:
    f = v.field
    lines = [f"{v.ambient_dim} {f.q} {v.dim}"]
    for row in v.basis:
        lines.append(" ".join(f.to_text(c) for c in row))
    return "\n".join(lines) + "\n"


def parse_subspace(text: str, field: Field | None = None) -> Subspace:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty subspace text")
    try:
        n, q, dim = (int(t) for t in lines[0].split())
    except ValueError:
        raise ValueError(f"bad header line {lines[0]!r}; expected 'N q dim'") from None
    if field is None:
        field = Field.of_order(q)
    elif field.q != q:
        raise FieldError(f"file declares q={q} but field has q={field.q}")
    if len(lines) - 1 != dim:
        raise ValueError(f"header says dim={dim} but {len(lines) - 1} rows follow")
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != n:
            raise ValueError(f"row has {len(toks)} entries, expected {n}")
        rows.append([field.from_text(t) for t in toks])
    basis = np.array(rows, dtype=np.int64).reshape(dim, n)
    v = Subspace(field, n, basis)
    if v.dim != dim:
        raise ValueError(f"rows span dimension {v.dim}, header says {dim}")
    return v
