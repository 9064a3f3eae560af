"""The k-osculating network code of the Veronese variety and its parameters."""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from math import comb

from .gf import Field
from .linalg import ENUM_CAP, Subspace, intersect_oracle, zassenhaus
from .veronese import (
    LinearForm,
    multiple_space,
    osculating_cone,
    poly_mul,
    poly_power,
)

MAX_POINTS = 2**20
MAX_AMBIENT = 2000
ORACLE_CAP = 2**12


def projective_point_count(n: int, q: int) -> int:
    return sum(q**i for i in range(n + 1))


def enum_projective_points(n: int, field: Field) -> list[LinearForm]:
    """Normalized representatives of P^n(F_q).

    Ordered by the position of the leading 1, earliest first, then by the
    remaining coordinates in element order (first coordinate most significant).
    """
    q = field.q
    if projective_point_count(n, q) > MAX_POINTS:
        raise ValueError(f"P^{n}(F_{q}) has more than {MAX_POINTS} points")
    points = []
    for lead in range(n + 1):
        for tail in itertools.product(range(q), repeat=n - lead):
            points.append(LinearForm(field, [0] * lead + [1] + list(tail), normalize=False))
    return points


@dataclass(frozen=True)
class CodeParams:
    N: int
    dim: int
    size: int
    log_q_size: float
    D: int
    weight: Fraction  # dim / N
    rate: float
    delta: Fraction  # D / (2 dim)

    @classmethod
    def from_counts(cls, N: int, dim: int, size: int, D: int, q: int) -> CodeParams:
        log_size = math.log(size, q)
        return cls(
            N=N,
            dim=dim,
            size=size,
            log_q_size=log_size,
            D=D,
            weight=Fraction(dim, N),
            rate=log_size / (N * dim),
            delta=Fraction(D, 2 * dim),
        )

    @property
    def type(self) -> tuple:
        return (self.N, self.dim, self.log_q_size, self.D)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = float(d.pop("weight"))
        d["delta"] = float(self.delta)
        return d


@dataclass
class Code:
    n: int
    d: int
    k: int
    field: Field
    codewords: list[tuple[LinearForm, Subspace]]
    params: CodeParams | None = None

    @property
    def N(self) -> int:
        return comb(self.n + self.d, self.n)

    @property
    def subspaces(self) -> list[Subspace]:
        return [v for _, v in self.codewords]

    @property
    def labels(self) -> list[LinearForm]:
        return [lab for lab, _ in self.codewords]

    def __len__(self):
        return len(self.codewords)


def _check_nkd(n: int, d: int, k: int):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2 so that some 1 <= k < d exists, got {d}")
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={d}")


def build_code(n: int, d: int, k: int, field: Field, with_params: bool = True) -> Code:
    _check_nkd(n, d, k)
    if comb(n + d, n) > MAX_AMBIENT:
        raise ValueError(f"packet length C({n + d},{n}) exceeds cap {MAX_AMBIENT}")
    words = [(pt, osculating_cone(pt, n, d, k, field)) for pt in enum_projective_points(n, field)]
    code = Code(n, d, k, field, words)
    if with_params:
        code.params = code_params(code)
    return code


def pairwise_distances(code: Code) -> dict[tuple[int, int], int]:
    subs = code.subspaces
    out = {}
    for i, j in itertools.combinations(range(len(subs)), 2):
        s, t = zassenhaus(subs[i], subs[j])
        out[i, j] = s.dim - t.dim
    return out


def code_params(code: Code) -> CodeParams:
    if len(code) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    dims = {v.dim for v in code.subspaces}
    if len(dims) != 1:
        raise ValueError(f"codewords are not equidimensional: {sorted(dims)}")
    D = min(pairwise_distances(code).values())
    return CodeParams.from_counts(code.N, dims.pop(), len(code), D, code.field.q)


def predicted_intersection_dim(n: int, d: int, k: int) -> int:
    # 2k = d falls in the first case: the common part is spanned by L1^k L2^k
    if 2 * k >= d:
        return comb(2 * k - d + n, n)
    return 0


def predicted_params(n: int, d: int, k: int, q: int) -> CodeParams:
    _check_nkd(n, d, k)
    dim = comb(k + n, n)
    if 2 * k >= d:
        D = 2 * (dim - comb(2 * k - d + n, n))
    else:
        D = 2 * dim
    return CodeParams.from_counts(comb(d + n, n), dim, projective_point_count(n, q), D, q)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    counterexample: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class VerificationReport:
    q: int
    n: int
    d: int
    k: int
    checks: list[CheckResult] = dc_field(default_factory=list)
    observed: CodeParams | None = None
    predicted: CodeParams | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "observed": self.observed.to_dict() if self.observed else None,
            "predicted": self.predicted.to_dict() if self.predicted else None,
        }


def verify_theorem(n: int, d: int, k: int, field: Field, code: Code | None = None,
                   oracle_cap: int = ORACLE_CAP) -> VerificationReport:
    """Check the constructed code against the closed-form parameters, pair by pair.

    Failures are recorded in the report (with the first offending pair)
    rather than raised.
    """
    q = field.q
    if code is None:
        code = build_code(n, d, k, field, with_params=False)
    pred = predicted_params(n, d, k, q)
    report = VerificationReport(q, n, d, k, predicted=pred)
    subs = code.subspaces
    labels = code.labels
    add = report.checks.append

    bad = next((i for i, v in enumerate(subs) if v.dim != pred.dim), None)
    add(CheckResult("dimension", bad is None,
                    f"every codeword has dim {pred.dim}" if bad is None
                    else f"codeword {bad} has dim {subs[bad].dim}, expected {pred.dim}",
                    None if bad is None else (bad, bad)))

    add(CheckResult("size", len(subs) == pred.size, f"|C| = {len(subs)}, expected {pred.size}"))

    distinct = len(set(subs)) == len(subs) and len(set(labels)) == len(labels)
    add(CheckResult("distinct", distinct, "labels and subspaces pairwise distinct"))

    want_int = predicted_intersection_dim(n, d, k)
    use_identity = 2 * k >= d
    oracle_ok = q**pred.dim <= oracle_cap
    powers = [poly_power(lab.as_poly(), d - k) for lab in labels] if use_identity else []

    int_fail = ident_fail = oracle_fail = None
    distances = set()
    dist_fail = None
    n_pairs = n_oracle = 0
    for i, j in itertools.combinations(range(len(subs)), 2):
        n_pairs += 1
        s, inter = zassenhaus(subs[i], subs[j])
        dist = s.dim - inter.dim
        distances.add(dist)
        if dist_fail is None and len(distances) > 1:
            dist_fail = (i, j)
        if int_fail is None and inter.dim != want_int:
            int_fail = (i, j)
        if use_identity and ident_fail is None:
            expected = multiple_space(poly_mul(powers[i], powers[j]), 2 * k - d)
            if expected != inter:
                ident_fail = (i, j)
        if oracle_ok:
            n_oracle += 1
            if oracle_fail is None and intersect_oracle(subs[i], subs[j], ENUM_CAP) != inter.dim:
                oracle_fail = (i, j)

    add(CheckResult("intersection_dim", int_fail is None,
                    f"all {n_pairs} pairs meet in dim {want_int}", int_fail))
    if use_identity:
        add(CheckResult("intersection_identity", ident_fail is None,
                        f"intersection = L1^{d - k} L2^{d - k} R_{2 * k - d} on all {n_pairs} pairs", ident_fail))
    add(CheckResult("equidistance", dist_fail is None,
                    f"distinct distances: {sorted(distances)}", dist_fail))

    observed_D = min(distances) if distances else None
    add(CheckResult("min_distance", observed_D == pred.D, f"D = {observed_D}, expected {pred.D}"))
    add(CheckResult("oracle", oracle_fail is None,
                    f"brute-force intersection agreed on {n_oracle} pairs"
                    + ("" if oracle_ok else f" (skipped: q^dim = {q}^{pred.dim} > {oracle_cap})"),
                    oracle_fail))

    if observed_D is not None and report.check("dimension").passed:
        report.observed = CodeParams.from_counts(code.N, pred.dim, len(subs), observed_D, q)
    return report
