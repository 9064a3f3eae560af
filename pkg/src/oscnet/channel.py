"""Operator-channel simulation and minimum subspace-distance decoding.

A transmitted space ``V`` loses ``erasures`` dimensions and gains an
``errors``-dimensional space meeting ``V`` trivially, so the received space
sits at distance exactly ``erasures + errors`` from ``V``.

Randomness comes from numpy's PCG64 generator; trial ``i`` of a run seeded
with ``s`` draws from ``SeedSequence([s, i])``, so trials are independent and
can be replayed in any order.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass

import numpy as np

from .code import Code
from .linalg import (
    Subspace,
    enumerate_subspaces,
    matmul,
    span,
    subspace_distance,
    whole_space,
    zassenhaus,
)

MAX_REJECTIONS = 10_000


class ChannelError(ValueError):
    pass


@dataclass(frozen=True)
class ChannelConfig:
    erasures: int = 0
    errors: int = 0
    seed: int = 0

    def check(self, dim: int, ambient: int):
        if self.erasures < 0 or self.errors < 0:
            raise ChannelError("erasures and errors must be nonnegative")
        if self.erasures > dim:
            raise ChannelError(f"cannot erase {self.erasures} dimensions from a {dim}-dimensional space")
        if self.errors > ambient - dim:
            raise ChannelError(
                f"no room for a {self.errors}-dimensional error space: "
                f"complement of a {dim}-dimensional space in F_q^{ambient} has dimension {ambient - dim}"
            )


@dataclass(frozen=True)
class ChannelOutcome:
    transmitted: Subspace
    received: Subspace
    realized_distance: int


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & (2**64 - 1), trial])))


def _full_rank_matrix(rows: int, cols: int, q: int, field, rng) -> np.ndarray:
    for _ in range(MAX_REJECTIONS):
        m = rng.integers(0, q, size=(rows, cols), dtype=np.int64)
        if span(m, field, cols).dim == rows:
            return m
    raise ChannelError("failed to sample a full-rank matrix")  # pragma: no cover


def transmit(v: Subspace, cfg: ChannelConfig, rng: np.random.Generator | None = None) -> ChannelOutcome:
    field, n = v.field, v.ambient_dim
    cfg.check(v.dim, n)
    if rng is None:
        rng = trial_rng(cfg.seed)
    keep = v.dim - cfg.erasures
    if keep:
        coef = _full_rank_matrix(keep, v.dim, field.q, field, rng)
        kept = matmul(coef, v.basis, field)
    else:
        kept = np.zeros((0, n), dtype=np.int64)
    if cfg.errors:
        for _ in range(MAX_REJECTIONS):
            e = rng.integers(0, field.q, size=(cfg.errors, n), dtype=np.int64)
            if span(np.vstack([v.basis, e]), field, n).dim == v.dim + cfg.errors:
                break
        else:  # pragma: no cover
            raise ChannelError("failed to sample an error space disjoint from the transmitted space")
        kept = np.vstack([kept, e])
    received = span(kept, field, n)
    return ChannelOutcome(v, received, subspace_distance(v, received))


def enumerate_outcomes(v: Subspace, erasures: int, errors: int):
    """Every distinct received space reachable with the given erasures and errors."""
    ChannelConfig(erasures, errors).check(v.dim, v.ambient_dim)
    full = whole_space(v.field, v.ambient_dim)
    if errors:
        error_spaces = [e for e in enumerate_subspaces(full, errors) if zassenhaus(v, e)[1].dim == 0]
    else:
        error_spaces = [span([], v.field, v.ambient_dim)]
    seen = set()
    for h in enumerate_subspaces(v, v.dim - erasures):
        for e in error_spaces:
            u = Subspace(v.field, v.ambient_dim, np.vstack([h.basis, e.basis]))
            if u not in seen:
                seen.add(u)
                yield u


def count_outcomes_bound(v: Subspace, erasures: int, errors: int) -> int:
    """Upper bound on the (H, E) pairs :func:`enumerate_outcomes` walks."""
    q = v.field.q

    def gaussian(n, k):
        num = den = 1
        for i in range(k):
            num *= q ** (n - i) - 1
            den *= q ** (i + 1) - 1
        return num // den

    return gaussian(v.dim, v.dim - erasures) * gaussian(v.ambient_dim, errors)


@dataclass(frozen=True)
class DecodeResult:
    index: int | None
    distance: int
    minimizers: tuple[int, ...]

    @property
    def ambiguous(self) -> bool:
        return len(self.minimizers) > 1


def md_decode(code: Code, u: Subspace) -> DecodeResult:
    """Exhaustive minimum-distance decoding; ties are reported, never broken."""
    dists = [subspace_distance(v, u) for v in code.subspaces]
    best = min(dists)
    mins = tuple(i for i, dd in enumerate(dists) if dd == best)
    return DecodeResult(mins[0] if len(mins) == 1 else None, best, mins)


@dataclass
class SimulationStats:
    config: ChannelConfig
    trials: int
    correct: int = 0
    wrong: int = 0
    ambiguous: int = 0

    @property
    def success_rate(self) -> float:
        return self.correct / self.trials

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "trials": self.trials,
            "correct": self.correct,
            "wrong": self.wrong,
            "ambiguous": self.ambiguous,
            "success_rate": self.success_rate,
        }


def run_trial(code: Code, cfg: ChannelConfig, trial: int) -> str:
    sent = trial % len(code)
    out = transmit(code.subspaces[sent], cfg, trial_rng(cfg.seed, trial))
    res = md_decode(code, out.received)
    if res.ambiguous:
        return "ambiguous"
    return "correct" if res.index == sent else "wrong"


def simulate(code: Code, cfg: ChannelConfig, trials: int) -> SimulationStats:
    """Send codewords round-robin through the channel and decode each."""
    if trials < 1:
        raise ValueError("need at least one trial")
    v0 = code.subspaces[0]
    cfg.check(v0.dim, v0.ambient_dim)
    stats = SimulationStats(cfg, trials)
    for i in range(trials):
        kind = run_trial(code, cfg, i)
        setattr(stats, kind, getattr(stats, kind) + 1)
    return stats


def guaranteed_patterns(min_distance: int, dim: int, ambient: int):
    """All (erasures, errors) with erasures + errors < D/2 that fit the code."""
    for total in itertools.count():
        if 2 * total >= min_distance:
            return
        for rho in range(total + 1):
            t = total - rho
            if rho <= dim and t <= ambient - dim:
                yield rho, t
