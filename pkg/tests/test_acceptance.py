"""Exit criteria for the package, one test per criterion.

Every comparison here is exact (tolerance 0). Run with ``pytest
tests/test_acceptance.py`` and read the "acceptance criteria" section of the
summary for one PASS/FAIL line per criterion.
"""
import itertools
import time
from math import comb

import numpy as np
import pytest

from oscnet.channel import (
    ChannelConfig,
    count_outcomes_bound,
    enumerate_outcomes,
    enumerate_subspaces,
    md_decode,
    simulate,
)
from oscnet.code import build_code, enum_projective_points, predicted_params, verify_theorem
from oscnet.gf import Field
from oscnet.linalg import intersect, intersect_oracle, span, subspace_distance, zassenhaus
from oscnet.serialize import dumps_code, loads_code
from oscnet.veronese import osculating_cone

GRID_Q = [2, 3, 4, 5, 7, 8, 9]
GRID_N = [1, 2]
GRID_D = [2, 3, 4]
GRID = [(q, n, d, k) for q in GRID_Q for n in GRID_N for d in GRID_D for k in range(1, d)]


@pytest.fixture(scope="session")
def grid_runs():
    start = time.perf_counter()
    runs = {}
    for q, n, d, k in GRID:
        f = Field.of_order(q)
        code = build_code(n, d, k, f, with_params=False)
        runs[q, n, d, k] = (code, verify_theorem(n, d, k, f, code=code))
    return runs, time.perf_counter() - start


def test_criterion_1_theorem_grid(grid_runs, criterion):
    runs, elapsed = grid_runs
    names = ("dimension", "size", "distinct", "intersection_dim", "equidistance", "min_distance")
    failures = []
    for key, (code, rep) in runs.items():
        q, n, d, k = key
        pred = predicted_params(n, d, k, q)
        assert pred.size == sum(q**i for i in range(n + 1))
        assert pred.dim == comb(k + n, n)
        want_d = 2 * (comb(k + n, n) - comb(2 * k - d + n, n)) if 2 * k >= d else 2 * comb(k + n, n)
        assert pred.D == want_d
        bad = [nm for nm in names if not rep.check(nm).passed]
        if bad or rep.observed != pred:
            failures.append((key, bad))
    criterion("1 theorem grid", not failures,
              f"{len(runs)} tuples, {len(failures)} failing, {elapsed:.1f}s")
    assert not failures
    assert len(runs) == len(GRID) == 84


def test_criterion_2_intersection_identity(grid_runs, criterion):
    runs, _ = grid_runs
    checked = mismatched = 0
    for (q, n, d, k), (code, rep) in runs.items():
        if 2 * k < d:
            continue
        size = len(code)
        checked += size * (size - 1) // 2
        if not rep.check("intersection_identity").passed:
            mismatched += 1
    criterion("2 intersection identity", mismatched == 0, f"{checked} pairs, {mismatched} failing tuples")
    assert checked > 0 and mismatched == 0


def _random_subspace(rng, field, n, max_dim):
    k = int(rng.integers(0, max_dim + 1))
    return span(rng.integers(0, field.q, size=(k, n)), field, n)


def test_criterion_3_oracle(grid_runs, criterion):
    runs, _ = grid_runs
    code_pairs = 0
    bad_tuples = []
    for key, (code, rep) in runs.items():
        q, dim = key[0], rep.predicted.dim
        if q**dim <= 2**12:
            code_pairs += len(code) * (len(code) - 1) // 2
            if not rep.check("oracle").passed:
                bad_tuples.append(key)
    rng = np.random.default_rng(20240603)
    random_mismatch = 0
    per_field = 1000
    for q in GRID_Q:
        f = Field.of_order(q)
        max_dim = int(np.log(2**12) / np.log(q))
        for _ in range(per_field):
            n = int(rng.integers(1, 7))
            v1 = _random_subspace(rng, f, n, min(n, max_dim))
            v2 = _random_subspace(rng, f, n, n)
            if intersect_oracle(v1, v2) != intersect(v1, v2).dim:
                random_mismatch += 1
    ok = not bad_tuples and random_mismatch == 0
    criterion("3 oracle cross-check", ok,
              f"{code_pairs} codeword pairs, {per_field * len(GRID_Q)} random pairs, "
              f"{len(bad_tuples) + random_mismatch} mismatches")
    assert ok


def test_criterion_4_metric_axioms(criterion):
    rng = np.random.default_rng(4)
    triples = 10_000
    violations = 0
    equal_pairs = 0
    for f in (Field(2), Field(3), Field(2, 2)):
        for _ in range(triples):
            n = int(rng.integers(1, 6))
            a = _random_subspace(rng, f, n, n)
            b = _random_subspace(rng, f, n, n)
            if rng.random() < 0.1:
                # same space, different generators
                b = span(np.vstack([a.basis, a.basis[::-1]]), f, n) if a.dim else a
            c = _random_subspace(rng, f, n, n)
            dab, dba = subspace_distance(a, b), subspace_distance(b, a)
            dbc, dac = subspace_distance(b, c), subspace_distance(a, c)
            equal_pairs += a == b
            ok = (
                dab == dba
                and subspace_distance(a, a) == 0
                and (dab == 0) == (a == b)
                and dac <= dab + dbc
                and min(dab, dbc, dac) >= 0
            )
            for x, y in ((a, b), (b, c), (a, c)):
                s, i = zassenhaus(x, y)
                ok = ok and x.dim + y.dim == s.dim + i.dim
            violations += not ok
    criterion("4 metric axioms", violations == 0,
              f"{3 * triples} triples over GF(2), GF(3), GF(4); {equal_pairs} equal pairs; {violations} violations")
    assert violations == 0 and equal_pairs > 0


def test_criterion_5_characteristic_p(criterion):
    cases = failures = 0
    divisible = []
    for q in (2, 3):
        f = Field(q)
        for n, d in itertools.product(GRID_N, GRID_D):
            pts = enum_projective_points(n, f)
            for k in range(1, d):
                if (d - k) % q == 0:
                    divisible.append((q, n, d, k))
            for pt in pts:
                cones = {k: osculating_cone(pt, n, d, k, f) for k in range(1, d)}
                for k, c in cones.items():
                    cases += 1
                    failures += c.dim != comb(k + n, n)
                for k in range(1, d - 1):
                    failures += intersect(cones[k], cones[k + 1]) != cones[k]
    assert (2, 1, 3, 1) in divisible
    criterion("5 characteristic-p robustness", failures == 0,
              f"{cases} cones, {len(divisible)} tuples with p | d-k, {failures} failures")
    assert failures == 0


def _exhaustive_decoding(q, n, d, k):
    code = build_code(n, d, k, Field.of_order(q))
    D = code.params.D
    total = cases = failures = 0
    for sent, v in enumerate(code.subspaces):
        for rho, t in _patterns(D, v.dim, code.N):
            assert count_outcomes_bound(v, rho, t) <= 2**14
            for u in enumerate_outcomes(v, rho, t):
                cases += 1
                assert subspace_distance(v, u) == rho + t
                r = md_decode(code, u)
                failures += r.index != sent
            total += 1
    return cases, failures


def _patterns(D, dim, N):
    for rho in range(dim + 1):
        for t in range(N - dim + 1):
            if 2 * (rho + t) < D:
                yield rho, t


# entries with room for at least one erasure/error below D/2; n = 2 restricted
# to q <= 3 to keep the run short
SAMPLED = [
    (q, n, d, k)
    for q, n, d, k in GRID
    if predicted_params(n, d, k, q).D >= 3 and (n == 1 or q <= 3)
]


def test_criterion_6_decoder_guarantee(criterion):
    exhaustive = {}
    for key in [(2, 1, 3, 1), (2, 2, 2, 1)]:
        exhaustive[key] = _exhaustive_decoding(*key)
    ex_cases = sum(c for c, _ in exhaustive.values())
    ex_fail = sum(f for _, f in exhaustive.values())

    sampled_fail = []
    for q, n, d, k in SAMPLED:
        code = build_code(n, d, k, Field.of_order(q))
        budget = (code.params.D - 1) // 2
        rho = budget // 2
        cfg = ChannelConfig(rho, budget - rho, seed=q * 1000 + n * 100 + d * 10 + k)
        stats = simulate(code, cfg, 1000)
        if stats.success_rate != 1.0:
            sampled_fail.append(((q, n, d, k), stats.to_dict()))
    ok = ex_fail == 0 and not sampled_fail
    criterion("6 decoder guarantee", ok,
              f"{ex_cases} exhaustive outcomes, {len(SAMPLED)} codes x 1000 sampled trials, "
              f"{ex_fail + len(sampled_fail)} failures")
    assert ok, sampled_fail


def test_criterion_7_half_distance_is_tight(criterion):
    code = build_code(1, 2, 1, Field(2))
    assert code.params.D == 2
    outcomes = ambiguous = 0
    for v in code.subspaces:
        for u in enumerate_subspaces(v, v.dim - 1):
            outcomes += 1
            ambiguous += md_decode(code, u).ambiguous
    criterion("7 boundary behavior", outcomes == 9 and ambiguous >= 1,
              f"{outcomes} outcomes, {ambiguous} ambiguous")
    assert outcomes == 9 and ambiguous >= 1


def test_criterion_8_serialization(grid_runs, criterion):
    runs, _ = grid_runs
    bad = []
    for key, (code, rep) in runs.items():
        code.params = rep.observed
        text = dumps_code(code)
        back = loads_code(text)
        same = (
            back.field == code.field
            and all(np.array_equal(a.basis, b.basis) for a, b in zip(back.subspaces, code.subspaces))
            and len(back) == len(code)
            and back.labels == code.labels
            and dumps_code(back) == text
        )
        if not same:
            bad.append(key)
    criterion("8 serialization round-trip", not bad, f"{len(runs)} codes, {len(bad)} mismatches")
    assert not bad
