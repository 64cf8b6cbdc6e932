"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (printed and repeated in the terminal
summary) before asserting, so a failing run still reports every measurement.
"""

import io
import json
import math
import random
import time
from fractions import Fraction

import numpy as np

from dlogdist import (
    Interval,
    Progression,
    TorusPoints,
    brute_force_extreme_discrepancy,
    dlog_bsgs,
    dlog_pollard_rho,
    extreme_discrepancy,
    interval_discrepancy,
    log_image,
)
from dlogdist.bounds import capacity_holds, corollary1_count, erdos_turan_rhs, exp_sum_moduli, extreme_bound_check
from dlogdist.cli import run
from dlogdist.experiments import (
    IntPolynomial,
    ordering_frequencies,
    poly_twist_sum,
    union_discrepancy_check,
)
from dlogdist.expsum import (
    log_character_sum,
    progression_phase_sum,
    pv_bound_check,
    resolvent,
    resolvents_over_u,
    verify_decomposition,
    verify_inversion,
)
from helpers import field, record_criterion

SESSION_START = time.perf_counter()
PRIMES = [7, 11, 101, 1009, 10007]


def random_progression(rng, p, max_n=None):
    a = rng.randrange(0, p - 2)
    r = rng.randrange(1, max(2, (p - 1 - a) // 2))
    n_max = (p - 1 - a) // r
    if max_n:
        n_max = min(n_max, max_n)
    return Progression(a, r, rng.randrange(1, n_max + 1))


def test_criterion_01_gauss_modulus():
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for p in [7, 11, 101]:
        ctx, table = field(p)
        for k in range(1, p - 1):
            for u in range(1, p):
                res = abs(abs(resolvent(ctx, table, k, u).value) ** 2 - p)
                worst = max(worst, res / p)
                ok &= res <= 1e-6 * p
    ctx, table = field(1009)
    for k in range(1, 1008):
        row = resolvents_over_u(table, k)[1:]
        res = float(np.max(np.abs(np.abs(row) ** 2 - 1009)))
        worst = max(worst, res / 1009)
        ok &= res <= 1e-6 * 1009
    ctx, table = field(10007)
    rng = random.Random(1)
    for _ in range(200):
        k, u = rng.randrange(1, 10006), rng.randrange(1, 10007)
        res = abs(abs(resolvent(ctx, table, k, u).value) ** 2 - 10007)
        worst = max(worst, res / 10007)
        ok &= res <= 1e-6 * 10007
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 30
    record_criterion(1, "Gauss-sum modulus", ok, f"max residual/p {worst:.2e}, {elapsed:.1f}s")
    assert ok


def test_criterion_02_edge_resolvents():
    worst = 0.0
    ok = True
    for p in PRIMES:
        ctx, table = field(p)
        ok &= resolvent(ctx, table, 0, 0).value == p - 1
        ks = range(1, p - 1) if p < 2000 else random.Random(2).sample(range(1, p - 1), 200)
        us = range(1, p) if p < 2000 else random.Random(3).sample(range(1, p), 200)
        for k in ks:
            worst = max(worst, abs(resolvent(ctx, table, k, 0).value))
        for u in us:
            worst = max(worst, abs(resolvent(ctx, table, 0, u).value + 1))
    ok &= worst <= 1e-8
    record_criterion(2, "edge resolvents", ok, f"max residual {worst:.2e}")
    assert ok


def test_criterion_03_inversion():
    worst = 0.0
    for p in (101, 1009):
        ctx, table = field(p)
        rng = random.Random(p)
        for _ in range(50):
            k, z = rng.randrange(0, p - 1), rng.randrange(1, p)
            worst = max(worst, verify_inversion(ctx, table, k, z))
    ok = worst <= 1e-7
    record_criterion(3, "inversion identity", ok, f"max residual {worst:.2e}")
    assert ok


def test_criterion_04_decomposition():
    worst = 0.0
    for p in (101, 1009):
        ctx, table = field(p)
        rng = random.Random(p + 4)
        for _ in range(20):
            J = random_progression(rng, p)
            k = rng.randrange(0, p - 1)
            worst = max(worst, verify_decomposition(ctx, table, J, k))
    ok = worst <= 1e-7
    record_criterion(4, "decomposition identity", ok, f"max residual {worst:.2e}")
    assert ok


def test_criterion_05_phase_sum_bound():
    ok = True
    tightest = 0.0
    for p in (7, 101, 1009):
        rng = random.Random(p + 5)
        for _ in range(10):
            J = random_progression(rng, p)
            for u in range(p):
                ps = progression_phase_sum(p, J, u)
                m, den = ps.dist
                exact = Fraction(J.N) if m == 0 else min(Fraction(J.N), Fraction(den, 2 * m))
                ok &= ps.bound == float(exact) and ps.modulus <= exact
                tightest = max(tightest, ps.modulus / float(exact))
    record_criterion(5, "phase-sum bound", ok, f"max |sum|/bound {tightest:.6f}")
    assert ok


def test_criterion_06_pv_bound():
    worst = 0.0
    for p in (7, 101, 1009, 10007):
        ctx, table = field(p)
        rng = random.Random(p + 6)
        progs = [Progression.full(p), Progression.longest(p, 0, 2)] + [random_progression(rng, p) for _ in range(8)]
        for J in progs:
            worst = max(worst, pv_bound_check(ctx, table, J).max_ratio)
    ok = worst <= 1.0
    record_criterion(6, "log-twisted character sum bound", ok, f"max ratio {worst:.4f}")
    assert ok


def test_criterion_07_erdos_turan():
    ok = True
    worst = 0.0
    for p in (101, 1009, 10007):
        ctx, table = field(p)
        rng = random.Random(p + 7)
        M = log_image(ctx, Progression(0, 1, (p - 1) // 2), table)
        for K in (10, 100, p - 1):
            moduli = exp_sum_moduli(M, K)
            for _ in range(50):
                a, b = sorted(Fraction(rng.randrange(0, 10**6), 10**6) for _ in range(2))
                iv = Interval(a, b)
                lhs = abs(float(interval_discrepancy(M, iv)))
                rhs = erdos_turan_rhs(M, K, iv, moduli)
                ok &= lhs <= rhs * (1 + 1e-6)
                worst = max(worst, lhs / rhs)
    record_criterion(7, "Erdős–Turán chain", ok, f"max lhs/rhs {worst:.3f}")
    assert ok


def test_criterion_08_extreme_discrepancy():
    rng = random.Random(8)
    mismatches = 0
    for _ in range(100):
        q = rng.randrange(1, 400)
        n = rng.randrange(1, 201)
        M = TorusPoints(q, [rng.randrange(0, q) for _ in range(n)])
        mismatches += extreme_discrepancy(M).raw != brute_force_extreme_discrepancy(M).raw
    instances = 0
    for p in (101, 1009):
        ctx, table = field(p)
        for J in [Progression.full(p), Progression.longest(p, 0, 3)] + [random_progression(rng, p) for _ in range(5)]:
            M = log_image(ctx, J, table)
            mismatches += extreme_discrepancy(M).raw != brute_force_extreme_discrepancy(M).raw
            instances += 1
    grid_ok = all(
        extreme_discrepancy(TorusPoints(2 * n, [2 * i + 1 for i in range(n)])).normalized == Fraction(1, n)
        for n in (1, 2, 4, 8, 16)
    )
    ok = mismatches == 0 and grid_ok
    record_criterion(8, "extreme discrepancy vs oracle", ok, f"{mismatches} mismatches over {100 + instances} sets")
    assert ok


def test_criterion_09_capacity():
    p = 10007
    ctx, table = field(p)
    ok = True
    smallest = None
    for J in (Progression.full(p), Progression(0, 1, (p - 1) // 2)):
        M = log_image(ctx, J, table)
        gaps = np.diff(M.numerators)
        # a closed interval of length <= 1/(pi p) holds two points iff some gap is that small
        ok &= all(Fraction(int(d), M.denominator) * p * math.pi > 1 for d in np.unique(gaps))
        ok &= capacity_holds(M, p)
        smallest = int(gaps.min())
    record_criterion(9, "small-interval capacity", ok, f"min gap {smallest}/{p - 1}")
    assert ok


def test_criterion_10_dlog_agreement():
    ok = True
    for p in (10007, 1000003):
        ctx, table = field(p)
        rng = random.Random(p + 10)
        xs = [rng.randrange(1, p) for _ in range(1000)]
        for i, x in enumerate(xs):
            lt = table[x]
            ok &= lt == dlog_bsgs(ctx, x) == dlog_pollard_rho(ctx, x, seed=i)
        ok &= bool(np.all(table.powers[table.logs[1:]] == np.arange(1, p)))
        q = p - 1
        for _ in range(1000):
            x, y = rng.randrange(1, p), rng.randrange(1, p)
            ok &= table[x * y % p] == (table[x] + table[y]) % q
    record_criterion(10, "dlog solver agreement", ok, "table, BSGS, rho at 10007 and 1000003")
    assert ok


def test_criterion_11_extreme_envelope():
    ctx, table = field(10007)
    rep = extreme_bound_check(ctx, table, Progression(0, 1, 5003))
    ok = rep.normalized <= Fraction(5, 100)
    record_criterion(
        11, "extreme discrepancy envelope", ok, f"normalized {float(rep.normalized):.5f}, c2 estimate {rep.ratio:.5f}"
    )
    assert ok


def test_criterion_12_corollary():
    p = 10007
    ctx, table = field(p)
    J = Progression(0, 1, 5003)
    worst = Fraction(0)
    for s in range(0, p - 1 - 5000 + 1, 500):
        rep = corollary1_count(ctx, table, J, s, s + 5000, delta=0.1)
        worst = max(worst, abs(rep.deviation_p))
    full = corollary1_count(ctx, table, Progression.full(p), 0, p - 1, delta=0.1)
    ok = worst <= Fraction(1, 10) and full.deviation == 0
    record_criterion(12, "corollary count", ok, f"max |deviation| {float(worst):.4f}, full-range {full.deviation}")
    assert ok


def test_criterion_13_experiments():
    rng = random.Random(13)
    ctx, table = field(1009)
    M = log_image(ctx, Progression.full(1009), table)
    union_ok = True
    for _ in range(50):
        mask = np.array([rng.random() < 0.5 for _ in range(M.card)])
        M1 = TorusPoints(M.denominator, M.numerators[mask])
        M2 = TorusPoints(M.denominator, M.numerators[~mask])
        a, b = sorted(Fraction(rng.randrange(0, 1000), 1000) for _ in range(2))
        union_ok &= union_discrepancy_check(M1, M2, Interval(a, b)) == 0
    poly_err = 0.0
    for _ in range(20):
        J = random_progression(rng, 1009)
        k = rng.randrange(1, 1008)
        diff = poly_twist_sum(ctx, table, J, IntPolynomial((0, k), 1008)) - log_character_sum(ctx, table, J, k)
        poly_err = max(poly_err, abs(diff))
    ctx, table = field(10007)
    J = Progression.full(10007)
    adj = ordering_frequencies(ctx, table, J, 2, mode="exhaustive-adjacent").frequency((1, 2))
    tri = ordering_frequencies(ctx, table, J, 3, mode="sampled", sample_count=100_000, seed=0)
    tri_dev = max(abs(f - 1 / 6) for f in tri.frequencies().values())
    ok = union_ok and poly_err <= 1e-12 and 0.48 <= adj <= 0.52 and tri_dev <= 0.02
    record_criterion(
        13,
        "experiments",
        ok,
        f"union {'exact' if union_ok else 'off'}, poly err {poly_err:.1e}, r=2 {adj:.4f}, r=3 max dev {tri_dev:.4f}",
    )
    assert ok


def _payload(argv):
    out = io.StringIO()
    code = run(argv, stdout=out)
    rec = json.loads(out.getvalue())
    rec.pop("timing")
    return code, json.dumps(rec, sort_keys=True).encode()


def test_criterion_14_determinism():
    cases = [
        ["perm", "--p", "1009", "--r-tuple", "3", "--samples", "5000", "--seed", "7", "--tol", "0.1"],
        ["verify-eq4", "--p", "101", "--samples", "10", "--seed", "3"],
        ["theorem1", "--p", "1009", "--samples", "5", "--seed", "2"],
        ["dlog", "--p", "1000003", "--x", "424242", "--method", "rho", "--seed", "5"],
        ["sweep", "--primes", "101,1009", "--samples", "5", "--seed", "1"],
    ]
    same = all(_payload(argv) == _payload(argv) for argv in cases)
    elapsed = time.perf_counter() - SESSION_START
    ok = same and elapsed < 300
    record_criterion(14, "determinism", ok, f"{len(cases)} commands repeated, acceptance module ran {elapsed:.0f}s")
    assert ok
