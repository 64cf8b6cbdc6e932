"""Slow, obviously-correct reference implementations used only by the tests.

None of these import the package's algorithms; they work from definitions.
"""

import cmath
import math
from fractions import Fraction


def trial_is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def trial_factor(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def order_of(g, p):
    x, k = g % p, 1
    while x != 1:
        x = x * g % p
        k += 1
    return k


def smallest_generator_by_order(p):
    return next(g for g in range(2, p) if order_of(g, p) == p - 1)


def enumerate_logs(g, p):
    """dict x -> log_g x by walking the powers."""
    out, x = {}, 1
    for j in range(p - 1):
        out[x] = j
        x = x * g % p
    return out


def ep(x, q):
    return cmath.exp(2j * math.pi * x / q)


def resolvent_naive(g, p, k, u):
    return sum(ep(k * j, p - 1) * ep(u * pow(g, j, p), p) for j in range(p - 1))


def phase_sum_naive(p, a, r, N, u):
    return sum(ep(-u * (a + j * r), p) for j in range(1, N + 1))


def discrepancy_sup_eps(points):
    """Extreme discrepancy sup over closed intervals, by explicit epsilon shifts.

    ``points`` is a list of Fractions in [0, 1). Every candidate endpoint is
    a point, 0, 1, or a point shifted by +-eps with eps far below the minimal
    gap; the eps-dependence of the length term is removed by taking the
    limit, i.e. the length is measured between unshifted positions.
    """
    pts = sorted(points)
    N = len(pts)
    distinct = sorted(set(pts))
    gaps = [b - a for a, b in zip(distinct, distinct[1:])] + [Fraction(1)]
    eps = min(gaps) / 1000
    cands = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))]
    for v in distinct:
        for s in (-1, 0, 1):
            pos = v + s * eps
            if 0 <= pos <= 1:
                cands.append((pos, v))
    best = Fraction(0)
    for lo, lo_base in cands:
        for hi, hi_base in cands:
            if hi < lo:
                continue
            count = sum(1 for x in pts if lo <= x <= hi)
            d = count - (hi_base - lo_base) * N
            best = max(best, abs(d))
    return best


def et_rhs_naive(points, K, width):
    N = len(points)
    total = Fraction(N, K + 1)
    acc = 0.0
    for k in range(1, K + 1):
        s = sum(cmath.exp(2j * math.pi * k * float(x)) for x in points)
        acc += (1 / (K + 1) + min(width, 1 / (math.pi * k))) * abs(s)
    return float(total) + 2 * acc
