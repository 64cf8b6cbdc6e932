"""Discrete logarithm solvers: full lookup table, baby-step giant-step, Pollard rho."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import RetryExhausted, TableTooLarge, ZeroResidue
from .numtheory import FieldCtx

TABLE_MAX_P = 10**8

# Pollard rho gives up on a collision whose candidate set exceeds this.
_MAX_CANDIDATES = 1 << 16
_MAX_RESTARTS = 64


def power_sequence(g: int, p: int) -> np.ndarray:
    """Return ``[g^0, g^1, ..., g^(p-2)] mod p`` as int64.

    Built by block doubling so the work is vectorised; every product is
    below p^2 < 2^63 while p <= TABLE_MAX_P.
    """
    n = p - 1
    out = np.empty(n, dtype=np.int64)
    out[0] = 1
    filled = 1
    step = g % p  # g^filled
    while filled < n:
        take = min(filled, n - filled)
        out[filled : filled + take] = out[:take] * step % p
        filled += take
        step = step * step % p
    return out


@dataclass(frozen=True)
class DlogTable:
    """Materialised discrete logs: ``logs[x] = log_g x`` for x in [1, p-1].

    ``logs[0]`` holds -1 as a sentinel. ``powers[j] = g^j mod p``.
    """

    ctx: FieldCtx
    logs: np.ndarray = field(repr=False)
    powers: np.ndarray = field(repr=False)

    def __getitem__(self, x: int) -> int:
        x %= self.ctx.p
        if x == 0:
            raise ZeroResidue("0 has no discrete logarithm")
        return int(self.logs[x])

    def lookup(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64) % self.ctx.p
        if np.any(xs == 0):
            raise ZeroResidue("0 has no discrete logarithm")
        return self.logs[xs]


def build_table(ctx: FieldCtx) -> DlogTable:
    p = ctx.p
    if p > TABLE_MAX_P:
        raise TableTooLarge(f"p={p} exceeds the table cap {TABLE_MAX_P}")
    powers = power_sequence(ctx.g, p)
    logs = np.full(p, -1, dtype=np.int64)
    logs[powers] = np.arange(p - 1, dtype=np.int64)
    powers.setflags(write=False)
    logs.setflags(write=False)
    return DlogTable(ctx=ctx, logs=logs, powers=powers)


def _reduce(ctx: FieldCtx, x: int) -> int:
    x %= ctx.p
    if x == 0:
        raise ZeroResidue(f"{x} is divisible by p={ctx.p}")
    return x


def dlog_bsgs(ctx: FieldCtx, x: int) -> int:
    p, g = ctx.p, ctx.g
    x = _reduce(ctx, x)
    n = p - 1
    m = math.isqrt(n - 1) + 1  # ceil(sqrt(n))
    baby: dict[int, int] = {}
    e = 1
    for j in range(m):
        baby.setdefault(e, j)
        e = e * g % p
    giant = pow(g, -m, p)
    y = x
    for i in range(m + 1):
        j = baby.get(y)
        if j is not None:
            return (i * m + j) % n
        y = y * giant % p
    raise AssertionError(f"BSGS found no logarithm of {x}; is g={g} a generator?")


def _rho_step(x: int, a: int, b: int, g: int, h: int, p: int, n: int):
    s = x % 3
    if s == 0:
        return x * x % p, 2 * a % n, 2 * b % n
    if s == 1:
        return x * g % p, (a + 1) % n, b
    return x * h % p, a, (b + 1) % n


def _solve_collision(a1, b1, a2, b2, g, h, p, n) -> int | None:
    # g^a1 h^b1 = g^a2 h^b2  =>  (b1 - b2) L = a2 - a1  (mod n)
    db = (b1 - b2) % n
    da = (a2 - a1) % n
    d = math.gcd(db, n)
    if da % d or d > _MAX_CANDIDATES:
        return None
    nd = n // d
    base = (da // d) * pow(db // d, -1, nd) % nd if nd > 1 else 0
    for i in range(d):
        cand = base + i * nd
        if pow(g, cand, p) == h:
            return cand
    return None


def dlog_pollard_rho(ctx: FieldCtx, x: int, seed: int = 0) -> int:
    """Pollard rho with the 3-way partition walk and Floyd cycle detection.

    The starting exponents are drawn from ``random.Random(seed)`` so the
    result path is reproducible; the returned value is unique regardless.
    """
    p, g = ctx.p, ctx.g
    h = _reduce(ctx, x)
    n = p - 1
    if h == 1:
        return 0
    if p < 16:
        return dlog_bsgs(ctx, h)
    rng = random.Random(seed)
    for _ in range(_MAX_RESTARTS):
        a0, b0 = rng.randrange(n), rng.randrange(1, n)
        x0 = pow(g, a0, p) * pow(h, b0, p) % p
        tort = (x0, a0, b0)
        hare = tort
        for _ in range(4 * n + 16):
            tort = _rho_step(*tort, g, h, p, n)
            hare = _rho_step(*_rho_step(*hare, g, h, p, n), g, h, p, n)
            if tort[0] == hare[0]:
                break
        else:
            continue
        found = _solve_collision(tort[1], tort[2], hare[1], hare[2], g, h, p, n)
        if found is not None:
            return found
    raise RetryExhausted(f"Pollard rho gave up on x={x} mod {p} after {_MAX_RESTARTS} restarts")
