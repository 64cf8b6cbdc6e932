"""Primality, factorization and primitive roots for 64-bit moduli."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NonGenerator, NotPrime

# Largest prime modulus accepted by build_ctx.
P_MAX = 1 << 62

TRIAL_LIMIT = 10**6

# First 12 primes: a complete witness set for n < 3.3e24, so exact on 64 bits.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = np.ones(TRIAL_LIMIT + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return tuple(int(q) for q in np.flatnonzero(sieve))


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Return ``base**exponent % modulus`` exactly.

    Python integers are unbounded, so the built-in three-argument ``pow``
    never overflows; this wrapper only enforces the argument contract.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise ValueError(f"exponent must be nonnegative, got {exponent}")
    return pow(base, exponent, modulus)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Find a nontrivial factor of the odd composite n (Brent's variant)."""
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # batched gcd overshot; replay one step at a time
            while True:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                if g > 1:
                    break
        if g != n:
            return g
    raise ArithmeticError(f"Pollard-Brent failed to split {n}")


def _split(n: int, out: list[int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out.append(n)
        return
    d = _brent_rho(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n as ``[(prime, multiplicity), ...]``, primes ascending."""
    if n < 2:
        raise ValueError(f"factorize needs n >= 2, got {n}")
    found: list[int] = []
    for q in _small_primes():
        if q * q > n:
            break
        while n % q == 0:
            found.append(q)
            n //= q
    if n > 1:
        if n <= TRIAL_LIMIT * TRIAL_LIMIT or is_prime(n):
            # no factor below 10^6 and n < 10^12 means n is prime
            found.append(n)
        else:
            _split(n, found)
    found.sort()
    result: list[tuple[int, int]] = []
    for q in found:
        if result and result[-1][0] == q:
            result[-1] = (q, result[-1][1] + 1)
        else:
            result.append((q, 1))
    return result


def _is_generator(g: int, p: int, factors: list[tuple[int, int]]) -> bool:
    if g % p == 0:
        return False
    return all(pow(g, (p - 1) // q, p) != 1 for q, _ in factors)


def _check_odd_prime(p: int) -> None:
    if p <= 2 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if p >= P_MAX:
        raise NotPrime(f"{p} exceeds the supported modulus cap 2^62")


def smallest_primitive_root(p: int) -> int:
    _check_odd_prime(p)
    factors = factorize(p - 1)
    g = 2
    while not _is_generator(g, p, factors):
        g += 1
    return g


@dataclass(frozen=True)
class FieldCtx:
    """A prime p with a chosen primitive root g and the factorization of p-1."""

    p: int
    g: int
    factors: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return self.p - 1

    def is_generator(self, h: int) -> bool:
        return _is_generator(h, self.p, list(self.factors))


def build_ctx(p: int, g: int | None = None) -> FieldCtx:
    _check_odd_prime(p)
    factors = factorize(p - 1)
    if g is None:
        g = 2
        while not _is_generator(g, p, factors):
            g += 1
    elif not 2 <= g <= p - 1 or not _is_generator(g, p, factors):
        raise NonGenerator(f"{g} is not a primitive root modulo {p}")
    return FieldCtx(p=p, g=g, factors=tuple(factors))
