"""Lagrangian resolvents, progression phase sums and log-twisted character sums.

Notation: theta = e_{p-1}(1), zeta = e_p(1), e_q(x) = exp(2 pi i x / q).
The resolvent is S(theta^k, zeta^u) = sum_{j=0}^{p-2} theta^{kj} zeta^{u g^j}.

Direct sums reduce every phase to an integer residue before calling cos/sin
and add the terms with ``math.fsum`` (correctly rounded), so the only error
left is the per-term trig rounding tracked in ``err_bound``. Bulk rows over
all u or all k use an FFT and are checked against the direct path in tests.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .dlog import DlogTable
from .errors import DlogDistError
from .numtheory import FieldCtx
from .torus import Progression

TWO_PI = 2.0 * math.pi
EPS = np.finfo(float).eps

# per-term rounding: argument reduction, one division, one multiply by 2pi, cos/sin
C_MACH = 16


def e(x: int, q: int) -> complex:
    x %= q
    t = TWO_PI * x / q
    return complex(math.cos(t), math.sin(t))


def _phase_sum(numerators: np.ndarray, q: int) -> complex:
    """Correctly rounded sum of e_q(n) over an integer array."""
    t = TWO_PI * (np.asarray(numerators, dtype=np.int64) % q) / q
    return complex(math.fsum(np.cos(t)), math.fsum(np.sin(t)))


@dataclass(frozen=True)
class ResolventValue:
    value: complex
    terms: int
    err_bound: float


def _err_bound(terms: int) -> float:
    return float(C_MACH * (terms + 1) * EPS)


def resolvent(ctx: FieldCtx, table: DlogTable, k: int, u: int) -> ResolventValue:
    """S(theta^k, zeta^u) by direct summation over j ascending."""
    p = ctx.p
    q = p - 1
    k %= q
    u %= p
    j = np.arange(q, dtype=np.int64)
    # theta^{kj} zeta^{u g^j} = e_{pq}(p*(kj mod q) + q*(u g^j mod p))
    num = p * (k * j % q) + q * (u * table.powers % p)
    return ResolventValue(_phase_sum(num, p * q), q, _err_bound(q))


def resolvents_over_u(table: DlogTable, k: int) -> np.ndarray:
    """S(theta^k, zeta^u) for u = 0..p-1 from one length-p FFT.

    As a function of u the resolvent is the additive Fourier transform of
    x -> e_{p-1}(k log x), x = 1..p-1.
    """
    p = table.ctx.p
    q = p - 1
    chi = np.zeros(p, dtype=complex)
    phases = TWO_PI * (k % q * table.logs[1:] % q) / q
    chi[1:] = np.cos(phases) + 1j * np.sin(phases)
    return np.fft.ifft(chi) * p


def resolvents_over_k(table: DlogTable, u: int) -> np.ndarray:
    """S(theta^k, zeta^u) for k = 0..p-2 from one length-(p-1) FFT over j."""
    p = table.ctx.p
    q = p - 1
    phases = TWO_PI * (u % p * table.powers % p) / p
    w = np.cos(phases) + 1j * np.sin(phases)
    return np.fft.ifft(w) * q


def resolvent_modulus_sq_check(ctx: FieldCtx, table: DlogTable, k: int, u: int) -> float:
    """Return | |S(theta^k, zeta^u)|^2 - p | for doubly nontrivial (k, u)."""
    if k % (ctx.p - 1) == 0 or u % ctx.p == 0:
        raise DlogDistError("modulus check needs k != 0 mod p-1 and u != 0 mod p")
    s = resolvent(ctx, table, k, u).value
    return abs(abs(s) ** 2 - ctx.p)


@dataclass(frozen=True)
class PhaseSum:
    value: complex
    modulus: float  # |value| from the sine ratio, free of phase rounding
    bound: float
    dist: tuple[int, int]  # ||ur/p|| as the exact fraction m/p


def nearest_int_distance(num: int, den: int) -> tuple[int, int]:
    """||num/den|| as an exact pair (m, den) with 0 <= m <= den/2."""
    m = num % den
    return min(m, den - m), den


def _sin_pi(x: int, q: int) -> float:
    """sin(pi x / q) with x reduced mod 2q."""
    return math.sin(math.pi * (x % (2 * q)) / q)


def progression_phase_sum(p: int, J: Progression, u: int) -> PhaseSum:
    """sum_{z in J} e_p(-u z) in closed form, with its min(N, (2||ur/p||)^-1) bound.

    Uses 1 - e(x) = -2i sin(pi x) e(x/2), so the geometric ratio becomes
    sin(pi urN/p) / sin(pi ur/p) times a phase and never subtracts nearly
    equal numbers.
    """
    u %= p
    a, r, N = J.a, J.r, J.N
    ur = u * r
    m, _ = nearest_int_distance(ur, p)
    first = e(-u * (a + r), p)
    if ur % p == 0:
        return PhaseSum(N * first, float(N), float(N), (m, p))
    ratio = _sin_pi(ur * N, p) / _sin_pi(ur, p)
    value = first * e(-ur * (N - 1), 2 * p) * ratio
    return PhaseSum(value, abs(ratio), min(float(N), p / (2.0 * m)), (m, p))


def log_character_sum(ctx: FieldCtx, table: DlogTable, J: Progression, k: int) -> complex:
    """sum_{z in J} e_{p-1}(k log_g z), summed directly."""
    q = ctx.p - 1
    logs = table.lookup(J.elements())
    return _phase_sum((k % q) * logs % q, q)


def log_character_sums_all(table: DlogTable, J: Progression) -> np.ndarray:
    """sum_{z in J} e_{p-1}(k log z) for every k = 0..p-2, via FFT of the log histogram."""
    q = table.ctx.p - 1
    hist = np.bincount(table.lookup(J.elements()), minlength=q).astype(float)
    return np.fft.ifft(hist) * q


def verify_inversion(
    ctx: FieldCtx, table: DlogTable, k: int, z: int, row: np.ndarray | None = None
) -> float:
    """|theta^{k log z} - (1/p) sum_{u=1}^{p} zeta^{-uz} S(theta^k, zeta^u)|.

    ``row`` may carry precomputed resolvents over u (``resolvents_over_u``).
    """
    p = ctx.p
    q = p - 1
    if row is None:
        row = resolvents_over_u(table, k)
    lhs = e(k * table[z], q)
    u = np.arange(p, dtype=np.int64)
    t = TWO_PI * (-u * z % p) / p
    prod = row * (np.cos(t) + 1j * np.sin(t))
    rhs = complex(math.fsum(prod.real), math.fsum(prod.imag)) / p
    return abs(lhs - rhs)


def decomposition_rhs(ctx: FieldCtx, J: Progression, row: np.ndarray) -> complex:
    """(1/p) sum_u S(theta^k, zeta^u) * sum_{z in J} e_p(-u z)."""
    p = ctx.p
    phase = np.array([progression_phase_sum(p, J, u).value for u in range(p)])
    prod = row * phase
    return complex(math.fsum(prod.real), math.fsum(prod.imag)) / p


def verify_decomposition(
    ctx: FieldCtx, table: DlogTable, J: Progression, k: int, row: np.ndarray | None = None
) -> float:
    if row is None:
        row = resolvents_over_u(table, k)
    direct = log_character_sum(ctx, table, J, k)
    return abs(direct - decomposition_rhs(ctx, J, row))


def pv_bound(p: int) -> float:
    """sqrt(p) * (2 + ln p)."""
    return math.sqrt(p) * (2.0 + math.log(p))


@dataclass(frozen=True)
class PVReport:
    max_ratio: float
    worst_k: int
    bound: float
    ks_checked: int

    @property
    def ok(self) -> bool:
        return self.max_ratio <= 1.0

    def to_dict(self) -> dict:
        return {
            "max_ratio": self.max_ratio,
            "worst_k": self.worst_k,
            "bound": self.bound,
            "ks_checked": self.ks_checked,
        }


def pv_bound_check(
    ctx: FieldCtx,
    table: DlogTable,
    J: Progression,
    ks=None,
    samples: int | None = None,
    seed: int = 0,
) -> PVReport:
    """Largest |sum_{z in J} e_{p-1}(k log z)| / (sqrt(p)(2 + ln p)) over nontrivial k.

    With explicit ``ks`` (or ``samples``) each sum is evaluated directly;
    otherwise all k are covered at once by FFT.
    """
    q = ctx.p - 1
    bound = pv_bound(ctx.p)
    if ks is None and samples is not None:
        rng = random.Random(seed)
        ks = [rng.randrange(1, q) for _ in range(samples)] if q > 1 else []
    if ks is None:
        mags = np.abs(log_character_sums_all(table, J))
        mags[0] = 0.0
        worst = int(np.argmax(mags)) if q > 1 else 0
        return PVReport(float(mags[worst]) / bound, worst, bound, q - 1)
    ks = [k % q for k in ks if k % q]
    best, worst = 0.0, 0
    for k in ks:
        ratio = abs(log_character_sum(ctx, table, J, k)) / bound
        if ratio > best:
            best, worst = ratio, k
    return PVReport(best, worst, bound, len(ks))
