"""Erdős–Turán bounds for the log image, and empirical discrepancy envelopes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dlog import DlogTable
from .errors import DlogDistError
from .numtheory import FieldCtx
from .torus import (
    Interval,
    Progression,
    TorusPoints,
    extreme_discrepancy,
    interval_discrepancy,
    log_image,
)

# Rational lower bound for pi; enough to certify gap > 1/(pi p) exactly.
PI_LOWER = Fraction(314159, 100000)


def exp_sum_moduli(M: TorusPoints, K: int, direct: bool = False) -> np.ndarray:
    """|sum_{x in M} exp(2 pi i k x)| for k = 0..K.

    The FFT path bins the numerators over the common denominator; the direct
    path sums each k separately and serves as its reference.
    """
    if K < 1:
        raise DlogDistError(f"K must be >= 1, got {K}")
    q = M.denominator
    ks = np.arange(K + 1, dtype=np.int64)
    if direct:
        out = np.empty(K + 1)
        for k in range(K + 1):
            t = 2.0 * math.pi * (k * M.numerators % q) / q
            out[k] = abs(complex(math.fsum(np.cos(t)), math.fsum(np.sin(t))))
        return out
    hist = np.bincount(M.numerators, minlength=q).astype(float)
    spectrum = np.abs(np.fft.fft(hist))
    return spectrum[ks % q]


def erdos_turan_rhs(
    M: TorusPoints, K: int, interval: Interval, moduli: np.ndarray | None = None
) -> float:
    """card/(K+1) + 2 sum_{k=1}^{K} (1/(K+1) + min(beta-alpha, 1/(pi k))) |sum_x e(kx)|."""
    if M.card < 1:
        raise DlogDistError("Erdős–Turán bound needs a nonempty point set")
    if moduli is None:
        moduli = exp_sum_moduli(M, K)
    k = np.arange(1, K + 1, dtype=float)
    width = float(interval.length)
    weights = 1.0 / (K + 1) + np.minimum(width, 1.0 / (math.pi * k))
    return M.card / (K + 1) + 2.0 * math.fsum(weights * moduli[1 : K + 1])


def theorem1_rhs(p: int, width: float) -> float:
    """sqrt(p) ln p (2 + ln(p (beta - alpha))), the shape of the interval bound."""
    return math.sqrt(p) * math.log(p) * (2.0 + math.log(p * width))


@dataclass(frozen=True)
class BoundReport:
    interval: Interval
    lhs: float
    rhs_explicit: float
    rhs_theorem: float
    ratio: float | None
    hypothesis: bool

    @property
    def et_ok(self) -> bool:
        return self.lhs <= self.rhs_explicit * (1.0 + 1e-6)

    def to_dict(self) -> dict:
        return {
            "alpha": float(self.interval.alpha),
            "beta": float(self.interval.beta),
            "lhs": self.lhs,
            "rhs_explicit": self.rhs_explicit,
            "rhs_theorem": self.rhs_theorem,
            "ratio": self.ratio,
            "hypothesis": self.hypothesis,
            "et_ok": self.et_ok,
        }


def theorem1_check(
    ctx: FieldCtx,
    table: DlogTable,
    J: Progression,
    intervals,
    K: int | None = None,
    M: TorusPoints | None = None,
) -> list[BoundReport]:
    """Compare |D(M; alpha, beta)| with the Erdős–Turán value and the sqrt(p) log p shape.

    ``ratio`` is lhs / rhs_theorem, an empirical estimate of the interval
    constant; it is None when the hypothesis p(beta - alpha) > 1/pi fails.
    """
    p = ctx.p
    K = p - 1 if K is None else K
    if M is None:
        M = log_image(ctx, J, table)
    moduli = exp_sum_moduli(M, K)
    reports = []
    for iv in intervals:
        width = float(iv.length)
        lhs = abs(float(interval_discrepancy(M, iv)))
        hyp = p * width * math.pi > 1
        rhs_thm = theorem1_rhs(p, width) if width > 0 else float("nan")
        ratio = lhs / rhs_thm if hyp and rhs_thm > 0 else None
        reports.append(BoundReport(iv, lhs, erdos_turan_rhs(M, K, iv, moduli), rhs_thm, ratio, hyp))
    return reports


def min_gap(M: TorusPoints) -> Fraction | None:
    """Smallest distance between consecutive points (None for fewer than 2 points)."""
    if M.card < 2:
        return None
    return Fraction(int(np.min(np.diff(M.numerators))), M.denominator)


def capacity_holds(M: TorusPoints, p: int) -> bool:
    """True iff no closed interval of length <= 1/(pi p) holds two points of M.

    Two points fit exactly when their gap is <= the length, so it suffices
    that every gap exceeds 1/(pi p); ``gap * p * PI_LOWER > 1`` certifies it.
    """
    gap = min_gap(M)
    return gap is None or gap * p * PI_LOWER > 1


@dataclass(frozen=True)
class ExtremeBoundReport:
    raw: Fraction
    normalized: Fraction
    cardinality: int
    envelope: float
    ratio: float
    min_gap: Fraction | None
    capacity_ok: bool

    def to_dict(self) -> dict:
        return {
            "raw": float(self.raw),
            "normalized": float(self.normalized),
            "cardinality": self.cardinality,
            "envelope": self.envelope,
            "c2_estimate": self.ratio,
            "min_gap": None if self.min_gap is None else float(self.min_gap),
            "capacity_ok": self.capacity_ok,
        }


def extreme_bound_check(ctx: FieldCtx, table: DlogTable, J: Progression) -> ExtremeBoundReport:
    """Normalized extreme discrepancy against sqrt(p) ln^2 p / card.

    ``ratio`` is the measured value over that envelope (an estimate of the
    extreme-discrepancy constant). Also certifies the small-interval capacity:
    an interval no longer than 1/(pi p) contains at most one point.
    """
    p = ctx.p
    M = log_image(ctx, J, table)
    rep = extreme_discrepancy(M)
    envelope = math.sqrt(p) * math.log(p) ** 2 / M.card
    return ExtremeBoundReport(
        raw=rep.raw,
        normalized=rep.normalized,
        cardinality=M.card,
        envelope=envelope,
        ratio=float(rep.normalized) / envelope,
        min_gap=min_gap(M),
        capacity_ok=capacity_holds(M, p),
    )


@dataclass(frozen=True)
class CorollaryReport:
    s: int
    t: int
    count: int
    length: int
    N: int
    expected: Fraction  # M N / (p - 1), the torus expectation
    expected_p: Fraction  # M N / p
    deviation: Fraction | None
    deviation_p: Fraction | None
    delta: float
    within_delta: bool | None
    hypothesis: bool
    c3_probe: float

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "count": self.count,
            "M": self.length,
            "N": self.N,
            "expected": float(self.expected),
            "expected_p": float(self.expected_p),
            "deviation": None if self.deviation is None else float(self.deviation),
            "deviation_p": None if self.deviation_p is None else float(self.deviation_p),
            "delta": self.delta,
            "within_delta": self.within_delta,
            "hypothesis": self.hypothesis,
            "c3_probe": self.c3_probe,
        }


def corollary1_count(
    ctx: FieldCtx,
    table: DlogTable,
    J: Progression,
    s: int,
    t: int,
    delta: float,
    c3: float = 1.0,
) -> CorollaryReport:
    """Count logs of J inside [s, t] and compare with M N / p.

    ``deviation`` is relative to M N / (p - 1), which matches the torus
    interval [s/(p-1), t/(p-1)]; ``deviation_p`` is relative to M N / p.
    ``within_delta`` tests the latter against delta. ``hypothesis`` is
    M N > (c3/delta) p^{3/2} ln^2 p for the probe value c3.
    """
    p = ctx.p
    q = p - 1
    if not 0 <= s <= t <= q:
        raise DlogDistError(f"need 0 <= s <= t <= p-1, got [{s}, {t}]")
    if delta <= 0:
        raise DlogDistError("delta must be positive")
    M = log_image(ctx, J, table)
    nums = M.numerators
    count = int(np.searchsorted(nums, t, "right") - np.searchsorted(nums, s, "left"))
    torus_count = M.count_in(Interval(Fraction(s, q), Fraction(t, q)))
    assert count == torus_count
    length = t - s
    N = M.card
    expected = Fraction(length * N, q)
    expected_p = Fraction(length * N, p)
    dev = count / expected - 1 if expected else None
    dev_p = count / expected_p - 1 if expected_p else None
    hyp = length * N > c3 / delta * p**1.5 * math.log(p) ** 2
    return CorollaryReport(
        s=s,
        t=t,
        count=count,
        length=length,
        N=N,
        expected=expected,
        expected_p=expected_p,
        deviation=dev,
        deviation_p=dev_p,
        delta=delta,
        within_delta=None if dev_p is None else abs(dev_p) <= delta,
        hypothesis=hyp,
        c3_probe=c3,
    )
