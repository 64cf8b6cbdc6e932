"""Experiments on unions of progressions, nonlinear twists, several bases and orderings."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dlog import DlogTable
from .errors import DenominatorMismatch, DlogDistError, NonGenerator, Overlap
from .expsum import _phase_sum
from .numtheory import FieldCtx
from .torus import Interval, Progression, TorusPoints, interval_discrepancy

MAX_TUPLE = 8
MAX_EXHAUSTIVE = 10**7


def union_discrepancy_check(M1: TorusPoints, M2: TorusPoints, interval: Interval) -> Fraction:
    """|D(M1 ∪ M2; I) - D(M1; I) - D(M2; I)| for disjoint point sets (always 0)."""
    if M1.denominator != M2.denominator:
        raise DenominatorMismatch(f"{M1.denominator} != {M2.denominator}")
    if np.intersect1d(M1.numerators, M2.numerators).size:
        raise Overlap("point sets share a point")
    union = TorusPoints(M1.denominator, np.concatenate([M1.numerators, M2.numerators]))
    d = interval_discrepancy(union, interval) - interval_discrepancy(M1, interval) - interval_discrepancy(M2, interval)
    return abs(d)


@dataclass(frozen=True)
class IntPolynomial:
    """a_0 + a_1 x + ... + a_n x^n with coefficients reduced mod ``modulus``."""

    coefficients: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        coeffs = tuple(c % self.modulus for c in self.coefficients)
        if not coeffs:
            raise DlogDistError("polynomial needs at least one coefficient")
        if len(coeffs) > 1 and coeffs[-1] == 0:
            raise DlogDistError("leading coefficient vanishes modulo p-1")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        """Horner evaluation mod ``modulus``; x may be an int or an int64 array."""
        m = self.modulus
        if isinstance(x, np.ndarray) and m * m >= (1 << 63):
            x = x.astype(object)
        acc = 0 * x
        for c in reversed(self.coefficients):
            acc = (acc * x + c) % m
        return acc


def poly_twist_sum(ctx: FieldCtx, table: DlogTable, J: Progression, P: IntPolynomial) -> complex:
    """sum_{x in J} e_{p-1}(P(log_g x))."""
    q = ctx.p - 1
    if P.modulus != q:
        raise DlogDistError("polynomial must be reduced modulo p-1")
    logs = table.lookup(J.elements())
    return _phase_sum(P(logs), q)


@dataclass(frozen=True)
class MultiBaseSpec:
    a: int
    pairs: tuple[tuple[int, int], ...]  # (g_i, b_i)

    def __post_init__(self):
        if not self.pairs:
            raise DlogDistError("need at least one (base, coefficient) pair")
        object.__setattr__(self, "pairs", tuple((int(g), int(b)) for g, b in self.pairs))


def change_of_base(table: DlogTable, h: int) -> int:
    """log_h g mod p-1, so that log_h x = log_g x * log_h g."""
    q = table.ctx.p - 1
    lg = table[h]
    if math.gcd(lg, q) != 1:
        raise NonGenerator(f"{h} is not a primitive root modulo {table.ctx.p}")
    return pow(lg, -1, q)


def multibase_sum(ctx: FieldCtx, table: DlogTable, J: Progression, spec: MultiBaseSpec) -> complex:
    """sum_{x in J} e_{p-1}(a x + b_1 log_{g_1} x + ... + b_r log_{g_r} x).

    All logs come from the one table for ``ctx.g`` via change of base.
    """
    q = ctx.p - 1
    xs = J.elements()
    logs = table.lookup(xs)
    coeff = 0
    for h, b in spec.pairs:
        coeff = (coeff + b * change_of_base(table, h)) % q
    phase = (spec.a % q * (xs % q) % q + coeff * logs % q) % q
    return _phase_sum(phase, q)


@dataclass(frozen=True)
class OrderingHistogram:
    """Counts of the relative order patterns of (log x_1, ..., log x_r), x_1 < ... < x_r.

    A pattern is the tuple of 1-based ranks of the logs in position order,
    so (1, 2) means log x_1 < log x_2.
    """

    r: int
    counts: dict = field(repr=False)
    total: int

    def frequency(self, pattern) -> float:
        return self.counts[tuple(pattern)] / self.total if self.total else 0.0

    def frequencies(self) -> dict:
        return {k: v / self.total for k, v in self.counts.items()}

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "total": self.total,
            "counts": {"".join(map(str, k)): v for k, v in self.counts.items()},
        }


def _histogram(r: int, logs_rows: np.ndarray) -> OrderingHistogram:
    counts = {perm: 0 for perm in itertools.permutations(range(1, r + 1))}
    if logs_rows.size:
        ranks = np.argsort(np.argsort(logs_rows, axis=1), axis=1) + 1
        patterns, freq = np.unique(ranks, axis=0, return_counts=True)
        for pat, c in zip(patterns, freq):
            counts[tuple(int(v) for v in pat)] = int(c)
    return OrderingHistogram(r, counts, int(logs_rows.shape[0]))


def ordering_frequencies(
    ctx: FieldCtx,
    table: DlogTable,
    J: Progression,
    r: int,
    mode: str = "sampled",
    sample_count: int = 100_000,
    seed: int = 0,
) -> OrderingHistogram:
    """Histogram of order patterns of the logs over r-tuples of J.

    Modes: ``exhaustive`` (every increasing r-tuple), ``exhaustive-adjacent``
    (every run of r consecutive elements of J), ``sampled`` (``sample_count``
    uniform r-subsets from a Philox stream keyed by ``seed``).
    """
    if not 1 <= r <= MAX_TUPLE:
        raise DlogDistError(f"tuple size must be in [1, {MAX_TUPLE}], got {r}")
    if J.N < r:
        raise DlogDistError(f"progression has {J.N} elements, fewer than r={r}")
    logs = table.lookup(J.elements())  # ascending in x since r > 0
    N = J.N
    if mode == "exhaustive":
        if math.comb(N, r) > MAX_EXHAUSTIVE:
            raise DlogDistError(f"C({N}, {r}) tuples exceeds {MAX_EXHAUSTIVE}")
        idx = np.array(list(itertools.combinations(range(N), r)), dtype=np.int64).reshape(-1, r)
    elif mode == "exhaustive-adjacent":
        idx = np.arange(N - r + 1)[:, None] + np.arange(r)[None, :]
    elif mode == "sampled":
        idx = _sample_subsets(N, r, sample_count, seed)
    else:
        raise DlogDistError(f"unknown mode {mode!r}")
    return _histogram(r, logs[idx])


def _sample_subsets(N: int, r: int, count: int, seed: int) -> np.ndarray:
    """``count`` uniform r-subsets of range(N), each sorted ascending."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    out = rng.integers(0, N, size=(count, r))
    out.sort(axis=1)
    bad = np.any(out[:, 1:] == out[:, :-1], axis=1) if r > 1 else np.zeros(count, bool)
    while bad.any():
        fresh = rng.integers(0, N, size=(int(bad.sum()), r))
        fresh.sort(axis=1)
        out[bad] = fresh
        bad = np.any(out[:, 1:] == out[:, :-1], axis=1)
    return out
