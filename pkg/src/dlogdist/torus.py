"""Progressions, their log images on R/Z, and exact interval discrepancy.

Points on the torus are stored as integer numerators over a shared
denominator, so every count below is exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dlog import DlogTable, dlog_bsgs
from .errors import DlogDistError, InvalidProgression, ZeroResidue
from .numtheory import FieldCtx

BRUTE_FORCE_MAX = 5000


@dataclass(frozen=True)
class Progression:
    """The set {a + j*r : 1 <= j <= N}."""

    a: int
    r: int
    N: int

    def __post_init__(self):
        if self.a < 0 or self.r < 1 or self.N < 1:
            raise InvalidProgression(f"need a >= 0, r >= 1, N >= 1; got {self}")

    @classmethod
    def full(cls, p: int) -> "Progression":
        return cls(0, 1, p - 1)

    @classmethod
    def longest(cls, p: int, a: int = 0, r: int = 1) -> "Progression":
        return cls(a, r, (p - 1 - a) // r)

    @property
    def last(self) -> int:
        return self.a + self.N * self.r

    def validate(self, p: int) -> None:
        if self.a + self.r < 1 or self.last > p - 1:
            raise InvalidProgression(f"{self} does not fit inside [1, {p - 1}]")

    def elements(self) -> np.ndarray:
        return self.a + self.r * np.arange(1, self.N + 1, dtype=np.int64)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError(f"non-finite interval endpoint {x}")
    return Fraction(x)


@dataclass(frozen=True)
class Interval:
    """Sub-interval [alpha, beta] of [0, 1]. Float endpoints are converted exactly."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = _as_fraction(self.alpha), _as_fraction(self.beta)
        if not 0 <= a <= b <= 1:
            raise ValueError(f"need 0 <= alpha <= beta <= 1, got [{a}, {b}]")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def length(self) -> Fraction:
        return self.beta - self.alpha


@dataclass(frozen=True)
class TorusPoints:
    """Sorted multiset of points n/denominator in [0, 1)."""

    denominator: int
    numerators: np.ndarray = field(repr=False)

    def __post_init__(self):
        nums = np.sort(np.asarray(self.numerators, dtype=np.int64))
        if nums.size and (nums[0] < 0 or nums[-1] >= self.denominator):
            raise ValueError("numerators must lie in [0, denominator)")
        nums.setflags(write=False)
        object.__setattr__(self, "numerators", nums)

    @classmethod
    def from_fractions(cls, xs, denominator: int | None = None) -> "TorusPoints":
        fr = [Fraction(x) for x in xs]
        if denominator is None:
            denominator = math.lcm(*(f.denominator for f in fr)) if fr else 1
        nums = []
        for f in fr:
            n = f * denominator
            if n.denominator != 1:
                raise ValueError(f"{f} is not a multiple of 1/{denominator}")
            nums.append(int(n))
        return cls(denominator, np.array(nums, dtype=np.int64))

    @property
    def card(self) -> int:
        return int(self.numerators.size)

    def __len__(self) -> int:
        return self.card

    def as_floats(self) -> np.ndarray:
        return self.numerators / self.denominator

    def count_in(self, interval: Interval, half_open: bool = False) -> int:
        """Number of points in [alpha, beta] (or [alpha, beta) when half_open)."""
        q = self.denominator
        lo = math.ceil(interval.alpha * q)
        if half_open:
            hi = math.ceil(interval.beta * q) - 1
        else:
            hi = math.floor(interval.beta * q)
        if hi < lo:
            return 0
        nums = self.numerators
        return int(np.searchsorted(nums, hi, "right") - np.searchsorted(nums, lo, "left"))


@dataclass(frozen=True)
class DiscrepancyReport:
    """Discrepancy of a point set, for one interval or the extreme case.

    For the extreme case ``interval`` is the closure of an extremal interval;
    ``attained`` is False when the supremum is only approached by shrinking
    that interval away from its endpoint points.
    """

    raw: Fraction
    normalized: Fraction
    cardinality: int
    interval: Interval | None = None
    extreme: bool = False
    attained: bool = True

    def to_dict(self) -> dict:
        return {
            "kind": "extreme" if self.extreme else "interval",
            "raw": float(self.raw),
            "normalized": float(self.normalized),
            "cardinality": self.cardinality,
            "alpha": None if self.interval is None else float(self.interval.alpha),
            "beta": None if self.interval is None else float(self.interval.beta),
            "attained": self.attained,
        }


def log_image(ctx: FieldCtx, J: Progression, table: DlogTable | None = None) -> TorusPoints:
    """Discrete logs of the progression, as points over denominator p - 1."""
    J.validate(ctx.p)
    xs = J.elements()
    if np.any(xs % ctx.p == 0):
        raise ZeroResidue("progression hits a multiple of p")
    if table is not None:
        logs = table.lookup(xs)
    else:
        logs = np.array([dlog_bsgs(ctx, int(x)) for x in xs], dtype=np.int64)
    return TorusPoints(ctx.p - 1, logs)


def interval_discrepancy(M: TorusPoints, interval: Interval, half_open: bool = False) -> Fraction:
    """card(M ∩ I) - |I|·card(M), exactly."""
    return M.count_in(interval, half_open) - interval.length * M.card


def discrepancy_report(M: TorusPoints, interval: Interval, half_open: bool = False) -> DiscrepancyReport:
    raw = interval_discrepancy(M, interval, half_open)
    card = M.card
    return DiscrepancyReport(raw, raw / card if card else Fraction(0), card, interval)


def _int_dtype(M: TorusPoints):
    # scaled values reach card * denominator; fall back to Python ints past int64
    return np.int64 if M.card * M.denominator < (1 << 62) else object


def extreme_discrepancy(M: TorusPoints) -> DiscrepancyReport:
    """Exact sup of |D(M; alpha, beta)| over closed intervals, in O(N log N).

    Positive excess is attained by a closed interval with both endpoints on
    points. Negative excess is a limit of intervals whose endpoints approach
    points from outside (or sit at 0 and 1). Both are scanned with prefix
    minima over the distinct point positions, scaled by the denominator.
    The value is the same for half-open intervals, since it is a supremum.
    """
    N = M.card
    if N == 0:
        raise DlogDistError("extreme discrepancy of an empty point set")
    q = M.denominator
    dt = _int_dtype(M)
    vals, counts = np.unique(M.numerators, return_counts=True)
    vals = vals.astype(dt)
    le = np.cumsum(counts).astype(dt)  # points <= v
    lt = le - counts.astype(dt)  # points < v

    # positive: [v_i, v_j], i <= j
    A = le * q - N * vals
    B = lt * q - N * vals
    prefB = np.minimum.accumulate(B)
    pos = A - prefB
    j_pos = int(np.argmax(pos))
    best_pos = int(pos[j_pos])
    i_pos = int(np.argmin(B[: j_pos + 1]))

    # negative: alpha in {0} ∪ {v_i+}, beta in {v_j-} ∪ {1}, alpha strictly left of beta
    L = N * vals - le * q  # alpha = v_i+
    R = N * vals - lt * q  # beta = v_j-
    prefL = np.concatenate([np.zeros(1, dtype=dt), np.minimum.accumulate(L)])
    best_neg, neg_ends = 0, (None, None)
    neg = R - prefL[:-1]
    if vals[0] == 0:
        neg[0] = -1  # beta = 0- does not exist
    j_neg = int(np.argmax(neg))
    if int(neg[j_neg]) > best_neg:
        best_neg, neg_ends = int(neg[j_neg]), (prefL[: j_neg + 1], j_neg)
    tail = -int(prefL[-1])  # beta = 1
    if tail > best_neg:
        best_neg, neg_ends = tail, (prefL, None)

    if best_pos >= best_neg:
        raw = Fraction(best_pos, q)
        interval = Interval(Fraction(int(vals[i_pos]), q), Fraction(int(vals[j_pos]), q))
        attained = True
    else:
        raw = Fraction(best_neg, q)
        cand, j = neg_ends
        k = int(np.argmin(cand))  # 0 means alpha = 0, else alpha = v_{k-1}+
        alpha = Fraction(0) if k == 0 else Fraction(int(vals[k - 1]), q)
        beta = Fraction(1) if j is None else Fraction(int(vals[j]), q)
        interval = Interval(alpha, beta)
        attained = False
    return DiscrepancyReport(raw, raw / N, N, interval, extreme=True, attained=attained)


def brute_force_extreme_discrepancy(M: TorusPoints, max_points: int = BRUTE_FORCE_MAX) -> DiscrepancyReport:
    """O(N^2) reference: scan every pair of candidate endpoints.

    Candidates are 0, 1, each point position, and the one-sided limits just
    below and above each point. Counting uses those limit semantics directly.
    """
    N = M.card
    if N == 0:
        raise DlogDistError("extreme discrepancy of an empty point set")
    if N > max_points:
        raise DlogDistError(f"brute force limited to {max_points} points, got {N}")
    q = M.denominator
    nums = M.numerators
    cands: set[tuple[int, int]] = {(0, 0), (q, 0)}
    for v in np.unique(nums).tolist():
        cands.update({(v, -1), (v, 0), (v, 1)})
    cands.discard((0, -1))
    ordered = sorted(cands)
    dt = _int_dtype(M)
    pos = np.array([c[0] for c in ordered], dtype=dt)
    # left endpoint c: a point x is inside iff x > v (side +1) or x >= v (side 0, -1)
    below_left = np.array(
        [int(np.searchsorted(nums, v, "right" if s > 0 else "left")) for v, s in ordered], dtype=dt
    )
    # right endpoint c: x inside iff x < v (side -1) or x <= v (side 0, +1)
    upto_right = np.array(
        [int(np.searchsorted(nums, v, "left" if s < 0 else "right")) for v, s in ordered], dtype=dt
    )
    best, best_pair = -1, (0, 0)
    for i in range(len(ordered)):
        scaled = (upto_right[i:] - below_left[i]) * q - N * (pos[i:] - pos[i])
        mag = np.abs(scaled)
        k = int(np.argmax(mag))
        if mag[k] > best:
            best, best_pair = int(mag[k]), (i, i + k)
    i, j = best_pair
    raw = Fraction(best, q)
    interval = Interval(Fraction(int(pos[i]), q), Fraction(int(pos[j]), q))
    attained = ordered[i][1] <= 0 and ordered[j][1] >= 0
    return DiscrepancyReport(raw, raw / N, N, interval, extreme=True, attained=attained)
