"""Lattice-point experiments on rings, segments and caps of the 4-sphere.

Counts the integer points of a thin ring below the circle of radius
``sqrt(N)`` and how many of them lift to four-square representations of
``N``; tests the uniformity of their polar angles; evaluates spherical cap
volumes and the exclusion zone around Pauli gates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import NamedTuple

import numpy as np

from .errors import BudgetExceeded, EmptySample
from .numth import enumerate_s4

RING_BUDGET = 10**8


@dataclass(frozen=True)
class RingSpec:
    """Ring ``(sqrt(N) - Delta)^2 < x^2 + y^2 < N`` with ``N = p^L``."""

    p: int
    L: int
    Delta: float

    def __post_init__(self):
        if self.p % 4 != 1:
            raise ValueError(f"p = {self.p} is not 1 mod 4")
        if self.Delta <= 0:
            raise ValueError("Delta must be positive")

    @property
    def N(self) -> int:
        return self.p**self.L


@dataclass(frozen=True)
class SegmentSpec:
    ring: RingSpec
    tangent_angle: float


@dataclass(frozen=True)
class CapSpec:
    R: float
    epsilon: float


class Counts(NamedTuple):
    grid_points: int
    projection_points: int


class KSResult(NamedTuple):
    D: float
    p_value: float


def _above_inner(s: int, N: int, delta: Fraction) -> bool:
    """Exact test of ``s > (sqrt(N) - Delta)^2`` for ``sqrt(N) > Delta``."""
    # sqrt(s) + Delta > sqrt(N)  <=>  2 Delta sqrt(s) > N - s - Delta^2.
    rhs = N - s - delta * delta
    if rhs < 0:
        return True
    return 4 * delta * delta * s > rhs * rhs


def inner_threshold(N: int, Delta: float) -> int:
    """Smallest integer ``s`` strictly inside the ring's inner circle bound."""
    delta = Fraction(repr(float(Delta)))
    if delta * delta >= N:
        return 1  # inner radius clipped at 0; the origin is excluded
    guess = max(0, math.floor((math.sqrt(N) - float(delta)) ** 2) - 2)
    while not _above_inner(guess, N, delta):
        guess += 1
    while guess > 0 and _above_inner(guess - 1, N, delta):
        guess -= 1
    return guess


def two_squares_table(limit: int) -> np.ndarray:
    """Boolean array ``t`` with ``t[m]`` true iff ``m = x^2 + y^2`` (``m <= limit``)."""
    table = np.zeros(limit + 1, dtype=bool)
    root = isqrt(limit)
    xs = np.arange(root + 1, dtype=np.int64)
    sq = xs * xs
    for x in range(root + 1):
        vals = sq[x] + sq[x : root + 1]
        table[vals[vals <= limit]] = True
    return table


def _ring_rows(N: int, T: int):
    """Yield ``(x, y_min_abs, y_max)`` rows for ``T <= x^2 + y^2 <= N - 1``."""
    r = isqrt(N - 1)
    for x in range(-r, r + 1):
        y_max = isqrt(N - 1 - x * x)
        low = T - x * x
        y0 = 0 if low <= 0 else isqrt(low - 1) + 1
        if y0 <= y_max:
            yield x, y0, y_max


def ring_points(N: int, Delta: float, budget: int = RING_BUDGET):
    """Integer points of the ring as two int64 arrays ``(x, y)``.

    Raises:
        BudgetExceeded: when ``Delta * sqrt(N)`` exceeds the budget.
    """
    if Delta * math.sqrt(N) > budget:
        raise BudgetExceeded(f"Delta*sqrt(N) = {Delta * math.sqrt(N):.3g} exceeds {budget}")
    T = inner_threshold(N, Delta)
    xs, ys = [], []
    for x, y0, y1 in _ring_rows(N, T):
        pos = np.arange(y0, y1 + 1, dtype=np.int64)
        neg = -pos[::-1]
        if y0 == 0:
            neg = neg[:-1]
        col = np.concatenate([neg, pos])
        xs.append(np.full(len(col), x, dtype=np.int64))
        ys.append(col)
    if not xs:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(xs), np.concatenate(ys)


def projection_mask(N: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Points with ``N - x^2 - y^2`` a sum of two squares."""
    if len(x) == 0:
        return np.zeros(0, dtype=bool)
    rest = N - x * x - y * y
    table = two_squares_table(int(rest.max()))
    return table[rest]


def ring_counts(N: int, Delta: float, budget: int = RING_BUDGET) -> Counts:
    x, y = ring_points(N, Delta, budget)
    return Counts(len(x), int(projection_mask(N, x, y).sum()))


def count_ring_projections(spec: RingSpec, budget: int = RING_BUDGET) -> Counts:
    return ring_counts(spec.N, spec.Delta, budget)


def _snap(v: float) -> float:
    for exact in (-1.0, 0.0, 1.0):
        if abs(v - exact) < 1e-15:
            return exact
    return v


def segment_mask(spec: SegmentSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    ring = spec.ring
    c = _snap(math.cos(spec.tangent_angle))
    s = _snap(math.sin(spec.tangent_angle))
    return x * c + y * s > math.sqrt(ring.N) - ring.Delta


def count_segment_projections(spec: SegmentSpec, budget: int = RING_BUDGET) -> Counts:
    ring = spec.ring
    x, y = ring_points(ring.N, ring.Delta, budget)
    keep = segment_mask(spec, x, y)
    x, y = x[keep], y[keep]
    return Counts(len(x), int(projection_mask(ring.N, x, y).sum()))


def projection_angles(spec: RingSpec, population: str = "ring", budget: int = RING_BUDGET) -> np.ndarray:
    """Polar angles in ``[0, 2 pi)`` of the projection points.

    ``population="disk"`` uses the whole disk ``x^2 + y^2 < N`` instead of
    the ring.
    """
    N = spec.N
    if population == "disk":
        x, y = ring_points(N, math.sqrt(N), budget)
    elif population == "ring":
        x, y = ring_points(N, spec.Delta, budget)
    else:
        raise ValueError(f"unknown population {population!r}")
    keep = projection_mask(N, x, y)
    ang = np.arctan2(y[keep].astype(float), x[keep].astype(float))
    return np.mod(ang, 2 * math.pi)


def kolmogorov_sf(lam: float, terms: int = 100) -> float:
    """Asymptotic Kolmogorov tail ``P(sqrt(n) D > lam)``."""
    if lam <= 0:
        return 1.0
    if lam < 1.18:
        # Jacobi-transformed series, fast for small lam.
        k = np.arange(1, terms + 1)
        s = np.exp(-((2 * k - 1) ** 2) * math.pi**2 / (8 * lam * lam)).sum()
        return float(min(1.0, max(0.0, 1.0 - math.sqrt(2 * math.pi) / lam * s)))
    k = np.arange(1, terms + 1)
    s = (2 * (-1.0) ** (k - 1) * np.exp(-2.0 * k * k * lam * lam)).sum()
    return float(min(1.0, max(0.0, s)))


def ks_uniformity(angles) -> KSResult:
    """One-sample two-sided KS test against the uniform law on ``[0, 2 pi)``.

    The p-value is asymptotic (reliable for roughly 35 or more samples).

    Raises:
        EmptySample: no angles given.
    """
    a = np.sort(np.asarray(angles, dtype=float))
    n = len(a)
    if n == 0:
        raise EmptySample("ks_uniformity needs at least one angle")
    u = a / (2 * math.pi)
    i = np.arange(1, n + 1)
    D = float(max((i / n - u).max(), (u - (i - 1) / n).max()))
    return KSResult(D, kolmogorov_sf(math.sqrt(n) * D))


def cap_volume(spec: CapSpec) -> float:
    """Volume of the cap of the radius-``R`` 3-sphere within trace distance ``eps``."""
    if not 0 < spec.epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    eta = math.acos(1 - spec.epsilon**2)
    return 2 * math.pi * spec.R**3 * (eta - 0.5 * math.sin(2 * eta))


def cap_volume_leading(spec: CapSpec) -> float:
    return 8 * math.pi * math.sqrt(2) * spec.epsilon**3 * spec.R**3 / 3


PAULI_AXES = {"I": 0, "X": 1, "Y": 2, "Z": 3}


def min_distance_to_pauli(L: int, pauli: str = "I", max_level: int = 9) -> float:
    """Smallest trace distance from a Pauli to the other exact points at level ``L``.

    Points equal to the Pauli up to sign are skipped.

    Raises:
        BudgetExceeded: for ``L > max_level``.
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    if L > max_level:
        raise BudgetExceeded(f"level {L} exceeds the enumeration budget {max_level}")
    N = 5**L
    pts = enumerate_s4(N, cap=5**max_level)
    comp = np.abs(pts[:, PAULI_AXES[pauli]])
    root = isqrt(N)
    if root * root == N:
        comp = comp[comp != root]
    best = int(comp.max())
    return math.sqrt(max(0.0, 1.0 - best / math.sqrt(N)))


def fit_band_constant(count: int, L: int, p: int = 5) -> float:
    """``c`` in ``count = c * p^(L/2) / L``."""
    return count * L / p ** (L / 2)
