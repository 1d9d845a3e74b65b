"""Randomized approximation of Z rotations and, via Euler angles, of any gate.

For ``Rz(theta)`` the target point is ``(cos(theta/2), 0, 0, sin(theta/2))``.
A Z coefficient ``z`` is drawn at random from a window of integers; every
``x`` on that line inside the dilated spherical cap is then tried, and the
rest ``5^L - x^2 - z^2`` is split into two squares for the X and Y slots.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import mpmath

from .core import Circuit, GateToken, UnitVector4, evaluate, trace_distance
from .errors import EpsilonTooLarge, FactorizationTimeout, NotRepresentable, WindowExhausted
from .exact import exact_synthesize
from .numth import is_probable_prime, prime_two_squares, two_squares_decompose
from .quat import LipschitzQuaternion

EPS_THRESHOLD = 2 * 5**-4
MAX_ESCALATIONS = 8
_HALF_PI = math.pi / 2


def choose_level(epsilon: float) -> int:
    """Largest ``L`` with ``eps < 2 * 5^(-L/4)``, i.e. ``floor(4 log5(2/eps))``.

    Raises:
        EpsilonTooLarge: ``eps >= 2 * 5^-4``.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    e = Fraction(repr(float(epsilon)))
    if e >= Fraction(2, 625):
        raise EpsilonTooLarge(f"epsilon {epsilon} is not below 2*5^-4")
    # eps < 2 * 5^(-L/4)  <=>  (eps/2)^4 * 5^L < 1.
    q = (e / 2) ** 4
    level = max(4, math.floor(4 * math.log(2 / epsilon, 5)) - 2)
    while q * 5 ** (level + 1) < 1:
        level += 1
    while q * 5**level >= 1:
        level -= 1
    return level


@dataclass(frozen=True)
class SearchWindow:
    """Integers ``w_lo..w_hi`` strictly inside ``5^(L/2) sin(theta/2 -+ phi)``."""

    L: int
    phi: float
    w_lo: int
    w_hi: int

    @classmethod
    def build(cls, theta: float, epsilon: float, L: int) -> SearchWindow:
        phi = math.sqrt(2.0) * epsilon * (1 - epsilon**2 / 4)
        with mpmath.workdps(30 + L):
            R = mpmath.sqrt(mpmath.mpf(5) ** L)
            half = mpmath.mpf(theta) / 2
            lo = R * mpmath.sin(half - phi)
            hi = R * mpmath.sin(half + phi)
            w_lo = int(mpmath.floor(lo)) + 1
            w_hi = int(mpmath.ceil(hi)) - 1
        return cls(L, phi, w_lo, w_hi)

    def __len__(self):
        return max(0, self.w_hi - self.w_lo + 1)


class _LazyShuffle:
    """Draw integers from ``lo..hi`` without replacement (sparse Fisher-Yates)."""

    def __init__(self, lo: int, hi: int, rng: random.Random):
        self.lo = lo
        self.n = max(0, hi - lo + 1)
        self.rng = rng
        self.swaps: dict[int, int] = {}

    def __iter__(self):
        return self

    def __next__(self) -> int:
        if self.n == 0:
            raise StopIteration
        i = self.rng.randrange(self.n)
        self.n -= 1
        picked = self.swaps.get(i, i)
        self.swaps[i] = self.swaps.get(self.n, self.n)
        self.swaps.pop(self.n, None)
        return self.lo + picked


@dataclass(frozen=True)
class ApproxResult:
    circuit: Circuit
    distance: float
    level: int
    elapsed: float
    seed: int
    target: UnitVector4 | None = field(default=None, compare=False)

    @property
    def v_count(self) -> int:
        return self.circuit.v_count

    def to_dict(self) -> dict:
        return {
            "circuit": str(self.circuit),
            "v_count": self.v_count,
            "distance": self.distance,
            "level": self.level,
            "seed": self.seed,
            "millis": round(self.elapsed * 1000, 3),
        }


def _complete(n: int, general: bool, seed: int) -> tuple[int, int] | None:
    """``(b, c)`` with ``b^2 + c^2 == n``, or None."""
    if general:
        try:
            return tuple(two_squares_decompose(n, seed=seed, time_budget=1.0))
        except (NotRepresentable, FactorizationTimeout):
            return None
    if n == 1:
        return 0, 1
    if n % 4 == 1 and is_probable_prime(n, rounds=16, seed=seed):
        return prime_two_squares(n, random.Random(seed))
    return None


def search_rz_point(theta: float, epsilon: float, L: int, rng: random.Random,
                    general: bool = False) -> LipschitzQuaternion:
    """One run of the randomized search at level ``L`` for ``|theta| <= pi/4``.

    Raises:
        WindowExhausted: every sampled line was tried without a completion.
    """
    P = 5**L
    window = SearchWindow.build(theta, epsilon, L)
    target = UnitVector4.rz(theta)
    with mpmath.workdps(30 + L):
        R = mpmath.sqrt(mpmath.mpf(P))
        cos_h = mpmath.cos(mpmath.mpf(theta) / 2)
        sin_h = mpmath.sin(mpmath.mpf(theta) / 2)
        floor_val = R * (1 - mpmath.mpf(epsilon) ** 2)
        for z in _LazyShuffle(window.w_lo, window.w_hi, rng):
            if not general and z % 2:
                continue
            rest = P - z * z
            if rest < 0:
                continue
            x_hi = isqrt(rest)
            # Strict cap inequality x cos + z sin > R (1 - eps^2).
            x_lo = int(mpmath.floor((floor_val - z * sin_h) / cos_h)) + 1
            for x in range(max(x_lo, -x_hi), x_hi + 1):
                if not general and x % 2:
                    continue
                bc = _complete(rest - x * x, general, rng.randrange(1 << 30))
                if bc is None:
                    continue
                q = LipschitzQuaternion(x, bc[0], bc[1], z)
                u = UnitVector4.from_quaternion(q, P)
                if trace_distance(u, target) < epsilon:
                    return q
    raise WindowExhausted(f"window of {len(window)} lines at level {L} exhausted")


def _clifford_prefix(k: int) -> tuple[GateToken, ...]:
    # Rz(k pi/2) up to phase: Sd is +pi/2, Z is pi, S is -pi/2.
    return {0: (), 1: (GateToken.Sd,), 2: (GateToken.Z,), 3: (GateToken.S,)}[k % 4]


def _reduce_angle(theta: float) -> tuple[int, float]:
    k = round(theta / _HALF_PI)
    return k, theta - k * _HALF_PI


def approx_rz(theta: float, epsilon: float, seed: int = 0, level: int | None = None,
              general: bool = False, rng: random.Random | None = None,
              max_escalations: int = MAX_ESCALATIONS) -> ApproxResult:
    """Approximate ``Rz(theta)`` to trace distance below ``epsilon``.

    Args:
        theta: Rotation angle in radians.
        epsilon: Requested precision.
        seed: Seed for the candidate order; ignored if ``rng`` is given.
        level: Starting level; defaults to ``choose_level(epsilon)``.
        general: Use the full two-squares completion instead of the
            even-coordinates prime test.
        rng: Shared random stream (used by ``approx_unitary``).
        max_escalations: How many times to retry one level higher.

    Raises:
        EpsilonTooLarge: when no level is defined for ``epsilon``.
        WindowExhausted: when every escalation failed.
    """
    start = time.perf_counter()
    rng = rng or random.Random(seed)
    if level is None:
        level = choose_level(epsilon)
    target = UnitVector4.rz(theta)
    k, rest = _reduce_angle(theta)
    prefix = Circuit(_clifford_prefix(k))
    if rest == 0.0:
        circuit, used = prefix, 0
    else:
        for attempt in range(max_escalations + 1):
            used = level + attempt
            try:
                q = search_rz_point(rest, epsilon, used, rng, general)
                break
            except WindowExhausted:
                if attempt == max_escalations:
                    raise
        circuit = prefix + exact_synthesize(q)
    dist = trace_distance(evaluate(circuit), target)
    if not dist < epsilon:  # pragma: no cover - guarded by the search itself
        raise WindowExhausted(f"verification failed: {dist} >= {epsilon}")
    return ApproxResult(circuit, dist, used, time.perf_counter() - start, seed, target)


def euler_zxz(g: UnitVector4) -> tuple[float, float, float] | None:
    """Angles ``(a, b, c)`` with ``g = Rz(a) Rx(b) Rz(c)`` in time order.

    Returns None when the X angle vanishes (``g`` is a Z rotation).
    """
    alpha, beta, gamma, delta = g.as_tuple()
    cb = math.hypot(alpha, delta)
    sb = math.hypot(beta, gamma)
    if sb < 1e-12:
        return None
    s = math.atan2(delta, alpha)  # (a + c) / 2
    d = math.atan2(gamma, beta)  # (a - c) / 2
    return s + d, 2 * math.atan2(sb, cb), s - d


def _nontrivial(theta: float) -> bool:
    return _reduce_angle(theta)[1] != 0.0


def approx_unitary(g: UnitVector4, epsilon: float, seed: int = 0, general: bool = False) -> ApproxResult:
    """Approximate any gate as ``Rz(a) . H Rz(b) H . Rz(c)``.

    Each leg is searched at the level chosen for ``epsilon`` with precision
    ``epsilon / n``, where ``n`` counts the legs that are not Clifford
    rotations, so the total error stays below ``epsilon``.
    """
    start = time.perf_counter()
    rng = random.Random(seed)
    level = choose_level(epsilon)
    angles = euler_zxz(g)
    if angles is None:
        legs = [2 * math.atan2(g.delta, g.alpha)]
    else:
        legs = list(angles)
    n = max(1, sum(_nontrivial(t) for t in legs))
    leg_eps = epsilon / n
    circuit = Circuit()
    top = 0
    for i, theta in enumerate(legs):
        res = approx_rz(theta, leg_eps, level=level, general=general, rng=rng)
        part = res.circuit
        if i == 1:
            part = Circuit((GateToken.H,)) + part + Circuit((GateToken.H,))
        circuit = circuit + part
        top = max(top, res.level)
    dist = trace_distance(evaluate(circuit), g)
    if not dist < epsilon:  # pragma: no cover
        raise WindowExhausted(f"verification failed: {dist} >= {epsilon}")
    return ApproxResult(circuit, dist, top, time.perf_counter() - start, seed, g)
