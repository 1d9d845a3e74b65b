"""Meet-in-the-middle direct search for short W circuits.

Points ``(a, b, c, d)`` of norm ``5^L`` near the target are found by hashing
the residues ``5^L - b^2 - c^2`` of the ``(b, c)`` block and probing them
with ``a^2 + d^2`` from the ``(a, d)`` block.  Levels are scanned in
increasing order; a block tolerance of ``sqrt(2) * eps`` makes every level
scan exhaustive, so the first level with a verified hit is the lowest level
holding any point within ``eps``.
"""
from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import kernels
from .core import Circuit, UnitVector4, evaluate, trace_distance
from .errors import EpsilonTooLarge, SearchExhausted, TableCapExceeded
from .exact import exact_synthesize
from .quat import LipschitzQuaternion

DEFAULT_MAX_TABLE = 50_000_000
DEFAULT_FILTER_BOUND = 1000
# Levels below the nominal start that are still scanned (cheap, and they
# catch targets with unusually short approximations).
START_BACKOFF = 5


def _exact(x: float) -> Fraction:
    # Decimal reading, so that e.g. 0.0016 is exactly 5^-4.
    return Fraction(repr(float(x)))


def starting_level(epsilon: float) -> int:
    """Smallest ``L`` with ``5^(-L/3) <= eps``, i.e. ``ceil(3 log5(1/eps))``."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    e3 = _exact(epsilon) ** 3
    level = max(0, math.floor(3 * math.log(1 / epsilon, 5)) - 2)
    while 5**level * e3 < 1:
        level += 1
    while level > 0 and 5 ** (level - 1) * e3 >= 1:
        level -= 1
    return level


def max_level(epsilon: float) -> int:
    """Edge-case cap ``ceil(4 log5(2/eps)) + 2``."""
    return math.ceil(4 * math.log(2 / epsilon, 5)) + 2


def max_table_entries() -> int:
    env = os.environ.get("VFIVE_MAX_TABLE")
    return int(env) if env else DEFAULT_MAX_TABLE


@dataclass(frozen=True)
class SearchPlan:
    epsilon: float
    start: int
    max_L: int
    tau: float

    @classmethod
    def for_epsilon(cls, epsilon: float, backoff: int = START_BACKOFF) -> SearchPlan:
        if not 0 < epsilon <= 0.1:
            raise EpsilonTooLarge(f"direct search needs 0 < eps <= 0.1, got {epsilon}")
        return cls(
            epsilon=epsilon,
            start=max(0, starting_level(epsilon) - backoff),
            max_L=max_level(epsilon),
            tau=math.sqrt(2.0) * epsilon,
        )

    def levels(self) -> range:
        return range(self.start, self.max_L + 1)


@dataclass(frozen=True)
class DirectResult:
    circuit: Circuit
    quaternion: LipschitzQuaternion
    level: int
    distance: float
    elapsed: float
    table_size: int = 0

    @property
    def v_count(self) -> int:
        return self.circuit.v_count


def estimated_table_size(level: int, tau: float) -> float:
    """Number of lattice points in the ``(b, c)`` disk (an upper estimate)."""
    rad = tau * math.sqrt(5.0**level) + 1.0
    return math.pi * rad * rad


def exact_distance_below(q, level: int, target: UnitVector4, epsilon: float) -> bool:
    """High-precision check of ``dist(q / 5^(L/2), target) < eps``."""
    with mpmath.workdps(40 + level):
        root = mpmath.sqrt(mpmath.mpf(5) ** level)
        t = [mpmath.mpf(x) for x in target.as_tuple()]
        u = [mpmath.mpf(x) / root for x in q]
        minus = sum((x - y) ** 2 for x, y in zip(u, t))
        plus = sum((x + y) ** 2 for x, y in zip(u, t))
        return min(minus, plus) / 2 < mpmath.mpf(epsilon) ** 2


def scan_level(target: UnitVector4, level: int, tau: float, epsilon: float, *,
               filter_bound: int = DEFAULT_FILTER_BOUND, all_collisions: bool = True,
               max_entries: int | None = None, backend: str | None = None):
    """First verified point at ``level`` within ``epsilon`` of ``target``.

    Returns ``(quaternion or None, table_size)``.

    Raises:
        TableCapExceeded: the ``(b, c)`` disk would exceed ``max_entries``.
    """
    cap = max_table_entries() if max_entries is None else max_entries
    if estimated_table_size(level, tau) > cap:
        raise TableCapExceeded(f"level {level} needs about {estimated_table_size(level, tau):.3g} table entries (cap {cap})")
    max_hits = 16
    P = 5**level
    while True:
        hits, size, _ = kernels.search_level(
            level, target.as_tuple(), tau, epsilon, backend=backend,
            filter_bound=filter_bound, max_entries=cap,
            all_collisions=all_collisions, max_hits=max_hits,
        )
        for hit in hits:
            q = LipschitzQuaternion(*hit)
            if q.norm() == P and exact_distance_below(q, level, target, epsilon):
                return q, size
        if len(hits) < max_hits:
            return None, size
        max_hits *= 2


def _finish(q, level, target, start_time, size) -> DirectResult:
    circuit = exact_synthesize(q)
    dist = trace_distance(evaluate(circuit), target)
    return DirectResult(circuit, q, level, dist, time.perf_counter() - start_time, size)


def direct_search(target: UnitVector4, epsilon: float, *, filter_bound: int = DEFAULT_FILTER_BOUND,
                  all_collisions: bool = True, max_entries: int | None = None,
                  backend: str | None = None, plan: SearchPlan | None = None) -> DirectResult:
    """Lowest-level W circuit within ``epsilon`` of ``target``.

    Raises:
        EpsilonTooLarge: ``epsilon`` is outside ``(0, 0.1]``.
        TableCapExceeded: a level needs more table entries than allowed.
        SearchExhausted: no point up to the edge-case level cap.
    """
    start = time.perf_counter()
    plan = plan or SearchPlan.for_epsilon(epsilon)
    for level in plan.levels():
        q, size = scan_level(target, level, plan.tau, epsilon, filter_bound=filter_bound,
                             all_collisions=all_collisions, max_entries=max_entries, backend=backend)
        if q is not None:
            return _finish(q, level, target, start, size)
    raise SearchExhausted(f"no approximation within {epsilon} up to level {plan.max_L}")


def fixed_budget_search(target: UnitVector4, v: int, *, max_rounds: int = 12,
                        backend: str | None = None, max_entries: int | None = None) -> DirectResult:
    """Approximation with V count at most ``v`` aimed at precision ``5^(-v/3)``.

    Levels ``v - 1`` and ``v`` together cover every V count up to ``v``.  When
    neither holds a point within the goal, the goal is tripled and the scan is
    repeated.
    """
    start = time.perf_counter()
    goal = 5.0 ** (-v / 3)
    levels = [lv for lv in (v - 1, v) if lv >= 0]
    for _ in range(max_rounds):
        for level in levels:
            q, size = scan_level(target, level, math.sqrt(2.0) * goal, goal,
                                 backend=backend, max_entries=max_entries)
            if q is not None:
                return _finish(q, level, target, start, size)
        goal *= 3
    raise SearchExhausted(f"nothing found at V count {v}")
