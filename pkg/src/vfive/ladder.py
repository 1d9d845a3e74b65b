"""Resource-state ladder: Monte Carlo, exact Markov-chain oracle, cost model.

The ladder climbs from ``|H_0>`` to ``|H_k>`` one probabilistic step at a
time.  Every step consumes one fresh ``|H_0>``; success moves one level up
and failure one level down.  Failing at level 0 leaves nothing, so a new
``|H_0>`` must be loaded.  Failing at level 1 hands back an ``|H_0>``; the two
reuse policies differ in whether that state is kept.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

THETA0 = math.pi / 8
MAX_LEVEL = 10


class ReusePolicy(str, enum.Enum):
    REUSE = "reuse"
    DISCARD = "discard"


def ladder_angle(i: int, theta0: float = THETA0) -> float:
    """``theta_i`` with ``cot(theta_i) = cot(theta0)^(i+1)``."""
    if i < 0:
        raise ValueError("level must be nonnegative")
    return math.atan(math.tan(theta0) ** (i + 1))


def ladder_step_prob(i: int, theta0: float = THETA0) -> float:
    """Success probability of the step from level ``i``."""
    t = ladder_angle(i, theta0)
    return math.cos(t) ** 2 * math.cos(theta0) ** 2 + math.sin(t) ** 2 * math.sin(theta0) ** 2


@dataclass(frozen=True)
class LadderConfig:
    target_level: int = 1
    trials: int = 100_000
    seed: int = 0
    reuse_policy: ReusePolicy = ReusePolicy.DISCARD
    theta0: float = THETA0
    workers: int = 1

    def __post_init__(self):
        if self.target_level < 1:
            raise ValueError("target_level must be at least 1")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass(frozen=True)
class LadderStats:
    mean_h0_cost: float
    median_h0_cost: float
    stderr: float
    histogram: dict[int, int]
    trials: int


# Walker states: EMPTY (nothing held) or holding |H_i>, encoded as i >= 0.
_EMPTY = -1


def _descent_target(level: int, policy: ReusePolicy) -> int:
    if level == 0:
        return _EMPTY
    if level == 1 and policy is ReusePolicy.DISCARD:
        return _EMPTY
    return level - 1


def analytic_ladder_cost(target_level: int, theta0: float = THETA0,
                         reuse_policy: ReusePolicy = ReusePolicy.DISCARD) -> float:
    """Expected number of fresh ``|H_0>`` states to reach ``|H_target>``.

    Solves the linear system of the absorbing walk over the states
    ``EMPTY, 0, ..., target - 1``.
    """
    if not 1 <= target_level <= MAX_LEVEL:
        raise ValueError(f"target_level must lie in 1..{MAX_LEVEL}")
    policy = ReusePolicy(reuse_policy)
    n = target_level + 1  # index 0 is EMPTY, index i + 1 is level i
    A = np.eye(n)
    b = np.ones(n)
    A[0, 1] -= 1.0  # loading costs one state and leads to level 0
    for i in range(target_level):
        p = ladder_step_prob(i, theta0)
        row = i + 1
        if i + 1 < target_level:
            A[row, row + 1] -= p
        A[row, _descent_target(i, policy) + 1] -= 1 - p
    return float(np.linalg.solve(A, b)[0])


def _simulate_chunk(cfg: LadderConfig, n: int, rng: np.random.Generator) -> np.ndarray:
    probs = np.array([ladder_step_prob(i, cfg.theta0) for i in range(cfg.target_level)])
    state = np.full(n, _EMPTY, dtype=np.int64)
    cost = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    policy = ReusePolicy(cfg.reuse_policy)
    while active.size:
        s = state[active]
        cost[active] += 1
        load = s == _EMPTY
        step = ~load
        nxt = s.copy()
        nxt[load] = 0
        lv = s[step]
        win = rng.random(lv.size) < probs[lv]
        down = np.where(lv == 0, _EMPTY, lv - 1)
        if policy is ReusePolicy.DISCARD:
            down = np.where(lv == 1, _EMPTY, down)
        nxt[step] = np.where(win, lv + 1, down)
        state[active] = nxt
        active = active[nxt < cfg.target_level]
    return cost


def simulate_ladder(cfg: LadderConfig) -> LadderStats:
    """Monte Carlo of the ladder; bit-reproducible for fixed inputs.

    Trials are split into ``cfg.workers`` chunks; chunk ``k`` draws from
    ``default_rng(seed + k)``.
    """
    sizes = [cfg.trials // cfg.workers + (k < cfg.trials % cfg.workers) for k in range(cfg.workers)]
    parts = [_simulate_chunk(cfg, m, np.random.default_rng(cfg.seed + k)) for k, m in enumerate(sizes) if m]
    costs = np.concatenate(parts)
    values, counts = np.unique(costs, return_counts=True)
    std = float(costs.std(ddof=1)) if costs.size > 1 else 0.0
    return LadderStats(
        mean_h0_cost=float(costs.mean()),
        median_h0_cost=float(np.median(costs)),
        stderr=std / math.sqrt(costs.size),
        histogram=dict(zip(values.tolist(), counts.tolist())),
        trials=int(costs.size),
    )


@dataclass(frozen=True)
class CostModel:
    c_h2: float = 4.35
    t_per_attempt: float = 1.0
    success_prob: float = 0.5
    backoff_cost: float = 0.0

    def __post_init__(self):
        if not 0 < self.success_prob < 1:
            raise ValueError("success_prob must lie in (0, 1)")


@dataclass(frozen=True)
class VGateCost:
    expected_h0: float
    expected_attempts: float
    success_path_cost: float
    failure_then_success_cost: float
    per_attempt_breakdown: list[float]
    cumulative: list[float]


def _q(x: float) -> Fraction:
    return Fraction(repr(float(x)))


def v_gate_cost(model: CostModel, attempts_before_backoff: int = 4) -> VGateCost:
    """Cost of an exact V3 built from ``|H_2>`` resources with repeat-until-success.

    Attempt ``k`` needs a resource costing ``r(k)``, with ``r(1) = c_h2`` and
    ``r(k+1) = 2 r(k) / p`` (four times as much at ``p = 1/2``).  Attempt
    counts follow a geometric law; the mass left after the last attempt is
    charged ``backoff_cost`` on top of the spent resources.  Costs beyond
    ``r(2)`` are extrapolations.
    """
    if attempts_before_backoff < 1:
        raise ValueError("attempts_before_backoff must be at least 1")
    p = _q(model.success_prob)
    t = _q(model.t_per_attempt)
    r = [_q(model.c_h2)]
    for _ in range(1, max(2, attempts_before_backoff)):
        r.append(2 * r[-1] / p)
    cumulative = [t + sum(r[: k + 1]) for k in range(len(r))]
    expected = Fraction(0)
    for k in range(attempts_before_backoff):
        expected += (1 - p) ** k * p * cumulative[k]
    expected += (1 - p) ** attempts_before_backoff * (cumulative[attempts_before_backoff - 1] + _q(model.backoff_cost))
    return VGateCost(
        expected_h0=float(expected),
        expected_attempts=float(1 / p),
        success_path_cost=float(cumulative[0]),
        failure_then_success_cost=float(cumulative[1]),
        per_attempt_breakdown=[float(x) for x in r[:attempts_before_backoff]],
        cumulative=[float(x) for x in cumulative[:attempts_before_backoff]],
    )


@dataclass(frozen=True)
class V3Angles:
    theta: float
    theta_prime: float
    theta2: float
    shift_ok: bool
    ladder_ok: bool


def v3_angle_identities(tol: float = 1e-12) -> V3Angles:
    """Rotation angle of V3 and its split into ladder and T rotations.

    ``V3 = (I + 2iZ)/sqrt 5`` equals ``Z(theta)`` up to phase, with
    ``e^(i theta) = (-3 - 4i)/5`` taken in ``[0, 2 pi)``.  Then
    ``theta = theta' + pi`` with ``cos(theta') = 3/5``, and
    ``theta' = 2 theta_2 + pi/4``.
    """
    theta = math.atan2(-4 / 5, -3 / 5) % (2 * math.pi)
    theta_prime = math.acos(3 / 5)
    theta2 = ladder_angle(2)
    return V3Angles(
        theta=theta,
        theta_prime=theta_prime,
        theta2=theta2,
        shift_ok=abs(theta - theta_prime - math.pi) < tol,
        ladder_ok=abs(theta_prime - 2 * theta2 - math.pi / 4) < tol,
    )
