import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vfive.approx_rand import (
    SearchWindow,
    _LazyShuffle,
    approx_rz,
    approx_unitary,
    choose_level,
    euler_zxz,
)
from vfive.core import GateToken, UnitVector4, circuit_quaternion, evaluate, qmul, trace_distance
from vfive.errors import EpsilonTooLarge, WindowExhausted

from conftest import haar


def test_choose_level_examples():
    assert choose_level(1e-3) == 18
    assert choose_level(2 * 5**-5) == 19
    with pytest.raises(EpsilonTooLarge):
        choose_level(0.5)
    with pytest.raises(EpsilonTooLarge):
        choose_level(2 * 5**-4)


@given(st.floats(1e-12, 3e-3))
def test_choose_level_is_largest(eps):
    L = choose_level(eps)
    assert eps < 2 * 5 ** (-L / 4) * (1 + 1e-12)
    assert eps >= 2 * 5 ** (-(L + 1) / 4) * (1 - 1e-12)


@given(st.floats(-math.pi / 4, math.pi / 4), st.floats(1e-6, 1e-2), st.integers(5, 30))
def test_window_invariants(theta, eps, L):
    w = SearchWindow.build(theta, eps, L)
    assert w.phi == pytest.approx(math.sqrt(2) * eps * (1 - eps**2 / 4))
    R = math.sqrt(5**L)
    assert w.w_lo > R * math.sin(theta / 2 - w.phi) - 1e-6
    assert w.w_hi < R * math.sin(theta / 2 + w.phi) + 1e-6


@given(st.integers(-50, 50), st.integers(0, 60), st.integers(0, 1000))
def test_lazy_shuffle_is_a_permutation(lo, width, seed):
    out = list(_LazyShuffle(lo, lo + width - 1, random.Random(seed)))
    assert sorted(out) == list(range(lo, lo + width))


def test_identity_and_clifford_angles():
    assert str(approx_rz(0.0, 1e-3).circuit) == ""
    assert str(approx_rz(math.pi / 2, 1e-3).circuit) == "Sd"
    assert str(approx_rz(-math.pi / 2, 1e-3).circuit) == "S"
    assert str(approx_rz(math.pi, 1e-3).circuit) == "Z"


def test_example_bounds():
    res = approx_rz(0.7, 1e-4, seed=2)
    assert res.v_count <= math.floor(4 * math.log(20000, 5)) == 24
    assert res.distance < 1e-4
    assert trace_distance(evaluate(res.circuit), UnitVector4.rz(0.7)) == pytest.approx(res.distance, abs=1e-12)


@settings(max_examples=30)
@given(st.floats(-math.pi, math.pi), st.sampled_from([1e-3, 1e-4, 1e-6]), st.integers(0, 10**6))
def test_rz_contract(theta, eps, seed):
    res = approx_rz(theta, eps, seed=seed)
    q, n = circuit_quaternion(res.circuit)
    assert res.distance < eps
    assert res.v_count <= res.level
    assert trace_distance(evaluate(res.circuit), UnitVector4.rz(theta)) < eps
    assert all(t.is_v or t in (GateToken.X, GateToken.Y, GateToken.Z, GateToken.S, GateToken.Sd)
               for t in res.circuit)


def test_determinism_and_seed_variation():
    a = approx_rz(0.3, 1e-3, seed=1)
    assert approx_rz(0.3, 1e-3, seed=1).circuit == a.circuit
    others = {str(approx_rz(0.3, 1e-3, seed=s).circuit) for s in range(2, 8)}
    assert len(others) > 1


def test_general_completion():
    for seed in range(5):
        res = approx_rz(0.9, 1e-3, seed=seed, general=True)
        assert res.distance < 1e-3


def test_escalation_exhausted(monkeypatch):
    import vfive.approx_rand as ar

    def fail(*args, **kwargs):
        raise WindowExhausted("empty")

    monkeypatch.setattr(ar, "search_rz_point", fail)
    with pytest.raises(WindowExhausted):
        approx_rz(0.3, 1e-3)


@given(st.lists(st.floats(-1, 1), min_size=4, max_size=4).filter(lambda v: sum(x * x for x in v) > 1e-2))
def test_euler_reconstructs(v):
    g = UnitVector4.normalized(v)
    angles = euler_zxz(g)
    if angles is None:
        assert math.hypot(g.beta, g.gamma) < 1e-12
        return
    a, b, c = angles
    rz = lambda t: (math.cos(t / 2), 0, 0, math.sin(t / 2))  # noqa: E731
    rx = (math.cos(b / 2), math.sin(b / 2), 0, 0)
    prod = UnitVector4.normalized(qmul(qmul(rz(a), rx), rz(c)))
    assert trace_distance(prod, g) < 1e-7


def test_unitary_examples(rng):
    assert str(approx_unitary(UnitVector4(1.0, 0.0, 0.0, 0.0), 1e-3).circuit) == ""
    eps = 1e-3
    res = approx_unitary(UnitVector4.rz(0.4), eps)
    assert res.v_count <= 4 * math.log(2 * 3 / eps, 5)
    for i, g in enumerate(haar(rng, 10)):
        res = approx_unitary(g, eps, seed=i)
        assert res.distance < eps
        assert res.v_count <= 12 * math.log(2 * 3 / eps, 5)
        assert res.to_dict()["v_count"] == res.v_count


@pytest.mark.parametrize("L", [8, 12, 16])
def test_fixed_level_precision(L):
    eps = 2 * 5 ** (-L / 4)
    rng = np.random.default_rng(L)
    d = [approx_rz(t, eps, seed=i, level=L).distance for i, t in enumerate(rng.uniform(-3, 3, 40))]
    assert np.mean(d) <= eps
