import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special, stats

from vfive.errors import BudgetExceeded, EmptySample
from vfive.geomlab import (
    CapSpec,
    RingSpec,
    SegmentSpec,
    cap_volume,
    cap_volume_leading,
    count_ring_projections,
    count_segment_projections,
    fit_band_constant,
    inner_threshold,
    kolmogorov_sf,
    ks_uniformity,
    min_distance_to_pauli,
    projection_angles,
    ring_counts,
    ring_points,
    two_squares_table,
)
from vfive.numth import is_sum_two_squares


def brute_ring(N, Delta):
    inner = max(0.0, math.sqrt(N) - Delta) ** 2
    r = math.isqrt(N)
    pts = [(x, y) for x in range(-r, r + 1) for y in range(-r, r + 1)
           if inner < x * x + y * y < N]
    proj = [p for p in pts if is_sum_two_squares(N - p[0] ** 2 - p[1] ** 2)]
    return pts, proj


@pytest.mark.parametrize("N,Delta", [(625, 4), (25, 4), (125, 2.5), (3125, 1), (5, 0.5), (625, 30)])
def test_ring_matches_brute_force(N, Delta):
    pts, proj = brute_ring(N, Delta)
    assert ring_counts(N, Delta) == (len(pts), len(proj))
    x, y = ring_points(N, Delta)
    assert sorted(zip(x.tolist(), y.tolist())) == sorted(pts)


def test_ring_reference_values():
    assert ring_counts(625, 4) == (568, 224)
    assert ring_counts(25, 4) == (64, 36)
    assert inner_threshold(625, 4) == 442


@given(st.integers(1, 3000), st.floats(0.1, 20))
def test_inner_threshold_is_exact(N, Delta):
    T = inner_threshold(N, Delta)
    bound = max(0.0, math.sqrt(N) - Delta) ** 2
    assert T >= 1
    assert T > bound - 1e-9
    assert T - 1 <= bound + 1e-9 or T == 1


def test_two_squares_table():
    t = two_squares_table(2000)
    assert [m for m in range(2001) if t[m]] == [m for m in range(2001) if is_sum_two_squares(m)]


def test_segment_subset_and_symmetry():
    ring = RingSpec(5, 4, 4)
    full = count_ring_projections(ring)
    segs = [count_segment_projections(SegmentSpec(ring, a)) for a in (0, math.pi / 2, math.pi, 3 * math.pi / 2)]
    assert len(set(segs)) == 1
    assert segs[0] == (55, 21)
    assert segs[0].grid_points <= full.grid_points
    assert segs[0].projection_points <= segs[0].grid_points


def test_ring_spec_validation():
    with pytest.raises(ValueError):
        RingSpec(7, 2, 1)
    with pytest.raises(ValueError):
        RingSpec(5, 2, 0)


def test_budget():
    with pytest.raises(BudgetExceeded):
        ring_points(5**20, 4, budget=1000)


@pytest.mark.parametrize("lam", [0.2, 0.5, 0.8, 1.0, 1.17, 1.19, 1.5, 2.5])
def test_kolmogorov_sf_matches_scipy(lam):
    assert kolmogorov_sf(lam) == pytest.approx(special.kolmogorov(lam), abs=1e-10)


def test_ks_matches_scipy():
    rng = np.random.default_rng(5)
    for sample in (rng.uniform(0, 2 * math.pi, 400), rng.beta(2, 2, 300) * 2 * math.pi):
        ours = ks_uniformity(sample)
        ref = stats.kstest(sample / (2 * math.pi), "uniform")
        assert ours.D == pytest.approx(ref.statistic, abs=1e-12)
        assert ours.p_value == pytest.approx(special.kolmogorov(math.sqrt(len(sample)) * ref.statistic), abs=1e-9)


def test_ks_examples():
    assert ks_uniformity(np.full(100, 1.0)).p_value < 1e-6
    assert ks_uniformity(np.linspace(0, 2 * math.pi, 1000, endpoint=False)).p_value > 0.99
    with pytest.raises(EmptySample):
        ks_uniformity([])


def test_projection_angles():
    ring = RingSpec(5, 6, 4)
    a = projection_angles(ring)
    assert len(a) == count_ring_projections(ring).projection_points
    assert ((a >= 0) & (a < 2 * math.pi)).all()
    assert len(projection_angles(ring, "disk")) >= len(a)
    with pytest.raises(ValueError):
        projection_angles(ring, "ball")


@pytest.mark.parametrize("eps", [0.01, 0.1, 0.3])
def test_cap_volume_against_quadrature(eps):
    eta = math.acos(1 - eps * eps)
    ref, _ = integrate.quad(lambda t: 4 * math.pi * math.sin(t) ** 2, 0, eta)
    assert cap_volume(CapSpec(1.0, eps)) == pytest.approx(ref, rel=1e-10)
    assert cap_volume(CapSpec(2.0, eps)) == pytest.approx(8 * ref, rel=1e-10)


def test_cap_volume_values():
    assert cap_volume(CapSpec(1.0, 0.1)) == pytest.approx(0.0118299, abs=1e-7)
    for eps in (0.001, 0.01):
        spec = CapSpec(1.0, eps)
        assert abs(cap_volume(spec) / cap_volume_leading(spec) - 1) < 0.01
    with pytest.raises(ValueError):
        cap_volume(CapSpec(1.0, 1.5))


def test_min_distance():
    assert min_distance_to_pauli(0) == 1.0
    assert min_distance_to_pauli(2) == pytest.approx(math.sqrt(0.2))
    assert min_distance_to_pauli(2, "Z") == pytest.approx(math.sqrt(0.2))
    with pytest.raises(BudgetExceeded):
        min_distance_to_pauli(12)
    with pytest.raises(ValueError):
        min_distance_to_pauli(-1)


def test_fit_band_constant():
    assert fit_band_constant(125, 2) == pytest.approx(50)
