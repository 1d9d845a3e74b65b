import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vfive.errors import NotDivisible
from vfive.quat import GENERATORS, UNITS, LipschitzQuaternion, generator_set, try_right_divide

ints = st.integers(-50, 50)
quats = st.builds(LipschitzQuaternion, ints, ints, ints, ints)


def left_matrix(q):
    # Oracle: left multiplication by q as a 4x4 integer matrix.
    a, b, c, d = q
    return np.array([[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]], dtype=object)


@given(quats, quats)
def test_product_matches_matrix_oracle(p, q):
    expect = left_matrix(p).dot(np.array(list(q), dtype=object))
    assert list(p * q) == list(expect)


@given(quats, quats)
def test_norm_is_multiplicative(p, q):
    assert (p * q).norm() == p.norm() * q.norm()


@given(quats, quats)
def test_conjugate_reverses_products(p, q):
    assert (p * q).conjugate() == q.conjugate() * p.conjugate()


@given(quats, st.sampled_from(GENERATORS))
def test_right_division_undoes_multiplication(q, g):
    assert (q * g).try_right_divide(g) == q
    assert try_right_divide(q * g, g) == q


def test_right_division_failure():
    with pytest.raises(NotDivisible):
        LipschitzQuaternion(1, 0, 0, 0).try_right_divide(LipschitzQuaternion(1, 2, 0, 0))


def test_basis_elements():
    i, j, k = (LipschitzQuaternion(0, 1, 0, 0), LipschitzQuaternion(0, 0, 1, 0), LipschitzQuaternion(0, 0, 0, 1))
    assert i * j == k and j * k == i and k * i == j
    assert j * i == -k
    assert (i * i) == LipschitzQuaternion(-1, 0, 0, 0)


def test_generator_set_layout():
    gs = generator_set()
    assert len(gs) == 14
    assert all(u.norm() == 1 for u in UNITS) and len(UNITS) == 8
    assert all(g.norm() == 5 for g in GENERATORS)
    assert gs[8:] == list(GENERATORS)


def test_parse_and_validation():
    assert LipschitzQuaternion.parse("1, 2,0,-3") == LipschitzQuaternion(1, 2, 0, -3)
    with pytest.raises((TypeError, ValueError)):
        LipschitzQuaternion(1.5, 0, 0, 0)
    with pytest.raises(ValueError):
        LipschitzQuaternion.parse("1,2,3")
