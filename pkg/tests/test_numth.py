import random
from math import isqrt

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from vfive.errors import CapExceeded, NotRepresentable
from vfive.numth import (
    FilterVerdict,
    enumerate_s4,
    factorize,
    is_probable_prime,
    is_sum_two_squares,
    is_sum_two_squares_filter,
    prime_two_squares,
    primes_up_to,
    r4_count,
    two_squares_decompose,
)


def brute_two_squares(n):
    return any(isqrt(n - x * x) ** 2 == n - x * x for x in range(isqrt(n) + 1))


def test_primes_up_to_matches_sympy():
    assert primes_up_to(5000) == list(sympy.primerange(2, 5001))


@given(st.integers(0, 10**12))
def test_primality_matches_sympy(n):
    assert is_probable_prime(n) == sympy.isprime(n)


def test_primality_on_large_known_values():
    assert is_probable_prime(2**127 - 1)
    assert not is_probable_prime((2**61 - 1) * (2**31 - 1))
    assert not is_probable_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@given(st.integers(1, 10**15))
def test_factorize_matches_sympy(n):
    assert factorize(n) == dict(sympy.factorint(n))


def test_prime_two_squares_large():
    q = sympy.nextprime(10**30)
    while q % 4 != 1:
        q = sympy.nextprime(q)
    x, y = prime_two_squares(q)
    assert x * x + y * y == q


def test_two_squares_brute_force_small():
    for n in range(3000):
        rep = brute_two_squares(n)
        if rep:
            x, y = two_squares_decompose(n)
            assert x * x + y * y == n and 0 <= x <= y
        else:
            with pytest.raises(NotRepresentable):
                two_squares_decompose(n)
        assert is_sum_two_squares(n) == rep


@given(st.integers(0, 10**18))
def test_two_squares_large_inputs(n):
    rep = all(e % 2 == 0 for p, e in sympy.factorint(n).items() if p % 4 == 3) if n else True
    assert is_sum_two_squares(n) == rep


@given(st.integers(0, 10**9), st.sampled_from([2, 10, 100, 1000]))
def test_filter_no_is_certain(n, bound):
    verdict = is_sum_two_squares_filter(n, bound)
    truth = is_sum_two_squares(n)
    if verdict is FilterVerdict.NO:
        assert not truth
    if verdict is FilterVerdict.YES:
        assert truth


def test_filter_examples():
    assert is_sum_two_squares_filter(0) is FilterVerdict.YES
    assert is_sum_two_squares_filter(3) is FilterVerdict.NO
    assert is_sum_two_squares_filter(21) is FilterVerdict.NO  # 3 * 7
    assert is_sum_two_squares_filter(9 * 13) is FilterVerdict.YES
    with pytest.raises(ValueError):
        is_sum_two_squares_filter(5, 1)


def test_r4_matches_brute_force():
    limit = 600
    r = isqrt(limit)
    xs = np.arange(-r, r + 1)
    sq = xs * xs
    s = (sq[:, None, None, None] + sq[None, :, None, None] + sq[None, None, :, None] + sq[None, None, None, :]).ravel()
    counts = np.bincount(s[s <= limit], minlength=limit + 1)
    for n in range(1, limit + 1):
        assert r4_count(n) == counts[n], n
    with pytest.raises(OverflowError):
        r4_count(1 << 64)


@pytest.mark.parametrize("n", [1, 2, 5, 25, 50, 125, 625, 3125])
def test_enumerate_s4_count_and_content(n):
    pts = enumerate_s4(n)
    assert len(pts) == r4_count(n)
    assert all(int(sum(int(x) ** 2 for x in p)) == n for p in pts)
    assert len({tuple(p) for p in pts.tolist()}) == len(pts)
    assert pts.tolist() == sorted(pts.tolist())


def test_enumerate_s4_cap():
    with pytest.raises(CapExceeded):
        enumerate_s4(5**10)


def test_two_squares_random_products_of_primes():
    rng = random.Random(5)
    for _ in range(50):
        n = 1
        for _ in range(rng.randrange(1, 5)):
            p = sympy.randprime(10**6, 10**9)
            n *= p if p % 4 == 1 else p * p
        x, y = two_squares_decompose(n)
        assert x * x + y * y == n
