"""Integer number theory for the synthesis searches.

Probabilistic primality, sums of two squares (prime shortcut plus a
factorization route), a cheap sum-of-two-squares filter, Jacobi's four-square
count and explicit enumeration of four-square representations.
"""
from __future__ import annotations

import enum
import math
import random
import time
from math import gcd, isqrt
from typing import NamedTuple

import numpy as np

from .errors import CapExceeded, FactorizationTimeout, NotRepresentable

LANDAU_RAMANUJAN = 0.7642236535

DEFAULT_S4_CAP = 5**9


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


_SMALL_PRIMES = primes_up_to(1000)


def is_probable_prime(n: int, rounds: int = 32, seed: int = 0) -> bool:
    """Miller-Rabin test; a composite survives with probability <= 4**-rounds."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(seed)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_minus_one(p: int, rng: random.Random | None = None) -> int:
    """A square root of -1 modulo a prime ``p = 1 mod 4``."""
    if p == 2:
        return 1
    if p % 4 != 1:
        raise ValueError(f"-1 is not a square modulo {p}")
    rng = rng or random.Random(p)
    e = (p - 1) // 4
    for _ in range(256):
        x = pow(rng.randrange(2, p - 1), e, p)
        if x * x % p == p - 1:
            return x
    raise ValueError(f"{p} does not look prime")


def prime_two_squares(p: int, rng: random.Random | None = None) -> tuple[int, int]:
    """Write a prime ``p = 1 mod 4`` (or 2) as ``x^2 + y^2``.

    Runs the Euclidean algorithm on ``(p, r)`` with ``r^2 = -1 mod p`` and
    stops at the first remainder below ``sqrt(p)``.
    """
    if p == 2:
        return 1, 1
    r = sqrt_minus_one(p, rng)
    a, b = p, r
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    rest = p - b * b
    y = isqrt(rest)
    if y * y != rest:
        raise ValueError(f"{p} is not a prime = 1 mod 4")
    return b, y


def _pollard_brent(n: int, rng: random.Random, deadline: float) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                if time.monotonic() > deadline:
                    raise FactorizationTimeout(f"could not factor {n} within budget")
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, seed: int = 0, time_budget: float = 10.0) -> dict[int, int]:
    """Prime factorization by trial division then Pollard-Brent rho.

    Raises:
        FactorizationTimeout: when the rho stage exceeds ``time_budget`` seconds.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n == 1:
        return factors
    rng = random.Random(seed)
    deadline = time.monotonic() + time_budget
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m, seed=seed):
            factors[m] = factors.get(m, 0) + 1
            continue
        root = isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        f = _pollard_brent(m, rng, deadline)
        stack += [f, m // f]
    return dict(sorted(factors.items()))


class TwoSquares(NamedTuple):
    x: int
    y: int


def _gauss_mul(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
    return p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0]


def two_squares_decompose(n: int, seed: int = 0, time_budget: float = 10.0) -> TwoSquares:
    """Return ``(x, y)`` with ``x^2 + y^2 == n`` and ``0 <= x <= y``.

    Primes ``= 1 mod 4`` take the square-root-of-minus-one shortcut; other
    inputs are factored and recombined as Gaussian integers.

    Raises:
        NotRepresentable: some prime ``= 3 mod 4`` divides ``n`` to an odd power.
        FactorizationTimeout: the factorization route ran out of time.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return TwoSquares(0, 0)
    rng = random.Random(seed)
    if n % 4 == 1 and is_probable_prime(n, seed=seed):
        x, y = prime_two_squares(n, rng)
        return TwoSquares(*sorted((x, y)))
    z = (1, 0)
    for p, e in factorize(n, seed=seed, time_budget=time_budget).items():
        if p % 4 == 3:
            if e % 2:
                raise NotRepresentable(f"{n} has the prime {p} to an odd power")
            z = (z[0] * p ** (e // 2), z[1] * p ** (e // 2))
            continue
        base = (1, 1) if p == 2 else prime_two_squares(p, rng)
        for _ in range(e):
            z = _gauss_mul(z, base)
    x, y = sorted((abs(z[0]), abs(z[1])))
    return TwoSquares(x, y)


def is_sum_two_squares(n: int, seed: int = 0) -> bool:
    try:
        two_squares_decompose(n, seed=seed)
    except NotRepresentable:
        return False
    return True


class FilterVerdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def is_sum_two_squares_filter(n: int, trial_bound: int = 1000) -> FilterVerdict:
    """Cheap necessary-condition test for ``n = x^2 + y^2``.

    ``NO`` is always certain.  ``YES`` needs a full certificate from trial
    division; anything else is ``UNKNOWN``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if trial_bound < 2:
        raise ValueError("trial_bound must be at least 2")
    if n == 0:
        return FilterVerdict.YES
    while n % 2 == 0:
        n //= 2
    if n % 4 == 3:
        return FilterVerdict.NO
    primes = _primes_for_bound(trial_bound)
    certified = False
    for p in primes:
        if p == 2:
            continue
        if p * p > n:
            certified = True
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if p % 4 == 3 and e % 2:
            return FilterVerdict.NO
    else:
        # No factor up to the largest tried prime, so a small cofactor is prime.
        certified = bool(primes) and n < primes[-1] ** 2
    if n == 1:
        return FilterVerdict.YES
    if n % 4 == 3:
        return FilterVerdict.NO
    if certified:
        return FilterVerdict.YES
    return FilterVerdict.UNKNOWN


_prime_cache: dict[int, list[int]] = {}


def _primes_for_bound(bound: int) -> list[int]:
    if bound not in _prime_cache:
        _prime_cache[bound] = primes_up_to(bound)
    return _prime_cache[bound]


def r4_count(n: int) -> int:
    """Number of signed ordered ``(x, y, z, w)`` with ``x^2+y^2+z^2+w^2 = n``.

    Jacobi: eight times the sum of the divisors of ``n`` not divisible by 4.
    """
    if n < 1:
        raise ValueError("r4_count expects n >= 1")
    if n >= 1 << 64:
        raise OverflowError("r4_count is limited to 64-bit inputs")
    sigma = 1
    twos = 0
    for p, e in factorize(n).items():
        if p == 2:
            twos = e
            continue
        sigma *= (p ** (e + 1) - 1) // (p - 1)
    return (24 if twos else 8) * sigma


def enumerate_s4(N: int, cap: int = DEFAULT_S4_CAP) -> np.ndarray:
    """All signed ordered integer 4-tuples with squared norm ``N``.

    Returns an ``(r4(N), 4)`` int64 array in lexicographic order.

    Raises:
        CapExceeded: if ``N > cap``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > cap:
        raise CapExceeded(f"enumeration of s4({N}) exceeds the cap {cap}")
    r = isqrt(N)
    xs = np.arange(-r, r + 1, dtype=np.int64)
    # All signed pairs (x, y) with x^2 + y^2 <= N, grouped by x^2 + y^2.
    gx, gy = np.meshgrid(xs, xs, indexing="ij")
    s = gx * gx + gy * gy
    keep = s <= N
    px, py, ps = gx[keep], gy[keep], s[keep]
    order = np.argsort(ps, kind="stable")
    px, py, ps = px[order], py[order], ps[order]
    values, starts, counts = np.unique(ps, return_index=True, return_counts=True)
    lookup = dict(zip(values.tolist(), zip(starts.tolist(), counts.tolist())))
    rows = []
    for x, y, sxy in zip(px.tolist(), py.tolist(), ps.tolist()):
        hit = lookup.get(N - sxy)
        if hit is None:
            continue
        start, count = hit
        block = np.empty((count, 4), dtype=np.int64)
        block[:, 0] = x
        block[:, 1] = y
        block[:, 2] = px[start : start + count]
        block[:, 3] = py[start : start + count]
        rows.append(block)
    if not rows:
        return np.empty((0, 4), dtype=np.int64)
    out = np.concatenate(rows)
    idx = np.lexsort(out.T[::-1])
    return out[idx]
