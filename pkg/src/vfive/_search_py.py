"""Pure-Python meet-in-the-middle level scan (fallback for the compiled kernel).

Both backends enumerate the same integer points in the same order with the
same IEEE double arithmetic, so they return identical hit lists.
"""
from __future__ import annotations

import math

from .numth import FilterVerdict, is_sum_two_squares_filter

# Slack (in lattice units) added to the block radius so float rounding can
# only add candidates; every candidate is verified afterwards.
RADIUS_SLACK = 1.0
HIT_SLACK = 1e-6


def disk_rows(center_x, center_y, rad):
    """Yield ``(x, y_lo, y_hi)`` rows of integer points near a disk."""
    rad2 = rad * rad
    x_lo = math.floor(center_x - rad)
    x_hi = math.ceil(center_x + rad)
    for x in range(x_lo, x_hi + 1):
        dx = x - center_x
        rem = rad2 - dx * dx
        if rem < 0.0:
            continue
        h = math.sqrt(rem)
        y_lo = math.ceil(center_y - h)
        y_hi = math.floor(center_y + h)
        if y_lo <= y_hi:
            yield x, y_lo, y_hi


def key_window(P, R, rho, rad):
    """Inclusive bounds on ``a^2 + d^2`` for the probe disk."""
    inner = rho * R - rad
    lo_f = inner * inner if inner > 0.0 else 0.0
    outer = rho * R + rad
    hi_f = outer * outer
    lo = math.floor(lo_f * (1.0 - 1e-12)) - 1
    hi = math.ceil(hi_f * (1.0 + 1e-12)) + 1
    return max(lo, 0), min(hi, P)


def probe_order(center, rad):
    lo = math.floor(center - rad)
    hi = math.ceil(center + rad)
    return sorted(range(lo, hi + 1), key=lambda a: (abs(a - center), a))


def search_level(level, target, tau, eps, filter_bound=1000, max_entries=50_000_000,
                 all_collisions=True, max_hits=16):
    """Scan one level; return ``(hits, table_size, probes)``.

    ``hits`` lists ``(a, b, c, d)`` with ``a^2+b^2+c^2+d^2 == 5**level`` whose
    double-precision distance to ``target`` is below ``eps`` (with a tiny
    slack), in probe order, at most ``max_hits`` of them.
    """
    alpha, beta, gamma, delta = target
    P = 5**level
    R = math.sqrt(5.0**level)
    rad = tau * R + RADIUS_SLACK
    rho = math.hypot(alpha, delta)
    lo, hi = key_window(P, R, rho, rad)

    table: dict[int, list[tuple[int, int]]] = {}
    size = 0
    verdict_cache: dict[int, bool] = {}
    for b, c_lo, c_hi in disk_rows(beta * R, gamma * R, rad):
        base = P - b * b
        for c in range(c_lo, c_hi + 1):
            r = base - c * c
            if r < lo or r > hi:
                continue
            if filter_bound >= 2:
                ok = verdict_cache.get(r)
                if ok is None:
                    ok = is_sum_two_squares_filter(r, filter_bound) is not FilterVerdict.NO
                    verdict_cache[r] = ok
                if not ok:
                    continue
            bucket = table.get(r)
            if bucket is None:
                table[r] = [(b, c)]
            elif all_collisions:
                bucket.append((b, c))
            else:
                continue
            size += 1
            if size > max_entries:
                from .errors import TableCapExceeded

                raise TableCapExceeded(f"residue table exceeds {max_entries} entries")

    inv = 1.0 / R
    limit = eps * eps * (1.0 + HIT_SLACK)
    hits = []
    probes = 0
    center_a = alpha * R
    center_d = delta * R
    rad2 = rad * rad
    for a in probe_order(center_a, rad):
        da = a - center_a
        rem = rad2 - da * da
        if rem < 0.0:
            continue
        h = math.sqrt(rem)
        d_lo = math.ceil(center_d - h)
        d_hi = math.floor(center_d + h)
        for d in range(d_lo, d_hi + 1):
            probes += 1
            bucket = table.get(a * a + d * d)
            if bucket is None:
                continue
            for b, c in bucket:
                x0 = a * inv - alpha
                x1 = b * inv - beta
                x2 = c * inv - gamma
                x3 = d * inv - delta
                m = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3
                y0 = a * inv + alpha
                y1 = b * inv + beta
                y2 = c * inv + gamma
                y3 = d * inv + delta
                p = y0 * y0 + y1 * y1 + y2 * y2 + y3 * y3
                if min(m, p) * 0.5 < limit:
                    hits.append((a, b, c, d))
                    if len(hits) >= max_hits:
                        return hits, size, probes
    return hits, size, probes
