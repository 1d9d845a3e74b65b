# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled meet-in-the-middle level scan.

Mirrors ``_search_py.search_level`` point for point; keys are 128-bit
integers, so levels up to ``MAX_LEVEL`` are supported.
"""
from libc.math cimport sqrt, floor, ceil, fabs, hypot, pow
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libcpp.utility cimport pair

from cython.operator cimport dereference as deref

from .errors import TableCapExceeded

ctypedef long long i64

cdef extern from *:
    """
    #include <cstdint>
    #include <vector>
    #include <algorithm>
    struct Hash128 {
        size_t operator()(__int128 v) const noexcept {
            unsigned __int128 u = (unsigned __int128)v;
            uint64_t lo = (uint64_t)u, hi = (uint64_t)(u >> 64);
            uint64_t h = (lo ^ (hi * 0xC2B2AE3D27D4EB4FULL)) * 0x9E3779B97F4A7C15ULL;
            return (size_t)(h ^ (h >> 29));
        }
    };
    struct ProbeKey { double dist; long long a; };
    static inline void sort_probes(std::vector<ProbeKey>& v) {
        std::sort(v.begin(), v.end(), [](const ProbeKey& x, const ProbeKey& y) {
            return x.dist < y.dist || (x.dist == y.dist && x.a < y.a);
        });
    }
    """
    cdef struct ProbeKey:
        double dist
        i64 a
    void sort_probes(vector[ProbeKey]&)
    cppclass Hash128:
        pass
    # Cython has no 128-bit type; arithmetic is emitted as plain C.
    ctypedef long long i128 "__int128"

MAX_LEVEL = 44
cdef double RADIUS_SLACK = 1.0
cdef double HIT_SLACK = 1e-6


cdef inline int deref_tail(unordered_map[i128, pair[int, int], Hash128].iterator it):
    return deref(it).second.second


cdef inline void set_tail(unordered_map[i128, pair[int, int], Hash128].iterator it, int v):
    deref(it).second.second = v


cdef i128 pow5(int n):
    cdef i128 r = 1
    cdef int i
    for i in range(n):
        r *= 5
    return r


cdef i64 powmod(i64 base, i64 e, i64 m):
    cdef i64 r = 1
    base %= m
    while e > 0:
        if e & 1:
            r = r * base % m
        base = base * base % m
        e >>= 1
    return r


cdef i128 py_to_i128(object x):
    # Python int -> 128-bit via two 64-bit halves.
    cdef object lo = x & 0xFFFFFFFFFFFFFFFF
    cdef object hi = x >> 64
    return ((<i128>(<i64>hi)) << 64) | (<i128>(<unsigned long long>lo))


cdef object i128_to_py(i128 v):
    cdef bint neg = v < 0
    if neg:
        v = -v
    cdef unsigned long long lo = <unsigned long long>(v & 0xFFFFFFFFFFFFFFFF)
    cdef unsigned long long hi = <unsigned long long>(v >> 64)
    cdef object r = (int(hi) << 64) | int(lo)
    return -r if neg else r


cdef bint odd_part_ok(i128 r):
    # Odd part = 3 mod 4 rules out a sum of two squares.
    if r == 0:
        return True
    while (r & 1) == 0:
        r >>= 1
    return (r & 3) == 1


def _primes_3mod4(int bound):
    from .numth import primes_up_to

    return [p for p in primes_up_to(bound) if p % 4 == 3]


def search_level(int level, target, double tau, double eps, int filter_bound=1000,
                 long long max_entries=50_000_000, bint all_collisions=True, int max_hits=16):
    """Scan one level; return ``(hits, table_size, probes)``."""
    if level < 0 or level > MAX_LEVEL:
        raise ValueError(f"compiled kernel supports levels 0..{MAX_LEVEL}")
    cdef double alpha = target[0], beta = target[1], gamma = target[2], delta = target[3]
    cdef i128 P = pow5(level)
    cdef double R = sqrt(pow(5.0, level))
    cdef double rad = tau * R + RADIUS_SLACK
    cdef double rad2 = rad * rad
    cdef double rho = hypot(alpha, delta)

    # Key window, rounded exactly as in the Python backend.
    from ._search_py import key_window
    lo_py, hi_py = key_window(i128_to_py(P), R, rho, rad)
    cdef i128 lo = py_to_i128(lo_py), hi = py_to_i128(hi_py)

    cdef vector[i64] trial
    cdef object p_obj
    if filter_bound >= 2:
        for p_obj in _primes_3mod4(filter_bound):
            trial.push_back(<i64>p_obj)

    # Residue table: key -> (head, tail) into an entry chain in insertion order.
    cdef unordered_map[i128, pair[int, int], Hash128] table
    cdef vector[i64] ent_b, ent_c
    cdef vector[int] ent_next
    cdef unordered_map[i128, pair[int, int], Hash128].iterator it
    cdef pair[int, int] chain

    cdef double cb = beta * R, cc = gamma * R
    cdef i64 b, c, c_lo, c_hi, b_lo = <i64>floor(cb - rad), b_hi = <i64>ceil(cb + rad)
    cdef double db, rem, h
    cdef i128 base, r, pp
    cdef vector[char] reject
    cdef size_t k
    cdef i64 p, bm, s, root, c0, width, idx
    cdef int nroots, t
    cdef i64 roots[2]
    cdef long long size = 0

    for b in range(b_lo, b_hi + 1):
        db = <double>b - cb
        rem = rad2 - db * db
        if rem < 0.0:
            continue
        h = sqrt(rem)
        c_lo = <i64>ceil(cc - h)
        c_hi = <i64>floor(cc + h)
        if c_lo > c_hi:
            continue
        width = c_hi - c_lo + 1
        base = P - <i128>b * b
        reject.assign(width, 0)
        # Sieve: p = 3 mod 4 dividing r exactly once marks r as non-representable.
        for k in range(trial.size()):
            p = trial[k]
            bm = <i64>(base % p)
            if bm < 0:
                bm += p
            if bm == 0:
                roots[0] = 0
                nroots = 1
            else:
                s = powmod(bm, (p + 1) // 4, p)
                if s * s % p != bm:
                    continue
                roots[0] = s
                roots[1] = p - s
                nroots = 2
            pp = <i128>p * p
            for t in range(nroots):
                root = roots[t]
                c0 = c_lo + (((root - c_lo) % p) + p) % p
                idx = c0 - c_lo
                while idx < width:
                    c = c_lo + idx
                    r = base - <i128>c * c
                    if r % pp != 0:
                        reject[idx] = 1
                    idx += p
        for idx in range(width):
            c = c_lo + idx
            r = base - <i128>c * c
            if r < lo or r > hi:
                continue
            if filter_bound >= 2 and (reject[idx] or not odd_part_ok(r)):
                continue
            it = table.find(r)
            if it == table.end():
                ent_b.push_back(b)
                ent_c.push_back(c)
                ent_next.push_back(-1)
                table[r] = pair[int, int](<int>(ent_b.size() - 1), <int>(ent_b.size() - 1))
            elif all_collisions:
                ent_b.push_back(b)
                ent_c.push_back(c)
                ent_next.push_back(-1)
                ent_next[deref_tail(it)] = <int>(ent_b.size() - 1)
                set_tail(it, <int>(ent_b.size() - 1))
            else:
                continue
            size += 1
            if size > max_entries:
                raise TableCapExceeded(f"residue table exceeds {max_entries} entries")

    # Probe phase.
    cdef double ca = alpha * R, cd = delta * R
    cdef i64 a, d, d_lo, d_hi, a_lo = <i64>floor(ca - rad), a_hi = <i64>ceil(ca + rad)
    cdef vector[ProbeKey] order
    cdef ProbeKey pk
    for a in range(a_lo, a_hi + 1):
        pk.dist = fabs(<double>a - ca)
        pk.a = a
        order.push_back(pk)
    sort_probes(order)

    cdef double inv = 1.0 / R
    cdef double limit = eps * eps * (1.0 + HIT_SLACK)
    cdef double x0, x1, x2, x3, y0, y1, y2, y3, m, pl, da
    cdef long long probes = 0
    cdef int e
    hits = []
    for k in range(order.size()):
        a = order[k].a
        da = <double>a - ca
        rem = rad2 - da * da
        if rem < 0.0:
            continue
        h = sqrt(rem)
        d_lo = <i64>ceil(cd - h)
        d_hi = <i64>floor(cd + h)
        for d in range(d_lo, d_hi + 1):
            probes += 1
            it = table.find(<i128>a * a + <i128>d * d)
            if it == table.end():
                continue
            e = deref(it).second.first
            while e >= 0:
                b = ent_b[e]
                c = ent_c[e]
                x0 = a * inv - alpha
                x1 = b * inv - beta
                x2 = c * inv - gamma
                x3 = d * inv - delta
                m = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3
                y0 = a * inv + alpha
                y1 = b * inv + beta
                y2 = c * inv + gamma
                y3 = d * inv + delta
                pl = y0 * y0 + y1 * y1 + y2 * y2 + y3 * y3
                if (m if m < pl else pl) * 0.5 < limit:
                    hits.append((a, b, c, d))
                    if len(hits) >= max_hits:
                        return hits, size, probes
                e = ent_next[e]
    return hits, size, probes
