"""Compiled int64 loops.  Callers guarantee every intermediate fits below 2**62."""

import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True, nogil=True)
def _isqrt(v):
    # float sqrt is within one of the truth below 2**62; fix up exactly
    r = np.int64(math.sqrt(np.float64(v)))
    while r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


@njit(cache=True, nogil=True)
def quartic_first(b1, b2, e_lo, e_hi, m_hi, mode):
    """First (e, M, N) in row-major order with N^2 = b1 M^4 + b2 e^4.

    mode 0 skips gcd filtering, 1 applies the literal condition string,
    2 the gcd(b2, M) variant.  Degenerate rows (e, M or N zero) are never
    filtered.  Returns (-1, -1, -1) when nothing is found.
    """
    for e in range(e_lo, e_hi + 1):
        e4 = np.int64(e) ** 4
        m_start = 1 if e == 0 else 0
        for M in range(m_start, m_hi + 1):
            v = b1 * np.int64(M) ** 4 + b2 * e4
            if v < 0:
                continue
            n = _isqrt(v)
            if n * n != v:
                continue
            if mode != 0 and e != 0 and M != 0 and n != 0:
                if _gcd(M, e) != 1 or _gcd(n, e) != 1 or _gcd(b1, e) != 1 or _gcd(M, n) != 1:
                    continue
                if mode == 1 and _gcd(b2, e) != 1:
                    continue
                if mode == 2 and _gcd(b2, M) != 1:
                    continue
            return e, M, n
    return -1, -1, -1


@njit(cache=True, nogil=True)
def rep_count(n, c1, c2, c3):
    """#{(x, y, z) in Z^3 : c1 x^2 + c2 y^2 + c3 z^2 = n}, z outermost."""
    total = 0
    zmax = _isqrt(n // c3)
    for z in range(-zmax, zmax + 1):
        rz = n - c3 * z * z
        xmax = _isqrt(rz // c1)
        for x in range(-xmax, xmax + 1):
            rem = rz - c1 * x * x
            if rem % c2:
                continue
            t = rem // c2
            y = _isqrt(t)
            if y * y == t:
                total += 1 if t == 0 else 2
    return total


@njit(cache=True, nogil=True)
def uvm_first(n, bound):
    """Least (u, |v|) with gcd 1, 1 <= |v| < u <= bound and uv(u^2-v^2)/n a
    positive square.  Returns (u, v, m) with v signed, or (0, 0, 0)."""
    for u in range(2, bound + 1):
        for av in range(1, u):
            if _gcd(u, av) != 1:
                continue
            p = np.int64(u) * av * (np.int64(u) * u - np.int64(av) * av)
            for sgn in (1, -1):
                q = sgn * p
                if q % n:
                    continue
                t = q // n
                if t <= 0:
                    continue
                m = _isqrt(t)
                if m * m == t:
                    return u, sgn * av, m
    return 0, 0, 0


@njit(cache=True, nogil=True)
def prop44_hits(bound):
    """All (u, v, w) with |u|, |v| <= bound, w > 0 and uv(u^2-v^2) = +-w^2."""
    out = []
    for u in range(-bound, bound + 1):
        for v in range(-bound, bound + 1):
            p = np.int64(u) * v * (np.int64(u) * u - np.int64(v) * v)
            if p == 0:
                continue
            a = abs(p)
            w = _isqrt(a)
            if w * w == a:
                out.append((u, v, w))
    return out
