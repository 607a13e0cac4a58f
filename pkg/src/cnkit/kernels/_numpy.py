"""Vectorised numpy versions of the compiled loops; same contracts and order."""

import numpy as np


def _isqrt_arr(v):
    r = np.sqrt(v.astype(np.float64)).astype(np.int64)
    r -= r * r > v
    r += (r + 1) * (r + 1) <= v
    return r


def quartic_first(b1, b2, e_lo, e_hi, m_hi, mode):
    Ms = np.arange(0, m_hi + 1, dtype=np.int64)
    m4 = Ms**4
    for e in range(e_lo, e_hi + 1):
        v = b1 * m4 + np.int64(b2) * np.int64(e) ** 4
        ok = v >= 0
        if e == 0:
            ok[0] = False
        vv = np.where(ok, v, 0)
        n = _isqrt_arr(vv)
        ok &= n * n == vv
        if mode != 0 and e != 0:
            nondeg = (Ms != 0) & (n != 0)
            good = (np.gcd(Ms, e) == 1) & (np.gcd(n, e) == 1) & (np.gcd(b1, e) == 1)
            good &= np.gcd(Ms, n) == 1
            good &= (np.gcd(b2, e) == 1) if mode == 1 else (np.gcd(b2, Ms) == 1)
            ok &= good | ~nondeg
        hit = np.flatnonzero(ok)
        if hit.size:
            M = int(hit[0])
            return e, M, int(n[M])
    return -1, -1, -1


def rep_count(n, c1, c2, c3):
    total = 0
    zmax = int(np.sqrt(n // c3))
    while (zmax + 1) ** 2 * c3 <= n:
        zmax += 1
    while zmax * zmax * c3 > n:
        zmax -= 1
    xmax = int(np.sqrt(n // c1)) + 1
    xs = np.arange(-xmax, xmax + 1, dtype=np.int64)
    for z in range(-zmax, zmax + 1):
        rem = n - c3 * z * z - c1 * xs * xs
        ok = (rem >= 0) & (rem % c2 == 0)
        t = np.where(ok, rem // c2, 0)
        y = _isqrt_arr(t)
        ok &= y * y == t
        total += int(np.sum(np.where(t[ok] == 0, 1, 2)))
    return total


def uvm_first(n, bound):
    for u in range(2, bound + 1):
        av = np.arange(1, u, dtype=np.int64)
        av = av[np.gcd(av, u) == 1]
        p = u * av * (u * u - av * av)
        # at most one sign of v gives a positive quotient, so the answer for
        # this u is the least |v| over both signs
        best = None
        for sgn in (1, -1):
            q = sgn * p
            ok = (q % n == 0) & (q // n > 0)
            t = np.where(ok, q // n, 0)
            m = _isqrt_arr(t)
            ok &= m * m == t
            hit = np.flatnonzero(ok)
            if hit.size and (best is None or av[hit[0]] < best[1]):
                best = (u, int(av[hit[0]]), int(m[hit[0]]), sgn)
        if best is not None:
            return best[0], best[3] * best[1], best[2]
    return 0, 0, 0


def prop44_hits(bound):
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    u, v = np.meshgrid(r, r, indexing="ij")
    p = u * v * (u * u - v * v)
    a = np.abs(p)
    w = _isqrt_arr(a)
    ok = (p != 0) & (w * w == a)
    return [(int(x), int(y), int(z)) for x, y, z in zip(u[ok], v[ok], w[ok])]
