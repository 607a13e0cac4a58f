"""Enumeration kernels with a numba backend and a numpy fallback.

The backend is chosen once from ``CNKIT_BACKEND`` (``numba`` or ``numpy``);
without it numba is used when importable.  Both backends work in int64, so
every entry point checks magnitudes first and drops to exact Python integers
when a value could pass 2**62.  All three paths return identical results.
"""

from __future__ import annotations

import contextlib
import math
import os

from . import _numpy

try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

_LIMIT = 1 << 62
_BACKENDS = {"numpy": _numpy}
if _numba is not None:
    _BACKENDS["numba"] = _numba

_GCD_MODES = {None: 0, "literal": 1, "standard": 2}


def _initial() -> str:
    name = os.environ.get("CNKIT_BACKEND", "").strip().lower()
    if not name:
        return "numba" if _numba is not None else "numpy"
    if name not in _BACKENDS:
        raise RuntimeError(f"CNKIT_BACKEND={name!r} is not available")
    return name


_current = _initial()


def backend() -> str:
    return _current


def available() -> list[str]:
    return sorted(_BACKENDS)


def set_backend(name: str) -> None:
    global _current
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    _current = name


@contextlib.contextmanager
def use_backend(name: str):
    prev = _current
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def _impl():
    return _BACKENDS[_current]


# ------------------------------------------------------------ exact paths


def _gcd_ok(b1, b2, e, M, N, mode):
    if mode == 0 or e == 0 or M == 0 or N == 0:
        return True
    g = math.gcd
    if g(M, e) != 1 or g(N, e) != 1 or g(b1, e) != 1 or g(M, N) != 1:
        return False
    return g(b2, e) == 1 if mode == 1 else g(b2, M) == 1


def _quartic_exact(b1, b2, e_lo, e_hi, m_hi, mode):
    for e in range(e_lo, e_hi + 1):
        t = b2 * e**4
        for M in range(1 if e == 0 else 0, m_hi + 1):
            v = b1 * M**4 + t
            if v < 0:
                continue
            n = math.isqrt(v)
            if n * n == v and _gcd_ok(b1, b2, e, M, n, mode):
                return e, M, n
    return None


def _uvm_exact(n, bound):
    for u in range(2, bound + 1):
        for av in range(1, u):
            if math.gcd(u, av) != 1:
                continue
            p = u * av * (u * u - av * av)
            for sgn in (1, -1):
                q, r = divmod(sgn * p, n)
                if r == 0 and q > 0 and math.isqrt(q) ** 2 == q:
                    return u, sgn * av, math.isqrt(q)
    return None


# ------------------------------------------------------------ public API


def quartic_first(b1: int, b2: int, e_lo: int, e_hi: int, m_hi: int, gcd_mode=None):
    """Least (e, M) in row-major order, e in [e_lo, e_hi] and 0 <= M <= m_hi,
    with b1 M^4 + b2 e^4 a perfect square N^2; returns (e, M, N) or None."""
    mode = _GCD_MODES[gcd_mode]
    if e_lo > e_hi or m_hi < 0:
        return None
    if abs(b1) * m_hi**4 + abs(b2) * e_hi**4 >= _LIMIT or max(abs(b1), abs(b2)) >= _LIMIT:
        return _quartic_exact(b1, b2, e_lo, e_hi, m_hi, mode)
    e, M, n = _impl().quartic_first(b1, b2, e_lo, e_hi, m_hi, mode)
    return None if e < 0 else (int(e), int(M), int(n))


def rep_count(n: int, c1: int, c2: int, c3: int) -> int:
    """Number of integer (x, y, z) with c1 x^2 + c2 y^2 + c3 z^2 = n."""
    if n < 0:
        return 0
    if n >= _LIMIT:
        raise OverflowError("representation counts are limited to n < 2**62")
    return int(_impl().rep_count(n, c1, c2, c3))


def uvm_first(n: int, bound: int):
    """Least (u, |v|) coprime, |v| < u <= bound, with uv(u^2 - v^2) = n m^2, m > 0.

    Returns (u, v, m) with v carrying its sign, or None.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    if bound < 2:
        return None
    if bound**4 >= _LIMIT or abs(n) >= _LIMIT:
        return _uvm_exact(n, bound)
    u, v, m = _impl().uvm_first(n, bound)
    return None if u == 0 else (int(u), int(v), int(m))


def prop44_hits(bound: int) -> list[tuple[int, int, int]]:
    """(u, v, w), |u|, |v| <= bound, w > 0, with uv(u^2 - v^2) = +-w^2."""
    if bound < 1:
        return []
    if 2 * bound**4 >= _LIMIT:
        raise OverflowError("bound too large for the int64 scan")
    return [(int(a), int(b), int(c)) for a, b, c in _impl().prop44_hits(bound)]
