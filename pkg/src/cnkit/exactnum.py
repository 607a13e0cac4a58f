"""Exact integer helpers and the group of rationals modulo squares.

Rationals are :class:`fractions.Fraction`; integers are plain Python ints.
A square class is stored as its unique signed squarefree representative.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

DEFAULT_PRIME_BOUND = 10**6

Rat = Fraction


class DomainError(ValueError):
    """Raised when an input lies outside an operation's mathematical domain."""


def as_rat(q) -> Fraction:
    """Coerce ints, strings like ``"3/2"`` and Fractions to a Fraction."""
    if isinstance(q, Fraction):
        return q
    if isinstance(q, bool):
        raise TypeError("bool is not a rational")
    if isinstance(q, (int, str)):
        return Fraction(q)
    raise TypeError(f"cannot interpret {q!r} as an exact rational")


# ---------------------------------------------------------------- primes


@lru_cache(maxsize=4)
def _primes_upto(bound: int) -> tuple[int, ...]:
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 with the fixed base set."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        sub: dict[int, int] = {}
        _split_large(r, sub, rng)
        for p, k in sub.items():
            out[p] = out.get(p, 0) + 2 * k
        return
    d = _pollard_brent(n, rng)
    _split_large(d, out, rng)
    _split_large(n // d, out, rng)


def factorize(n: int, prime_bound: int = DEFAULT_PRIME_BOUND) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: exponent}``.

    Trial division by primes up to ``prime_bound``, then Pollard-Brent rho on
    whatever cofactor is left.  The rho step uses a fixed seed, so the result
    (and its cost) is reproducible.
    """
    n = abs(int(n))
    if n == 0:
        raise DomainError("cannot factor 0")
    out: dict[int, int] = {}
    if n == 1:
        return out
    rem = n
    if not is_probable_prime(rem):
        for p in _primes_upto(prime_bound):
            if p * p > rem:
                break
            if rem % p:
                continue
            k = 0
            while rem % p == 0:
                rem //= p
                k += 1
            out[p] = k
            if rem == 1 or is_probable_prime(rem):
                break
    if rem > 1:
        _split_large(rem, out, random.Random(0x5EED))
    return dict(sorted(out.items()))


# ---------------------------------------------------------------- squares


def isqrt_exact(n: int) -> int | None:
    """Return k with k*k == n, or None when n is not a perfect square."""
    if n < 0:
        return None
    k = math.isqrt(n)
    return k if k * k == n else None


def is_perfect_square(n: int) -> tuple[bool, int | None]:
    """``(True, k)`` when ``n == k*k`` for some k >= 0, else ``(False, None)``."""
    k = isqrt_exact(n)
    return (k is not None, k)


@lru_cache(maxsize=65536)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split a nonzero integer as ``n == s * f**2`` with s squarefree, f >= 1.

    The sign of ``s`` is the sign of ``n``.
    """
    n = int(n)
    if n == 0:
        raise DomainError("squarefree_decompose(0) is undefined")
    s, f = 1, 1
    for p, k in factorize(n).items():
        if k % 2:
            s *= p
        f *= p ** (k // 2)
    return (s if n > 0 else -s), f


def is_squarefree(n: int) -> bool:
    return n != 0 and abs(squarefree_decompose(n)[0]) == abs(n)


def squarefree_part(n: int) -> int:
    return squarefree_decompose(n)[0]


@dataclass(frozen=True, order=True)
class SquareClass:
    """An element of Q^x/(Q^x)^2, held as a signed squarefree integer."""

    rep: int

    def __post_init__(self) -> None:
        if self.rep == 0:
            raise DomainError("square class of 0 is undefined")

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return sqclass_mul(self, other)

    def __int__(self) -> int:
        return self.rep

    def __str__(self) -> str:
        return str(self.rep)

    @classmethod
    def of(cls, q) -> "SquareClass":
        return square_class(q)


def square_class(q) -> SquareClass:
    """Square class of a nonzero rational p/d, computed as squarefree(p*d)."""
    q = as_rat(q)
    if q == 0:
        raise DomainError("square class of 0 is undefined")
    return SquareClass(squarefree_part(q.numerator * q.denominator))


def sqclass_mul(a: SquareClass, b: SquareClass) -> SquareClass:
    # For squarefree a, b: a*b = g^2 * (a/g)*(b/g) with g = gcd(a, b), and the
    # cofactor is again squarefree, so no factoring is needed.
    g = math.gcd(a.rep, b.rep)
    return SquareClass((a.rep // g) * (b.rep // g))


def same_class(p, q) -> bool:
    return square_class(p) == square_class(q)


def signed_squarefree_divisors(n: int) -> list[int]:
    """All signed squarefree divisors of ``n``, ordered by ``(|d|, d < 0)``."""
    if n == 0:
        raise DomainError("0 has no squarefree divisor list")
    divs = [1]
    for p in factorize(n):
        divs += [d * p for d in divs]
    out = [s * d for d in divs for s in (1, -1)]
    out.sort(key=lambda d: (abs(d), d < 0))
    return out


def rat_str(q) -> str:
    q = as_rat(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
