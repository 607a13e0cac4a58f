"""Integer parametrizations of x^2 + y^2 = 2z^2 and of Pythagorean triples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .exactnum import DomainError, isqrt_exact


@dataclass(frozen=True)
class Lemma42Solution:
    r: int
    s: int
    x: int
    y: int
    z: int


def lemma42_param(r: int, s: int) -> Lemma42Solution:
    """(r^2 + 2rs - s^2, r^2 - 2rs - s^2, r^2 + s^2), a solution of x^2 + y^2 = 2z^2."""
    x = r * r + 2 * r * s - s * s
    y = r * r - 2 * r * s - s * s
    return Lemma42Solution(r, s, x, y, r * r + s * s)


def solve_sum_two_squares_twice(u: int, v: int) -> Optional[tuple[int, int, int]]:
    """(r, s, beta) with u^2 + v^2 = 2 beta^2 and (u, v) recovered from (r, s)
    up to order and signs, or None when (u^2 + v^2)/2 is not a square.

    Inverting the parametrization: a = (u + v)/2, b = (u - v)/2 satisfy
    a^2 + b^2 = beta^2, and (r^2 - s^2, 2rs) is that Pythagorean pair.
    """
    if u % 2 == 0 or v % 2 == 0 or math.gcd(u, v) != 1:
        raise DomainError("u and v must be odd and coprime")
    beta = isqrt_exact((u * u + v * v) // 2)
    if beta is None:
        return None
    a, b = abs(u + v) // 2, abs(u - v) // 2
    if a % 2:  # the even member of the pair is 2rs
        a, b = b, a
    # beta = r^2 + s^2 and |b| = |r^2 - s^2|
    r = isqrt_exact((beta + b) // 2)
    s = isqrt_exact((beta - b) // 2)
    if r is None or s is None:
        raise AssertionError("Pythagorean inversion failed")
    sol = lemma42_param(r, s)
    want = {abs(u), abs(v)}
    if {abs(sol.x), abs(sol.y)} != want:
        sol = lemma42_param(r, -s)
        s = -s
    if {abs(sol.x), abs(sol.y)} != want or sol.z != beta:
        raise AssertionError("Pythagorean inversion failed")
    return r, s, beta


def pythagoras_param(w: int, z: int) -> tuple[int, int, int]:
    """(w^2 + z^2, 2wz, w^2 - z^2), so that r^2 - s^2 = gamma^2."""
    if math.gcd(w, z) != 1:
        raise DomainError("w and z must be coprime")
    if (w - z) % 2 == 0:
        raise DomainError("w and z must have opposite parity")
    return w * w + z * z, 2 * w * z, w * w - z * z


def pythagoras_invert(leg_odd: int, leg_even: int) -> tuple[int, int]:
    """(p, q) with p^2 - q^2 = |leg_odd| and 2pq = |leg_even| for a primitive
    triple; p > q >= 0."""
    hyp = isqrt_exact(leg_odd * leg_odd + leg_even * leg_even)
    if hyp is None:
        raise DomainError("not a Pythagorean pair")
    p = isqrt_exact((hyp + abs(leg_odd)) // 2)
    q = isqrt_exact((hyp - abs(leg_odd)) // 2)
    if p is None or q is None or 2 * p * q != abs(leg_even):
        raise DomainError("pair is not primitive with the stated parities")
    return p, q
