"""The 2-isogenies between y^2 = x(x^2 + A) and y^2 = x(x^2 - 4A), and the
connecting maps into Q^x/(Q^x)^2.

A quartic solution (N, e, M) of N^2 = b1*M^4 + b2*e^4 and a rational point
with x-coordinate in the class of b1 carry the same information; the helpers
at the bottom translate in both directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curve import INFINITY, CurveA, CurvePoint, _require_on
from .exactnum import (
    DomainError,
    as_rat,
    SquareClass,
    isqrt_exact,
    square_class,
    squarefree_part,
)


@dataclass(frozen=True)
class IsogenyPair:
    e: CurveA
    ebar: CurveA

    def __post_init__(self) -> None:
        if self.ebar.a_coeff != -4 * self.e.a_coeff:
            raise DomainError("the dual curve must carry coefficient -4A")

    @classmethod
    def from_a(cls, a) -> "IsogenyPair":
        c = CurveA(a)
        return cls(c, CurveA(-4 * c.a_coeff))

    @property
    def a(self):
        return self.e.a_coeff


def phi(pair: IsogenyPair, p: CurvePoint) -> CurvePoint:
    _require_on(pair.e, p)
    if p.is_infinity or p.x == 0:
        return INFINITY
    x2 = p.x * p.x
    return CurvePoint(p.y * p.y / x2, p.y * (x2 - pair.a) / x2)


def psi(pair: IsogenyPair, q: CurvePoint) -> CurvePoint:
    _require_on(pair.ebar, q)
    if q.is_infinity or q.x == 0:
        return INFINITY
    x2 = q.x * q.x
    return CurvePoint(q.y * q.y / (4 * x2), q.y * (x2 + 4 * pair.a) / (8 * x2))


def _rat_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = isqrt_exact(q.numerator), isqrt_exact(q.denominator)
    return None if n is None or d is None else Fraction(n, d)


def _preimages(src: CurveA, scale: Fraction, image, target: CurvePoint) -> list[CurvePoint]:
    # the x-coordinate of the image is scale * (x^2 + c) / x, a quadratic in x
    c = as_rat(src.a_coeff)
    t = target.x / scale
    root = _rat_sqrt(t * t - 4 * c)
    if root is None:
        return []
    out = []
    for x in {(t + root) / 2, (t - root) / 2}:
        if x == 0:
            continue
        y = _rat_sqrt(src.rhs(x))
        if y is None:
            continue
        for cand in {CurvePoint(x, y), CurvePoint(x, -y)}:
            if image(cand) == target:
                out.append(cand)
    return out


def phi_preimage(pair: IsogenyPair, q: CurvePoint) -> list[CurvePoint]:
    """Affine rational P on E with phi(P) = q (q affine, x != 0)."""
    _require_on(pair.ebar, q)
    if q.is_infinity or q.x == 0:
        raise DomainError("preimages of O and (0, 0) are torsion")
    return _preimages(pair.e, Fraction(1), lambda p: phi(pair, p), q)


def psi_preimage(pair: IsogenyPair, p: CurvePoint) -> list[CurvePoint]:
    """Affine rational Q on the dual curve with psi(Q) = p."""
    _require_on(pair.e, p)
    if p.is_infinity or p.x == 0:
        raise DomainError("preimages of O and (0, 0) are torsion")
    return _preimages(pair.ebar, Fraction(1, 4), lambda q: psi(pair, q), p)


def alpha(c: CurveA, p: CurvePoint) -> SquareClass:
    """x mod squares, with O -> 1 and (0, 0) -> the class of the coefficient.

    Applied to the dual curve (coefficient -4A) the same rule sends (0, 0) to
    the class of -A, so one function serves both sides.
    """
    _require_on(c, p)
    if p.is_infinity:
        return SquareClass(1)
    if p.x == 0:
        return square_class(c.a_coeff)
    return square_class(p.x)


def alpha_bar(cbar: CurveA, q: CurvePoint) -> SquareClass:
    return alpha(cbar, q)


@dataclass(frozen=True)
class QuarticWitness:
    """(N, e, M) with N^2 = b1*M^4 + b2*e^4; e, M >= 0 and not both zero."""

    N: int
    e: int
    M: int

    def __post_init__(self) -> None:
        if self.e < 0 or self.M < 0:
            raise DomainError("e and M are taken nonnegative")
        if self.e == 0 and self.M == 0:
            raise DomainError("(e, M) = (0, 0) is the trivial solution")

    def satisfies(self, b1: int, b2: int) -> bool:
        return self.N * self.N == b1 * self.M**4 + b2 * self.e**4

    @property
    def is_degenerate(self) -> bool:
        return self.e == 0 or self.M == 0 or self.N == 0

    def to_json(self, b1: int) -> dict:
        return {"b1": str(b1), "N": str(self.N), "e": str(self.e), "M": str(self.M)}

    @classmethod
    def from_json(cls, obj: dict) -> tuple[int, "QuarticWitness"]:
        return int(obj["b1"]), cls(int(obj["N"]), int(obj["e"]), int(obj["M"]))


def gcd_conditions_hold(b1: int, b2: int, w: QuarticWitness, mode: str = "literal") -> bool:
    """Coprimality side conditions on a witness.

    ``literal`` checks gcd(M,e), gcd(N,e), gcd(b1,e), gcd(b2,e), gcd(M,N);
    ``standard`` swaps gcd(b2,e) for gcd(b2,M).
    """
    g = math.gcd
    common = g(w.M, w.e) == 1 and g(w.N, w.e) == 1 and g(b1, w.e) == 1 and g(w.M, w.N) == 1
    if mode == "literal":
        return common and g(b2, w.e) == 1
    if mode == "standard":
        return common and g(b2, w.M) == 1
    raise DomainError(f"unknown gcd mode {mode!r}")


def point_from_quadruple(b1: int, b2: int, w: QuarticWitness) -> tuple[CurveA, Optional[CurvePoint]]:
    """The point (b1 M^2/e^2, b1 M N/e^3) on y^2 = x(x^2 + b1 b2).

    A witness with e = 0 proves membership of its class without producing an
    affine point; the second component is then None.
    """
    if not w.satisfies(b1, b2):
        raise DomainError(f"{w} does not solve N^2 = {b1} M^4 + {b2} e^4")
    c = CurveA(b1 * b2)
    if w.e == 0:
        return c, None
    e = Fraction(w.e)
    p = CurvePoint(b1 * w.M * w.M / (e * e), b1 * w.M * w.N / e**3)
    _require_on(c, p)
    return c, p


def witness_from_point(c: CurveA, p: CurvePoint) -> tuple[int, QuarticWitness]:
    """Inverse direction: a point gives (b1, (N, e, M)) with b1 = class of x.

    For O this is (1, (1, 0, 1)).  For (0, 0) the class is that of A, with
    M = 0, e = 1 and N = sqrt(A/b1).
    """
    _require_on(c, p)
    if not c.is_integral:
        raise DomainError("witnesses need an integral coefficient")
    a = c.a_coeff
    if p.is_infinity:
        return 1, QuarticWitness(1, 0, 1)
    if p.x == 0:
        b1 = squarefree_part(a)
        return b1, QuarticWitness(isqrt_exact(a // b1), 1, 0)
    # On an integral curve x = m/e^2 and y = k/e^3 in lowest terms.
    e = isqrt_exact(p.x.denominator)
    if e is None:
        raise DomainError("x-denominator is not a square")
    m = p.x.numerator
    b1 = squarefree_part(m)
    M = isqrt_exact(m // b1)
    N = p.y * e**3 / (b1 * M)
    if N.denominator != 1:
        raise DomainError("point does not descend to an integral witness")
    N = N.numerator
    w = QuarticWitness(abs(N), e, M)
    if not w.satisfies(b1, a // b1):
        raise DomainError("recovered quadruple fails the quartic")
    return b1, w
