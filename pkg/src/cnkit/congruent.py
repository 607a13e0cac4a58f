"""Equivalent encodings of "n is congruent" and the conversions between them.

* a rational right triangle with leg product 2n,
* integers P, Q, R, S with P^2 + nQ^2 = R^2 and P^2 - nQ^2 = S^2,
* integers u, v, m with n m^2 = uv(u^2 - v^2),
* a point of infinite order on y^2 = x^3 - n^2 x.

Negative n is allowed throughout; y^2 = x^3 - n^2 x does not see the sign,
and triangles for n < 0 carry one negative leg.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .curve import CurveA, CurvePoint, _require_on
from .descent.certificate import (
    DescentCertificate,
    build_certificate,
    certificate_seeds,
    point_seeds,
    transport_seeds,
)
from .descent.constructive import certificate_for_uv
from .descent.quartic import Side
from .exactnum import DomainError, as_rat, is_squarefree, isqrt_exact


@dataclass(frozen=True)
class Triangle:
    x_leg: Fraction
    y_leg: Fraction
    z_hyp: Fraction

    def __post_init__(self) -> None:
        for f in ("x_leg", "y_leg", "z_hyp"):
            object.__setattr__(self, f, as_rat(getattr(self, f)))
        if self.x_leg * self.y_leg == 0:
            raise DomainError("legs must be nonzero")
        if self.x_leg**2 + self.y_leg**2 != self.z_hyp**2:
            raise DomainError("not a right triangle")

    @property
    def area2(self) -> Fraction:
        return self.x_leg * self.y_leg

    def swapped(self) -> "Triangle":
        return Triangle(self.y_leg, self.x_leg, self.z_hyp)

    def __iter__(self):
        return iter((self.x_leg, self.y_leg, self.z_hyp))


@dataclass(frozen=True)
class ApWitness:
    p: int
    q: int
    r: int
    s: int
    n: int

    def __post_init__(self) -> None:
        a, b = self.p**2 + self.n * self.q**2, self.p**2 - self.n * self.q**2
        if a != self.r**2 or b != self.s**2:
            raise DomainError("P^2 +- nQ^2 are not R^2, S^2")


@dataclass(frozen=True)
class UvmTriple:
    u: int
    v: int
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m == 0:
            raise DomainError("m must be nonzero")
        if self.n * self.m**2 != self.u * self.v * (self.u**2 - self.v**2):
            raise DomainError("n m^2 != uv(u^2 - v^2)")


@dataclass(frozen=True)
class TunnellCounts:
    a_n: int
    b_n: int
    c_n: int
    d_n: int


def congruent_curve(n: int) -> CurveA:
    if n == 0:
        raise DomainError("n must be nonzero")
    return CurveA(-n * n)


# ------------------------------------------------------------ triangles <-> points


def triangle_to_point(n: int, t: Triangle) -> CurvePoint:
    """(nb/(c - a), 2n^2/(c - a)).  A triangle given for |n| with n < 0 has
    its second leg negated first so that ab = 2n."""
    a, b, c = t
    if a * b == -2 * n and n < 0:
        b = -b
    if a * b != 2 * n:
        raise DomainError(f"leg product {a * b} does not match 2n = {2 * n}")
    if c == a:
        raise DomainError("degenerate triangle, c = a")
    p = CurvePoint(n * b / (c - a), 2 * n * n / (c - a))
    _require_on(congruent_curve(n), p)
    return p


def point_to_triangle(n: int, p: CurvePoint) -> Triangle:
    """((x^2 - n^2)/y, 2nx/y, (x^2 + n^2)/y); leg product is 2n."""
    _require_on(congruent_curve(n), p)
    if p.is_infinity or p.y == 0:
        raise DomainError("torsion points have no triangle")
    x, y = p.x, p.y
    return Triangle((x * x - n * n) / y, 2 * n * x / y, (x * x + n * n) / y)


# ------------------------------------------------------------ arithmetic progression


def triangle_to_ap(n: int, t: Triangle) -> ApWitness:
    """(P, Q, R, S) = (ZW, 2W, (X+Y)W, (X-Y)W) on absolute sides, with W the
    least common denominator of the sides."""
    X, Y, Z = (abs(q) for q in t)
    if X * Y != 2 * abs(n):
        raise DomainError("leg product does not match 2|n|")
    W = math.lcm(X.denominator, Y.denominator, Z.denominator)
    P, Q, R, S = Z * W, 2 * W, (X + Y) * W, abs(X - Y) * W
    return ApWitness(int(P), int(Q), int(R), int(S), abs(n))


def ap_to_triangle(n: int, w: ApWitness) -> Triangle:
    """Legs (R + S)/Q, (R - S)/Q and hypotenuse 2P/Q."""
    if w.q == 0:
        raise DomainError("Q = 0")
    if abs(n) != abs(w.n):
        raise DomainError("witness belongs to a different n")
    # 2(R^2 + S^2) = (2P)^2 makes this a right triangle
    assert (w.r + w.s) ** 2 + (w.r - w.s) ** 2 == 4 * w.p**2
    q = Fraction(w.q)
    return Triangle((w.r + w.s) / q, (w.r - w.s) / q, 2 * w.p / q)


# ------------------------------------------------------------ n m^2 = uv(u^2 - v^2)


def _roberts(n: int, t: Triangle) -> Optional[UvmTriple]:
    x, y, z = t
    x1, x2, y1, y2, z1, z2 = x.numerator, x.denominator, y.numerator, y.denominator, z.numerator, z.denominator
    p1, p2, p3 = x1 * y2 * z2, x2 * y1 * z2, x2 * y2 * z1
    k = math.gcd(p1, p2, p3)
    a, b, c = p1 // k, p2 // k, p3 // k  # a = r^2 - s^2, b = 2rs, c = r^2 + s^2
    r = isqrt_exact((c + a) // 2) if (c + a) % 2 == 0 else None
    s = isqrt_exact((c - a) // 2) if (c - a) % 2 == 0 else None
    if r is None or s is None or 2 * r * s != b:
        return None
    u, v, m = k * r, k * s, k * x2 * y2 * z2
    if n < 0:
        u, v = v, u
    return UvmTriple(u, v, m, n)


def roberts_uvm(n: int, t: Triangle) -> UvmTriple:
    """Clear denominators, write the integer triple as k(r^2 - s^2, 2rs,
    r^2 + s^2) and return u = kr, v = ks, m = k x2 y2 z2.  The even leg has to
    sit in second place, so the other leg order is tried when needed."""
    t = Triangle(abs(t.x_leg), abs(t.y_leg), abs(t.z_hyp))
    if t.area2 != 2 * abs(n):
        raise DomainError("leg product does not match 2|n|")
    for cand in (t, t.swapped()):
        w = _roberts(n, cand)
        if w is not None:
            return w
    raise DomainError("no Pythagorean parametrization in either leg order")


def uvm_to_point(w: UvmTriple) -> CurvePoint:
    """(nu/v, n^2 m/v^2) on y^2 = x^3 - n^2 x."""
    if w.v == 0:
        raise DomainError("v = 0")
    v = Fraction(w.v)
    p = CurvePoint(w.n * w.u / v, w.n * w.n * w.m / (v * v))
    _require_on(congruent_curve(w.n), p)
    return p


def search_uvm(n: int, bound: int) -> Optional[UvmTriple]:
    """Least (u, |v|, m) with coprime 1 <= |v| < u <= bound and
    uv(u^2 - v^2) = n m^2, m > 0."""
    if bound < 1:
        raise DomainError("bound must be positive")
    hit = kernels.uvm_first(n, bound)
    return None if hit is None else UvmTriple(hit[0], hit[1], hit[2], n)


def certificate_from_uvm(
    w: UvmTriple, height: int = 0, gcd_mode: str = "literal", workers: int = 1, cache=None
) -> DescentCertificate:
    """Rank certificate on y^2 = x^3 - n^2 x seeded with the derived point
    (descended until it shows a new class), plus the constructive witnesses
    for uv(u^2 - v^2) twisted down by m."""
    a = -w.n * w.n
    seeds = point_seeds(a, Side.E, uvm_to_point(w), "uvm point")
    g = math.gcd(w.u, w.v)
    sub = certificate_for_uv(w.u // g, w.v // g)
    seeds += transport_seeds(certificate_seeds(sub), sub.a_curve, a, "+twist")
    return build_certificate(a, height, seeds, gcd_mode, workers, cache)


def prop44_scan(bound: int) -> list[tuple[int, int, int]]:
    """Nontrivial (u, v, w), |u|, |v| <= bound, with uv(u^2 - v^2) = +-w^2."""
    return kernels.prop44_hits(bound)


# ------------------------------------------------------------ Tunnell


def tunnell_counts(n: int) -> TunnellCounts:
    """Representation counts by 2x^2+y^2+32z^2, 2x^2+y^2+8z^2,
    8x^2+2y^2+64z^2 and 8x^2+2y^2+16z^2."""
    if n < 1:
        raise DomainError("n must be positive")
    return TunnellCounts(
        kernels.rep_count(n, 2, 1, 32),
        kernels.rep_count(n, 2, 1, 8),
        kernels.rep_count(n, 8, 2, 64),
        kernels.rep_count(n, 8, 2, 16),
    )


def tunnell_consistent(n: int) -> bool:
    """2A = B for odd n, 2C = D for even n.  False proves n is not congruent."""
    if n < 1 or not is_squarefree(n):
        raise DomainError("n must be a positive squarefree integer")
    c = tunnell_counts(n)
    return 2 * c.a_n == c.b_n if n % 2 else 2 * c.c_n == c.d_n
