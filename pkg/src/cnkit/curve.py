"""Curves y^2 = x(x^2 + A) over Q and their chord-tangent group law."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactnum import DomainError, as_rat, isqrt_exact, rat_str

MAZUR_BOUND = 12


def _coeff(a) -> int | Fraction:
    q = as_rat(a)
    return q.numerator if q.denominator == 1 else q


@dataclass(frozen=True)
class CurveA:
    """The curve y^2 = x^3 + a_coeff*x.

    ``a_coeff`` is normally an integer.  Rational coefficients are accepted so
    that specialised function-field curves can be checked without rescaling;
    the descent engine itself insists on integers.
    """

    a_coeff: int | Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a_coeff", _coeff(self.a_coeff))
        if self.a_coeff == 0:
            raise DomainError("A = 0 gives a singular cubic")

    @property
    def is_integral(self) -> bool:
        return isinstance(self.a_coeff, int)

    def rhs(self, x: Fraction) -> Fraction:
        return x * (x * x + self.a_coeff)

    def two_torsion(self) -> list["CurvePoint"]:
        """Rational points with y = 0, the origin first, then +root, -root."""
        pts = [CurvePoint(0, 0)]
        neg = -as_rat(self.a_coeff)
        if neg > 0:
            num, den = isqrt_exact(neg.numerator), isqrt_exact(neg.denominator)
            if num is not None and den is not None:
                root = Fraction(num, den)
                pts += [CurvePoint(root, 0), CurvePoint(-root, 0)]
        return pts

    def __str__(self) -> str:
        return f"y^2 = x^3 + ({rat_str(self.a_coeff)})x"


@dataclass(frozen=True)
class CurvePoint:
    """Affine point (x, y), or the point at infinity when both are None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if (self.x is None) != (self.y is None):
            raise DomainError("a point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", as_rat(self.x))
            object.__setattr__(self, "y", as_rat(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "CurvePoint":
        return self if self.is_infinity else CurvePoint(self.x, -self.y)

    def __str__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({rat_str(self.x)}, {rat_str(self.y)})"

    def to_json(self):
        return "O" if self.is_infinity else [rat_str(self.x), rat_str(self.y)]

    @classmethod
    def from_json(cls, obj) -> "CurvePoint":
        if obj == "O":
            return INFINITY
        x, y = obj
        return cls(Fraction(x), Fraction(y))


INFINITY = CurvePoint()


def on_curve(c: CurveA, p: CurvePoint) -> bool:
    if p.is_infinity:
        return True
    return p.y * p.y == c.rhs(p.x)


def _require_on(c: CurveA, *pts: CurvePoint) -> None:
    for p in pts:
        if not on_curve(c, p):
            raise DomainError(f"{p} is not on {c}")


def add_points(c: CurveA, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    _require_on(c, p, q)
    return _add(c.a_coeff, p, q)


def _add(a, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    if p.x == q.x:
        if p.y == -q.y:
            return INFINITY
        lam = (3 * p.x * p.x + a) / (2 * p.y)
    else:
        lam = (q.y - p.y) / (q.x - p.x)
    x3 = lam * lam - p.x - q.x
    return CurvePoint(x3, lam * (p.x - x3) - p.y)


def double(c: CurveA, p: CurvePoint) -> CurvePoint:
    return add_points(c, p, p)


def multiply(c: CurveA, k: int, p: CurvePoint) -> CurvePoint:
    """k*p by double-and-add; negative k uses -p."""
    _require_on(c, p)
    if k < 0:
        k, p = -k, -p
    acc = INFINITY
    while k:
        if k & 1:
            acc = _add(c.a_coeff, acc, p)
        p = _add(c.a_coeff, p, p)
        k >>= 1
    return acc


class TorsionKind(enum.Enum):
    IDENTITY = "identity"
    TWO_TORSION = "two_torsion"
    FINITE_ORDER = "finite_order"
    INFINITE_ORDER = "infinite_order"


@dataclass(frozen=True)
class TorsionVerdict:
    kind: TorsionKind
    which: Optional[str] = None  # origin / plus_root / minus_root for 2-torsion
    order: Optional[int] = None

    def __post_init__(self) -> None:
        if self.order is not None and not 1 <= self.order <= MAZUR_BOUND:
            raise DomainError("finite order outside Mazur's bound")

    @property
    def is_torsion(self) -> bool:
        return self.kind is not TorsionKind.INFINITE_ORDER


def torsion_classify(c: CurveA, p: CurvePoint) -> TorsionVerdict:
    """Classify p as identity, 2-torsion, finite order <= 12, or infinite order."""
    _require_on(c, p)
    if p.is_infinity:
        return TorsionVerdict(TorsionKind.IDENTITY, order=1)
    if p.y == 0:
        which = "origin" if p.x == 0 else ("plus_root" if p.x > 0 else "minus_root")
        return TorsionVerdict(TorsionKind.TWO_TORSION, which=which, order=2)
    q = p
    for k in range(2, MAZUR_BOUND + 1):
        q = _add(c.a_coeff, q, p)
        if q.is_infinity:
            return TorsionVerdict(TorsionKind.FINITE_ORDER, order=k)
    return TorsionVerdict(TorsionKind.INFINITE_ORDER)


def quartic_twist(c: CurveA, p: CurvePoint, mu) -> tuple[CurveA, CurvePoint]:
    """Isomorphism onto y^2 = x^3 + A*mu^4*x, (x, y) -> (mu^2 x, mu^3 y)."""
    mu = as_rat(mu)
    if mu == 0:
        raise DomainError("twist parameter must be nonzero")
    _require_on(c, p)
    target = CurveA(c.a_coeff * mu**4)
    if p.is_infinity:
        return target, p
    return target, CurvePoint(mu * mu * p.x, mu**3 * p.y)
