"""Curves y^2 = x^3 - A^2 x of rank at least 2 and 3 built from
A = uv(u^2 - v^2) with u = r^2 + s^2, v = 2r^2 - s^2.

Family 1 adds the class v(u+v) to the constructive rank-1 witnesses.
Family 2 takes r = 4 r1 and needs a rational point on
y1^2 = -896 t^4 - 40 t^2 + 1 (t = r1/s); it adds one more class and three
explicit points on the curve over Q(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .curve import CurveA, CurvePoint, TorsionKind, on_curve, torsion_classify
from .descent.certificate import DescentCertificate, Seed
from .descent.constructive import certificate_for_uv
from .descent.quartic import Side
from .exactnum import DomainError, SquareClass, as_rat, square_class
from .homomorphisms import IsogenyPair, QuarticWitness, psi
from .parametrize import (  # noqa: F401  (re-exported)
    Lemma42Solution,
    lemma42_param,
    pythagoras_param,
    solve_sum_two_squares_twice,
)

# (r, s), A, rank column as printed
TABLE1 = (
    ((1, 2), -210, 2),
    ((1, 3), -3570, 2),
    ((3, 4), 31050, 2),
    ((1, 4), -22134, 3),
    ((5, 6), 3010350, 3),
    ((4, 7), -4349280, 3),
    ((5, 7), 405150, 3),
    ((6, 7), 13090680, 3),
    ((1, 8), -1535430, 3),
    ((4, 9), -33309024, 3),
    ((4, 11), -132269664, 3),
    ((3, 5), -263466, 4),
    ((4, 5), 468384, 4),
    ((1, 9), -3128874, 4),
    ((5, 11), -168706650, 4),
    ((5, 13), -541943850, 4),
    ((12, 13), 3121596576, 4),
    ((13, 16), 6060449850, 4),
    ((1, 40), -24552945606, 5),
)


# ------------------------------------------------------------ family 1


@dataclass(frozen=True)
class Family1Instance:
    r: int
    s: int
    u: int
    v: int
    a_value: int
    witness: tuple[int, int, int, int]  # (b1, N, e, M)
    class_list: tuple[tuple[str, SquareClass], ...]

    @property
    def a_curve(self) -> int:
        return -self.a_value * self.a_value


def family1_a(r: int, s: int) -> int:
    return -3 * r * r * (r * r + s * s) * (r * r - 2 * s * s) * (2 * r * r - s * s)


def _uv_labels(u: int, v: int) -> list[tuple[str, int]]:
    A = u * v * (u * u - v * v)
    base = [
        ("1", 1),
        ("A", A),
        ("uv", u * v),
        ("u^2-v^2", u * u - v * v),
        ("u(u+v)", u * (u + v)),
        ("u(u-v)", u * (u - v)),
        ("v(u+v)", v * (u + v)),
        ("v(u-v)", v * (u - v)),
    ]
    return [(sg + name, k * val) for name, val in base for sg, k in (("+", 1), ("-", -1))]


def family1_instance(r: int, s: int) -> Family1Instance:
    """u = r^2 + s^2, v = 2r^2 - s^2 and the witness
    (3rs(r^2+s^2)(2r^2-s^2), 1, r^2+s^2) for the class v(u+v)."""
    if math.gcd(r, s) != 1:
        raise DomainError("r and s must be coprime")
    u, v = r * r + s * s, 2 * r * r - s * s
    A = u * v * (u * u - v * v)
    if A == 0:
        raise DomainError("degenerate parameters, A = 0")
    if A != family1_a(r, s):
        raise AssertionError("family-1 parametrization mismatch")
    b1, N, e, M = v * (u + v), 3 * r * s * u * v, 1, u
    b2 = -A * A // b1
    if N * N != b1 * M**4 + b2 * e**4:
        raise AssertionError("family-1 witness fails its quartic")
    classes = tuple((name, square_class(val)) for name, val in _uv_labels(u, v))
    return Family1Instance(r, s, u, v, A, (b1, N, e, M), classes)


@dataclass(frozen=True)
class Distinct16:
    classes: tuple[SquareClass, ...]


@dataclass(frozen=True)
class Collision:
    pair: tuple[str, str]
    cls: SquareClass


def family1_distinctness(inst: Family1Instance):
    """Compare the 16 classes pairwise for this instance."""
    for (n1, c1), (n2, c2) in combinations(inst.class_list, 2):
        if c1 == c2:
            return Collision((n1, n2), c1)
    return Distinct16(tuple(c for _, c in inst.class_list))


def family1_seed(inst: Family1Instance) -> Seed:
    b1, N, e, M = inst.witness
    return Seed(Side.E, b1, QuarticWitness(N, e, abs(M)), "family1")


def family1_certificate(r: int, s: int, height: int = 0, gcd_mode: str = "literal") -> DescentCertificate:
    inst = family1_instance(r, s)
    return certificate_for_uv(inst.u, inst.v, height, gcd_mode, extra_seeds=[family1_seed(inst)])


# ------------------------------------------------------------ family 2

# Integer coefficients of the points, as (coefficient, power of r1, power of s).
X1 = ((393216, 8, 0), (36864, 6, 2), (-48, 2, 6))
Y1 = ((150994944, 11, 1), (9437184, 9, 3), (-442368, 7, 5), (-18432, 5, 7), (576, 3, 9))
X2 = ((294912, 8, 0), (-18432, 6, 2), (-2304, 4, 4))
Y2_FACTOR = ((4718592, 10, 0), (-884736, 8, 2), (4608, 4, 6))  # times y
X3 = ((589824, 8, 0), (-147456, 6, 2), (9216, 4, 4))
Y3 = ((754974720, 12, 0), (-207618048, 10, 2), (17694720, 8, 4), (-589824, 6, 6), (18432, 4, 8))
X3_STAR = ((409600, 8, 0), (-20480, 6, 2), (1536, 4, 4), (-32, 2, 6), (1, 0, 8))
Y3_STAR = (
    (-73400320, 12, 0),
    (-32243712, 10, 2),
    (2703360, 8, 4),
    (-81920, 6, 6),
    (1920, 4, 8),
    (48, 2, 10),
    (-1, 0, 12),
)

QUARTIC_POINT = (Fraction(2, 15), Fraction(17, 225))


def _poly_t(terms, t: Fraction) -> Fraction:
    """Horner evaluation of sum c t^k (the s-powers drop out at s = 1)."""
    deg = max(k for _, k, _ in terms)
    coeffs = [0] * (deg + 1)
    for c, k, _ in terms:
        coeffs[k] += c
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_rs(terms, r: int, s: int) -> int:
    return sum(c * r**i * s**j for c, i, j in terms)


def quartic_rhs(t) -> Fraction:
    t = as_rat(t)
    return -896 * t**4 - 40 * t**2 + 1


def family2_a(r1: int, s: int) -> int:
    return -96 * r1 * r1 * (8 * r1 * r1 - s * s) * (16 * r1 * r1 + s * s) * (32 * r1 * r1 - s * s)


def family2_constant(t) -> Fraction:
    """96 t^2 (8t^2 - 1)(16t^2 + 1)(32t^2 - 1); the curve is y^2 = x(x^2 - c^2)."""
    t = as_rat(t)
    return 96 * t * t * (8 * t * t - 1) * (16 * t * t + 1) * (32 * t * t - 1)


@dataclass(frozen=True)
class Family2Instance:
    r1: int
    s: int
    t: Fraction
    y_root: Fraction
    a_value: int
    curve_constant: Fraction
    points: tuple[CurvePoint, CurvePoint, CurvePoint]  # P, Q, R on y^2 = x(x^2 - c^2)
    s_point: CurvePoint  # on the dual curve, with psi(S) = R
    witness: tuple[int, int, int, int]
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def curve(self) -> CurveA:
        return CurveA(-self.curve_constant**2)

    @property
    def a_curve(self) -> int:
        return -self.a_value * self.a_value


def family2_instance(r1: int, s: int, y_root) -> Family2Instance:
    """Evaluate the three points at t = r1/s and verify them exactly.

    P and R are polynomials in t; Q also needs the quartic root y_root, so
    a wrong root can only spoil Q, and is rejected up front.
    """
    if s == 0 or math.gcd(r1, s) != 1:
        raise DomainError("r1 and s must be coprime with s != 0")
    y_root = as_rat(y_root)
    t = Fraction(r1, s)
    if y_root * y_root != quartic_rhs(t):
        raise DomainError(f"{y_root} is not a root of y^2 = -896t^4 - 40t^2 + 1 at t = {t}")
    c = family2_constant(t)
    a_value = family2_a(r1, s)
    if Fraction(-a_value, s**8) != c:
        raise AssertionError("integer and rational curve constants disagree")
    curve = CurveA(-c * c)
    P = CurvePoint(_poly_t(X1, t), _poly_t(Y1, t))
    Q = CurvePoint(_poly_t(X2, t), _poly_t(Y2_FACTOR, t) * y_root)
    R = CurvePoint(_poly_t(X3_STAR, t), _poly_t(Y3_STAR, t))
    S = CurvePoint(_poly_t(X3, t), _poly_t(Y3, t))
    pair = IsogenyPair(curve, CurveA(4 * c * c))
    checks = {
        "P_on_curve": on_curve(curve, P),
        "Q_on_curve": on_curve(curve, Q),
        "R_on_curve": on_curve(curve, R),
        "S_on_dual": on_curve(pair.ebar, S),
    }
    checks["R_is_psi_S"] = checks["S_on_dual"] and psi(pair, S) == R
    for name, p in zip("PQR", (P, Q, R)):
        checks[f"{name}_infinite_order"] = (
            checks[f"{name}_on_curve"] and torsion_classify(curve, p).kind is TorsionKind.INFINITE_ORDER
        )

    # the same witness in integers: y = y_root * s^2
    y_int = y_root * s * s
    if y_int.denominator != 1:
        raise DomainError("y_root * s^2 must be an integer")
    y_int = y_int.numerator
    b1 = 16 * r1 * r1 * (8 * r1 * r1 - s * s) * (16 * r1 * r1 + s * s)
    N, e, M = 24 * r1 * (8 * r1 * r1 - s * s) * y_int, 1, 12 * abs(r1)
    checks["witness"] = N * N == b1 * M**4 - a_value * a_value // b1 * e**4
    return Family2Instance(r1, s, t, y_root, a_value, c, (P, Q, R), S, (b1, N, e, M), checks)


def family2_verified(inst: Family2Instance) -> bool:
    return all(inst.checks.values())


def family2_integer_points(r1: int, s: int, y_int: int) -> tuple[CurvePoint, CurvePoint, CurvePoint]:
    """P, Q, R before dividing out s, on y^2 = x^3 - A^2 x with the integer A."""
    P = CurvePoint(_poly_rs(X1, r1, s), _poly_rs(Y1, r1, s))
    Q = CurvePoint(_poly_rs(X2, r1, s), _poly_rs(Y2_FACTOR, r1, s) * y_int)
    R = CurvePoint(_poly_rs(X3_STAR, r1, s), _poly_rs(Y3_STAR, r1, s))
    return P, Q, R


def family2_certificate(inst: Family2Instance, height: int = 0, gcd_mode: str = "literal") -> DescentCertificate:
    """Family-1 certificate at r = 4 r1 plus the family-2 witness."""
    f1 = family1_instance(4 * inst.r1, inst.s)
    if f1.a_value != inst.a_value:
        raise AssertionError("family 2 is not family 1 at r = 4 r1")
    b1, N, e, M = inst.witness
    extra = [family1_seed(f1), Seed(Side.E, b1, QuarticWitness(N, e, M), "family2")]
    return certificate_for_uv(f1.u, f1.v, height, gcd_mode, extra_seeds=extra)


# ------------------------------------------------------------ more quartic points
#
# y1^2 = -896 t^4 - 40 t^2 + 1 has the rational point (0, 1); sending it to
# infinity gives Y^2 = X^3 - 40 X^2 + 3584 X - 143360 with
#   X = 2(y1 + 1)/t^2,  Y = (4(y1 + 1) - 80 t^2)/t^3,
#   t = 2(X - 40)/Y,    y1 = -1 + t^2 X / 2.

_A2, _A4, _A6 = -40, 3584, -143360


def _cubic_on(P) -> bool:
    X, Y = P
    return Y * Y == X**3 + _A2 * X * X + _A4 * X + _A6


def _cubic_add(P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2:
        if y1 == -y2:
            return None
        lam = (3 * x1 * x1 + 2 * _A2 * x1 + _A4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - _A2 - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def quartic_to_cubic(t, y1):
    t, y1 = as_rat(t), as_rat(y1)
    if t == 0:
        raise DomainError("t = 0 is the base point")
    return (2 * (y1 + 1) / t**2, (4 * (y1 + 1) - 80 * t * t) / t**3)


def cubic_to_quartic(P):
    X, Y = P
    if Y == 0:
        return None
    t = 2 * (X - 40) / Y
    return t, -1 + t * t * X / 2


def family2_next_parameters(count: int, digit_cap: int = 400) -> list[tuple[int, int, Fraction]]:
    """Rational points (t = r1/s, y_root) on the quartic from the multiples
    k*G, k = 1, 2, ..., of G = image of (2/15, 17/225) on the cubic model.
    Parameters are reported with s > 0 and r1 > 0, without repeats."""
    if count < 1:
        raise DomainError("count must be positive")
    G = quartic_to_cubic(*QUARTIC_POINT)
    if not _cubic_on(G):
        raise AssertionError("cubic model is inconsistent")
    out: list[tuple[int, int, Fraction]] = []
    seen = set()
    P = None
    for _ in range(8 * count + 8):
        P = _cubic_add(P, G)
        if P is None:
            break
        back = cubic_to_quartic(P)
        if back is None:
            continue
        t, y1 = back
        if t == 0 or y1 * y1 != quartic_rhs(t):
            continue
        t = abs(t)
        if max(len(str(t.numerator)), len(str(t.denominator))) > digit_cap:
            break
        if t in seen:
            continue
        seen.add(t)
        out.append((t.numerator, t.denominator, y1))
        if len(out) == count:
            break
    return out


# ------------------------------------------------------------ family-2 class products


def _table2_rows(r1: int, s: int):
    """(label, uv-form value, printed r1,s-form, printed new element), one row
    per sign; the sign pattern follows the printed +- / -+ markers."""
    a, b, c = 8 * r1 * r1 - s * s, 16 * r1 * r1 + s * s, 32 * r1 * r1 - s * s
    q = r1 * r1
    rows = [
        ("1", 1, a * b),
        ("uv(u^2-v^2)", -6 * q * a * b * c, -6 * c),
        ("uv", c * b, a * c),
        ("u^2-v^2", -6 * b, -6 * a),
        ("u(u+v)", 3 * b, 3 * a),
        ("v(u+v)", 3 * c, 3 * a * b * c),
        ("u(u-v)", -2 * a * b, -2),
        ("v(u-v)", -2 * a * c, -2 * b * c),
    ]
    f1 = family1_instance(4 * r1, s)
    u, v = f1.u, f1.v
    uv_vals = {
        "1": 1,
        "uv(u^2-v^2)": u * v * (u * u - v * v),
        "uv": u * v,
        "u^2-v^2": u * u - v * v,
        "u(u+v)": u * (u + v),
        "v(u+v)": v * (u + v),
        "u(u-v)": u * (u - v),
        "v(u-v)": v * (u - v),
    }
    return [(label, uv_vals[label], col2, col3) for label, col2, col3 in rows], a * b


@dataclass(frozen=True)
class Table2Row:
    label: str
    sign: int
    uv_class: SquareClass
    multiplier: SquareClass  # (8r1^2 - s^2)(16r1^2 + s^2)
    product_class: SquareClass  # uv_class * multiplier
    printed_r1s: SquareClass
    printed_new: SquareClass

    @property
    def label_matches(self) -> bool:
        """uv-form and printed r1,s-form agree."""
        return self.uv_class == self.printed_r1s

    @property
    def product_matches(self) -> bool:
        """printed r1,s-form times the multiplier is the printed new element."""
        return self.printed_r1s * self.multiplier == self.printed_new

    @property
    def pair_matches(self) -> bool:
        """{uv class, uv class * multiplier} equals the two printed entries."""
        return {self.uv_class, self.product_class} == {self.printed_r1s, self.printed_new}


def table2_products(inst: Family2Instance) -> list[Table2Row]:
    return table2_rows(inst.r1, inst.s)


def table2_rows(r1: int, s: int) -> list[Table2Row]:
    """The sixteen signed product rows for r = 4 r1; needs no quartic point."""
    if s == 0 or math.gcd(r1, s) != 1:
        raise DomainError("r1 and s must be coprime with s != 0")
    rows, mult = _table2_rows(r1, s)
    F = square_class(mult)
    out = []
    for label, uv_val, col2, col3 in rows:
        for sign in (1, -1):
            k = square_class(sign * uv_val)
            out.append(
                Table2Row(label, sign, k, F, k * F, square_class(sign * col2), square_class(sign * col3))
            )
    return out


def table1_rows() -> list[dict]:
    out = []
    for (r, s), a_printed, rank_printed in TABLE1:
        a = family1_a(r, s)
        out.append({"r": r, "s": s, "A": a, "A_printed": a_printed, "match": a == a_printed, "rank_printed": rank_printed})
    return out

