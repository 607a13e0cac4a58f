from fractions import Fraction as F

import pytest

from cnkit.curve import (
    INFINITY,
    CurveA,
    CurvePoint,
    TorsionKind,
    add_points,
    double,
    multiply,
    on_curve,
    quartic_twist,
    torsion_classify,
)
from cnkit.exactnum import DomainError

E6 = CurveA(-36)
P = CurvePoint(12, 36)


def test_doubling_on_congruent_six():
    assert double(E6, P) == CurvePoint(F(25, 4), F(-35, 8))
    assert add_points(E6, P, P) == double(E6, P)


def test_identity_and_inverse():
    assert add_points(E6, P, INFINITY) == P
    assert add_points(E6, P, -P) == INFINITY
    assert multiply(E6, 0, P) == INFINITY
    assert multiply(E6, -1, P) == -P


def test_two_torsion_points():
    t = E6.two_torsion()
    assert t == [CurvePoint(0, 0), CurvePoint(6, 0), CurvePoint(-6, 0)]
    for q in t:
        assert double(E6, q) == INFINITY
    assert CurveA(5).two_torsion() == [CurvePoint(0, 0)]


def test_off_curve_rejected():
    with pytest.raises(DomainError):
        add_points(E6, CurvePoint(1, 1), P)
    with pytest.raises(DomainError):
        CurveA(0)


def test_torsion_classify():
    assert torsion_classify(E6, INFINITY).kind is TorsionKind.IDENTITY
    v = torsion_classify(E6, CurvePoint(-6, 0))
    assert v.kind is TorsionKind.TWO_TORSION and v.which == "minus_root" and v.order == 2
    assert torsion_classify(E6, P).kind is TorsionKind.INFINITE_ORDER
    # y^2 = x^3 + 4x has the order-4 point (2, 4)
    v = torsion_classify(CurveA(4), CurvePoint(2, 4))
    assert v.kind is TorsionKind.FINITE_ORDER and v.order == 4


def test_quartic_twist():
    c, q = quartic_twist(E6, P, 2)
    assert c == CurveA(-576) and q == CurvePoint(48, 288)
    assert on_curve(c, q)


def test_rational_coefficient_curve():
    c = CurveA(F(-1, 4))
    assert not c.is_integral
    assert on_curve(c, CurvePoint(F(1, 2), 0))


def test_point_json_round_trip():
    for p in (INFINITY, P, CurvePoint(F(25, 4), F(-35, 8))):
        assert CurvePoint.from_json(p.to_json()) == p
    assert P.to_json() == ["12", "36"]
    assert INFINITY.to_json() == "O"
