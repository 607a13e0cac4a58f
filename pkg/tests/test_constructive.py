import math

import pytest

from cnkit.descent import QuarticWitness, Side, build_certificate
from cnkit.descent.constructive import cascade_u4v4, certificate_for_uv, uv_table_seeds, twist_ratio
from cnkit.exactnum import DomainError
from cnkit.parametrize import lemma42_param, pythagoras_invert, pythagoras_param, solve_sum_two_squares_twice
from properties import certificate_invariants


def reps(classes):
    return sorted(k.rep for k in classes)


def test_parametrizations():
    s = lemma42_param(2, 1)
    assert (s.x, s.y, s.z) == (7, -1, 5)
    assert solve_sum_two_squares_twice(7, 1) == (2, 1, 5)
    assert solve_sum_two_squares_twice(3, 1) is None
    with pytest.raises(DomainError):
        solve_sum_two_squares_twice(4, 1)
    assert pythagoras_param(2, 1) == (5, 4, 3)
    assert pythagoras_invert(3, 4) == (2, 1)
    with pytest.raises(DomainError):
        pythagoras_invert(3, 5)


def test_table_witnesses_for_uv_two_one():
    a = -(2 * 1 * 3) ** 2
    for s in uv_table_seeds(2, 1):
        b2 = (a if s.side is Side.E else -4 * a) // s.b1
        assert s.witness.satisfies(s.b1, b2)


def test_uv_two_one():
    cert = certificate_for_uv(2, 1)
    assert reps(cert.alpha_classes) == [-6, -3, -2, -1, 1, 2, 3, 6]
    assert cert.rank_lower_bound == 1


def test_uv_five_minus_two():
    cert = certificate_for_uv(5, -2)
    assert reps(cert.alpha_classes) == [-210, -21, -10, -1, 1, 10, 21, 210]


@pytest.mark.parametrize(
    "uv, alpha, alphabar",
    [((4, 1), [-15, -1, 1, 15], [1, 10]), ((9, 4), [-65, -1, 1, 65], [1, 26]), ((5, 4), [-5, -1, 1, 5], [1, 5])],
)
def test_unit_class_cases_twist_from_cascade(uv, alpha, alphabar):
    cert = certificate_for_uv(*uv)
    assert reps(cert.alpha_classes) == alpha and reps(cert.alphabar_classes) == alphabar
    assert cert.notes


def test_table_witnesses_for_u4v4_two_one():
    # A = 15, the dual classes 1 and 10
    cert, states = cascade_u4v4(2, 1)
    assert [s.stage for s in states] == ["start"]
    # class 1 is already carried by O; the table witness still has to verify
    assert QuarticWitness(255, 2, 15).satisfies(1, 900)
    ws = {e.cls.rep: e.witness for e in cert.alphabar if e.kind == "witness"}
    assert ws[10] == QuarticWitness(10, 1, 1)


@pytest.mark.parametrize(
    "uv, stages",
    [
        ((7, 1), ["start", "form1"]),
        ((-10199, -9799), ["start", "form1", "reduce", "start"]),
        ((-49, 31), ["start", "form1", "form2"]),
        ((-1249, 1151), ["start", "form1", "form2", "form1"]),
    ],
)
def test_cascade_paths(uv, stages):
    cert, states = cascade_u4v4(*uv)
    assert [s.stage for s in states] == stages
    assert cert.rank_lower_bound >= 1
    A = uv[0] ** 4 - uv[1] ** 4
    for s in states[1:]:
        if s.depth == 0:
            assert abs(A) % s.extracted_square == 0
            assert math.isqrt(s.extracted_square) ** 2 == s.extracted_square
    certificate_invariants(cert)


def test_cascade_state_json():
    _, states = cascade_u4v4(7, 1)
    assert states[1].to_json() == {"stage": "form1", "params": ["2", "1", "5"], "extracted_square": "25", "depth": "0"}


def test_every_small_pair_reaches_rank_one():
    for u in range(-14, 15):
        for v in range(-14, 15):
            if u and v and u * u != v * v and math.gcd(u, v) == 1:
                assert certificate_for_uv(u, v).rank_lower_bound >= 1, (u, v)
                if u > 0 and v > 0 and u != v:
                    assert cascade_u4v4(u, v)[0].rank_lower_bound >= 1, (u, v)


def test_search_agrees_with_constructive_classes():
    # A = 6: the height-32 search finds no class the formulas missed
    assert build_certificate(-36, 32).alpha_classes == certificate_for_uv(2, 1).alpha_classes


def test_bad_parameters():
    with pytest.raises(DomainError):
        certificate_for_uv(2, 4)
    with pytest.raises(DomainError):
        certificate_for_uv(1, 1)
    with pytest.raises(DomainError):
        cascade_u4v4(1, -1)
    assert twist_ratio(-225, -3600) == 16
