import json

import pytest

from cnkit.curve import CurvePoint
from cnkit.descent import (
    CertificateError,
    DescentCertificate,
    QuarticWitness,
    Seed,
    Side,
    build_certificate,
    certificate_seeds,
    rank_lower_bound,
    seed_from_point,
    transport_seeds,
    validate_certificate,
)
from cnkit.exactnum import DomainError, SquareClass
from properties import certificate_invariants


def classes(cert, side):
    return {e.cls.rep for e in cert.entries(side)}


def test_congruent_six():
    cert = build_certificate(-36, 64)
    assert classes(cert, Side.E) == {1, -1, 2, -2, 3, -3, 6, -6}
    assert classes(cert, Side.EBAR) == {1}
    assert cert.rank_lower_bound == 1
    certificate_invariants(cert)


def test_one_is_rank_zero_with_order_four_torsion():
    cert = build_certificate(-1, 200)
    assert classes(cert, Side.E) == {1, -1}
    assert classes(cert, Side.EBAR) == {1, 2}
    two = next(e for e in cert.alphabar if e.cls == SquareClass(2))
    assert two.kind == "torsion" and two.point == CurvePoint(2, 4)
    assert cert.rank_lower_bound == 0


def test_minus_225_finds_ten_by_search():
    cert = build_certificate(-225, 64)
    assert classes(cert, Side.E) == {1, -1, 15, -15}
    assert classes(cert, Side.EBAR) == {1, 10}
    ten = next(e for e in cert.alphabar if e.cls == SquareClass(10))
    assert ten.kind == "witness" and ten.witness == QuarticWitness(10, 1, 1) and ten.source == "search"


def test_seeded_family_curve_reaches_rank_two():
    seed = Seed(Side.E, -6, QuarticWitness(60, 1, 5), "family1")
    cert = build_certificate(-44100, 16, [seed])
    assert len(cert.alpha) == 16 and cert.rank_lower_bound == 2
    certificate_invariants(cert)


def test_height_zero_skips_search():
    cert = build_certificate(-225, 0)
    assert cert.searches == () and classes(cert, Side.EBAR) == {1}


def test_json_round_trip_is_exact():
    cert = build_certificate(-225, 32)
    text = cert.dumps()
    back = DescentCertificate.from_json(json.loads(text))
    validate_certificate(back)
    assert back.dumps() == text
    obj = json.loads(text)
    assert obj["rank_lower_bound"] == "1" and obj["a_curve"] == "-225"
    assert all(isinstance(v, str) for v in (obj["height"], obj["a_curve"]))


def _tamper(obj, side, cls, **change):
    for e in obj[side]:
        if e["class"] == cls:
            e["witness"].update(change)
    return obj


def test_tampered_witness_is_caught():
    obj = build_certificate(-225, 32).to_json()
    bad = DescentCertificate.from_json(_tamper(obj, "alphabar", "10", N="11"))
    with pytest.raises(CertificateError):
        validate_certificate(bad)


def test_stated_rank_must_match():
    obj = build_certificate(-225, 32).to_json()
    obj["rank_lower_bound"] = "2"
    with pytest.raises(CertificateError):
        DescentCertificate.from_json(obj)


def test_dropping_a_class_breaks_closure():
    obj = build_certificate(-36, 16).to_json()
    obj["alpha"] = obj["alpha"][:-1]
    with pytest.raises(CertificateError):
        validate_certificate(DescentCertificate.from_json({k: v for k, v in obj.items() if k != "rank_lower_bound"}))


def test_bad_seed_rejected():
    with pytest.raises(DomainError):
        build_certificate(-44100, 0, [Seed(Side.E, -6, QuarticWitness(61, 1, 5))])
    with pytest.raises(DomainError):
        build_certificate(-44100, 0, [Seed(Side.E, 11, QuarticWitness(1, 0, 1))])


def test_seed_from_point_and_transport():
    s = seed_from_point(-36, Side.E, CurvePoint(12, 36))
    assert (s.b1, s.witness) == (3, QuarticWitness(6, 1, 2))
    moved = transport_seeds([s], -36, -576)
    assert moved[0].b1 == 3
    cert = build_certificate(-576, 0, moved)
    assert SquareClass(3) in cert.alpha_classes
    with pytest.raises(DomainError):
        transport_seeds([s], -36, -72)


def test_certificate_seeds_feed_a_rebuild():
    cert = build_certificate(-225, 32)
    again = build_certificate(-225, 0, certificate_seeds(cert))
    assert again.alpha_classes == cert.alpha_classes and again.alphabar_classes == cert.alphabar_classes


def test_rank_formula():
    cert = build_certificate(-36, 0)
    assert rank_lower_bound(cert) == max(0, (len(cert.alpha) * len(cert.alphabar)).bit_length() - 3)


def test_point_descent_finds_a_new_class():
    from cnkit.congruent import search_uvm, uvm_to_point
    from cnkit.descent import point_seeds

    # n = 39: the uvm point has x a square, so alpha(P) = 1 says nothing;
    # its preimage on the dual curve carries the class 13
    p = uvm_to_point(search_uvm(39, 200))
    assert seed_from_point(-39 * 39, Side.E, p).b1 == 1
    (s,) = point_seeds(-39 * 39, Side.E, p)
    assert (s.side, s.b1) == (Side.EBAR, 13)
    assert build_certificate(-39 * 39, 0, [s]).rank_lower_bound == 1
    with pytest.raises(DomainError):
        point_seeds(-36, Side.E, CurvePoint(6, 0))


def test_isogeny_preimages():
    from cnkit.homomorphisms import IsogenyPair, phi, phi_preimage, psi, psi_preimage

    pair = IsogenyPair.from_a(-36)
    assert CurvePoint(12, 36) in phi_preimage(pair, CurvePoint(9, 45))
    q = CurvePoint(9, 45)
    for r in psi_preimage(pair, psi(pair, q)):
        assert psi(pair, r) == psi(pair, q)
    assert phi(pair, phi_preimage(pair, CurvePoint(9, 45))[0]) == CurvePoint(9, 45)
