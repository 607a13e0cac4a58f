"""Rank lower-bound certificates: verified square classes on both curves.

Every class in a certificate carries its own evidence: a quartic witness,
a torsion point, or the pair of classes it is the product of.  A certificate
can be re-checked from its JSON form alone with :func:`validate_certificate`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from ..curve import CurveA, CurvePoint, add_points, on_curve, torsion_classify
from ..exactnum import DomainError, SquareClass, square_class, sqclass_mul
from ..homomorphisms import (
    IsogenyPair,
    QuarticWitness,
    alpha,
    gcd_conditions_hold,
    phi_preimage,
    point_from_quadruple,
    psi_preimage,
    witness_from_point,
)
from .quartic import (
    QuarticProblem,
    SearchOutcome,
    Side,
    Solved,
    enumerate_b1,
    outcome_from_json,
    side_constant,
    solve_quartic,
    subgroup_closure,
)


class CertificateError(AssertionError):
    """A certificate failed re-verification."""


@dataclass(frozen=True)
class Seed:
    """A claimed witness for the class of b1 on one side, checked on intake."""

    side: Side
    b1: int
    witness: QuarticWitness
    source: str = "seed"

    def to_json(self) -> dict:
        return {"side": Side(self.side).value, "witness": self.witness.to_json(self.b1), "source": self.source}

    @classmethod
    def from_json(cls, obj: dict) -> "Seed":
        b1, w = QuarticWitness.from_json(obj["witness"])
        return cls(Side(obj["side"]), b1, w, obj.get("source", "seed"))


def seed_from_point(a_curve: int, side: Side, p: CurvePoint, source: str = "seed") -> Seed:
    side = Side(side)
    c = CurveA(side_constant(a_curve, side))
    b1, w = witness_from_point(c, p)
    return Seed(side, b1, w, source)


def point_seeds(a_curve: int, side: Side, p: CurvePoint, source: str = "point", max_steps: int = 64) -> list[Seed]:
    """A seed in a class beyond the torsion classes, from one point of
    infinite order.

    When alpha(P) is already the class of a torsion point T, P - T is in the
    image of the isogeny from the other curve, and the descent continues
    with its (smaller) preimage there until a new class turns up.
    """
    pair = IsogenyPair.from_a(a_curve)
    side = Side(side)
    for _ in range(max_steps):
        c = pair.e if side is Side.E else pair.ebar
        if torsion_classify(c, p).is_torsion:
            raise DomainError("a torsion point proves nothing about the rank")
        tors = {e.cls: e.point for e in _torsion_entries(c)}
        k = alpha(c, p)
        if k not in tors:
            return [seed_from_point(a_curve, side, p, source)]
        q = add_points(c, p, -tors[k])
        pre = psi_preimage(pair, q) if side is Side.E else phi_preimage(pair, q)
        if not pre:
            raise AssertionError("trivial class without an isogeny preimage")
        p, side = pre[0], (Side.EBAR if side is Side.E else Side.E)
    raise DomainError("point descent did not terminate")


@dataclass(frozen=True)
class ClassEntry:
    cls: SquareClass
    kind: str  # "witness" | "torsion" | "product"
    b1: Optional[int] = None
    witness: Optional[QuarticWitness] = None
    point: Optional[CurvePoint] = None
    of: Optional[tuple[SquareClass, SquareClass]] = None
    source: str = ""

    def to_json(self) -> dict:
        out = {"class": str(self.cls)}
        if self.kind == "witness":
            out["witness"] = self.witness.to_json(self.b1)
            out["source"] = self.source
        elif self.kind == "torsion":
            out["tag"] = "torsion"
            out["point"] = self.point.to_json()
        else:
            out["tag"] = "product"
            out["of"] = [str(self.of[0]), str(self.of[1])]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ClassEntry":
        c = SquareClass(int(obj["class"]))
        if "witness" in obj:
            b1, w = QuarticWitness.from_json(obj["witness"])
            return cls(c, "witness", b1=b1, witness=w, source=obj.get("source", ""))
        if obj.get("tag") == "torsion":
            return cls(c, "torsion", point=CurvePoint.from_json(obj["point"]))
        if obj.get("tag") == "product":
            a, b = obj["of"]
            return cls(c, "product", of=(SquareClass(int(a)), SquareClass(int(b))))
        raise ValueError(f"unrecognised class entry {obj!r}")


@dataclass(frozen=True)
class SearchRecord:
    side: Side
    b1: int
    outcome: SearchOutcome

    def to_json(self) -> dict:
        return {"side": Side(self.side).value, "b1": str(self.b1), "outcome": self.outcome.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "SearchRecord":
        return cls(Side(obj["side"]), int(obj["b1"]), outcome_from_json(obj["outcome"]))


def _sort_key(entry: ClassEntry):
    return (abs(entry.cls.rep), entry.cls.rep < 0)


@dataclass(frozen=True)
class DescentCertificate:
    a_curve: int
    height: int
    gcd_mode: str
    alpha: tuple[ClassEntry, ...]
    alphabar: tuple[ClassEntry, ...]
    searches: tuple[SearchRecord, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def alpha_classes(self) -> set[SquareClass]:
        return {e.cls for e in self.alpha}

    @property
    def alphabar_classes(self) -> set[SquareClass]:
        return {e.cls for e in self.alphabar}

    @property
    def rank_lower_bound(self) -> int:
        return rank_lower_bound(self)

    def entries(self, side: Side) -> tuple[ClassEntry, ...]:
        return self.alpha if Side(side) is Side.E else self.alphabar

    def to_json(self) -> dict:
        return {
            "a_curve": str(self.a_curve),
            "height": str(self.height),
            "gcd_mode": self.gcd_mode,
            "alpha": [e.to_json() for e in self.alpha],
            "alphabar": [e.to_json() for e in self.alphabar],
            "searches": [s.to_json() for s in self.searches],
            "notes": list(self.notes),
            "rank_lower_bound": str(self.rank_lower_bound),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict) -> "DescentCertificate":
        cert = cls(
            a_curve=int(obj["a_curve"]),
            height=int(obj["height"]),
            gcd_mode=obj.get("gcd_mode", "literal"),
            alpha=tuple(ClassEntry.from_json(e) for e in obj["alpha"]),
            alphabar=tuple(ClassEntry.from_json(e) for e in obj["alphabar"]),
            searches=tuple(SearchRecord.from_json(s) for s in obj.get("searches", [])),
            notes=tuple(obj.get("notes", [])),
        )
        if "rank_lower_bound" in obj and int(obj["rank_lower_bound"]) != cert.rank_lower_bound:
            raise CertificateError("stated rank bound disagrees with the class counts")
        return cert


def rank_lower_bound(cert: DescentCertificate) -> int:
    """max(0, log2(|alpha| * |alphabar|) - 2)."""
    total = len(cert.alpha) * len(cert.alphabar)
    if total & (total - 1):
        raise CertificateError("class counts are not powers of two")
    return max(0, total.bit_length() - 1 - 2)


# ------------------------------------------------------------ assembly


def _order_four(c: CurveA) -> list[CurvePoint]:
    # y^2 = x^3 + 4d^4 x has (2d^2, 4d^3) of order 4; no other A gives one
    from ..exactnum import isqrt_exact

    a = c.a_coeff
    if not c.is_integral or a <= 0 or a % 4:
        return []
    d2 = isqrt_exact(a // 4)
    d = isqrt_exact(d2) if d2 is not None else None
    return [] if d is None else [CurvePoint(2 * d * d, 4 * d**3)]


def _torsion_entries(c: CurveA) -> list[ClassEntry]:
    out: dict[SquareClass, ClassEntry] = {}
    for p in [CurvePoint()] + c.two_torsion() + _order_four(c):
        k = alpha(c, p)
        out.setdefault(k, ClassEntry(k, "torsion", point=p))
    return list(out.values())


def _check_seed(a_curve: int, seed: Seed) -> ClassEntry:
    const = side_constant(a_curve, seed.side)
    b2 = Fraction(const, seed.b1)
    if b2.denominator != 1:
        raise DomainError(f"seed b1 = {seed.b1} does not divide {const}")
    b2 = b2.numerator
    w = seed.witness
    if not w.satisfies(seed.b1, b2):
        raise DomainError(f"seed {w} does not solve its quartic for b1 = {seed.b1}")
    curve, p = point_from_quadruple(seed.b1, b2, w)
    k = square_class(seed.b1)
    if p is not None and alpha(curve, p) != k:
        raise DomainError("seed point lands in the wrong class")
    return ClassEntry(k, "witness", b1=seed.b1, witness=w, source=seed.source)


def _close(found: list[ClassEntry]) -> tuple[ClassEntry, ...]:
    # direct evidence first (first one wins), products only fill the gaps
    have: dict[SquareClass, ClassEntry] = {}
    for e in found:
        have.setdefault(e.cls, e)
    grew = True
    while grew:
        grew = False
        keys = list(have)
        for x in keys:
            for y in keys:
                z = sqclass_mul(x, y)
                if z not in have:
                    have[z] = ClassEntry(z, "product", of=(x, y))
                    grew = True
    return tuple(sorted(have.values(), key=_sort_key))


def build_certificate(
    a_curve: int,
    height: int = 64,
    seeds: Iterable[Seed] = (),
    gcd_mode: str = "literal",
    workers: int = 1,
    cache=None,
    notes: Iterable[str] = (),
) -> DescentCertificate:
    """Collect torsion classes, verified seeds and searched witnesses on both
    curves, close each side into a subgroup, and validate the result.

    ``height = 0`` skips the search entirely.  ``cache``, when given, must
    offer ``lookup(problem, gcd_mode, height)`` and
    ``store(problem, gcd_mode, height, outcome)``.
    """
    if not isinstance(a_curve, int) or a_curve == 0:
        raise DomainError("a_curve must be a nonzero integer")
    pair = IsogenyPair.from_a(a_curve)
    found = {Side.E: _torsion_entries(pair.e), Side.EBAR: _torsion_entries(pair.ebar)}
    for s in seeds:
        found[Side(s.side)].append(_check_seed(a_curve, s))

    searches: list[SearchRecord] = []
    if height > 0:
        for side in (Side.E, Side.EBAR):
            group = subgroup_closure(e.cls for e in found[side])
            for k in enumerate_b1(side_constant(a_curve, side)):
                if k in group:
                    continue
                prob = QuarticProblem.for_curve(a_curve, side, k.rep)
                out = cache.lookup(prob, gcd_mode, height) if cache is not None else None
                if out is None:
                    out = solve_quartic(prob, height, gcd_mode, workers)
                    if cache is not None:
                        cache.store(prob, gcd_mode, height, out)
                searches.append(SearchRecord(side, k.rep, out))
                if isinstance(out, Solved):
                    found[side].append(ClassEntry(k, "witness", b1=k.rep, witness=out.witness, source="search"))
                    group = subgroup_closure(e.cls for e in found[side])

    cert = DescentCertificate(
        a_curve=a_curve,
        height=height,
        gcd_mode=gcd_mode,
        alpha=_close(found[Side.E]),
        alphabar=_close(found[Side.EBAR]),
        searches=tuple(searches),
        notes=tuple(notes),
    )
    validate_certificate(cert)
    return cert


# ------------------------------------------------------------ validation


def _validate_side(cert: DescentCertificate, side: Side) -> None:
    const = side_constant(cert.a_curve, side)
    curve = CurveA(const)
    entries = cert.entries(side)
    classes = [e.cls for e in entries]
    if len(set(classes)) != len(classes):
        raise CertificateError(f"{side.value}: repeated class")
    have = set(classes)
    for e in entries:
        if e.kind == "witness":
            b2 = Fraction(const, e.b1)
            if b2.denominator != 1 or not e.witness.satisfies(e.b1, b2.numerator):
                raise CertificateError(f"{side.value}: witness for {e.cls} fails its quartic")
            if square_class(e.b1) != e.cls:
                raise CertificateError(f"{side.value}: b1 = {e.b1} is not in class {e.cls}")
            if e.source == "search" and not e.witness.is_degenerate:
                if not gcd_conditions_hold(e.b1, b2.numerator, e.witness, cert.gcd_mode):
                    raise CertificateError(f"{side.value}: searched witness for {e.cls} fails gcd rules")
            _, p = point_from_quadruple(e.b1, b2.numerator, e.witness)
            if p is not None and alpha(curve, p) != e.cls:
                raise CertificateError(f"{side.value}: witness point for {e.cls} in the wrong class")
        elif e.kind == "torsion":
            if not on_curve(curve, e.point) or not torsion_classify(curve, e.point).is_torsion:
                raise CertificateError(f"{side.value}: torsion tag for {e.cls} is not a torsion point")
            if alpha(curve, e.point) != e.cls:
                raise CertificateError(f"{side.value}: torsion point is not in class {e.cls}")
        elif e.kind == "product":
            x, y = e.of
            if x not in have or y not in have or sqclass_mul(x, y) != e.cls:
                raise CertificateError(f"{side.value}: bad product provenance for {e.cls}")
        else:
            raise CertificateError(f"unknown entry kind {e.kind!r}")
    n = len(have)
    if SquareClass(1) not in have or n & (n - 1):
        raise CertificateError(f"{side.value}: class set is not a group of order 2^k")
    for x in have:
        for y in have:
            if sqclass_mul(x, y) not in have:
                raise CertificateError(f"{side.value}: not closed under multiplication")


def validate_certificate(cert: DescentCertificate) -> None:
    """Re-check every witness, torsion tag, product and the group structure."""
    for side in (Side.E, Side.EBAR):
        _validate_side(cert, side)
    rank_lower_bound(cert)


def certificate_seeds(cert: DescentCertificate) -> list[Seed]:
    """The witness entries of a certificate, as seeds for another build."""
    return [
        Seed(side, e.b1, e.witness, e.source)
        for side in (Side.E, Side.EBAR)
        for e in cert.entries(side)
        if e.kind == "witness"
    ]


def transport_seeds(seeds: Iterable[Seed], a_source: int, a_target: int, tag: str = "") -> list[Seed]:
    """Move witnesses along the twist (x, y) -> (mu^2 x, mu^3 y) where
    mu^4 = a_target / a_source.  Square classes are unchanged by the twist;
    witnesses with e = 0 only ever prove the trivial class and are dropped.
    """
    from ..curve import quartic_twist

    ratio = Fraction(a_target, a_source)
    mu = _rational_fourth_root(ratio)
    if mu is None:
        raise DomainError(f"{a_target}/{a_source} is not a rational fourth power")
    out = []
    for s in seeds:
        const = side_constant(a_source, s.side)
        curve, p = point_from_quadruple(s.b1, const // s.b1, s.witness)
        if p is None:
            continue
        tcurve, tp = quartic_twist(curve, p, mu)
        b1, w = witness_from_point(tcurve, tp)
        out.append(Seed(s.side, b1, w, f"{s.source}{tag}"))
    return out


def _rational_fourth_root(q: Fraction) -> Optional[Fraction]:
    from ..exactnum import isqrt_exact

    if q <= 0:
        return None
    parts = []
    for n in (q.numerator, q.denominator):
        r = isqrt_exact(n)
        r = isqrt_exact(r) if r is not None else None
        if r is None:
            return None
        parts.append(r)
    return Fraction(parts[0], parts[1])
