"""Closed-form witnesses for y^2 = x^3 - A^2 x with A = uv(u^2 - v^2) or
A = u^4 - v^4, and the square-extraction cascade for the second shape.

All formulas are checked by substitution when the certificate is assembled,
so a transcription slip fails loudly instead of producing a bad certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..exactnum import DomainError, SquareClass, isqrt_exact, square_class
from ..parametrize import pythagoras_invert, solve_sum_two_squares_twice
from .certificate import (
    DescentCertificate,
    Seed,
    build_certificate,
    certificate_seeds,
    transport_seeds,
)
from .quartic import Side

MAX_CASCADE_STEPS = 64
_UNITS = {SquareClass(1), SquareClass(-1)}


@dataclass(frozen=True)
class CascadeState:
    stage: str  # start | form1 | form2 | reduce
    params: tuple[int, ...]
    extracted_square: int
    depth: int

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "params": [str(p) for p in self.params],
            "extracted_square": str(self.extracted_square),
            "depth": str(self.depth),
        }


def _w(side, b1, N, e, M, source):
    from ..homomorphisms import QuarticWitness

    return Seed(side, b1, QuarticWitness(N, e, abs(M)), source)


def _require_coprime(u: int, v: int) -> None:
    if u == 0 or v == 0:
        raise DomainError("u and v must be nonzero")
    if math.gcd(u, v) != 1:
        raise DomainError("u and v must be coprime")


def _extracted(a_abs: int, kernel: int) -> int:
    q, r = divmod(a_abs, abs(kernel))
    if r or isqrt_exact(q) is None:
        raise AssertionError("cascade lost track of A")
    return q


def cascade_u4v4(
    u: int, v: int, height: int = 0, gcd_mode: str = "literal", _depth: int = 0
) -> tuple[DescentCertificate, list[CascadeState]]:
    """Rank >= 1 certificate for A = u^4 - v^4, following the case analysis:
    the dual-curve classes 1 and 2(u^2+v^2) when they differ, otherwise the
    (form1)/(form2) loop that keeps pulling square factors out of A."""
    _require_coprime(u, v)
    if u**4 == v**4:
        raise DomainError("u^4 = v^4 gives A = 0")
    A = u**4 - v**4
    a = -A * A
    seeds = [
        _w(Side.EBAR, 1, u**8 - v**8, abs(u * v), abs(A), "table"),
        _w(Side.EBAR, 2 * (u * u + v * v), 2 * (u - v) * (u * u + v * v), 1, u - v, "table"),
    ]
    states = [CascadeState("start", (u, v), 1, _depth)]
    notes: list[str] = []

    def finish():
        cert = build_certificate(a, height, seeds, gcd_mode, notes=notes)
        if cert.rank_lower_bound < 1:
            raise AssertionError(f"cascade for ({u}, {v}) did not reach rank 1")
        return cert, states

    found = None if (u - v) % 2 else solve_sum_two_squares_twice(u, v)
    if found is None:
        return finish()

    r, s, beta = found
    for _ in range(MAX_CASCADE_STEPS):
        # form1: |A| = |16 rs (r^2 - s^2)| beta^2
        k1 = 16 * r * s * (r * r - s * s)
        states.append(CascadeState("form1", (r, s, beta), _extracted(abs(A), k1), _depth))
        d = r * r - s * s
        b = 16 * d * beta * beta
        seeds += [
            _w(Side.E, b, 4 * r * beta * d, 1, r, "form1"),
            _w(Side.E, -b, 4 * s * beta * d, 1, s, "form1"),
        ]
        if square_class(d) not in _UNITS:
            if square_class(r * s) not in _UNITS:
                c = 16 * r * s * beta * beta
                seeds += [
                    _w(Side.E, c, 8 * r * s * beta * (r + s), 1, r + s, "form1"),
                    _w(Side.E, -c, 8 * r * s * beta * (r - s), 1, r - s, "form1"),
                ]
                return finish()
            # rs = +-square: A is a square multiple of r1^4 - s1^4, recurse on it
            r1, s1 = isqrt_exact(abs(r)), isqrt_exact(abs(s))
            states.append(CascadeState("reduce", (r1, s1), _extracted(abs(A), r1**4 - s1**4), _depth))
            sub, sub_states = cascade_u4v4(r1, s1, 0, gcd_mode, _depth + 1)
            states += sub_states
            seeds += transport_seeds(certificate_seeds(sub), sub.a_curve, a, "+twist")
            notes.append(f"reduced to u^4 - v^4 with (u, v) = ({r1}, {s1})")
            return finish()
        if d < 0:
            r, s, d = s, r, -d
        gamma = isqrt_exact(d)
        w, z = pythagoras_invert(gamma, s)
        # form2: |A| = |32 wz (w^2 + z^2)| beta^2 gamma^2
        k2 = 32 * w * z * (w * w + z * z)
        states.append(CascadeState("form2", (w, z, beta, gamma), _extracted(abs(A), k2), _depth))
        h = w * w + z * z
        seeds.append(_w(Side.EBAR, 64 * h * (beta * gamma) ** 2, 8 * w * beta * gamma * h, 1, w, "form2"))
        delta = isqrt_exact(h)
        if delta is None:
            return finish()
        aa, bb = pythagoras_invert(w, z) if w % 2 else pythagoras_invert(z, w)
        r, s, beta = aa, bb, 2 * beta * gamma * delta
    raise AssertionError("cascade did not terminate")


def uv_table_seeds(u: int, v: int) -> list[Seed]:
    """The table witnesses for A = uv(u^2 - v^2) (torsion rows omitted)."""
    d = u * u - v * v
    return [
        _w(Side.E, u * v, 2 * u * v * (u + v), 1, u + v, "table"),
        _w(Side.E, -u * v, 2 * u * v * (u - v), 1, u - v, "table"),
        _w(Side.E, d, u * d, 1, u, "table"),
        _w(Side.E, -d, v * d, 1, v, "table"),
        _w(Side.EBAR, 1, u**4 - v**4, 1, d, "table"),
    ]


def certificate_for_uv(
    u: int, v: int, height: int = 0, gcd_mode: str = "literal", extra_seeds=(), notes=()
) -> DescentCertificate:
    """Rank >= 1 certificate for y^2 = x^3 - A^2 x, A = uv(u^2 - v^2).

    When uv or u^2 - v^2 is +-1 modulo squares the table alone collapses to
    rank 0, and the witnesses of the u^4 - v^4 cascade are twisted over.
    """
    _require_coprime(u, v)
    if u * u == v * v:
        raise DomainError("u^2 = v^2 gives A = 0")
    A = u * v * (u * u - v * v)
    a = -A * A
    seeds = uv_table_seeds(u, v)
    notes = list(notes)
    sub = None
    if square_class(u * v) in _UNITS:
        u1, v1 = isqrt_exact(abs(u)), isqrt_exact(abs(v))
        sub, _ = cascade_u4v4(u1, v1, 0, gcd_mode)
        notes.append(f"uv is +-1 mod squares: twisted from u^4 - v^4 with (u, v) = ({u1}, {v1})")
    elif square_class(u * u - v * v) in _UNITS:
        p, q = (u, v) if u * u > v * v else (v, u)
        g = math.gcd(p + q, p - q)
        u1, v1 = (p + q) // g, (p - q) // g
        a1, b1 = isqrt_exact(abs(u1)), isqrt_exact(abs(v1))
        sub, _ = cascade_u4v4(a1, b1, 0, gcd_mode)
        notes.append(f"u^2 - v^2 is +-1 mod squares: ({u1}, {v1}) = ((u+v)/{g}, (u-v)/{g}), A1 = 4A")
    if sub is not None:
        seeds += transport_seeds(certificate_seeds(sub), sub.a_curve, a, "+twist")
    cert = build_certificate(a, height, [*seeds, *extra_seeds], gcd_mode, notes=notes)
    if cert.rank_lower_bound < 1:
        raise AssertionError(f"no rank-1 certificate assembled for ({u}, {v})")
    return cert


def twist_ratio(a_source: int, a_target: int) -> Fraction:
    return Fraction(a_target, a_source)
