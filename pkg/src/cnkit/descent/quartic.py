"""Bounded search for solutions of N^2 = b1 M^4 + b2 e^4."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .. import kernels
from ..exactnum import DomainError, SquareClass, is_squarefree, signed_squarefree_divisors, sqclass_mul
from ..homomorphisms import QuarticWitness, gcd_conditions_hold


class Side(str, enum.Enum):
    E = "E"
    EBAR = "Ebar"


def side_constant(a_curve: int, side: Side) -> int:
    return a_curve if side is Side.E else -4 * a_curve


@dataclass(frozen=True)
class QuarticProblem:
    b1: int
    b2: int
    side: Side = Side.E

    def __post_init__(self) -> None:
        object.__setattr__(self, "side", Side(self.side))
        if not is_squarefree(self.b1):
            raise DomainError(f"b1 = {self.b1} is not squarefree")
        if self.b2 == 0:
            raise DomainError("b2 must be nonzero")
        if self.side is Side.EBAR and (self.b1 * self.b2) % 4:
            raise DomainError("dual-side constant must be divisible by 4")

    @classmethod
    def for_curve(cls, a_curve: int, side: Side, b1: int) -> "QuarticProblem":
        const = side_constant(a_curve, Side(side))
        if const % b1:
            raise DomainError(f"{b1} does not divide {const}")
        return cls(b1, const // b1, side)

    @property
    def constant(self) -> int:
        return self.b1 * self.b2

    @property
    def a_curve(self) -> int:
        return self.constant if self.side is Side.E else -self.constant // 4


@dataclass(frozen=True)
class Solved:
    witness: QuarticWitness

    def to_json(self) -> dict:
        w = self.witness
        return {"status": "solved", "N": str(w.N), "e": str(w.e), "M": str(w.M)}


@dataclass(frozen=True)
class ExhaustedToHeight:
    height: int

    def to_json(self) -> dict:
        return {"status": "exhausted", "height": str(self.height)}


@dataclass(frozen=True)
class LocallyExcluded:
    modulus: int  # -1 stands for the real place

    def to_json(self) -> dict:
        return {"status": "excluded", "modulus": str(self.modulus)}


SearchOutcome = Union[Solved, ExhaustedToHeight, LocallyExcluded]


def outcome_from_json(obj: dict) -> SearchOutcome:
    st = obj["status"]
    if st == "solved":
        return Solved(QuarticWitness(int(obj["N"]), int(obj["e"]), int(obj["M"])))
    if st == "exhausted":
        return ExhaustedToHeight(int(obj["height"]))
    if st == "excluded":
        return LocallyExcluded(int(obj["modulus"]))
    raise ValueError(f"unknown outcome {st!r}")


def enumerate_b1(constant: int) -> list[SquareClass]:
    """Signed squarefree divisors of the constant, ordered by (|b1|, sign)."""
    return [SquareClass(d) for d in signed_squarefree_divisors(constant)]


def subgroup_closure(classes) -> set[SquareClass]:
    group = {SquareClass(1)}
    for c in classes:
        if c not in group:
            group |= {sqclass_mul(c, g) for g in group}
    return group


# ------------------------------------------------------------ local sieve


@lru_cache(maxsize=None)
def _squares_mod(m: int) -> frozenset:
    return frozenset(x * x % m for x in range(m))


def _locally_blocked(b1: int, b2: int, m: int, p: int) -> bool:
    # A solution can be scaled so gcd(e, M) = 1 (g^2 then divides N), so p
    # never divides both e and M.
    sq = _squares_mod(m)
    r1, r2 = b1 % m, b2 % m
    for e in range(m):
        e4 = pow(e, 4, m)
        for M in range(m):
            if e % p == 0 and M % p == 0:
                continue
            if (r1 * pow(M, 4, m) + r2 * e4) % m in sq:
                return False
    return True


def local_obstruction(b1: int, b2: int) -> Optional[int]:
    """Modulus witnessing that no nontrivial solution exists, else None."""
    if b1 < 0 and b2 < 0:
        return -1
    for m, p in ((16, 2), (9, 3)):
        if _locally_blocked(b1, b2, m, p):
            return m
    return None


# ------------------------------------------------------------ search


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    size = max(1, math.ceil((hi - lo + 1) / parts))
    return [(s, min(hi, s + size - 1)) for s in range(lo, hi + 1, size)]


def solve_quartic(
    p: QuarticProblem,
    height: int,
    gcd_mode: str = "literal",
    workers: int = 1,
) -> SearchOutcome:
    """Lexicographically least (e, M) with 0 <= e, M <= height.

    N is returned nonnegative.  Nondegenerate candidates (e, M, N all
    nonzero) must pass the gcd side conditions of ``gcd_mode``.  The e-range
    can be split over ``workers`` threads; the merge keeps the first chunk
    with a hit, so the answer does not depend on scheduling.
    """
    if height < 1:
        raise DomainError("height must be at least 1")
    mod = local_obstruction(p.b1, p.b2)
    if mod is not None:
        return LocallyExcluded(mod)

    def run(span):
        return kernels.quartic_first(p.b1, p.b2, span[0], span[1], height, gcd_mode)

    if workers <= 1:
        hit = run((0, height))
    else:
        spans = _chunks(0, height, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, spans))
        hit = next((r for r in results if r is not None), None)
    if hit is None:
        return ExhaustedToHeight(height)
    e, M, N = hit
    w = QuarticWitness(N, e, M)
    if not w.satisfies(p.b1, p.b2):
        raise AssertionError(f"kernel returned a non-solution {hit}")
    if not w.is_degenerate and not gcd_conditions_hold(p.b1, p.b2, w, gcd_mode):
        raise AssertionError(f"kernel returned a witness failing gcd rules {hit}")
    return Solved(w)
