"""Unit groups split into three subsemigroups through two exponent coordinates.

Pick multiplicatively independent units z1, z2 inside a free generating
set; e1(z), e2(z) are their exponents in z.  Z^2 is the proper union of

    L1 = <(1,0), (1,2)> = {y even}
    L2 = <(0,1), (2,1)> = {x even}
    L3 = <(1,1), (-1,1)> = {x + y even}

and pulling the Li back along (e1, e2) gives subsemigroups M1, M2, M3
covering the unit group.  Two backends: the rationals with (z1, z2) =
(2, 3), and F_p(t) with (z1, z2) = (t, t + 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ZeroInput
from ..lattices import LatticeCoset, hnf, lattice_member
from .fpoly import RationalFunction, multiplicity

EXPONENT_LATTICES = {
    "M1": hnf([(1, 0), (1, 2)]),
    "M2": hnf([(0, 1), (2, 1)]),
    "M3": hnf([(1, 1), (-1, 1)]),
}


def exponent_cover() -> list[LatticeCoset]:
    return [LatticeCoset(lat, (0, 0)) for lat in EXPONENT_LATTICES.values()]


@dataclass(frozen=True)
class UnitExponentVector:
    e1: int
    e2: int

    def __add__(self, other: "UnitExponentVector") -> "UnitExponentVector":
        return UnitExponentVector(self.e1 + other.e1, self.e2 + other.e2)

    def as_tuple(self) -> tuple[int, int]:
        return (self.e1, self.e2)


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def unit_exponents(q: Fraction | int | str) -> UnitExponentVector:
    """Exponents of 2 and 3 in a nonzero rational; sign and other primes are ignored."""
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("zero is not a unit")
    num, den = abs(q.numerator), q.denominator
    return UnitExponentVector(_valuation(num, 2) - _valuation(den, 2),
                              _valuation(num, 3) - _valuation(den, 3))


def rf_unit_exponents(f: RationalFunction) -> UnitExponentVector:
    """Exponents of t and t + 1 in a nonzero element of F_p(t)."""
    if f.is_zero:
        raise ZeroInput("zero is not a unit")
    p = f.p
    t, t1 = (0, 1), (1, 1)
    return UnitExponentVector(multiplicity(f.num, t, p) - multiplicity(f.den, t, p),
                              multiplicity(f.num, t1, p) - multiplicity(f.den, t1, p))


def classify_exponents(v: UnitExponentVector) -> frozenset[str]:
    return frozenset(name for name, lat in EXPONENT_LATTICES.items() if lattice_member(lat, v.as_tuple()))


def semigroup_membership(q: Fraction | int | str) -> frozenset[str]:
    return classify_exponents(unit_exponents(q))


def rf_semigroup_membership(f: RationalFunction) -> frozenset[str]:
    return classify_exponents(rf_unit_exponents(f))
