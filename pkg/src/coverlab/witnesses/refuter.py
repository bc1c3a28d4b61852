"""Refuting finite coset covers of F_p(t) by cosets of the subfield F_p(t^k).

Additive cosets are ``a + H``; multiplicative ones are ``a * U(H)``.
No finite family of either kind covers, and the refuter produces a
checkable reason: an element outside every coset.  It first scans small
candidates in degree order; failing that it runs the pigeonhole argument,
building ``m + 1`` elements ``a_i + a_j * lambda`` (``lambda`` in ``H``)
that lie in pairwise distinct cosets of ``H``, so that one of them must
escape the ``m`` given cosets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from ..errors import BadShift, CharacteristicMismatch, InputError
from ..groups import is_prime
from ..lattices import Inconclusive
from .fpoly import RationalFunction, pgcd, polys_of_degree, support

MODES = ("additive", "multiplicative")
CANDIDATE_LIMIT = 200_000


@dataclass(frozen=True)
class SubfieldSpec:
    """The subfield F_p(t^k) of F_p(t)."""

    p: int
    k: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not prime")
        if self.k < 2:
            raise InputError("k must be >= 2 for a proper subfield")


def rf_subfield_member(f: RationalFunction, h: SubfieldSpec) -> bool:
    """``f`` lies in F_p(t^k) iff its reduced numerator and denominator only use powers divisible by k."""
    if f.p != h.p:
        raise CharacteristicMismatch(f"F_{f.p}(t) vs subfield over F_{h.p}")
    return all(e % h.k == 0 for e in support(f.num) | support(f.den))


Member = Callable[[RationalFunction, SubfieldSpec], bool]


def in_coset(x: RationalFunction, shift: RationalFunction, h: SubfieldSpec, mode: str,
             member: Member = rf_subfield_member) -> bool:
    if mode == "additive":
        return member(x - shift, h)
    return not x.is_zero and member(x / shift, h)


def covering_cosets(x: RationalFunction, shifts: Sequence[RationalFunction], h: SubfieldSpec,
                    mode: str, member: Member = rf_subfield_member) -> list[int]:
    return [i for i, a in enumerate(shifts) if in_coset(x, a, h, mode, member)]


@dataclass(frozen=True)
class UncoveredWitness:
    element: RationalFunction
    method: str = "search"

    def to_json(self) -> dict:
        return {"kind": "uncovered", "method": self.method, "element": self.element.to_json(),
                "degree": self.element.degree}


@dataclass(frozen=True)
class CollisionCertificate:
    """``a_i + a_j*lambda1`` and ``a_i + a_j*lambda2`` share coset ``coset``.

    For ``a_j`` outside ``H`` (additive) or ``a_i/a_j`` outside ``H``
    (multiplicative) this forces a contradiction, so a verified collision
    exposes an inconsistent input rather than a cover.
    """

    i: int
    j: int
    lambda1: RationalFunction
    lambda2: RationalFunction
    coset: int

    def to_json(self) -> dict:
        return {"kind": "collision", "i": self.i, "j": self.j, "lambda1": self.lambda1.to_json(),
                "lambda2": self.lambda2.to_json(), "coset": self.coset}


Certificate = UncoveredWitness | CollisionCertificate


def candidates(p: int, degree_bound: int) -> Iterator[RationalFunction]:
    """Monomials, then polynomials, then reduced proper fractions, each by increasing degree."""
    for d in range(degree_bound + 1):
        yield RationalFunction.tau(p, d)
    for d in range(degree_bound + 1):
        for f in polys_of_degree(d, p):
            yield RationalFunction(p, f)
    for dd in range(1, degree_bound + 1):
        for den in polys_of_degree(dd, p, monic_only=True):
            for nd in range(degree_bound + 1):
                for num in polys_of_degree(nd, p):
                    if pgcd(num, den, p) == (1,):
                        yield RationalFunction(p, num, den)


def subfield_units(h: SubfieldSpec) -> Iterator[RationalFunction]:
    """Distinct nonzero elements of F_p(t^k): polynomials in t^k."""
    for d in itertools.count():
        for f in polys_of_degree(d, h.p):
            coeffs = [0] * (d * h.k + 1)
            for e, c in enumerate(f):
                coeffs[e * h.k] = c
            yield RationalFunction(h.p, tuple(coeffs))


def _validate(p: int, h: SubfieldSpec, shifts: Sequence[RationalFunction], mode: str) -> None:
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}")
    if h.p != p:
        raise CharacteristicMismatch(f"subfield over F_{h.p} in F_{p}(t)")
    for i, a in enumerate(shifts):
        if a.p != p:
            raise CharacteristicMismatch(f"shift {i} lives in F_{a.p}(t)")
        if mode == "multiplicative" and a.is_zero:
            raise BadShift(f"shift {i} is zero in multiplicative mode")


def pigeonhole_refutation(h: SubfieldSpec, shifts: Sequence[RationalFunction], mode: str
                          ) -> Certificate | None:
    """Run the pigeonhole argument over ``a_i + a_j * lambda`` for ``m + 1`` values of lambda."""
    p = h.p
    t = RationalFunction.tau(p)
    if mode == "additive":
        pair = next(((0, j) for j, a in enumerate(shifts) if not rf_subfield_member(a, h)), None)
        if pair is None:
            # every coset is H itself
            return UncoveredWitness(t, "pigeonhole")
    else:
        pair = next(((i, j) for i, j in itertools.product(range(len(shifts)), repeat=2)
                     if not rf_subfield_member(shifts[i] / shifts[j], h)), None)
        if pair is None:
            # every coset is shifts[0] * U(H)
            return UncoveredWitness(shifts[0] * t, "pigeonhole")
    i, j = pair
    seen: dict[int, RationalFunction] = {}
    for lam in itertools.islice(subfield_units(h), len(shifts) + 1):
        x = shifts[i] + shifts[j] * lam
        hits = covering_cosets(x, shifts, h, mode)
        if not hits:
            return UncoveredWitness(x, "pigeonhole")
        k = hits[0]
        if k in seen:
            return CollisionCertificate(i, j, seen[k], lam, k)
        seen[k] = lam
    return None


def refute_coset_cover(p: int, h: SubfieldSpec, shifts: Sequence[RationalFunction], mode: str,
                       degree_bound: int, candidate_limit: int = CANDIDATE_LIMIT
                       ) -> Certificate | Inconclusive:
    """Certificate that the cosets of ``h`` at ``shifts`` do not cover F_p(t) (or its units)."""
    _validate(p, h, shifts, mode)
    if degree_bound < 1:
        raise InputError("degree_bound must be >= 1")
    if not shifts:
        return UncoveredWitness(RationalFunction.const(p, 1))
    for x in itertools.islice(candidates(p, degree_bound), candidate_limit):
        if mode == "multiplicative" and x.is_zero:
            continue
        if not covering_cosets(x, shifts, h, mode):
            return UncoveredWitness(x)
    cert = pigeonhole_refutation(h, shifts, mode)
    if cert is not None:
        return cert
    return Inconclusive(f"no certificate among candidates of degree <= {degree_bound}")


def verify_certificate(cert: Certificate, h: SubfieldSpec, shifts: Sequence[RationalFunction],
                       mode: str, member: Member = rf_subfield_member) -> bool:
    """Re-check ``cert`` from scratch; ``member`` may be swapped for an independent subfield test."""
    if isinstance(cert, UncoveredWitness):
        x = cert.element
        if mode == "multiplicative" and x.is_zero:
            return False
        return not any(in_coset(x, a, h, mode, member) for a in shifts)
    if isinstance(cert, CollisionCertificate):
        ai, aj = shifts[cert.i], shifts[cert.j]
        l1, l2 = cert.lambda1, cert.lambda2
        if l1 == l2 or l1.is_zero or l2.is_zero or not (member(l1, h) and member(l2, h)):
            return False
        a_k = shifts[cert.coset]
        x1, x2 = ai + aj * l1, ai + aj * l2
        if not (in_coset(x1, a_k, h, mode, member) and in_coset(x2, a_k, h, mode, member)):
            return False
        if mode == "additive":
            return member(aj * (l1 - l2), h) and not member(aj, h)
        l3 = x2 / x1
        return ai * (RationalFunction.const(h.p, 1) - l3) == aj * (l1 * l3 - l2) and not member(ai / aj, h)
    return False
