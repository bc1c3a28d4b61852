"""Polynomials over F_p, the rational function field F_p(t), and small finite fields.

Polynomials are coefficient tuples, constant term first, with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from ..errors import CharacteristicMismatch, InputError
from ..groups import FiniteAbelianGroup, factorize, is_prime

Poly = tuple[int, ...]


def trim(c: Sequence[int], p: int) -> Poly:
    out = [x % p for x in c]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def deg(a: Poly) -> int:
    return len(a) - 1


def padd(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def pneg(a: Poly, p: int) -> Poly:
    return trim([-x for x in a], p)


def psub(a: Poly, b: Poly, p: int) -> Poly:
    return padd(a, pneg(b, p), p)


def pmul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def pscale(a: Poly, c: int, p: int) -> Poly:
    return trim([c * x for x in a], p)


def pdivmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] * inv % p
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = (r[shift + i] - c * y) % p
        while r and r[-1] == 0:
            r.pop()
    return trim(q, p), tuple(r)


def monic(a: Poly, p: int) -> Poly:
    return pscale(a, pow(a[-1], -1, p), p) if a else ()


def pgcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return monic(a, p)


def multiplicity(a: Poly, factor: Poly, p: int) -> int:
    """Largest ``e`` with ``factor^e`` dividing the nonzero polynomial ``a``."""
    e = 0
    while True:
        q, r = pdivmod(a, factor, p)
        if r:
            return e
        a, e = q, e + 1


def polys_of_degree(d: int, p: int, monic_only: bool = False) -> Iterator[Poly]:
    """Every polynomial of exact degree ``d``: monic ones first, low coefficients varying fastest."""
    leads = [1] if monic_only else range(1, p)
    for lead in leads:
        for low in itertools.product(range(p), repeat=d):
            yield tuple(reversed(low)) + (lead,)


def support(a: Poly) -> set[int]:
    return {i for i, c in enumerate(a) if c}


@dataclass(frozen=True)
class RationalFunction:
    """Element ``num/den`` of F_p(t) in reduced form with monic denominator."""

    p: int
    num: Poly = ()
    den: Poly = (1,)

    def __post_init__(self) -> None:
        p = self.p
        if not is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        num, den = trim(self.num, p), trim(self.den, p)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = (1,)
        else:
            g = pgcd(num, den, p)
            if g != (1,):
                num, den = pdivmod(num, g, p)[0], pdivmod(den, g, p)[0]
            inv = pow(den[-1], -1, p)
            num, den = pscale(num, inv, p), pscale(den, inv, p)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def tau(cls, p: int, power: int = 1) -> "RationalFunction":
        return cls(p, (0,) * power + (1,))

    @classmethod
    def const(cls, p: int, c: int) -> "RationalFunction":
        return cls(p, (c,))

    @classmethod
    def poly(cls, p: int, coeffs: Sequence[int]) -> "RationalFunction":
        return cls(p, tuple(coeffs))

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def degree(self) -> int:
        return max(deg(self.num), deg(self.den))

    def _check(self, other: "RationalFunction") -> None:
        if other.p != self.p:
            raise CharacteristicMismatch(f"F_{self.p}(t) vs F_{other.p}(t)")

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        p = self.p
        return RationalFunction(p, padd(pmul(self.num, other.den, p), pmul(other.num, self.den, p), p),
                                pmul(self.den, other.den, p))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(self.p, pneg(self.num, self.p), self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        p = self.p
        return RationalFunction(p, pmul(self.num, other.num, p), pmul(self.den, other.den, p))

    def inverse(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.p, self.den, self.num)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self * other.inverse()

    def __str__(self) -> str:
        def show(a: Poly) -> str:
            if not a:
                return "0"
            terms = [(f"{c}" if i == 0 else ("" if c == 1 else f"{c}*") + ("t" if i == 1 else f"t^{i}"))
                     for i, c in enumerate(a) if c]
            return " + ".join(reversed(terms))
        if self.den == (1,):
            return show(self.num)
        return f"({show(self.num)})/({show(self.den)})"

    def to_json(self) -> dict:
        return {"p": self.p, "num": list(self.num), "den": list(self.den)}


class FiniteField:
    """GF(p^n) as F_p[t] modulo the first monic irreducible of degree ``n``."""

    def __init__(self, q: int) -> None:
        fac = factorize(q)
        if len(fac) != 1:
            raise InputError(f"{q} is not a prime power")
        (self.p, self.n), = fac.items()
        self.q = q
        self.modulus = next(f for f in polys_of_degree(self.n, self.p, monic_only=True)
                            if self._irreducible(f))

    def _irreducible(self, f: Poly) -> bool:
        p = self.p
        for d in range(1, deg(f) // 2 + 1):
            for g in polys_of_degree(d, p, monic_only=True):
                if not pdivmod(f, g, p)[1]:
                    return False
        return True

    @cached_property
    def units(self) -> list[Poly]:
        return [trim(c, self.p) for c in itertools.product(range(self.p), repeat=self.n) if any(c)]

    def mul(self, a: Poly, b: Poly) -> Poly:
        return pdivmod(pmul(a, b, self.p), self.modulus, self.p)[1]

    def power(self, a: Poly, e: int) -> Poly:
        out = (1,)
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def unit_group(self) -> FiniteAbelianGroup:
        """Isomorphism type of the multiplicative group, read off from element orders.

        For each prime l, ``#{x : x^(l^j) = 1} = l^(sum_i min(j, a_i))``;
        successive differences of those exponents give the partition ``a``.
        """
        order = self.q - 1
        cyclic_orders = []
        for ell, e in factorize(order).items():
            logs = [0]
            for j in range(1, e + 1):
                count = sum(1 for x in self.units if self.power(x, ell**j) == (1,))
                logs.append(_exact_log(count, ell))
            at_least = [logs[j] - logs[j - 1] for j in range(1, e + 1)]  # #{i : a_i >= j}
            for i in range(at_least[0] if at_least else 0):
                cyclic_orders.append(ell ** sum(1 for c in at_least if c > i))
        return FiniteAbelianGroup.from_cyclic_orders(cyclic_orders)


def _exact_log(n: int, base: int) -> int:
    k = 0
    while n > 1:
        if n % base:
            raise ArithmeticError(f"{n} is not a power of {base}")
        n //= base
        k += 1
    return k
