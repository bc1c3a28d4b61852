"""Z[x] as the union of three parity subrings.

    S1 = {f : f(0) even},  S2 = {f : f(1) even},  S3 = {f : f(0) + f(1) even}

The pair (f(0) mod 2, f(1) mod 2) decides membership: (0, *) lies in S1,
(*, 0) in S2 and (1, 1) in S3, so every polynomial lands somewhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable

from ..errors import InputError

PARTS = ("S1", "S2", "S3")


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()  # constant term first

    def __post_init__(self) -> None:
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def of(cls, *coeffs: int) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x" if i == 1 else f"{c}*x^{i}")
        return " + ".join(reversed(terms))

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}


X = IntPolynomial.of(0, 1)
ONE = IntPolynomial.of(1)

# a polynomial lying in exactly one part, for each part
WITNESSES = {"S1": X, "S2": X + ONE, "S3": ONE}


def in_part(f: IntPolynomial, part: str) -> bool:
    if part == "S1":
        return f(0) % 2 == 0
    if part == "S2":
        return f(1) % 2 == 0
    if part == "S3":
        return (f(0) + f(1)) % 2 == 0
    raise InputError(f"unknown part {part!r}")


def zx_membership(f: IntPolynomial) -> frozenset[str]:
    return frozenset(p for p in PARTS if in_part(f, p))


def random_polynomial(rng: random.Random, max_degree: int = 8, max_coeff: int = 9) -> IntPolynomial:
    deg = rng.randint(0, max_degree)
    return IntPolynomial(tuple(rng.randint(-max_coeff, max_coeff) for _ in range(deg + 1)))


def random_in_part(rng: random.Random, part: str, max_degree: int = 8, max_coeff: int = 9) -> IntPolynomial:
    while True:
        f = random_polynomial(rng, max_degree, max_coeff)
        if in_part(f, part):
            return f


@dataclass
class ClosureReport:
    part: str
    samples: int
    seed: int
    violations: int
    first_violation: tuple[str, IntPolynomial, IntPolynomial] | None = None

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        fv = None
        if self.first_violation is not None:
            op, f, g = self.first_violation
            fv = {"op": op, "f": list(f.coeffs), "g": list(g.coeffs)}
        return {"part": self.part, "samples": self.samples, "seed": self.seed,
                "violations": self.violations, "first_violation": fv}


def zx_closure_check(part: str, samples: int, seed: int = 0) -> ClosureReport:
    """Sample pairs inside ``part`` and check that sum, difference and product stay inside."""
    if part not in PARTS:
        raise InputError(f"unknown part {part!r}")
    if samples < 1:
        raise InputError("samples must be >= 1")
    rng = random.Random(seed)
    report = ClosureReport(part, samples, seed, 0)
    for _ in range(samples):
        f, g = random_in_part(rng, part), random_in_part(rng, part)
        for op, h in (("add", f + g), ("sub", f - g), ("mul", f * g)):
            if not in_part(h, part):
                report.violations += 1
                if report.first_violation is None:
                    report.first_violation = (op, f, g)
    return report


def proper_union_witnesses(parts: Iterable[str] = PARTS) -> dict[str, frozenset[str]]:
    """Membership of each part's witness; a proper union needs each to be a singleton."""
    return {p: zx_membership(WITNESSES[p]) for p in parts}
