"""Symbolic additive groups and the cover-criteria predicates over them.

A :class:`GroupDescriptor` is always in split form::

    (rationals)^M  +  finitely many Pruefer groups C(p^inf)  +  sum of C(q^k)^N

Cardinals are tags only: the predicates need to know whether a family is
absent, finite or infinite, nothing more.  Symbolic cardinals are
arbitrary and are treated as infinite.
"""

from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import InputError, PreconditionFailed
from .groups import FiniteAbelianGroup, is_prime


@dataclass(frozen=True)
class CardinalTag:
    kind: str  # "finite" | "countable" | "symbolic"
    n: int = 0
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("finite", "countable", "symbolic"):
            raise InputError(f"unknown cardinal kind {self.kind!r}")
        if self.kind == "finite" and self.n < 0:
            raise InputError("finite cardinal must be >= 0")

    @classmethod
    def parse(cls, text: str | int) -> "CardinalTag":
        if isinstance(text, int):
            return cls("finite", text)
        m = re.fullmatch(r"finite:(\d+)", text)
        if m:
            return cls("finite", int(m.group(1)))
        if text in ("countable", "aleph0"):
            return cls("countable")
        m = re.fullmatch(r"symbolic:(\S+)", text)
        if m:
            return cls("symbolic", name=m.group(1))
        raise InputError(f"cannot parse cardinal {text!r}")

    @property
    def is_zero(self) -> bool:
        return self.kind == "finite" and self.n == 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def at_least(self, k: int) -> bool:
        return not self.is_finite or self.n >= k

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"finite:{self.n}"
        return "countable" if self.kind == "countable" else f"symbolic:{self.name}"


ZERO = CardinalTag("finite", 0)
ONE = CardinalTag("finite", 1)

# exponent marker for an unbounded family C(q^1) + C(q^2) + ...
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class TorsionSummand:
    q: int
    k: int | str
    mult: CardinalTag = ONE

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise InputError(f"{self.q} is not prime")
        if self.k != UNBOUNDED and (not isinstance(self.k, int) or self.k < 1):
            raise InputError(f"exponent must be a positive integer or {UNBOUNDED!r}")
        if self.mult.is_zero:
            raise InputError("multiplicity must be positive")

    @property
    def bounded(self) -> bool:
        return self.k != UNBOUNDED

    def __str__(self) -> str:
        base = f"C{self.q ** self.k}" if self.bounded else f"C{self.q}^k(unbounded k)"
        if self.mult == ONE:
            return base
        return f"{base}x{self.mult.n if self.mult.is_finite else self.mult}"


@dataclass(frozen=True)
class GroupDescriptor:
    rational_rank: CardinalTag = ZERO
    prufer: tuple[int, ...] = ()
    bounded_torsion: tuple[TorsionSummand, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "prufer", tuple(sorted(self.prufer)))
        object.__setattr__(self, "bounded_torsion",
                           tuple(sorted(self.bounded_torsion, key=lambda t: (t.q, str(t.k)))))
        for p in self.prufer:
            if not is_prime(p):
                raise InputError(f"Pruefer summand for non-prime {p}")
        keys = [(t.q, t.k) for t in self.bounded_torsion]
        if len(set(keys)) != len(keys):
            raise InputError("bounded torsion entries must have distinct (q, k)")

    @property
    def is_finite(self) -> bool:
        return (self.rational_rank.is_zero and not self.prufer
                and all(t.bounded and t.mult.is_finite for t in self.bounded_torsion))

    def to_finite_group(self) -> FiniteAbelianGroup:
        if not self.is_finite:
            raise InputError("descriptor is not a finite group")
        orders = []
        for t in self.bounded_torsion:
            orders += [t.q**t.k] * t.mult.n
        return FiniteAbelianGroup.from_cyclic_orders(orders)

    def summands_per_prime(self) -> dict[int, CardinalTag]:
        """Number of cyclic torsion summands for each prime (counting multiplicity)."""
        counts: dict[int, list[CardinalTag]] = defaultdict(list)
        for t in self.bounded_torsion:
            counts[t.q].append(t.mult if t.bounded else CardinalTag("countable"))
        out = {}
        for q, tags in counts.items():
            if all(t.is_finite for t in tags):
                out[q] = CardinalTag("finite", sum(t.n for t in tags))
            else:
                out[q] = next(t for t in tags if not t.is_finite)
        return out

    def __str__(self) -> str:
        parts = []
        if not self.rational_rank.is_zero:
            parts.append("Q" if self.rational_rank == ONE else f"Q^({self.rational_rank})")
        parts += [f"C{p}^inf" for p in self.prufer]
        parts += [str(t) for t in self.bounded_torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class Verdict:
    value: bool
    clause: str
    reason: str
    label: str

    def to_json(self) -> dict:
        return {"value": self.value, "clause": self.clause, "reason": self.reason, "label": self.label}


ARTINIAN = "Lemma 2 (Artinian additive group)"
THEOREM1 = "Theorem 1 (not a proper union of subgroups)"
COROLLARY1 = "Corollary 1 (not a proper union of cosets)"
THEOREM2 = "Theorem 2 (not a proper union of cosets)"
COROLLARY2 = "Corollary 2 (not a proper union of subgroups)"


def is_artinian_additive(d: GroupDescriptor, m_bound: int | None = None) -> Verdict:
    """Does ``d`` have the additive shape of an Artinian ring?

    The bounded part must have exponents dividing a common ``m``; with an
    explicit ``m_bound`` that ``m`` is fixed.
    """
    unbounded = [t for t in d.bounded_torsion if not t.bounded]
    if unbounded:
        return Verdict(False, "unbounded-exponent",
                       f"C{unbounded[0].q}^k occurs for unbounded k, so no m bounds the exponents", ARTINIAN)
    if m_bound is not None:
        for t in d.bounded_torsion:
            if m_bound % t.q**t.k:
                return Verdict(False, "exponent-exceeds-m",
                               f"{t.q}^{t.k} does not divide m = {m_bound}", ARTINIAN)
        return Verdict(True, "exponents-divide-m",
                       f"every bounded summand order divides m = {m_bound}", ARTINIAN)
    m = math.lcm(*(t.q**t.k for t in d.bounded_torsion)) if d.bounded_torsion else 1
    return Verdict(True, "exponents-bounded", f"every bounded summand order divides m = {m}", ARTINIAN)


def _require_artinian(d: GroupDescriptor) -> None:
    v = is_artinian_additive(d)
    if not v.value:
        raise PreconditionFailed(f"not an Artinian additive group: {v.reason}")


def _repeated_prime(d: GroupDescriptor) -> tuple[int, CardinalTag] | None:
    for q, count in sorted(d.summands_per_prime().items()):
        if count.at_least(2):
            return q, count
    return None


def theorem1_not_proper_union(d: GroupDescriptor) -> Verdict:
    """Artinian additive group: never a proper union of subgroups iff divisible + finite cyclic."""
    _require_artinian(d)
    rep = _repeated_prime(d)
    if rep is not None:
        q, count = rep
        return Verdict(False, "repeated-p-summand",
                       f"{count} cyclic {q}-summands: the reduced part is not cyclic", THEOREM1)
    return Verdict(True, "divisible-plus-finite-cyclic",
                   "at most one cyclic summand per prime: the reduced part is finite cyclic", THEOREM1)


def corollary1_not_coset_union(d: GroupDescriptor) -> Verdict:
    _require_artinian(d)
    if d.bounded_torsion:
        return Verdict(False, "bounded-part-nonzero",
                       f"{d.bounded_torsion[0]} is a nonzero reduced summand; the group is not divisible",
                       COROLLARY1)
    return Verdict(True, "divisible", "no reduced summand: the group is divisible", COROLLARY1)


def theorem2_not_coset_union(d: GroupDescriptor) -> Verdict:
    """Torsion part without proper finite-index subgroups, i.e. no bounded summand."""
    if d.bounded_torsion:
        t = d.bounded_torsion[0]
        return Verdict(False, "finite-index-subgroup",
                       f"the C{t.q}^{t.k} summand gives a subgroup of index {t.q}", THEOREM2)
    return Verdict(True, "no-proper-finite-index-subgroup",
                   "torsion part is divisible and has no proper finite-index subgroup", THEOREM2)


def corollary2_not_subgroup_union(d: GroupDescriptor) -> Verdict:
    """Every finite quotient of the torsion part is cyclic iff at most one summand per prime."""
    rep = _repeated_prime(d)
    if rep is not None:
        q, count = rep
        return Verdict(False, "noncyclic-finite-quotient",
                       f"{count} cyclic {q}-summands give the quotient C{q} + C{q}", COROLLARY2)
    return Verdict(True, "finite-quotients-cyclic",
                   "at most one cyclic summand per prime: every finite quotient is cyclic", COROLLARY2)


PREDICATES = {
    "artinian": is_artinian_additive,
    "theorem1": theorem1_not_proper_union,
    "corollary1": corollary1_not_coset_union,
    "theorem2": theorem2_not_coset_union,
    "corollary2": corollary2_not_subgroup_union,
}
