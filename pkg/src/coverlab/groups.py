"""Finite abelian groups Z/d_1 + ... + Z/d_r with exact subgroup and coset algebra.

A subgroup ``H`` of ``G`` is kept as its preimage lattice in Z^r (which
contains ``diag(d) Z^r``).  That makes subgroup equality, membership and
coset intersection pure integer linear algebra; element sets are only
materialised on demand, below an enumeration bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import BoundExceeded, InputError, NotPrime, ParentMismatch
from .intmat import hermite_normal_form, smith_normal_form
from .lattices import Lattice, coset_intersection as _lattice_coset_intersection
from .lattices import LatticeCoset, hnf, lattice_coordinates, lattice_member, reduce_vector

__all__ = [
    "ENUMERATION_BOUND",
    "FiniteAbelianGroup",
    "Subgroup",
    "Coset",
    "smith_normal_form",
    "subgroups",
    "coset_intersect",
    "quotient_rank",
    "is_prime",
    "factorize",
    "abelian_groups_of_order",
]

ENUMERATION_BOUND = 2**12

Element = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of ``n >= 1`` by trial division."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        d = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", d)
        if any(x < 2 for x in d):
            raise InputError(f"invariant factors must be >= 2, got {list(d)}")
        if any(b % a for a, b in zip(d, d[1:])):
            raise InputError(f"invariant factors must form a divisibility chain, got {list(d)}")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FiniteAbelianGroup":
        """Canonical form of ``Z/n_1 + ... + Z/n_k`` for arbitrary positive ``n_i``."""
        orders = [int(n) for n in orders]
        if any(n < 1 for n in orders):
            raise InputError("cyclic orders must be positive")
        diag = [[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)]
        _, d, _ = smith_normal_form(diag)
        return cls(tuple(d[i][i] for i in range(len(orders)) if d[i][i] > 1))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return self.rank <= 1

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def element(self, coords: Sequence[int]) -> Element:
        if len(coords) != self.rank:
            raise InputError(f"element {list(coords)} has wrong length for {self}")
        return tuple(int(c) % d for c, d in zip(coords, self.invariant_factors))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a: Element) -> Element:
        return tuple(-x % d for x, d in zip(a, self.invariant_factors))

    def scale(self, k: int, a: Element) -> Element:
        return tuple(k * x % d for x, d in zip(a, self.invariant_factors))

    def elements(self, bound: int = ENUMERATION_BOUND) -> Iterator[Element]:
        """All elements in lexicographic order."""
        if self.order > bound:
            raise BoundExceeded(f"|G| = {self.order} exceeds the enumeration bound {bound}")
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def index_of(self, a: Element) -> int:
        """Position of ``a`` in :meth:`elements` order."""
        i = 0
        for x, d in zip(a, self.invariant_factors):
            i = i * d + x
        return i

    def relation_rows(self) -> list[list[int]]:
        n = self.rank
        return [[d if i == j else 0 for j in range(n)] for i, d in enumerate(self.invariant_factors)]

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "C1"
        return " + ".join(f"C{d}" for d in self.invariant_factors)

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors)}


def _unimodular_inverse(q: list[list[int]]) -> list[list[int]]:
    _, u = hermite_normal_form(q)
    return u


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteAbelianGroup
    lattice: Lattice
    generators: tuple[Element, ...] = field(default=(), compare=False)
    generator_orders: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def generated(cls, parent: FiniteAbelianGroup, gens: Iterable[Sequence[int]]) -> "Subgroup":
        gens = [parent.element(g) for g in gens]
        return cls.from_lattice(parent, hnf(gens + parent.relation_rows(), parent.rank))

    @classmethod
    def from_lattice(cls, parent: FiniteAbelianGroup, lat: Lattice) -> "Subgroup":
        if lat.ambient_dim != parent.rank or any(not lattice_member(lat, r) for r in parent.relation_rows()):
            raise InputError("lattice does not contain the relations of the parent group")
        # Relations expressed in lattice coordinates; their Smith form yields
        # a generating set of minimal size with orders s_1 | s_2 | ...
        rel = [lattice_coordinates(lat, r) for r in parent.relation_rows()]
        gens, orders = [], []
        if rel:
            _, d, v = smith_normal_form(rel)
            change = _unimodular_inverse(v)
            for i, row in enumerate(change):
                s = d[i][i]
                if s > 1:
                    vec = [sum(c * b[j] for c, b in zip(row, lat.basis)) for j in range(parent.rank)]
                    gens.append(parent.element(vec))
                    orders.append(s)
        return cls(parent, lat, tuple(gens), tuple(orders))

    @classmethod
    def trivial(cls, parent: FiniteAbelianGroup) -> "Subgroup":
        return cls.generated(parent, [])

    @classmethod
    def whole(cls, parent: FiniteAbelianGroup) -> "Subgroup":
        return cls.from_lattice(parent, hnf([], parent.rank) if parent.rank == 0 else
                                hnf([[int(i == j) for j in range(parent.rank)] for i in range(parent.rank)]))

    @property
    def index(self) -> int:
        return self.lattice.index if self.parent.rank else 1

    @property
    def order(self) -> int:
        return self.parent.order // self.index

    @property
    def is_proper(self) -> bool:
        return self.index > 1

    def __contains__(self, a: Sequence[int]) -> bool:
        return lattice_member(self.lattice, a)

    @cached_property
    def _elements(self) -> tuple[Element, ...]:
        g = self.parent
        out = set()
        for coeffs in itertools.product(*(range(s) for s in self.generator_orders)):
            x = g.zero
            for c, gen in zip(coeffs, self.generators):
                x = g.add(x, g.scale(c, gen))
            out.add(x)
        return tuple(sorted(out))

    def elements(self, bound: int = ENUMERATION_BOUND) -> tuple[Element, ...]:
        """Sorted element tuple."""
        if self.order > bound:
            raise BoundExceeded(f"|H| = {self.order} exceeds the enumeration bound {bound}")
        return self._elements

    def intersection(self, other: "Subgroup") -> "Subgroup":
        c = coset_intersect(Coset(self, self.parent.zero), Coset(other, other.parent.zero))
        return c.subgroup

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators]}


@dataclass(frozen=True)
class Coset:
    subgroup: Subgroup
    representative: Element

    def __post_init__(self) -> None:
        g = self.subgroup.parent
        rep = reduce_vector(self.subgroup.lattice, g.element(self.representative)) if g.rank else ()
        object.__setattr__(self, "representative", rep)

    @property
    def parent(self) -> FiniteAbelianGroup:
        return self.subgroup.parent

    def __contains__(self, a: Sequence[int]) -> bool:
        return tuple(x - r for x, r in zip(a, self.representative)) in self.subgroup

    def elements(self, bound: int = ENUMERATION_BOUND) -> tuple[Element, ...]:
        g = self.parent
        return tuple(sorted(g.add(self.representative, h) for h in self.subgroup.elements(bound)))

    def to_json(self) -> dict:
        return {"subgroup": self.subgroup.to_json(), "rep": list(self.representative)}


def coset_intersect(c1: Coset, c2: Coset) -> Coset | None:
    """``c1 ∩ c2`` as a coset of ``H1 ∩ H2``; ``None`` when disjoint."""
    g = c1.parent
    if g != c2.parent:
        raise ParentMismatch(f"cosets of {c1.parent} and {c2.parent}")
    if g.rank == 0:
        return c1
    meet = _lattice_coset_intersection(
        LatticeCoset(c1.subgroup.lattice, c1.representative),
        LatticeCoset(c2.subgroup.lattice, c2.representative),
    )
    if meet is None:
        return None
    return Coset(Subgroup.from_lattice(g, meet.lattice), meet.shift)


def quotient_rank(g: FiniteAbelianGroup, p: int) -> int:
    """Dimension of ``G/pG`` over the field with ``p`` elements."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return sum(1 for d in g.invariant_factors if d % p == 0)


def subgroups(g: FiniteAbelianGroup, bound: int = ENUMERATION_BOUND) -> list[Subgroup]:
    """Every subgroup of ``g``, ordered by (order, sorted elements)."""
    elems = list(g.elements(bound))

    def cyclic(x: Element) -> frozenset:
        out, y = {g.zero}, x
        while y != g.zero:
            out.add(y)
            y = g.add(y, x)
        return frozenset(out)

    cyclics = {}
    for x in elems:
        cyclics.setdefault(cyclic(x), x)
    found: dict[frozenset, list[Element]] = {frozenset([g.zero]): []}
    queue = [frozenset([g.zero])]
    while queue:
        h = queue.pop()
        for c, x in cyclics.items():
            if x in h:
                continue
            joined = frozenset(g.add(a, b) for a in h for b in c)
            if joined not in found:
                found[joined] = found[h] + [x]
                queue.append(joined)
    subs = [Subgroup.generated(g, gens) for gens in found.values()]
    return sorted(subs, key=lambda s: (s.order, s.elements(bound)))


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def abelian_groups_of_order(n: int) -> list[FiniteAbelianGroup]:
    """All isomorphism types of abelian groups of order ``n``."""
    if n < 1:
        raise InputError("order must be positive")
    per_prime = [[(p, part) for part in _partitions(e)] for p, e in sorted(factorize(n).items())]
    out = []
    for choice in itertools.product(*per_prime):
        width = max((len(part) for _, part in choice), default=0)
        factors = [1] * width
        for p, part in choice:
            for i, e in enumerate(part):
                factors[width - 1 - i] *= p**e
        out.append(FiniteAbelianGroup(tuple(factors)))
    return out
