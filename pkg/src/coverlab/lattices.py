"""Sublattices of Z^n and their cosets.

Every lattice is stored by its Hermite basis, so two lattices are equal
exactly when their dataclasses compare equal.  Cover verification for
finite-index families is exact: a sublattice of index m contains m*Z^n,
hence membership only depends on residues modulo the lcm of the indices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BoundExceeded, DimensionMismatch, InfiniteIndexMember
from .intmat import hermite_normal_form
from .reports import CoverReport

Vector = tuple[int, ...]

RESIDUE_LIMIT = 10**6


@dataclass(frozen=True)
class Lattice:
    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    @property
    def index(self) -> int | None:
        """``[Z^n : L]``, or ``None`` when the index is infinite."""
        if not self.is_full_rank:
            return None
        return math.prod(row[i] for i, row in enumerate(self.basis))

    def __contains__(self, v: Sequence[int]) -> bool:
        return lattice_member(self, v)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient_dim,
            "basis": [list(r) for r in self.basis],
            "rank": self.rank,
            "index": "infinite" if self.index is None else self.index,
        }


def hnf(gens: Iterable[Sequence[int]], ambient: int | None = None) -> Lattice:
    """Lattice generated by ``gens`` (``ambient`` is required when ``gens`` is empty)."""
    rows = [tuple(int(x) for x in g) for g in gens]
    dims = {len(r) for r in rows}
    if ambient is not None:
        dims.add(ambient)
    if len(dims) > 1:
        raise DimensionMismatch(f"generators of mixed dimension {sorted(dims)}")
    if not dims:
        raise DimensionMismatch("ambient dimension unknown for an empty generator list")
    n = dims.pop()
    h, _ = hermite_normal_form(rows, ncols=n)
    return Lattice(n, tuple(tuple(r) for r in h))


def _check_dim(lat: Lattice, v: Sequence[int]) -> None:
    if len(v) != lat.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in Z^{lat.ambient_dim}")


def lattice_coordinates(lat: Lattice, v: Sequence[int]) -> list[int] | None:
    """Coefficients of ``v`` over the basis rows, or ``None`` if ``v`` is not in the lattice."""
    _check_dim(lat, v)
    r = [int(x) for x in v]
    coeffs = []
    for row, c in zip(lat.basis, lat.pivots):
        if any(r[:c]):
            return None
        q, rem = divmod(r[c], row[c])
        if rem:
            return None
        coeffs.append(q)
        if q:
            r = [a - q * b for a, b in zip(r, row)]
    return coeffs if not any(r) else None


def lattice_member(lat: Lattice, v: Sequence[int]) -> bool:
    return lattice_coordinates(lat, v) is not None


def reduce_vector(lat: Lattice, v: Sequence[int]) -> Vector:
    """Canonical representative of ``v + lat``: pivot coordinates land in ``[0, pivot)``."""
    _check_dim(lat, v)
    r = [int(x) for x in v]
    for row, c in zip(lat.basis, lat.pivots):
        q = r[c] // row[c]
        if q:
            r = [a - q * b for a, b in zip(r, row)]
    return tuple(r)


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("lattices live in different ambient spaces")
    return hnf(a.basis + b.basis, a.ambient_dim)


def lattice_intersection(a: Lattice, b: Lattice) -> Lattice:
    """``a ∩ b`` read off the echelon form of ``[[A, A], [B, 0]]``."""
    n = a.ambient_dim
    if n != b.ambient_dim:
        raise DimensionMismatch("lattices live in different ambient spaces")
    stacked = [list(r) + list(r) for r in a.basis] + [list(r) + [0] * n for r in b.basis]
    h, _ = hermite_normal_form(stacked, ncols=2 * n)
    return hnf([row[n:] for row in h if not any(row[:n])], n)


@dataclass(frozen=True)
class LatticeCoset:
    lattice: Lattice
    shift: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "shift", reduce_vector(self.lattice, self.shift))

    @classmethod
    def of(cls, basis: Iterable[Sequence[int]], shift: Sequence[int] | None = None,
           ambient: int | None = None) -> "LatticeCoset":
        if ambient is None and shift is not None:
            ambient = len(shift)
        lat = hnf(basis, ambient)
        return cls(lat, tuple(shift) if shift is not None else (0,) * lat.ambient_dim)

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    def __contains__(self, v: Sequence[int]) -> bool:
        _check_dim(self.lattice, v)
        return lattice_member(self.lattice, [x - s for x, s in zip(v, self.shift)])

    def to_json(self) -> dict:
        return {"basis": [list(r) for r in self.lattice.basis], "shift": list(self.shift)}


def coset_intersection(c1: LatticeCoset, c2: LatticeCoset) -> LatticeCoset | None:
    """Set intersection of two lattice cosets, ``None`` when they are disjoint."""
    l1, l2 = c1.lattice, c2.lattice
    if l1.ambient_dim != l2.ambient_dim:
        raise DimensionMismatch("cosets live in different ambient spaces")
    # s1 + x*B1 == s2 + y*B2  <=>  x*B1 - y*B2 == s2 - s1
    rows = [list(r) for r in l1.basis] + [list(r) for r in l2.basis]
    h, u = hermite_normal_form(rows, ncols=l1.ambient_dim)
    span = Lattice(l1.ambient_dim, tuple(tuple(r) for r in h))
    target = [b - a for a, b in zip(c1.shift, c2.shift)]
    coeffs = lattice_coordinates(span, target)
    if coeffs is None:
        return None
    w = [sum(c * u[i][j] for i, c in enumerate(coeffs)) for j in range(len(rows))]
    point = list(c1.shift)
    for wi, row in zip(w[: l1.rank], l1.basis):
        point = [p + wi * r for p, r in zip(point, row)]
    return LatticeCoset(lattice_intersection(l1, l2), tuple(point))


def _ambient(cosets: Sequence[LatticeCoset], ambient: int | None) -> int:
    dims = {c.ambient_dim for c in cosets}
    if ambient is not None:
        dims.add(ambient)
    if len(dims) != 1:
        raise DimensionMismatch(f"cover members of mixed or unknown dimension {sorted(dims)}")
    return dims.pop()


def verify_lattice_cover_exact(cosets: Sequence[LatticeCoset], ambient: int | None = None,
                               residue_limit: int = RESIDUE_LIMIT) -> CoverReport:
    """Decide exactly whether ``cosets`` cover Z^n and whether the union is proper."""
    n = _ambient(cosets, ambient)
    for i, c in enumerate(cosets):
        if c.lattice.index is None:
            raise InfiniteIndexMember(f"member {i} has rank {c.lattice.rank} < {n}")
    modulus = math.lcm(*(c.lattice.index for c in cosets)) if cosets else 1
    if modulus**n > residue_limit:
        raise BoundExceeded(f"{modulus}^{n} residues exceed the limit {residue_limit}")

    uncovered = None
    only_in: dict[int, Vector] = {}
    for r in itertools.product(range(modulus), repeat=n):
        hits = [i for i, c in enumerate(cosets) if r in c]
        if not hits and uncovered is None:
            uncovered = r
        elif len(hits) == 1 and hits[0] not in only_in:
            only_in[hits[0]] = r
    covered = uncovered is None
    return CoverReport(
        covered=covered,
        proper=covered and len(only_in) == len(cosets),
        missing_after_removal=only_in,
        uncovered_witness=uncovered,
    )


def box_points(n: int, radius: int) -> Iterator[Vector]:
    """Points of ``[-radius, radius]^n``, small L1 norm first, positive coordinates preferred."""
    pts = itertools.product(range(-radius, radius + 1), repeat=n)
    yield from sorted(pts, key=lambda v: (sum(map(abs, v)), tuple(-x for x in v)))


def refute_lattice_cover_search(cosets: Sequence[LatticeCoset], box_radius: int,
                                ambient: int | None = None) -> Vector | None:
    """First box point lying in no coset, or ``None`` (inconclusive)."""
    if box_radius < 1:
        raise ValueError("box_radius must be at least 1")
    n = _ambient(cosets, ambient)
    for v in box_points(n, box_radius):
        if not any(v in c for c in cosets):
            return v
    return None


@dataclass(frozen=True)
class FiniteIndexCertificate:
    member_index: int
    index_value: int

    def to_json(self) -> dict:
        return {"kind": "finite_index", "member": self.member_index, "index": self.index_value}


@dataclass(frozen=True)
class RefutationWitness:
    vector: Vector

    def to_json(self) -> dict:
        return {"kind": "uncovered", "vector": list(self.vector)}


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    def to_json(self) -> dict:
        return {"kind": "inconclusive", "reason": self.reason}


def neumann_certificate(cosets: Sequence[LatticeCoset], box_radius: int,
                        ambient: int | None = None
                        ) -> FiniteIndexCertificate | RefutationWitness | Inconclusive:
    """A finite-index member, or else a point no member reaches.

    A finite family of infinite-index cosets never covers Z^n, so when no
    member has full rank a bounded search for an uncovered point is run.
    """
    n = _ambient(cosets, ambient)
    for i, c in enumerate(cosets):
        if c.lattice.index is not None:
            return FiniteIndexCertificate(i, c.lattice.index)
    if not cosets:
        return RefutationWitness((0,) * n)
    w = refute_lattice_cover_search(cosets, box_radius, n)
    if w is not None:
        return RefutationWitness(w)
    return Inconclusive(f"every point of the radius-{box_radius} box is covered")


def certificate_is_valid(cosets: Sequence[LatticeCoset], cert) -> bool:
    """Re-check a certificate from scratch against the family."""
    if isinstance(cert, FiniteIndexCertificate):
        lat = cosets[cert.member_index].lattice
        return lat.index == cert.index_value and lat.is_full_rank
    if isinstance(cert, RefutationWitness):
        return not any(cert.vector in c for c in cosets)
    return False
