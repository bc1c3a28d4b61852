"""Proper-union engine for finite abelian groups.

A family ``S_1..S_n`` is a proper union of ``G`` when it covers ``G`` and
no single part can be dropped.  Parts are turned into bitmasks over the
lexicographic element order, so every check is an exact set computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ImproperPart, InputError, TooFewParts
from .groups import (
    ENUMERATION_BOUND,
    Coset,
    FiniteAbelianGroup,
    Subgroup,
    factorize,
    quotient_rank,
    subgroups,
)
from .reports import CoverReport

Part = Union[Subgroup, Coset]
MODES = ("subgroups", "cosets", "subsemigroups")


@dataclass(frozen=True)
class CoverProblem:
    group: FiniteAbelianGroup
    parts: tuple[Part, ...]
    mode: str = "subgroups"

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}")
        for p in self.parts:
            if _parent(p) != self.group:
                raise InputError(f"part {p} does not live in {self.group}")
            if self.mode != "cosets" and isinstance(p, Coset):
                raise InputError(f"mode {self.mode!r} takes subgroups, not cosets")


def _parent(part: Part) -> FiniteAbelianGroup:
    return part.parent


def element_mask(g: FiniteAbelianGroup, elems) -> int:
    mask = 0
    for x in elems:
        mask |= 1 << g.index_of(x)
    return mask


def part_mask(part: Part, bound: int = ENUMERATION_BOUND) -> int:
    return element_mask(_parent(part), part.elements(bound))


def _subgroup_of(part: Part) -> Subgroup:
    return part.subgroup if isinstance(part, Coset) else part


def verify_proper_union(problem: CoverProblem, bound: int = ENUMERATION_BOUND) -> CoverReport:
    """Exhaustively decide coverage and irredundancy.

    Witnesses are the lexicographically least qualifying elements, so
    permuting the parts permutes the report and nothing else.
    """
    g, parts = problem.group, problem.parts
    if len(parts) < 2:
        raise TooFewParts(f"need at least 2 parts, got {len(parts)}")
    for i, p in enumerate(parts):
        if not _subgroup_of(p).is_proper:
            raise ImproperPart(f"part {i} is the whole group")

    elems = list(g.elements(bound))
    masks = [part_mask(p, bound) for p in parts]
    full = (1 << len(elems)) - 1
    union = 0
    for m in masks:
        union |= m

    uncovered = None
    if union != full:
        missing = full & ~union
        uncovered = elems[(missing & -missing).bit_length() - 1]

    only_in: dict[int, tuple[int, ...]] = {}
    for i, m in enumerate(masks):
        others = 0
        for j, mj in enumerate(masks):
            if j != i:
                others |= mj
        alone = m & ~others
        if alone:
            only_in[i] = elems[(alone & -alone).bit_length() - 1]

    covered = uncovered is None
    return CoverReport(
        covered=covered,
        proper=covered and len(only_in) == len(parts),
        missing_after_removal=only_in,
        uncovered_witness=uncovered,
    )


def maximal_subgroups(g: FiniteAbelianGroup) -> list[Subgroup]:
    """All index-p subgroups: kernels of the nonzero maps ``G -> Z/p`` up to scaling."""
    out = []
    for p in sorted(factorize(g.order)):
        slots = [i for i, d in enumerate(g.invariant_factors) if d % p == 0]
        for coeffs in itertools.product(range(p), repeat=len(slots)):
            nz = [c for c in coeffs if c]
            if not nz or nz[0] != 1:
                continue
            out.append(_kernel(g, p, dict(zip(slots, coeffs))))
    return out


def _kernel(g: FiniteAbelianGroup, p: int, coeffs: dict[int, int]) -> Subgroup:
    """Kernel of ``x -> sum(c_i * x_i) mod p``; the leading nonzero coefficient must be 1."""
    lead = next(i for i in sorted(coeffs) if coeffs[i])
    gens = []
    for j in range(g.rank):
        e = [0] * g.rank
        c = coeffs.get(j, 0)
        if j == lead:
            e[j] = p
        else:
            e[j] = 1
            e[lead] = -c
        gens.append(e)
    return Subgroup.generated(g, gens)


def _search_cover(masks: Sequence[int], full: int, k: int) -> list[int] | None:
    """Depth-first search for ``k`` masks whose union is ``full``."""
    biggest = max(m.bit_count() for m in masks)

    def rec(covered: int, chosen: list[int]) -> list[int] | None:
        if covered == full:
            return chosen
        left = k - len(chosen)
        if left == 0 or (full & ~covered).bit_count() > left * biggest:
            return None
        missing = full & ~covered
        # branch on the uncovered element with the fewest candidate parts
        best = None
        rest = missing
        while rest:
            bit = rest & -rest
            rest ^= bit
            cands = [i for i, m in enumerate(masks) if m & bit]
            if best is None or len(cands) < len(best):
                best = cands
                if len(best) <= 1:
                    break
        for i in best:
            if i in chosen:
                continue
            found = rec(covered | masks[i], chosen + [i])
            if found is not None:
                return found
        return None

    return rec(0, [])


def minimal_subgroup_cover(g: FiniteAbelianGroup, bound: int = ENUMERATION_BOUND
                           ) -> tuple[int, list[Subgroup]] | None:
    """Smallest proper union by proper subgroups, or ``None`` when none exists.

    Any proper subgroup sits inside a maximal one, so searching over
    maximal subgroups loses neither existence nor minimality.  A cyclic
    group has no cover since a generator lies in no proper subgroup.
    """
    elems = list(g.elements(bound))
    if g.is_cyclic:
        return None
    maxes = maximal_subgroups(g)
    masks = [part_mask(h, bound) for h in maxes]
    full = (1 << len(elems)) - 1
    for k in range(2, len(maxes) + 1):
        picked = _search_cover(masks, full, k)
        if picked is not None:
            cover = [maxes[i] for i in picked]
            report = verify_proper_union(CoverProblem(g, tuple(cover)), bound)
            assert report.proper, "a minimum cover is irredundant"
            return k, cover
    return None


def construct_subgroup_cover(g: FiniteAbelianGroup, bound: int = ENUMERATION_BOUND
                             ) -> list[Subgroup] | None:
    """Cover by the ``p + 1`` preimages of the lines of a rank-2 quotient ``(Z/p)^2``.

    ``p`` is the smallest prime with ``dim G/pG >= 2``; ``None`` when the
    group is cyclic.
    """
    g.elements(bound)  # enumeration guard
    primes = [p for p in sorted(factorize(g.order)) if quotient_rank(g, p) >= 2]
    if not primes:
        return None
    p = primes[0]
    i, j = [k for k, d in enumerate(g.invariant_factors) if d % p == 0][:2]
    funcs = [{i: 1, j: c} for c in range(p)] + [{i: 0, j: 1}]
    return [_kernel(g, p, f) for f in funcs]


def semigroup_closure(g: FiniteAbelianGroup, gens) -> frozenset:
    """Smallest subset containing ``gens`` and closed under the group operation."""
    out = set(gens)
    frontier = list(out)
    while frontier:
        new = []
        for a in frontier:
            for b in list(out):
                for c in (g.add(a, b), g.add(b, a)):
                    if c not in out:
                        out.add(c)
                        new.append(c)
        frontier = new
    return frozenset(out)


def subsemigroups(g: FiniteAbelianGroup, bound: int = ENUMERATION_BOUND) -> set[frozenset]:
    """All nonempty subsemigroups, by joining closures one element at a time."""
    elems = list(g.elements(bound))
    found = {semigroup_closure(g, [x]) for x in elems}
    queue = list(found)
    while queue:
        s = queue.pop()
        for x in elems:
            if x in s:
                continue
            t = semigroup_closure(g, list(s) + [x])
            if t not in found:
                found.add(t)
                queue.append(t)
    return found


def subsemigroups_are_subgroups(g: FiniteAbelianGroup, bound: int = ENUMERATION_BOUND) -> bool:
    """Check that the subsemigroups of ``g`` are exactly its subgroups."""
    semis = subsemigroups(g, bound)
    groups = {frozenset(h.elements(bound)) for h in subgroups(g, bound)}
    return semis == groups


def minimal_subsemigroup_cover(g: FiniteAbelianGroup, bound: int = ENUMERATION_BOUND
                               ) -> tuple[int, list[Subgroup]] | None:
    """Same contract as :func:`minimal_subgroup_cover`, over subsemigroups.

    In a finite group every subsemigroup is a subgroup; that coincidence is
    checked here before the subgroup search is reused.
    """
    if not subsemigroups_are_subgroups(g, bound):
        raise AssertionError(f"subsemigroups of {g} differ from its subgroups")
    return minimal_subgroup_cover(g, bound)
