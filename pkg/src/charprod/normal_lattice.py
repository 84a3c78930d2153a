"""Normal subgroups from character kernels, chief series, solvability tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .char_table import CharacterTable, character_table, kernel
from .group_core import (
    Group,
    Subgroup,
    conjugate_subgroup,
    derived_length,
    is_normal,
    join,
    mask_from_members,
    normal_closure,
)

__all__ = [
    "ChiefSeries",
    "normal_subgroups",
    "normal_subgroups_bruteforce",
    "minimal_normal_over",
    "chief_series",
    "is_solvable",
    "is_supersolvable",
    "core",
    "intersection_closure",
    "normal_subgroups_by_subgroup_scan",
]


@dataclass(frozen=True)
class ChiefSeries:
    terms: tuple[Subgroup, ...]  # G = K_0 > K_1 > ... > K_m = 1

    @property
    def factor_orders(self) -> tuple[int, ...]:
        return tuple(a.order // b.order for a, b in zip(self.terms, self.terms[1:]))

    @property
    def factor_is_prime(self) -> tuple[bool, ...]:
        return tuple(_is_prime(f) for f in self.factor_orders)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def intersection_closure(masks: set[int]) -> set[int]:
    """All intersections of nonempty subfamilies of ``masks``.

    Folding in one generator at a time costs |masks| * |result| operations,
    which stays small even for elementary abelian groups of order 128.
    """
    out: set[int] = set()
    for K in masks:
        out |= {m & K for m in out}
        out.add(K)
    return out


def _sorted_subgroups(G: Group, masks) -> list[Subgroup]:
    return sorted((Subgroup(G, m) for m in masks), key=Subgroup.sort_key)


def normal_subgroups(G: Group, T: CharacterTable | None = None) -> list[Subgroup]:
    """All normal subgroups, as intersections of kernels of irreducibles."""
    T = character_table(G) if T is None else T
    masks = {kernel(ch).mask for ch in T}
    return _sorted_subgroups(G, intersection_closure(masks))


def normal_subgroups_bruteforce(G: Group) -> list[Subgroup]:
    """Character-free enumeration: all products of normal closures of single classes.

    The product of two normal subgroups is their join, so the lattice is
    folded together one class closure at a time.
    """
    seeds = sorted({normal_closure(G, [r]).mask for r in G.classes.rep})
    found = {G.trivial().mask}
    for C in seeds:
        cm = Subgroup(G, C).members
        new = set()
        for m in found:
            if m & C != C:
                prod = G.table[np.ix_(Subgroup(G, m).members, cm)]
                new.add(mask_from_members(np.unique(prod), G.order))
        found |= new
    return _sorted_subgroups(G, found)


def minimal_normal_over(G: Group, N: Subgroup, lattice: list[Subgroup]) -> list[Subgroup]:
    """Members L of ``lattice`` with N < L and nothing in the lattice strictly between."""
    above = [L for L in lattice if N.is_proper_subset(L)]
    return [L for L in above
            if not any(M.is_proper_subset(L) and N.is_proper_subset(M) for M in above)]


def chief_series(G: Group, lattice: list[Subgroup] | None = None) -> ChiefSeries:
    """Built bottom-up, always taking the first minimal normal subgroup over the current term."""
    lattice = normal_subgroups(G) if lattice is None else lattice
    cur = G.trivial()
    terms = [cur]
    while not cur.is_whole():
        cur = sorted(minimal_normal_over(G, cur, lattice), key=Subgroup.sort_key)[0]
        terms.append(cur)
    return ChiefSeries(tuple(reversed(terms)))


def is_solvable(G: Group) -> bool:
    return derived_length(G) is not None


def is_supersolvable(G: Group, series: ChiefSeries | None = None) -> bool:
    """Every chief factor has prime order.

    Relies on Jordan-Holder for chief series: all chief series share the same
    factor orders, so inspecting one of them suffices.
    """
    series = chief_series(G) if series is None else series
    return all(series.factor_is_prime)


def core(G: Group, M: Subgroup) -> Subgroup:
    """Intersection of all G-conjugates of M."""
    mask = M.mask
    for g in range(G.order):
        mask &= conjugate_subgroup(M, g).mask
    return Subgroup(G, mask)


def normal_subgroups_by_subgroup_scan(G: Group) -> list[Subgroup]:
    """Every subgroup (joins of cyclic subgroups), filtered by normality. Small groups only."""
    from .group_core import subgroup_generated

    cyclic = {subgroup_generated(G, [g]).mask for g in range(G.order)}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for a in frontier:
            for b in cyclic:
                if a & b == b:
                    continue
                m = join(Subgroup(G, a), Subgroup(G, b)).mask
                if m not in found:
                    new.add(m)
        found |= new
        frontier = new
    return _sorted_subgroups(G, [m for m in found if is_normal(G, Subgroup(G, m))])


