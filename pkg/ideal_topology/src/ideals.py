"""
Ideals on finite ground sets and the expanded topology they induce.
An ideal is stored as the antichain of its maximal members; the local function,
the star closure, the star topology, the base β(I, τ) and compatibility are
all computed from that antichain and the topology's minimal neighbourhoods.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, List, Tuple

from ideal_topology.src.point_set import (
    PointSet,
    all_subsets,
    canonical_sorted,
    check_size,
    check_within,
    complement,
    full,
    is_subset,
    points,
    submasks,
)
from ideal_topology.src.topology import Topology


@dataclass(frozen=True)
class Ideal:
    """
    Downward- and finite-union-closed family of subsets.

    Attributes:
        n: Ground-set size
        maximal: Antichain of maximal members in canonical order; the ideal
            is exactly the downward closure of these sets
    """
    n: int
    maximal: Tuple[PointSet, ...]

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[PointSet]) -> "Ideal":
        """
        Smallest ideal containing every generator.

        Union-closes the generators, then keeps the inclusion-maximal sets.
        No generators yields the trivial ideal {∅}.
        """
        check_size(n)
        unions = {0}
        for g in gens:
            check_within(n, g)
            unions |= {u | g for u in unions}
        return cls(n, tuple(_maximal_elements(unions)))

    @classmethod
    def trivial(cls, n: int) -> "Ideal":
        return cls.from_generators(n, [])

    @classmethod
    def principal(cls, n: int, generator: PointSet) -> "Ideal":
        return cls.from_generators(n, [generator])

    @classmethod
    def powerset(cls, n: int) -> "Ideal":
        return cls.principal(n, full(n))

    def contains(self, s: PointSet) -> bool:
        """True iff s is a subset of some maximal member."""
        return any(s & ~m == 0 for m in self.maximal)

    def members(self) -> List[PointSet]:
        """Every member of the ideal, canonical order."""
        found = set()
        for m in self.maximal:
            found.update(submasks(m))
        return canonical_sorted(found)

    def is_subideal(self, other: "Ideal") -> bool:
        """True iff every member of self is a member of other."""
        return self.n == other.n and all(other.contains(m) for m in self.maximal)

    def is_principal(self) -> bool:
        return len(self.maximal) == 1

    @property
    def union(self) -> PointSet:
        """Union of all members (a member itself, since the ideal is union-closed)."""
        acc = 0
        for m in self.maximal:
            acc |= m
        return acc


def _maximal_elements(family: Iterable[PointSet]) -> List[PointSet]:
    ordered = sorted(set(family), key=lambda s: (-bin(s).count("1"), s))
    kept: List[PointSet] = []
    for s in ordered:
        if not any(is_subset(s, k) for k in kept):
            kept.append(s)
    return canonical_sorted(kept)


@dataclass(frozen=True)
class IdealSpace:
    """
    The triple (X, τ, I).

    Attributes:
        topology: The topology τ
        ideal: The ideal I on the same ground set
    """
    topology: Topology
    ideal: Ideal

    def __post_init__(self):
        if self.topology.n != self.ideal.n:
            raise ValueError(
                f"Topology has {self.topology.n} points but ideal has {self.ideal.n}"
            )

    @property
    def n(self) -> int:
        return self.topology.n

    def local_function(self, a: PointSet) -> PointSet:
        """
        A*(τ, I): points whose every open neighbourhood meets A outside I.

        Uses the minimal neighbourhood only; membership in I is downward
        closed, so the smallest neighbourhood decides.
        """
        result = 0
        for x, u in enumerate(self.topology.min_nbhd):
            if not self.ideal.contains(u & a):
                result |= 1 << x
        return result

    def local_function_by_opens(self, a: PointSet) -> PointSet:
        """Definition-level A*: quantifies over every open neighbourhood."""
        result = 0
        for x in range(self.n):
            if all(not self.ideal.contains(u & a) for u in self.topology.opens_containing(x)):
                result |= 1 << x
        return result

    def cl_star(self, a: PointSet) -> PointSet:
        return a | self.local_function(a)

    def star_topology(self) -> Topology:
        """τ*: U is open iff U ⊆ X minus (X minus U)*."""
        n = self.n
        opens = [
            u for u in range(1 << n)
            if u & self.local_function(complement(n, u)) == 0
        ]
        return Topology.from_opens(n, opens, validate=False)

    @cached_property
    def star(self) -> Topology:
        return self.star_topology()

    def base_beta(self) -> List[PointSet]:
        """β(I, τ) = {V minus J : V open, J in I}, deduplicated."""
        members = self.ideal.members()
        return canonical_sorted(v & ~j for v in self.topology.opens for j in members)

    def trace(self) -> List[PointSet]:
        """τ ∩ I: the open sets that are also members of the ideal."""
        return [u for u in self.topology.opens if self.ideal.contains(u)]

    def has_trivial_trace(self) -> bool:
        return all(u == 0 for u in self.trace())

    def is_compatible(self) -> bool:
        """
        τ ∼ I: every S whose points each have a neighbourhood with trace in I
        is itself in I. The minimal neighbourhood is the best witness.
        """
        for s in all_subsets(self.n):
            if self.ideal.contains(s):
                continue
            if all(self.ideal.contains(self.topology.min_nbhd[x] & s) for x in points(s)):
                return False
        return True

    def is_compatible_by_opens(self) -> bool:
        """Compatibility with the inner ∃ ranging over every open neighbourhood."""
        for s in all_subsets(self.n):
            if self.ideal.contains(s):
                continue
            if all(
                any(self.ideal.contains(u & s) for u in self.topology.opens_containing(x))
                for x in points(s)
            ):
                return False
        return True


def enumerate_ideals(n: int) -> Iterator[Ideal]:
    """
    Every ideal on n points.

    A finite ideal contains the union of its members, so it is the principal
    ideal of that union: there is exactly one ideal per subset.
    """
    for s in all_subsets(n):
        yield Ideal.principal(n, s)
