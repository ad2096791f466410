"""
Finite topologies in Alexandrov form.
Every finite topology is stored both as its sorted list of open sets and as the
table of minimal open neighbourhoods, which gives O(n) interior and closure.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, Sequence, Tuple

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
    singleton,
)


class TopologyError(ValueError):
    """Raised when a family of sets is not a topology on the ground set."""


@dataclass(frozen=True)
class Topology:
    """
    A topology on {0, ..., n-1}.

    Attributes:
        n: Ground-set size
        opens: Open sets, duplicate-free, in canonical (popcount, value) order
        min_nbhd: min_nbhd[x] is the intersection of all opens containing x
    """
    n: int
    opens: Tuple[PointSet, ...]
    min_nbhd: Tuple[PointSet, ...]

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_opens(cls, n: int, opens: Iterable[PointSet], validate: bool = True) -> "Topology":
        """
        Build a topology from its open sets.

        Args:
            n: Ground-set size
            opens: The open sets (any order, duplicates allowed)
            validate: Check the topology invariants and raise TopologyError

        Returns:
            Topology with canonical opens and derived min_nbhd table
        """
        check_size(n)
        family = canonical_sorted(check_within(n, s) for s in opens)
        X = full(n)
        table = []
        for x in range(n):
            acc = X
            for u in family:
                if (u >> x) & 1:
                    acc &= u
            table.append(acc)
        topology = cls(n, tuple(family), tuple(table))
        if validate:
            problems = topology.invariant_problems()
            if problems:
                raise TopologyError("; ".join(problems))
        return topology

    @classmethod
    def from_min_nbhd(cls, n: int, table: Sequence[PointSet]) -> "Topology":
        """
        Build the Alexandrov topology whose minimal neighbourhoods are `table`.

        The table must be reflexive (x in table[x]) and transitive
        (y in table[x] implies table[y] ⊆ table[x]); opens are then exactly
        the sets S with table[x] ⊆ S for every x in S.
        """
        check_size(n)
        if len(table) != n:
            raise TopologyError(f"Expected {n} minimal neighbourhoods, got {len(table)}")
        for x, u in enumerate(table):
            check_within(n, u)
            if not (u >> x) & 1:
                raise TopologyError(f"min_nbhd[{x}] does not contain {x}")
            for y in points(u):
                if not is_subset(table[y], u):
                    raise TopologyError(f"min_nbhd table not transitive at ({x}, {y})")
        opens = [s for s in range(1 << n) if _is_down_closed(s, table)]
        return cls(n, tuple(canonical_sorted(opens)), tuple(table))

    @classmethod
    def discrete(cls, n: int) -> "Topology":
        return cls.from_min_nbhd(n, [singleton(x) for x in range(n)])

    @classmethod
    def indiscrete(cls, n: int) -> "Topology":
        return cls.from_min_nbhd(n, [full(n)] * n)

    def invariant_problems(self) -> List[str]:
        """List every violated Topology invariant (empty when valid)."""
        problems = []
        X = self.ground
        if 0 not in self.open_set:
            problems.append("empty set is not open")
        if X not in self.open_set:
            problems.append("ground set is not open")
        for i, a in enumerate(self.opens):
            for b in self.opens[i + 1:]:
                if a | b not in self.open_set:
                    problems.append(f"not closed under union: {a:#b} | {b:#b}")
                if a & b not in self.open_set:
                    problems.append(f"not closed under intersection: {a:#b} & {b:#b}")
        for x, u in enumerate(self.min_nbhd):
            if u not in self.open_set or not (u >> x) & 1:
                problems.append(f"min_nbhd[{x}] is not an open set containing {x}")
        return problems

    # ------------------------------------------------------------------
    # Basic queries
    # ------------------------------------------------------------------

    @property
    def ground(self) -> PointSet:
        return full(self.n)

    @cached_property
    def open_set(self) -> FrozenSet[PointSet]:
        return frozenset(self.opens)

    def is_open(self, s: PointSet) -> bool:
        return s in self.open_set

    def is_closed(self, s: PointSet) -> bool:
        return complement(self.n, s) in self.open_set

    def opens_containing(self, x: int) -> List[PointSet]:
        """Open neighbourhoods of x in canonical order."""
        return [u for u in self.opens if (u >> x) & 1]

    def is_coarser_than(self, other: "Topology") -> bool:
        """True iff every open set of self is open in other."""
        return self.n == other.n and self.open_set <= other.open_set

    # ------------------------------------------------------------------
    # Operators
    # ------------------------------------------------------------------

    def interior(self, s: PointSet) -> PointSet:
        """Largest open subset of s: {x in s : min_nbhd[x] ⊆ s}."""
        result = 0
        for x in points(s):
            if self.min_nbhd[x] & ~s == 0:
                result |= 1 << x
        return result

    def interior_by_scan(self, s: PointSet) -> PointSet:
        """Union of all open subsets of s (definition-level oracle)."""
        result = 0
        for u in self.opens:
            if u & ~s == 0:
                result |= u
        return result

    def closure(self, s: PointSet) -> PointSet:
        """{x : min_nbhd[x] meets s}."""
        result = 0
        for x, u in enumerate(self.min_nbhd):
            if u & s:
                result |= 1 << x
        return result

    def closure_by_scan(self, s: PointSet) -> PointSet:
        return complement(self.n, self.interior_by_scan(complement(self.n, s)))

    def is_dense(self, s: PointSet) -> bool:
        return self.closure(s) == self.ground

    def is_preopen(self, s: PointSet) -> bool:
        return s & ~self.interior(self.closure(s)) == 0

    def is_regular_open(self, s: PointSet) -> bool:
        return s == self.interior(self.closure(s))

    def dense_sets(self) -> List[PointSet]:
        return [s for s in all_subsets(self.n) if self.is_dense(s)]

    def preopen_sets(self) -> List[PointSet]:
        return [s for s in all_subsets(self.n) if self.is_preopen(s)]

    def regular_open_sets(self) -> List[PointSet]:
        return [u for u in self.opens if self.is_regular_open(u)]

    def clopen_sets(self) -> List[PointSet]:
        return [u for u in self.opens if self.is_closed(u)]

    def semiregularization(self) -> "Topology":
        """Topology generated by the regular open sets."""
        return generate_topology(self.n, self.regular_open_sets())

    # ------------------------------------------------------------------
    # Space properties
    # ------------------------------------------------------------------

    def is_connected(self) -> bool:
        X = self.ground
        return all(u in (0, X) for u in self.clopen_sets())

    def is_submaximal(self) -> bool:
        """Every preopen set is open."""
        return all(self.is_open(s) for s in self.preopen_sets())

    def is_submaximal_by_dense(self) -> bool:
        """Every dense set is open (equivalent characterization)."""
        return all(self.is_open(s) for s in self.dense_sets())

    def is_resolvable(self) -> bool:
        """Two disjoint dense sets exist, i.e. some dense set has a dense complement."""
        for s in self.dense_sets():
            if self.is_dense(complement(self.n, s)):
                return True
        return False

    def is_t1(self) -> bool:
        # On finite spaces this coincides with being discrete.
        return all(self.closure(singleton(x)) == singleton(x) for x in range(self.n))

    def is_discrete(self) -> bool:
        return all(u == singleton(x) for x, u in enumerate(self.min_nbhd))


def _is_down_closed(s: PointSet, table: Sequence[PointSet]) -> bool:
    for x in points(s):
        if table[x] & ~s:
            return False
    return True


def generate_topology(n: int, subbase: Iterable[PointSet]) -> Topology:
    """
    Smallest topology on n points containing every set of `subbase`.

    Closes the family under intersection, then under union, and repeats until
    both closures are stable.

    Args:
        n: Ground-set size
        subbase: Generating sets

    Returns:
        The generated Topology
    """
    check_size(n)
    X = full(n)
    family = {0, X}
    family.update(check_within(n, s) for s in subbase)
    while True:
        before = len(family)
        closed = {X}
        for s in family:
            closed |= {c & s for c in closed}
        unions = {0}
        for s in closed:
            unions |= {u | s for u in unions}
        family = unions
        if len(family) == before and _closed_under_intersection(family):
            break
    return Topology.from_opens(n, family, validate=False)


def _closed_under_intersection(family) -> bool:
    members = list(family)
    return all(a & b in family for i, a in enumerate(members) for b in members[i + 1:])
