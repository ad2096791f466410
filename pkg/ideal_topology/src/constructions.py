"""
Ideal constructions that make a chosen set open in the expanded topology.
Covers the assignment ideal I_A, its minimal-neighbourhood refinement I'_A,
the principal I_A^max, the closed-singleton shrinking step, dense families
with the finite intersection property, and the dense-family ideal I_D.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ideal_topology.src.ideals import Ideal
from ideal_topology.src.point_set import (
    PointSet,
    canonical_sorted,
    check_within,
    complement,
    contains,
    intersect_all,
    points,
    singleton,
)
from ideal_topology.src.topology import Topology, generate_topology

logger = logging.getLogger(__name__)


class InvalidAssignmentError(ValueError):
    """Neighbourhood assignment does not match the set or the topology."""


class NotPreopenError(ValueError):
    """The construction needs a preopen set."""


class ShrinkError(ValueError):
    """Shrinking witnesses do not satisfy the shrinking preconditions."""


class DenseFipError(ValueError):
    """A family lacks the dense finite intersection property."""


# ---------------------------------------------------------------------------
# Neighbourhood assignments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NbhdAssignment:
    """
    One open neighbourhood U_x for every x in A minus Int(A).

    Attributes:
        set_a: The set A the assignment was made for
        domain: A minus Int(A)
        choice: (x, U_x) pairs sorted by x
    """
    set_a: PointSet
    domain: PointSet
    choice: Tuple[Tuple[int, PointSet], ...]

    @classmethod
    def from_mapping(cls, set_a: PointSet, domain: PointSet,
                     mapping: Dict[int, PointSet]) -> "NbhdAssignment":
        return cls(set_a, domain, tuple(sorted(mapping.items())))

    def neighbourhood(self, x: int) -> PointSet:
        for point, u in self.choice:
            if point == x:
                return u
        raise KeyError(x)

    def as_dict(self) -> Dict[int, PointSet]:
        return dict(self.choice)

    def generators(self) -> List[PointSet]:
        """The sets U_x minus A."""
        return [u & ~self.set_a for _, u in self.choice]


def assignment_domain(topology: Topology, a: PointSet) -> PointSet:
    return a & ~topology.interior(a)


def validate_assignment(topology: Topology, a: PointSet, asg: NbhdAssignment) -> None:
    """Raise InvalidAssignmentError unless asg is a valid assignment for (τ, A)."""
    check_within(topology.n, a)
    expected = assignment_domain(topology, a)
    if asg.set_a != a:
        raise InvalidAssignmentError("Assignment was made for a different set A")
    if asg.domain != expected:
        raise InvalidAssignmentError(
            f"Assignment domain {asg.domain:#b} differs from A minus Int(A) = {expected:#b}"
        )
    assigned = [x for x, _ in asg.choice]
    if sorted(assigned) != points(expected):
        raise InvalidAssignmentError("Assignment must choose exactly one neighbourhood per domain point")
    for x, u in asg.choice:
        if not topology.is_open(u):
            raise InvalidAssignmentError(f"U_{x} = {u:#b} is not open")
        if not contains(u, x):
            raise InvalidAssignmentError(f"U_{x} = {u:#b} does not contain {x}")


def minimal_assignment(topology: Topology, a: PointSet) -> NbhdAssignment:
    """x ↦ min_nbhd[x] for every x in A minus Int(A)."""
    domain = assignment_domain(topology, a)
    return NbhdAssignment.from_mapping(
        a, domain, {x: topology.min_nbhd[x] for x in points(domain)}
    )


def assignments_iter(topology: Topology, a: PointSet) -> Iterator[NbhdAssignment]:
    """
    Every neighbourhood assignment for A, in deterministic order.

    Yields one assignment per element of the product of the open
    neighbourhood lists of the domain points (one empty assignment when A
    is open).
    """
    domain = assignment_domain(topology, a)
    xs = points(domain)
    options = [topology.opens_containing(x) for x in xs]
    for combo in itertools.product(*options):
        yield NbhdAssignment(a, domain, tuple(zip(xs, combo)))


def assignment_count(topology: Topology, a: PointSet) -> int:
    count = 1
    for x in points(assignment_domain(topology, a)):
        count *= len(topology.opens_containing(x))
    return count


def random_assignment(topology: Topology, a: PointSet, rng: np.random.Generator) -> NbhdAssignment:
    domain = assignment_domain(topology, a)
    mapping = {}
    for x in points(domain):
        options = topology.opens_containing(x)
        mapping[x] = options[int(rng.integers(len(options)))]
    return NbhdAssignment.from_mapping(a, domain, mapping)


# ---------------------------------------------------------------------------
# Assignment ideals
# ---------------------------------------------------------------------------

def ideal_IA(topology: Topology, a: PointSet, asg: NbhdAssignment) -> Ideal:
    """
    Ideal generated by {U_x minus A : x in A minus Int(A)}.

    Args:
        topology: The topology τ
        a: The set to be made open
        asg: A neighbourhood assignment for (τ, A)

    Returns:
        The ideal I_A; the trivial ideal when A is open
    """
    validate_assignment(topology, a, asg)
    return Ideal.from_generators(topology.n, asg.generators())


def ideal_IA_over_all_points(topology: Topology, a: PointSet,
                             asg: NbhdAssignment) -> Ideal:
    """
    Unrefined variant: generators range over every x in A.

    Points of Int(A) get Int(A) as their neighbourhood, which lies inside A
    and therefore contributes an empty generator.
    """
    validate_assignment(topology, a, asg)
    inner = topology.interior(a)
    gens = asg.generators() + [inner & ~a for _ in points(inner)]
    return Ideal.from_generators(topology.n, gens)


def prime_neighbourhood(topology: Topology, x: int, a: PointSet,
                        use_minimal: bool = True) -> PointSet:
    """
    Neighbourhood choice of the refined assignment.

    Branches, in order:
        1. the minimal neighbourhood of x, if one exists;
        2. otherwise the first open U containing x with U ⊆ Int(Cl(A));
        3. otherwise an arbitrary neighbourhood (the whole space).

    Args:
        topology: The topology τ
        x: The point being assigned
        a: The set A
        use_minimal: When False, branch 1 is treated as unavailable; finite
            spaces always have minimal neighbourhoods, so this is the only way
            to reach branches 2 and 3

    Returns:
        The chosen open neighbourhood of x
    """
    if use_minimal:
        return topology.min_nbhd[x]
    target = topology.interior(topology.closure(a))
    for u in topology.opens_containing(x):
        if u & ~target == 0:
            return u
    return topology.ground


def prime_assignment(topology: Topology, a: PointSet, use_minimal: bool = True) -> NbhdAssignment:
    domain = assignment_domain(topology, a)
    return NbhdAssignment.from_mapping(
        a, domain,
        {x: prime_neighbourhood(topology, x, a, use_minimal) for x in points(domain)},
    )


def ideal_IA_prime(topology: Topology, a: PointSet) -> Ideal:
    """I'_A: the assignment ideal over the refined neighbourhood choice."""
    check_within(topology.n, a)
    return ideal_IA(topology, a, prime_assignment(topology, a))


def ideal_IA_max(topology: Topology, a: PointSet) -> Ideal:
    """
    Principal ideal generated by Int(Cl(A)) minus A.

    Raises:
        NotPreopenError: if A is not contained in Int(Cl(A))
    """
    check_within(topology.n, a)
    target = topology.interior(topology.closure(a))
    if a & ~target:
        raise NotPreopenError(
            f"Set {a:#b} is not preopen: points {points(a & ~target)} lie outside Int(Cl(A))"
        )
    return Ideal.principal(topology.n, target & ~a)


def shrink_assignment(topology: Topology, a: PointSet, asg: NbhdAssignment,
                      x0: int, y: int) -> NbhdAssignment:
    """
    Remove a closed point y from every assigned neighbourhood.

    Args:
        topology: The topology τ
        a: The set A
        asg: The assignment being shrunk
        x0: A point of A minus Int(A)
        y: A point of U_{x0} minus A whose singleton is closed

    Returns:
        The assignment x ↦ U_x minus {y}
    """
    validate_assignment(topology, a, asg)
    if not contains(asg.domain, x0):
        raise ShrinkError(f"Point {x0} is not in A minus Int(A)")
    if not contains(asg.neighbourhood(x0) & ~a, y):
        raise ShrinkError(f"Point {y} is not in U_{x0} minus A")
    if not topology.is_closed(singleton(y)):
        raise ShrinkError(f"Singleton {{{y}}} is not closed")
    shrunk = {x: u & ~singleton(y) for x, u in asg.choice}
    return NbhdAssignment.from_mapping(a, asg.domain, shrunk)


# ---------------------------------------------------------------------------
# Expansions named alongside the assignment ideals
# ---------------------------------------------------------------------------

def simple_expansion(topology: Topology, a: PointSet) -> Topology:
    """τ(A): the topology with subbase τ ∪ {A}."""
    return generate_topology(topology.n, list(topology.opens) + [a])


def easy_ideals(topology: Topology, a: PointSet) -> Tuple[Ideal, Ideal]:
    """The two trivial ideals making A open: P(X) and the principal ideal of X minus A."""
    n = topology.n
    return Ideal.powerset(n), Ideal.principal(n, complement(n, a))


# ---------------------------------------------------------------------------
# Dense families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DenseFamily:
    """
    Family of dense sets, canonical order.

    Attributes:
        members: The dense sets of the family
    """
    members: Tuple[PointSet, ...]

    @classmethod
    def of(cls, members: Iterable[PointSet]) -> "DenseFamily":
        return cls(tuple(canonical_sorted(members)))


def has_dense_fip(topology: Topology, family: Sequence[PointSet]) -> bool:
    """
    Dense finite intersection property.

    Density is preserved by supersets, so it is enough that every member and
    the intersection of the whole family are dense.
    """
    if not all(topology.is_dense(d) for d in family):
        return False
    return topology.is_dense(intersect_all(topology.n, family))


def has_dense_fip_by_scan(topology: Topology, family: Sequence[PointSet]) -> bool:
    """Checks every nonempty sub-collection explicitly."""
    members = list(family)
    for r in range(1, len(members) + 1):
        for combo in itertools.combinations(members, r):
            if not topology.is_dense(intersect_all(topology.n, combo)):
                return False
    return True


def dense_fip_maximal(topology: Topology, seed: Optional[DenseFamily] = None) -> DenseFamily:
    """
    Greedy completion of a dense-FIP family to a maximal one.

    Scans every dense set in canonical order and adds it whenever the running
    intersection stays dense. The running intersection only shrinks, so a
    rejected set can never be added later and the result is maximal.

    Raises:
        DenseFipError: if the seed itself lacks the dense FIP
    """
    members = list(seed.members) if seed else []
    if not has_dense_fip(topology, members):
        raise DenseFipError("Seed family does not have the dense finite intersection property")
    chosen = set(members)
    running = intersect_all(topology.n, members)
    for d in topology.dense_sets():
        if d in chosen:
            continue
        if topology.is_dense(running & d):
            chosen.add(d)
            running &= d
    return DenseFamily.of(chosen)


def all_maximal_dense_fip(topology: Topology) -> List[DenseFamily]:
    """
    Every maximal dense-FIP family.

    Branch-and-bound over running intersections: a branch intersects the
    current kernel with one more dense set, is cut as soon as the kernel stops
    being dense, and each kernel is expanded once. A kernel with no dense
    proper refinement is an inclusion-minimal dense set K, and the maximal
    family it determines is {D dense : K ⊆ D}.
    """
    dense = topology.dense_sets()
    seen = set()
    kernels = set()
    stack = [topology.ground]
    while stack:
        kernel = stack.pop()
        if kernel in seen:
            continue
        seen.add(kernel)
        refined = False
        for d in dense:
            nxt = kernel & d
            if nxt != kernel and topology.is_dense(nxt):
                refined = True
                stack.append(nxt)
        if not refined:
            kernels.add(kernel)
    families = [
        DenseFamily.of(d for d in dense if k & ~d == 0)
        for k in canonical_sorted(kernels)
    ]
    logger.debug("[DENSE] %d maximal dense-FIP families on %d points", len(families), topology.n)
    return families


def is_maximal_dense_fip(topology: Topology, family: DenseFamily) -> bool:
    """No dense set outside the family can be added without breaking the dense FIP."""
    if not has_dense_fip(topology, family.members):
        return False
    members = set(family.members)
    kernel = intersect_all(topology.n, family.members)
    return all(
        d in members or not topology.is_dense(kernel & d)
        for d in topology.dense_sets()
    )


def ideal_ID(topology: Topology, family: DenseFamily) -> Ideal:
    """Ideal generated by the complements of the family's members."""
    return Ideal.from_generators(
        topology.n, [complement(topology.n, d) for d in family.members]
    )
