"""
Exhaustive statement verifier.
Every statement quantifies over instances built from enumerated (and optionally
sampled) topologies, asserts hypothesis ⇒ conclusion on each, and records
replayable counterexample witnesses. Negative controls drop a hypothesis and
search for an instance where the conclusion then fails.
"""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from ideal_topology.src import codec
from ideal_topology.src.constructions import (
    DenseFamily,
    NbhdAssignment,
    all_maximal_dense_fip,
    assignments_iter,
    dense_fip_maximal,
    easy_ideals,
    has_dense_fip,
    has_dense_fip_by_scan,
    ideal_IA,
    ideal_IA_max,
    ideal_IA_over_all_points,
    ideal_IA_prime,
    ideal_ID,
    is_maximal_dense_fip,
    minimal_assignment,
    prime_assignment,
    random_assignment,
    shrink_assignment,
    simple_expansion,
)
from ideal_topology.src.enumeration import (
    EnumerationBudget,
    enumerate_subsets,
    enumerate_topologies,
    instance_rng,
    random_ideal,
    sampled_topologies,
    topology_key,
)
from ideal_topology.src.ideals import Ideal, IdealSpace, enumerate_ideals
from ideal_topology.src.point_set import (
    PointSet,
    complement,
    contains,
    is_subset,
    points,
    singleton,
    submasks,
    union_all,
)
from ideal_topology.src.topology import Topology, generate_topology

logger = logging.getLogger(__name__)

# (kind, n, fixed first preorder row or None); kind is "exhaustive" or "sample"
Source = Tuple[str, int, Optional[PointSet]]


# ---------------------------------------------------------------------------
# Instances, witnesses and reports
# ---------------------------------------------------------------------------

@dataclass
class Instance:
    """
    One point of a statement's quantifier range.

    Only the fields a statement needs are filled in; `space` and `star` are
    computed on first use and cached.
    """
    topology: Topology
    set_a: Optional[PointSet] = None
    assignment: Optional[NbhdAssignment] = None
    ideal: Optional[Ideal] = None
    family: Optional[DenseFamily] = None
    set_b: Optional[PointSet] = None
    point: Optional[int] = None

    @cached_property
    def space(self) -> IdealSpace:
        return IdealSpace(self.topology, self.ideal)

    @cached_property
    def star(self) -> Topology:
        return self.space.star


@dataclass
class Counterexample:
    """
    Replayable witness of a violation (or of a negative control).

    Attributes:
        statement_id: Statement the witness belongs to
        topology: The topology τ
        set_a: The set A, if the statement has one
        assignment: The neighbourhood assignment, if any
        ideal: The ideal, if any
        family: The dense family, if any
        set_b: Secondary set (extra generator, second set, shrunk point)
        point: Distinguished point, if any
        note: What went wrong
        mutated: The witness was produced with the conclusion negated
    """
    statement_id: str
    topology: Topology
    set_a: Optional[PointSet] = None
    assignment: Optional[NbhdAssignment] = None
    ideal: Optional[Ideal] = None
    family: Optional[DenseFamily] = None
    set_b: Optional[PointSet] = None
    point: Optional[int] = None
    note: str = ""
    mutated: bool = False

    @classmethod
    def from_instance(cls, statement_id: str, inst: Instance, note: str,
                      mutated: bool = False) -> "Counterexample":
        return cls(statement_id, inst.topology, inst.set_a, inst.assignment, inst.ideal,
                   inst.family, inst.set_b, inst.point, note, mutated)

    def to_instance(self) -> Instance:
        return Instance(self.topology, self.set_a, self.assignment, self.ideal,
                        self.family, self.set_b, self.point)

    def to_dict(self) -> dict:
        data = {
            "statement_id": self.statement_id,
            "topology": codec.topology_to_dict(self.topology),
            "note": self.note,
            "mutated": self.mutated,
        }
        if self.set_a is not None:
            data["A"] = codec.point_list(self.set_a)
        if self.assignment is not None:
            data["assignment"] = codec.assignment_to_dict(self.assignment)
        if self.ideal is not None:
            data["ideal"] = codec.ideal_to_dict(self.ideal)
        if self.family is not None:
            data["family"] = codec.family_to_dict(self.family)
        if self.set_b is not None:
            data["B"] = codec.point_list(self.set_b)
        if self.point is not None:
            data["point"] = self.point
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Counterexample":
        topology = codec.parse_space(data["topology"]).topology
        n = topology.n
        return cls(
            statement_id=data["statement_id"],
            topology=topology,
            set_a=codec.parse_point_list(data["A"], n) if "A" in data else None,
            assignment=(codec.parse_assignment(data["assignment"], topology)
                        if "assignment" in data else None),
            ideal=codec.parse_ideal(data["ideal"], n) if "ideal" in data else None,
            family=codec.parse_family(data["family"], n) if "family" in data else None,
            set_b=codec.parse_point_list(data["B"], n) if "B" in data else None,
            point=data.get("point"),
            note=data.get("note", ""),
            mutated=data.get("mutated", False),
        )

    def sort_key(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class PropertyReport:
    """
    Outcome of one statement over a range of instances.

    Reports over disjoint instance ranges combine with `merge`, which is
    associative and independent of order.
    """
    statement_id: str
    instances_checked: int = 0
    violation_count: int = 0
    violations: List[Counterexample] = field(default_factory=list)
    hypothesis_held: int = 0
    outside_hypothesis_true: int = 0
    exploratory_differences: int = 0
    elapsed_ms: int = 0
    notes: List[str] = field(default_factory=list)
    witnesses: List[Counterexample] = field(default_factory=list)
    max_witnesses: int = 10

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def merge(self, other: "PropertyReport") -> "PropertyReport":
        if other.statement_id != self.statement_id:
            raise ValueError(f"Cannot merge {self.statement_id} with {other.statement_id}")
        limit = max(self.max_witnesses, other.max_witnesses)
        return PropertyReport(
            statement_id=self.statement_id,
            instances_checked=self.instances_checked + other.instances_checked,
            violation_count=self.violation_count + other.violation_count,
            violations=_first_witnesses(self.violations + other.violations, limit),
            hypothesis_held=self.hypothesis_held + other.hypothesis_held,
            outside_hypothesis_true=self.outside_hypothesis_true + other.outside_hypothesis_true,
            exploratory_differences=self.exploratory_differences + other.exploratory_differences,
            elapsed_ms=self.elapsed_ms + other.elapsed_ms,
            notes=sorted(set(self.notes) | set(other.notes)),
            witnesses=_first_witnesses(self.witnesses + other.witnesses, limit),
            max_witnesses=limit,
        )

    def add_violation(self, cx: Counterexample) -> None:
        self.violation_count += 1
        self.violations = _first_witnesses(self.violations + [cx], self.max_witnesses)

    def to_dict(self) -> dict:
        data = {
            "statement_id": self.statement_id,
            "instances": self.instances_checked,
            "violations": [cx.to_dict() for cx in self.violations],
            "violation_count": self.violation_count,
            "hypothesis_held": self.hypothesis_held,
            "outside_hypothesis_true": self.outside_hypothesis_true,
            "elapsed_ms": self.elapsed_ms,
            "notes": list(self.notes),
        }
        if self.exploratory_differences:
            data["exploratory_differences"] = self.exploratory_differences
        if self.witnesses:
            data["witnesses"] = [cx.to_dict() for cx in self.witnesses]
        return data


def _first_witnesses(witnesses: Sequence[Counterexample], limit: int) -> List[Counterexample]:
    return sorted(witnesses, key=Counterexample.sort_key)[:limit]


# ---------------------------------------------------------------------------
# Instance builders
# ---------------------------------------------------------------------------

InstanceBuilder = Callable[[Topology, EnumerationBudget], Iterator[Instance]]


def topology_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    yield Instance(topology)


def subset_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    for s in enumerate_subsets(topology.n):
        yield Instance(topology, set_a=s)


def subset_pair_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    subsets = list(enumerate_subsets(topology.n))
    for s in subsets:
        for t in subsets:
            yield Instance(topology, set_a=s, set_b=t)


def _assignments_for(topology: Topology, a: PointSet,
                     budget: EnumerationBudget) -> List[NbhdAssignment]:
    """Every assignment at small sizes; the minimal one plus seeded samples above."""
    if topology.n <= budget.full_assignments_max_n:
        return list(assignments_iter(topology, a))
    rng = instance_rng(budget, topology_key(topology), a)
    chosen = [minimal_assignment(topology, a)]
    for _ in range(budget.assignment_samples):
        asg = random_assignment(topology, a, rng)
        if asg not in chosen:
            chosen.append(asg)
    return chosen


def assignment_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    for a in enumerate_subsets(topology.n):
        for asg in _assignments_for(topology, a, budget):
            yield Instance(topology, set_a=a, assignment=asg, ideal=ideal_IA(topology, a, asg))


def prime_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    for a in enumerate_subsets(topology.n):
        yield Instance(topology, set_a=a, assignment=prime_assignment(topology, a),
                       ideal=ideal_IA_prime(topology, a))


def all_ideal_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    for ideal in enumerate_ideals(topology.n):
        yield Instance(topology, ideal=ideal)


def _ideals_for(topology: Topology, budget: EnumerationBudget) -> List[Ideal]:
    n = topology.n
    if n <= budget.full_assignments_max_n:
        return list(enumerate_ideals(n))
    rng = instance_rng(budget, topology_key(topology))
    ideals = [Ideal.trivial(n), Ideal.powerset(n)]
    for _ in range(budget.assignment_samples):
        ideal = random_ideal(n, rng)
        if ideal not in ideals:
            ideals.append(ideal)
    return ideals


def sampled_ideal_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    for ideal in _ideals_for(topology, budget):
        yield Instance(topology, ideal=ideal)


def ideal_subset_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    for ideal in _ideals_for(topology, budget):
        for a in enumerate_subsets(topology.n):
            yield Instance(topology, set_a=a, ideal=ideal)


def nested_ideal_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    """Pairs of ideals I ⊆ I', given as principal generators M ⊆ M' (set_b = M')."""
    n = topology.n
    for bigger in enumerate_subsets(n):
        for smaller in submasks(bigger):
            yield Instance(topology, ideal=Ideal.principal(n, smaller), set_b=bigger)


def family_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    if topology.n <= budget.all_max_families_max_n:
        families = all_maximal_dense_fip(topology)
    else:
        families = [dense_fip_maximal(topology)]
    for family in families:
        yield Instance(topology, family=family, ideal=ideal_ID(topology, family))


def shrink_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    """(τ, A, assignment, x0, y) with {y} closed and y in U_{x0} minus A."""
    closed_points = [y for y in range(topology.n) if topology.is_closed(singleton(y))]
    if not closed_points:
        return
    for inst in assignment_instances(topology, budget):
        for x0, u in inst.assignment.choice:
            for y in closed_points:
                if contains(u & ~inst.set_a, y):
                    yield Instance(topology, set_a=inst.set_a, assignment=inst.assignment,
                                   ideal=inst.ideal, set_b=singleton(y), point=x0)


# ---------------------------------------------------------------------------
# Conclusions and hypotheses
# ---------------------------------------------------------------------------

def _always(inst: Instance) -> bool:
    return True


def _a_open_in_star(inst: Instance) -> bool:
    return inst.star.is_open(inst.set_a)


def _generator_interiors_empty(inst: Instance) -> bool:
    return all(inst.topology.interior(g) == 0 for g in inst.assignment.generators())


def _generator_union_interior_empty(inst: Instance) -> bool:
    return inst.topology.interior(union_all(inst.assignment.generators())) == 0


def _trace_iff_interiors_empty(inst: Instance) -> bool:
    return inst.space.has_trivial_trace() == _generator_interiors_empty(inst)


def _shrunk_strictly_smaller(inst: Instance) -> bool:
    topology, a = inst.topology, inst.set_a
    y = points(inst.set_b)[0]
    shrunk_asg = shrink_assignment(topology, a, inst.assignment, inst.point, y)
    shrunk = ideal_IA(topology, a, shrunk_asg)
    strict = shrunk.is_subideal(inst.ideal) and not inst.ideal.is_subideal(shrunk)
    excludes_y = not contains(shrunk.union, y)
    still_open = IdealSpace(topology, shrunk).star.is_open(a)
    return strict and excludes_y and still_open


def _t1_is_discrete(inst: Instance) -> bool:
    return inst.topology.is_discrete()


def _is_t1(inst: Instance) -> bool:
    return inst.topology.is_t1()


def _trivial_trace(inst: Instance) -> bool:
    return inst.space.has_trivial_trace()


def _nontrivial_trace(inst: Instance) -> bool:
    return not inst.space.has_trivial_trace()


def _semireg_preserved(inst: Instance) -> bool:
    return inst.topology.semiregularization() == inst.star.semiregularization()


def _a_dense(inst: Instance) -> bool:
    return inst.topology.is_dense(inst.set_a)


def _a_preopen(inst: Instance) -> bool:
    return inst.topology.is_preopen(inst.set_a)


def _a_not_preopen(inst: Instance) -> bool:
    return not inst.topology.is_preopen(inst.set_a)


def _star_disconnected(inst: Instance) -> bool:
    return not inst.star.is_connected()


def _is_prime_assignment(inst: Instance) -> bool:
    return inst.assignment == prime_assignment(inst.topology, inst.set_a)


def _trace_iff_preopen(inst: Instance) -> bool:
    return inst.space.has_trivial_trace() == _a_preopen(inst)


def _topology_connected(inst: Instance) -> bool:
    return inst.topology.is_connected()


def _connected_iff_preopen(inst: Instance) -> bool:
    topology, a = inst.topology, inst.set_a
    preopen = topology.is_preopen(a)
    if inst.star.is_connected() != preopen:
        return False
    if not preopen:
        return True
    # Scaffolding: I'_A ⊆ I_A^max, τ* ⊆ τ*_max, τ ∼ I_A^max.
    maximal = ideal_IA_max(topology, a)
    max_space = IdealSpace(topology, maximal)
    return (
        inst.ideal.is_subideal(maximal)
        and inst.star.is_coarser_than(max_space.star)
        and max_space.is_compatible()
    )


def _star_submaximal_both_ways(inst: Instance) -> bool:
    star = inst.star
    return star.is_submaximal() and star.is_submaximal_by_dense()


def _interior_closure_reduction(inst: Instance) -> bool:
    topology, s = inst.topology, inst.set_a
    if topology.interior(s) != topology.interior_by_scan(s):
        return False
    return topology.closure(s) == topology.closure_by_scan(s)


def _operator_laws(inst: Instance) -> bool:
    topology, s, t = inst.topology, inst.set_a, inst.set_b
    n = topology.n
    interior, closure = topology.interior, topology.closure
    if interior(interior(s)) != interior(s) or closure(closure(s)) != closure(s):
        return False
    if closure(s) != complement(n, interior(complement(n, s))):
        return False
    if is_subset(s, t) and not (is_subset(interior(s), interior(t))
                                and is_subset(closure(s), closure(t))):
        return False
    return closure(s | t) == closure(s) | closure(t)


def _topology_invariants(inst: Instance) -> bool:
    topology = inst.topology
    if topology.invariant_problems():
        return False
    semireg = topology.semiregularization()
    if not semireg.is_coarser_than(topology) or semireg.semiregularization() != semireg:
        return False
    return topology.is_submaximal() == topology.is_submaximal_by_dense()


def _local_function_reduction(inst: Instance) -> bool:
    space, a = inst.space, inst.set_a
    return space.local_function(a) == space.local_function_by_opens(a)


def _local_function_extremes(inst: Instance) -> bool:
    topology, a = inst.topology, inst.set_a
    n = topology.n
    trivial = IdealSpace(topology, Ideal.trivial(n))
    powerset = IdealSpace(topology, Ideal.powerset(n))
    return trivial.local_function(a) == topology.closure(a) and powerset.local_function(a) == 0


def _cl_star_kuratowski(inst: Instance) -> bool:
    space = inst.space
    subsets = list(enumerate_subsets(space.n))
    closed = {a: space.cl_star(a) for a in subsets}
    if closed[0] != 0:
        return False
    for a in subsets:
        if not is_subset(a, closed[a]) or closed[closed[a]] != closed[a]:
            return False
    return all(closed[a | b] == closed[a] | closed[b] for a in subsets for b in subsets if a < b)


def _beta_is_base(inst: Instance) -> bool:
    space = inst.space
    beta = space.base_beta()
    if generate_topology(space.n, beta) != inst.star:
        return False
    if space.is_compatible() and set(beta) != set(inst.star.opens):
        return False
    return True


def _compatibility_reduction(inst: Instance) -> bool:
    space = inst.space
    compatible = space.is_compatible()
    if compatible != space.is_compatible_by_opens():
        return False
    return compatible or not inst.ideal.is_principal()


def _ideal_closed_in_star(inst: Instance) -> bool:
    star = inst.star
    if not inst.topology.is_coarser_than(star):
        return False
    if star.invariant_problems():
        return False
    return all(star.is_closed(m) for m in inst.ideal.members())


def _star_monotone_in_ideal(inst: Instance) -> bool:
    bigger = IdealSpace(inst.topology, Ideal.principal(inst.topology.n, inst.set_b))
    return inst.star.is_coarser_than(bigger.star)


def _trace_iff_X_star(inst: Instance) -> bool:
    X = inst.topology.ground
    return inst.space.has_trivial_trace() == (inst.space.local_function(X) == X)


def _ideal_principal(inst: Instance) -> bool:
    return inst.ideal.is_principal()


def _ideal_disjoint_from_a(inst: Instance) -> bool:
    return all(m & inst.set_a == 0 for m in inst.ideal.maximal)


def _prime_inside_max_hypothesis(inst: Instance) -> bool:
    topology, a = inst.topology, inst.set_a
    if not topology.is_preopen(a):
        return False
    target = topology.interior(topology.closure(a))
    return all(is_subset(topology.min_nbhd[x], target) for x in points(a))


def _prime_inside_max(inst: Instance) -> bool:
    # I_A^max only exists for preopen A
    if not inst.topology.is_preopen(inst.set_a):
        return True
    return inst.ideal.is_subideal(ideal_IA_max(inst.topology, inst.set_a))


def _dense_fip_machinery(inst: Instance) -> bool:
    topology = inst.topology
    greedy = dense_fip_maximal(topology)
    if not is_maximal_dense_fip(topology, greedy):
        return False
    if has_dense_fip(topology, greedy.members) != has_dense_fip_by_scan(topology, greedy.members):
        return False
    families = all_maximal_dense_fip(topology)
    if greedy not in families:
        return False
    if not all(is_maximal_dense_fip(topology, f) for f in families):
        return False
    if topology.is_resolvable() and topology.n > 0 and len(families) < 2:
        return False
    return True


def _ID_complements_dense(inst: Instance) -> bool:
    topology = inst.topology
    return all(topology.is_dense(complement(topology.n, m)) for m in inst.ideal.maximal)


def _simple_expansion_below_star(inst: Instance) -> bool:
    return simple_expansion(inst.topology, inst.set_a).is_coarser_than(inst.star)


def _easy_ideals(inst: Instance) -> bool:
    topology, a = inst.topology, inst.set_a
    powerset, principal = easy_ideals(topology, a)
    if not IdealSpace(topology, powerset).star.is_discrete():
        return False
    star = IdealSpace(topology, principal).star
    return all(star.is_open(s) for s in enumerate_subsets(topology.n) if is_subset(a, s))


def _generator_choice_equal(inst: Instance) -> bool:
    unrefined = ideal_IA_over_all_points(inst.topology, inst.set_a, inst.assignment)
    return unrefined == inst.ideal


def _union_pair_control(inst: Instance) -> bool:
    """Two sets with empty interiors whose union has nonempty interior."""
    topology = inst.topology
    return (topology.interior(inst.set_a) == 0 and topology.interior(inst.set_b) == 0
            and topology.interior(inst.set_a | inst.set_b) != 0)


def union_pair_instances(topology: Topology, budget: EnumerationBudget) -> Iterator[Instance]:
    subsets = list(enumerate_subsets(topology.n))
    for i, s in enumerate(subsets):
        for t in subsets[i + 1:]:
            yield Instance(topology, set_a=s, set_b=t)


# ---------------------------------------------------------------------------
# Statement registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Statement:
    """
    A checkable statement.

    Attributes:
        statement_id: Identifier used by --only and in reports
        description: One-line statement
        instances: Builds the quantifier range from one topology
        conclusion: Must hold on every instance where the hypothesis holds
        hypothesis: Restricts the instances the conclusion is asserted on
        note: Fixed remark attached to every report
        control_instances: Range searched by the negative control (defaults
            to `instances`)
        control: Witness predicate of the negative control (defaults to
            hypothesis false and conclusion false)
        has_control: Whether the statement takes part in negative controls
        exploratory: Conclusion failures are counted, not reported as violations
    """
    statement_id: str
    description: str
    instances: InstanceBuilder
    conclusion: Callable[[Instance], bool]
    hypothesis: Callable[[Instance], bool] = _always
    note: str = ""
    control_instances: Optional[InstanceBuilder] = None
    control: Optional[Callable[[Instance], bool]] = None
    has_control: bool = False
    exploratory: bool = False

    def is_control_witness(self, inst: Instance) -> bool:
        if self.control is not None:
            return self.control(inst)
        return not self.hypothesis(inst) and not self.conclusion(inst)


_STATEMENT_LIST = [
    Statement(
        "check_A_open",
        "the assignment ideal makes A open in the expanded topology",
        assignment_instances, _a_open_in_star,
    ),
    Statement(
        "check_union_empty_interior",
        "generators with empty interiors have a union with empty interior",
        assignment_instances, _generator_union_interior_empty,
        hypothesis=_generator_interiors_empty,
        control_instances=union_pair_instances, control=_union_pair_control, has_control=True,
    ),
    Statement(
        "check_trace_trivial_iff_interiors_empty",
        "τ ∩ I_A = {∅} iff every Int(U_x minus A) is empty",
        assignment_instances, _trace_iff_interiors_empty,
    ),
    Statement(
        "check_shrink_strictly_smaller",
        "removing a closed point from the assignment strictly shrinks I_A and keeps A open",
        shrink_instances, _shrunk_strictly_smaller,
        note="finite T1 spaces are discrete, so the T1 hypothesis is vacuous at finite scale; "
             "checked on every space with a closed singleton outside A",
    ),
    Statement(
        "check_finite_T1_discrete",
        "every finite T1 space is discrete",
        topology_instances, _t1_is_discrete, hypothesis=_is_t1,
    ),
    Statement(
        "check_semireg_preserved[trace]",
        "τ ∩ I = {∅} implies τ_s = (τ*)_s",
        all_ideal_instances, _semireg_preserved, hypothesis=_trivial_trace,
    ),
    Statement(
        "check_semireg_preserved[dense]",
        "A dense implies τ_s = (τ*)_s for I_A",
        assignment_instances, _semireg_preserved, hypothesis=_a_dense,
        note="instances counted under outside_hypothesis_true are non-dense sets that still "
             "preserve regular open sets; density is not necessary",
    ),
    Statement(
        "check_semireg_preserved[preopen]",
        "A preopen implies τ_s = (τ*)_s for I'_A",
        prime_instances, _semireg_preserved, hypothesis=_a_preopen,
    ),
    Statement(
        "check_semireg_preserved[ID]",
        "τ_s = (τ*)_s for every dense-family ideal I_D",
        family_instances, _semireg_preserved,
    ),
    Statement(
        "check_not_preopen_disconnected",
        "A not preopen implies τ* is disconnected",
        assignment_instances, _star_disconnected, hypothesis=_a_not_preopen, has_control=True,
    ),
    Statement(
        "check_trace_nontrivial_disconnected",
        "τ ∩ I_A ≠ {∅} implies τ* is disconnected",
        assignment_instances, _star_disconnected, hypothesis=_nontrivial_trace, has_control=True,
    ),
    Statement(
        "check_IAprime_trace_iff_preopen",
        "τ ∩ I'_A = {∅} iff A is preopen",
        prime_instances, _trace_iff_preopen, hypothesis=_is_prime_assignment,
        control_instances=assignment_instances, has_control=True,
    ),
    Statement(
        "check_connected_iff_preopen",
        "for connected τ, τ* over I'_A is connected iff A is preopen",
        prime_instances, _connected_iff_preopen, hypothesis=_topology_connected,
        has_control=True,
    ),
    Statement(
        "check_ID_trace_trivial",
        "τ ∩ I_D = {∅} for every maximal dense-FIP family",
        family_instances, _trivial_trace,
    ),
    Statement(
        "check_ID_submaximal",
        "τ* over I_D is submaximal under both characterizations",
        family_instances, _star_submaximal_both_ways,
    ),
    Statement(
        "check_interior_reduction",
        "interior and closure via minimal neighbourhoods equal the open-set scans",
        subset_instances, _interior_closure_reduction,
    ),
    Statement(
        "check_operator_laws",
        "Int/Cl idempotence, duality, monotonicity and finite additivity of Cl",
        subset_pair_instances, _operator_laws,
    ),
    Statement(
        "check_topology_invariants",
        "topology invariants, semiregularization coarser and idempotent, "
        "submaximal characterizations agree",
        topology_instances, _topology_invariants,
    ),
    Statement(
        "check_local_function_reduction",
        "A* via the minimal neighbourhood equals A* over all neighbourhoods",
        ideal_subset_instances, _local_function_reduction,
    ),
    Statement(
        "check_local_function_extremes",
        "A* = Cl(A) for the trivial ideal and A* = ∅ for the powerset ideal",
        subset_instances, _local_function_extremes,
    ),
    Statement(
        "check_cl_star_kuratowski",
        "Cl* satisfies the Kuratowski closure axioms",
        sampled_ideal_instances, _cl_star_kuratowski,
    ),
    Statement(
        "check_beta_base",
        "β(I, τ) generates τ*, and equals τ* under compatibility",
        sampled_ideal_instances, _beta_is_base,
    ),
    Statement(
        "check_compatibility",
        "compatibility via minimal neighbourhoods matches the full quantifier; "
        "principal ideals are compatible",
        sampled_ideal_instances, _compatibility_reduction,
    ),
    Statement(
        "check_ideal_closed_in_star",
        "τ ⊆ τ*, τ* is a topology and every ideal member is τ*-closed",
        sampled_ideal_instances, _ideal_closed_in_star,
    ),
    Statement(
        "check_star_monotone_in_ideal",
        "I ⊆ I' implies τ*(I) ⊆ τ*(I')",
        nested_ideal_instances, _star_monotone_in_ideal,
    ),
    Statement(
        "check_trace_trivial_iff_X_star",
        "τ ∩ I = {∅} iff X* = X",
        all_ideal_instances, _trace_iff_X_star,
    ),
    Statement(
        "check_finite_ideals_principal",
        "every generated ideal on a finite set has a single maximal element",
        assignment_instances, _ideal_principal,
    ),
    Statement(
        "check_IA_disjoint_from_A",
        "every maximal element of I_A is disjoint from A",
        assignment_instances, _ideal_disjoint_from_a,
    ),
    Statement(
        "check_IAprime_within_IAmax",
        "I'_A ⊆ I_A^max when A is preopen and its minimal neighbourhoods lie in Int(Cl(A))",
        prime_instances, _prime_inside_max, hypothesis=_prime_inside_max_hypothesis,
    ),
    Statement(
        "check_dense_fip_machinery",
        "greedy and branch-and-bound dense families are maximal; resolvable spaces "
        "have several",
        topology_instances, _dense_fip_machinery,
    ),
    Statement(
        "check_ID_complements_dense",
        "the complement of every maximal element of I_D is dense",
        family_instances, _ID_complements_dense,
    ),
    Statement(
        "check_simple_expansion_below_star",
        "τ(A) ⊆ τ* for every assignment ideal",
        assignment_instances, _simple_expansion_below_star,
    ),
    Statement(
        "check_easy_ideals",
        "P(X) gives the discrete topology; the principal ideal of X minus A opens "
        "every superset of A",
        subset_instances, _easy_ideals,
    ),
    Statement(
        "check_IA_generator_choice",
        "generators over all of A versus over A minus Int(A) (exploratory)",
        assignment_instances, _generator_choice_equal, exploratory=True,
        note="exploratory comparison; differences are counted, never violations",
    ),
]

STATEMENTS: Dict[str, Statement] = {s.statement_id: s for s in _STATEMENT_LIST}


def statement_ids() -> List[str]:
    return list(STATEMENTS)


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------

def sources(budget: EnumerationBudget, split_largest: bool = False) -> List[Source]:
    """
    Work units for a run: one per exhaustive size, plus the sample if any.

    With split_largest the largest exhaustive size is cut into one unit per
    possible first preorder row, so a worker pool can share it.
    """
    top = budget.n_max_exhaustive
    result: List[Source] = [("exhaustive", n, None) for n in range(1, top + 1)]
    if split_largest and top >= 2:
        result.pop()
        result.extend(("exhaustive", top, 1 | (sub << 1)) for sub in range(1 << (top - 1)))
    if budget.sample_count > 0:
        result.append(("sample", budget.sample_n, None))
    return result


def topology_stream(budget: EnumerationBudget, source: Source) -> Iterator[Topology]:
    kind, n, first_row = source
    if kind == "exhaustive":
        return enumerate_topologies(n, () if first_row is None else (first_row,))
    return sampled_topologies(budget)


def _lookup(statement_id: str) -> Statement:
    try:
        return STATEMENTS[statement_id]
    except KeyError:
        raise ValueError(f"Unknown statement_id: {statement_id}")


def check_topologies(statement_id: str, topologies: Iterable[Topology],
                     budget: EnumerationBudget, mutate: bool = False) -> PropertyReport:
    """
    Check one statement over the instances of the given topologies.

    Args:
        statement_id: Registered statement
        topologies: Topologies to expand into instances
        budget: Sampling budget for assignments, ideals and families
        mutate: Negate the conclusion (harness self-test)

    Returns:
        PropertyReport for this range
    """
    statement = _lookup(statement_id)
    report = PropertyReport(statement_id, max_witnesses=budget.max_witnesses)
    if statement.note:
        report.notes.append(statement.note)
    start = time.perf_counter()
    for topology in topologies:
        for inst in statement.instances(topology, budget):
            report.instances_checked += 1
            held = statement.hypothesis(inst)
            concluded = statement.conclusion(inst) != mutate
            if statement.exploratory:
                if not concluded:
                    report.exploratory_differences += 1
                continue
            if held:
                report.hypothesis_held += 1
                if not concluded:
                    report.add_violation(Counterexample.from_instance(
                        statement_id, inst,
                        f"hypothesis held but conclusion failed: {statement.description}",
                        mutated=mutate,
                    ))
            elif concluded:
                report.outside_hypothesis_true += 1
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def _run_task(task: Tuple[str, EnumerationBudget, Source, bool]) -> PropertyReport:
    statement_id, budget, source, mutate = task
    return check_topologies(statement_id, topology_stream(budget, source), budget, mutate)


def run_check(statement_id: str, budget: EnumerationBudget, mutate: bool = False) -> PropertyReport:
    """Run one statement over every source of the budget."""
    reports = [_run_task((statement_id, budget, source, mutate)) for source in sources(budget)]
    return _merge_all(statement_id, reports, budget)


def _merge_all(statement_id: str, reports: Sequence[PropertyReport],
               budget: EnumerationBudget) -> PropertyReport:
    merged = PropertyReport(statement_id, max_witnesses=budget.max_witnesses)
    for report in reports:
        merged = merged.merge(report)
    return merged


def replay(cx: Counterexample) -> bool:
    """True iff re-checking the witness reproduces the violation."""
    statement = _lookup(cx.statement_id)
    inst = cx.to_instance()
    return statement.hypothesis(inst) and (statement.conclusion(inst) == cx.mutated)


def run_negative_control(statement_id: str, budget: EnumerationBudget,
                         max_n: int = 4) -> PropertyReport:
    """
    Search for an instance showing the statement's hypothesis does work.

    Scans sizes 1..min(n_max, max_n), skipping sets A already open in τ, and
    stops at the first witness; when none exists the report says so explicitly.
    """
    statement = _lookup(statement_id)
    report = PropertyReport(f"control:{statement_id}", max_witnesses=budget.max_witnesses)
    builder = statement.control_instances or statement.instances
    top = min(budget.n_max_exhaustive, max_n)
    start = time.perf_counter()
    found = None
    for n in range(1, top + 1):
        for topology in enumerate_topologies(n):
            for inst in builder(topology, budget):
                report.instances_checked += 1
                # open A needs no expansion; skip it
                if inst.set_a is not None and topology.is_open(inst.set_a):
                    continue
                if statement.is_control_witness(inst):
                    found = inst
                    break
            if found:
                break
        if found:
            break
    if found:
        report.witnesses.append(Counterexample.from_instance(
            statement_id, found, "hypothesis dropped: conclusion fails on this instance"))
        report.notes.append("witness found")
        logger.info("[CONTROL] %s: witness on %d points", statement_id, found.topology.n)
    else:
        report.notes.append(f"no witness at this scale (n <= {top})")
        logger.warning("[CONTROL] %s: no witness at n <= %d", statement_id, top)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def control_statement_ids() -> List[str]:
    return [s.statement_id for s in _STATEMENT_LIST if s.has_control]


def run_suite(budget: EnumerationBudget, only: Optional[Sequence[str]] = None,
              negative_controls: bool = False, workers: int = 1) -> List[PropertyReport]:
    """
    Run the selected statements (all by default) over every source.

    Work is split into (statement, source) tasks; with workers > 1 the tasks
    run in a process pool and the partial reports are merged per statement.

    Args:
        budget: Enumeration budget
        only: Restrict to these statement ids
        negative_controls: Also run the hypothesis-dropping searches
        workers: Number of worker processes

    Returns:
        One report per statement, in registry order, followed by control reports
    """
    selected = list(only) if only else statement_ids()
    for statement_id in selected:
        _lookup(statement_id)
    tasks = [(sid, budget, source, False) for sid in selected
             for source in sources(budget, split_largest=workers > 1)]
    logger.info("[VERIFY] %d statements, %d tasks, %d worker(s)", len(selected), len(tasks), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_run_task, tasks))
    else:
        partials = [_run_task(task) for task in tasks]
    reports = []
    for sid in selected:
        merged = _merge_all(sid, [p for p in partials if p.statement_id == sid], budget)
        status = "ok" if merged.passed else f"{merged.violation_count} violation(s)"
        logger.info("[CHECK] %s: %d instances, %s", sid, merged.instances_checked, status)
        reports.append(merged)
    if negative_controls:
        for sid in control_statement_ids():
            if sid in selected:
                reports.append(run_negative_control(sid, budget))
    return reports


def run_mutation_self_test(budget: EnumerationBudget,
                           statement_id: str = "check_A_open") -> PropertyReport:
    """
    Negate one statement's conclusion and confirm the harness notices.

    Every kept witness is replayed; the report notes how many reproduced.
    """
    report = run_check(statement_id, budget, mutate=True)
    replayed = sum(1 for cx in report.violations if replay(cx))
    report.notes.append(f"mutation self-test: replayed {replayed}/{len(report.violations)} witnesses")
    return report


def suite_passed(reports: Sequence[PropertyReport]) -> bool:
    return all(r.passed for r in reports)


def reports_frame(reports: Sequence[PropertyReport]) -> pd.DataFrame:
    """One summary row per report."""
    columns = ["statement_id", "instances", "hypothesis_held", "violations",
               "elapsed_ms", "passed"]
    rows = [
        {
            "statement_id": r.statement_id,
            "instances": r.instances_checked,
            "hypothesis_held": r.hypothesis_held,
            "violations": r.violation_count,
            "elapsed_ms": r.elapsed_ms,
            "passed": r.passed,
        }
        for r in reports
    ]
    return pd.DataFrame(rows, columns=columns)
