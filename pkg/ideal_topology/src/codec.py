"""
JSON forms of spaces, ideals, assignments and dense families.
Points are 0-based indices internally; input files may name them through a
`labels` list, and every writer emits indices (plus the labels, if known) so
that output parses back unchanged.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ideal_topology.src.constructions import (
    DenseFamily,
    NbhdAssignment,
    assignment_domain,
)
from ideal_topology.src.ideals import Ideal, IdealSpace
from ideal_topology.src.point_set import (
    MAX_POINTS,
    PointSet,
    PointSetError,
    from_points,
    points,
)
from ideal_topology.src.topology import Topology, TopologyError


class SpaceFormatError(ValueError):
    """Malformed JSON input."""


@dataclass(frozen=True)
class SpaceDescriptor:
    """A parsed space file: the topology, optional point labels, optional ideal."""
    topology: Topology
    labels: Optional[Sequence[str]] = None
    ideal: Optional[Ideal] = None

    @property
    def ideal_space(self) -> Optional[IdealSpace]:
        if self.ideal is None:
            return None
        return IdealSpace(self.topology, self.ideal)


def load_json(path) -> Any:
    try:
        with open(Path(path), "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise SpaceFormatError(f"File not found: {path}")
    except json.JSONDecodeError as e:
        raise SpaceFormatError(f"Invalid JSON in {path}: {e}")


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

def parse_point(item: Any, n: int, labels: Optional[Sequence[str]] = None) -> int:
    if isinstance(item, bool):
        raise SpaceFormatError(f"Invalid point: {item!r}")
    if isinstance(item, int):
        x = item
    elif isinstance(item, str) and labels and item in labels:
        x = list(labels).index(item)
    elif isinstance(item, str) and item.strip().isdigit():
        x = int(item)
    else:
        raise SpaceFormatError(f"Unknown point: {item!r}")
    if not 0 <= x < n:
        raise SpaceFormatError(f"Point {item!r} outside ground set of size {n}")
    return x


def parse_point_list(items: Any, n: int, labels: Optional[Sequence[str]] = None) -> PointSet:
    if not isinstance(items, list):
        raise SpaceFormatError(f"Expected a list of points, got {items!r}")
    return from_points(parse_point(item, n, labels) for item in items)


def parse_set_spec(spec: str, n: int, labels: Optional[Sequence[str]] = None) -> PointSet:
    """Parse a comma-separated command-line set such as `a,c` or `0,2` (empty string is ∅)."""
    items = [p.strip() for p in spec.split(",") if p.strip()]
    return from_points(parse_point(item, n, labels) for item in items)


def point_list(s: PointSet) -> List[int]:
    return points(s)


# ---------------------------------------------------------------------------
# Spaces and ideals
# ---------------------------------------------------------------------------

def parse_space(data: Any) -> SpaceDescriptor:
    """
    Parse `{"n": int, "opens": [[points]...], "labels"?: [...], "ideal"?: {...}}`.

    Raises:
        SpaceFormatError: for missing keys, bad points or non-topologies
    """
    if not isinstance(data, dict) or "n" not in data or "opens" not in data:
        raise SpaceFormatError("Space JSON must be an object with 'n' and 'opens'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or not 0 <= n <= MAX_POINTS:
        raise SpaceFormatError(f"'n' must be an integer in 0..{MAX_POINTS}")
    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or len(set(labels)) != n:
            raise SpaceFormatError("'labels' must list n distinct names")
        labels = [str(label) for label in labels]
    if not isinstance(data["opens"], list):
        raise SpaceFormatError("'opens' must be a list")
    opens = [parse_point_list(items, n, labels) for items in data["opens"]]
    try:
        topology = Topology.from_opens(n, opens)
    except (TopologyError, PointSetError) as e:
        raise SpaceFormatError(f"Not a topology: {e}")
    ideal = None
    if "ideal" in data:
        ideal = parse_ideal(data["ideal"], n, labels)
    return SpaceDescriptor(topology, labels, ideal)


def load_space(path) -> SpaceDescriptor:
    return parse_space(load_json(path))


def topology_to_dict(topology: Topology, labels: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    data: Dict[str, Any] = {"n": topology.n, "opens": [point_list(u) for u in topology.opens]}
    if labels:
        data["labels"] = list(labels)
    return data


def parse_ideal(data: Any, n: int, labels: Optional[Sequence[str]] = None) -> Ideal:
    """Parse `{"maximal": [[points]...]}`; the listed sets are treated as generators."""
    if not isinstance(data, dict) or not isinstance(data.get("maximal"), list):
        raise SpaceFormatError("Ideal JSON must be an object with a 'maximal' list")
    return Ideal.from_generators(n, [parse_point_list(items, n, labels) for items in data["maximal"]])


def ideal_to_dict(ideal: Ideal) -> Dict[str, Any]:
    return {"maximal": [point_list(m) for m in ideal.maximal]}


def ideal_space_to_dict(space: IdealSpace, labels: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    data = topology_to_dict(space.topology, labels)
    data["ideal"] = ideal_to_dict(space.ideal)
    return data


# ---------------------------------------------------------------------------
# Assignments and dense families
# ---------------------------------------------------------------------------

def parse_assignment(data: Any, topology: Topology,
                     labels: Optional[Sequence[str]] = None) -> NbhdAssignment:
    """
    Parse `{"A": [points], "choice": {"x": [points of U_x], ...}}`.

    The domain is recomputed from the topology; validity against (τ, A) is
    checked later by the constructions.
    """
    if not isinstance(data, dict) or "A" not in data or not isinstance(data.get("choice"), dict):
        raise SpaceFormatError("Assignment JSON must have 'A' and a 'choice' object")
    n = topology.n
    a = parse_point_list(data["A"], n, labels)
    mapping = {
        parse_point(key, n, labels): parse_point_list(value, n, labels)
        for key, value in data["choice"].items()
    }
    return NbhdAssignment.from_mapping(a, assignment_domain(topology, a), mapping)


def assignment_to_dict(asg: NbhdAssignment) -> Dict[str, Any]:
    return {
        "A": point_list(asg.set_a),
        "choice": {str(x): point_list(u) for x, u in asg.choice},
    }


def parse_family(data: Any, n: int, labels: Optional[Sequence[str]] = None) -> DenseFamily:
    if not isinstance(data, dict) or not isinstance(data.get("members"), list):
        raise SpaceFormatError("Dense-family JSON must be an object with a 'members' list")
    return DenseFamily.of(parse_point_list(items, n, labels) for items in data["members"])


def family_to_dict(family: DenseFamily) -> Dict[str, Any]:
    return {"members": [point_list(d) for d in family.members]}
