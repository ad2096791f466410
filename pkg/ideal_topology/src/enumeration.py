"""
Enumeration of finite topologies, subsets and sampled instances.
Topologies are produced from preorders through the Alexandrov correspondence:
row x of a preorder is the set {y : y ≤ x}, which becomes min_nbhd[x].
"""

import itertools
import json
import logging
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Iterator, List, Optional, Sequence

import numpy as np

from ideal_topology.src.ideals import Ideal
from ideal_topology.src.point_set import (
    PointSet,
    all_subsets,
    check_size,
    from_points,
    full,
    is_subset,
)
from ideal_topology.src.topology import Topology

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS_FILE = Path(__file__).resolve().parent.parent / "settings.json"


@dataclass(frozen=True)
class EnumerationBudget:
    """
    How much of the instance space a verification run covers.

    Attributes:
        n_max_exhaustive: Largest ground set enumerated exhaustively
        sample_count: Number of random topologies checked in addition
        sample_n: Ground-set size of the random topologies
        rng_seed: Seed for every random choice
        full_assignments_max_n: Up to this size every assignment is checked
        assignment_samples: Random assignments per (τ, A) above that size
        all_max_families_max_n: Up to this size every maximal dense family
            is checked; above it only the greedy one
        max_witnesses: Counterexamples kept per report
    """
    n_max_exhaustive: int = 4
    sample_count: int = 0
    sample_n: int = 6
    rng_seed: int = 20240101
    full_assignments_max_n: int = 3
    assignment_samples: int = 3
    all_max_families_max_n: int = 4
    max_witnesses: int = 10

    @classmethod
    def from_settings(cls, settings_file: Optional[Path] = None, **overrides) -> "EnumerationBudget":
        """
        Load the `budget` block of a settings file.

        Missing keys fall back to the defaults; a missing or malformed file
        is reported and the defaults are used. Keyword overrides that are
        not None win over the file.
        """
        settings = load_settings(settings_file)
        values = {}
        known = {f.name for f in fields(cls)}
        for key, value in settings.get("budget", {}).items():
            if key in known:
                values[key] = value
        if "max_witnesses" in settings.get("report", {}):
            values["max_witnesses"] = settings["report"]["max_witnesses"]
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_n(self, n: int) -> "EnumerationBudget":
        return replace(self, n_max_exhaustive=n)

    def to_dict(self) -> dict:
        return asdict(self)


def load_settings(settings_file: Optional[Path] = None) -> dict:
    """Read settings.json; falls back to an empty dict on any load problem."""
    path = Path(settings_file) if settings_file else DEFAULT_SETTINGS_FILE
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        logger.warning("[SETTINGS] Settings file not found: %s (using defaults)", path)
    except json.JSONDecodeError as e:
        logger.warning("[SETTINGS] Invalid JSON in %s: %s (using defaults)", path, e)
    return {}


def get_limit(key: str, default: int, settings_file: Optional[Path] = None) -> int:
    return load_settings(settings_file).get("limits", {}).get(key, default)


# ---------------------------------------------------------------------------
# Subsets and topologies
# ---------------------------------------------------------------------------

def enumerate_subsets(n: int) -> Iterator[PointSet]:
    """All 2^n subsets in canonical order."""
    yield from all_subsets(check_size(n))


def enumerate_preorders(n: int, leading_rows: Sequence[PointSet] = ()) -> Iterator[List[PointSet]]:
    """
    Every preorder on n points as a list of rows (row[x] = {y : y ≤ x}).

    Rows are assigned one point at a time; a candidate row is kept only if it
    is consistent with the rows already fixed (y in row[x] implies
    row[y] ⊆ row[x], both ways), which is exactly transitivity once all rows
    are fixed.

    Args:
        n: Ground-set size
        leading_rows: Fixed first rows, used to split the stream into
            independent chunks

    Yields:
        Row lists; each list is a fresh object
    """
    check_size(n)
    rows: List[PointSet] = []
    others = [full(n) & ~(1 << x) for x in range(n)]

    def consistent(x: int, row: PointSet) -> bool:
        for y, other in enumerate(rows):
            if (row >> y) & 1 and not is_subset(other, row):
                return False
            if (other >> x) & 1 and not is_subset(row, other):
                return False
        return True

    def extend(x: int) -> Iterator[List[PointSet]]:
        if x == n:
            yield list(rows)
            return
        if x < len(leading_rows):
            candidates = [leading_rows[x]]
        else:
            candidates = [(1 << x) | sub for sub in _submasks_ascending(others[x])]
        for row in candidates:
            if (row >> x) & 1 and consistent(x, row):
                rows.append(row)
                yield from extend(x + 1)
                rows.pop()

    yield from extend(0)


def _submasks_ascending(s: PointSet) -> List[PointSet]:
    return sorted(sub for sub in range(s + 1) if sub & ~s == 0)


def enumerate_topologies(n: int, leading_rows: Sequence[PointSet] = ()) -> Iterator[Topology]:
    """
    Every labeled topology on n points exactly once.

    Streams topologies without materializing them; counts are 1, 1, 4, 29,
    355, 6942 for n = 0..5.
    """
    count = 0
    for rows in enumerate_preorders(n, leading_rows):
        count += 1
        yield Topology.from_min_nbhd(n, rows)
    logger.debug("[ENUM] n=%d: %d topologies", n, count)


def brute_force_topologies(n: int) -> List[Topology]:
    """
    Independent oracle: every family of subsets containing ∅ and X that is
    closed under pairwise union and intersection. Doubly exponential; only
    meant for n ≤ 4.
    """
    X = full(n)
    middle = [s for s in range(1 << n) if s not in (0, X)]
    result = []
    for r in range(len(middle) + 1):
        for combo in itertools.combinations(middle, r):
            family = set(combo) | {0, X}
            if all(a | b in family and a & b in family for a in combo for b in combo):
                result.append(Topology.from_opens(n, family, validate=False))
    return result


def random_preorder(n: int, rng: np.random.Generator, density: float = 0.3) -> List[PointSet]:
    """Random relation closed reflexively and transitively (Warshall on a boolean matrix)."""
    relation = rng.random((n, n)) < density
    np.fill_diagonal(relation, True)
    for k in range(n):
        relation |= np.outer(relation[:, k], relation[k, :])
    # relation[x, y] means y ≤ x
    return [from_points(np.flatnonzero(relation[x]).tolist()) for x in range(n)]


def random_topology(n: int, seed: int) -> Topology:
    """Topology of a seeded random preorder; identical for identical seeds."""
    check_size(n)
    rng = np.random.default_rng(seed)
    return Topology.from_min_nbhd(n, random_preorder(n, rng))


def sampled_topologies(budget: EnumerationBudget) -> Iterator[Topology]:
    for i in range(budget.sample_count):
        yield random_topology(budget.sample_n, budget.rng_seed + i)


def random_ideal(n: int, rng: np.random.Generator, max_generators: int = 3) -> Ideal:
    count = int(rng.integers(0, max_generators + 1))
    gens = [int(rng.integers(0, 1 << n)) for _ in range(count)]
    return Ideal.from_generators(n, gens)


def instance_rng(budget: EnumerationBudget, *keys: int) -> np.random.Generator:
    """Deterministic generator for one instance, derived from the budget seed."""
    return np.random.default_rng([budget.rng_seed, *keys])


def topology_key(topology: Topology) -> int:
    """Stable integer key of a topology, for seeding per-instance generators."""
    key = topology.n
    for u in topology.min_nbhd:
        key = key * (1 << topology.n) + u
    return key

