"""
Bit-vector point sets.
A point set over a ground set {0, ..., n-1} is a plain int whose bit i is set
iff point i belongs to the set. Every other module passes these ints around.
"""

from typing import Iterable, Iterator, List, Optional, Sequence

# Type alias used across the package for readability
PointSet = int

MAX_POINTS = 16


class PointSetError(ValueError):
    """Raised for points outside the ground set or oversized ground sets."""


def check_size(n: int) -> int:
    """Validate a ground-set size and return it."""
    if n < 0 or n > MAX_POINTS:
        raise PointSetError(f"Ground set size must be in 0..{MAX_POINTS}, got {n}")
    return n


def full(n: int) -> PointSet:
    """The whole ground set X."""
    return (1 << n) - 1


def singleton(x: int) -> PointSet:
    return 1 << x


def complement(n: int, s: PointSet) -> PointSet:
    return full(n) & ~s


def popcount(s: PointSet) -> int:
    return bin(s).count("1")


def contains(s: PointSet, x: int) -> bool:
    return (s >> x) & 1 == 1


def is_subset(a: PointSet, b: PointSet) -> bool:
    """True iff a ⊆ b."""
    return a & ~b == 0


def within(n: int, s: PointSet) -> bool:
    """True iff no bit beyond index n-1 is set."""
    return s >= 0 and s >> n == 0


def check_within(n: int, s: PointSet) -> PointSet:
    if not within(n, s):
        raise PointSetError(f"Set {s:#b} has points outside the ground set of size {n}")
    return s


def points(s: PointSet) -> List[int]:
    """Indices of the members of s, ascending."""
    result = []
    i = 0
    while s:
        if s & 1:
            result.append(i)
        s >>= 1
        i += 1
    return result


def from_points(pts: Iterable[int], n: Optional[int] = None) -> PointSet:
    """
    Build a point set from point indices.

    Args:
        pts: Iterable of 0-based point indices
        n: Optional ground-set size used to reject out-of-range points

    Returns:
        The bit vector with exactly those points set
    """
    s = 0
    for x in pts:
        if x < 0 or (n is not None and x >= n):
            raise PointSetError(f"Point {x} outside ground set of size {n}")
        s |= 1 << x
    return s


def canonical_key(s: PointSet):
    """Sort key: popcount first, then numeric value."""
    return (popcount(s), s)


def canonical_sorted(sets: Iterable[PointSet]) -> List[PointSet]:
    """Deduplicate and sort in canonical order."""
    return sorted(set(sets), key=canonical_key)


def all_subsets(n: int) -> List[PointSet]:
    """All 2^n subsets of the ground set in canonical order."""
    return sorted(range(1 << n), key=canonical_key)


def submasks(s: PointSet) -> Iterator[PointSet]:
    """Every subset of s (s itself first, empty set last)."""
    sub = s
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & s


def intersect_all(n: int, sets: Iterable[PointSet]) -> PointSet:
    """Intersection of a family; the empty family intersects to X."""
    acc = full(n)
    for s in sets:
        acc &= s
    return acc


def union_all(sets: Iterable[PointSet]) -> PointSet:
    acc = 0
    for s in sets:
        acc |= s
    return acc


def format_set(s: PointSet, labels: Optional[Sequence[str]] = None) -> str:
    """Human-readable form, e.g. {a,c} with labels or {0,2} without."""
    names = [labels[x] if labels else str(x) for x in points(s)]
    return "{" + ",".join(names) + "}"
