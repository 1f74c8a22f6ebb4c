"""
Intervals, geodesics, convexity, median closure and gates
"""

from typing import Callable, Hashable, Iterable, List, Sequence, Tuple, TypeVar
import logging

import numpy as np

from src.exceptions import GuardExceededError, InvariantError, MalformedInputError, NotConvexError
from .algebra import MedianAlgebra, PointId, PointSet, array_to_mask, bits, lowest, mask_of, popcount

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)


def interval(M: MedianAlgebra, x: PointId, y: PointId) -> PointSet:
    """I(x, y) = {z : med(x, y, z) = z}."""
    return M.interval_mask(x, y)


def is_geodesic(M: MedianAlgebra, seq: Sequence[PointId]) -> bool:
    """True iff every inner term lies in the interval of any two terms around it."""
    if not seq:
        raise MalformedInputError("a geodesic needs at least one point")
    length = len(seq)
    for m in range(length):
        for n in range(m + 2, length):
            span = M.interval_mask(seq[m], seq[n])
            for k in range(m + 1, n):
                if not (span >> seq[k]) & 1:
                    return False
    return True


def is_convex(M: MedianAlgebra, C: PointSet) -> bool:
    """C is convex iff it contains the interval of any two of its points."""
    members = list(bits(C))
    outside = ~C
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if M.interval_mask(x, y) & outside:
                return False
    return True


def convex_hull(M: MedianAlgebra, S: PointSet) -> PointSet:
    """Smallest convex superset of S, by adding intervals of pairs until nothing changes."""
    current = S
    while True:
        grown = current
        members = list(bits(current))
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                grown |= M.interval_mask(x, y)
        if grown == current:
            return current
        current = grown


def median_closure(seeds: Iterable[T], med: Callable[[T, T, T], T]) -> List[T]:
    """
    Close a collection under a ternary median operation.

    Args:
        seeds: Starting elements (duplicates are ignored)
        med: Median operation on elements

    Returns:
        The closure, seeds first, then new elements in discovery order
    """
    closed: List[T] = list(dict.fromkeys(seeds))
    members = set(closed)
    frontier = list(closed)
    while frontier:
        fresh: List[T] = []
        for p in frontier:
            snapshot = list(closed)
            for i, q in enumerate(snapshot):
                for r in snapshot[i:]:
                    m = med(p, q, r)
                    if m not in members:
                        members.add(m)
                        closed.append(m)
                        fresh.append(m)
        frontier = fresh
    return closed


def subalgebra_closure(M: MedianAlgebra, S: PointSet) -> PointSet:
    if not S:
        raise MalformedInputError("subalgebra closure needs a nonempty seed set")
    return mask_of(median_closure(bits(S), M.med))


def require_convex(M: MedianAlgebra, C: PointSet, what: str = "C") -> None:
    if not C:
        raise MalformedInputError(f"{what} must be nonempty")
    if not is_convex(M, C):
        raise NotConvexError(f"{what} = {M.names(C)} is not convex")


def _gate_unchecked(M: MedianAlgebra, x: PointId, C: PointSet) -> PointId:
    candidates = C
    for z in bits(C):
        candidates &= M.interval_mask(x, z)
        if not candidates:
            break
    if popcount(candidates) != 1:
        raise InvariantError("GateConvexity", (M.labels[x], M.names(C)))
    return lowest(candidates)


def gate(M: MedianAlgebra, x: PointId, C: PointSet) -> PointId:
    """
    The unique y in C with y in I(x, z) for every z in C.

    Raises:
        NotConvexError: if C is not convex
    """
    require_convex(M, C)
    return _gate_unchecked(M, x, C)


def gate_map(M: MedianAlgebra, C: PointSet) -> np.ndarray:
    """Gate-projection of every point to the convex set C, as an index array."""
    require_convex(M, C)
    return np.array([_gate_unchecked(M, x, C) for x in range(M.n)], dtype=np.int64)


def image_mask(projection: np.ndarray, subset: PointSet) -> PointSet:
    return mask_of(int(projection[p]) for p in bits(subset))


def edge_cuts(M: MedianAlgebra) -> List[PointSet]:
    """
    Candidate halfspaces from edges.

    For every ordered pair (a, b) with I(a, b) = {a, b}, the set
    {z : med(a, b, z) = b} is kept when it and its complement are both convex.
    On a median algebra this yields every halfspace exactly once.
    """
    table = M.table
    seen = set()
    cuts: List[PointSet] = []
    for a in range(M.n):
        for b in range(M.n):
            if a == b or M.interval_mask(a, b) != (1 << a) | (1 << b):
                continue
            side = array_to_mask(table[a, b, :] == b)
            if side in seen:
                continue
            seen.add(side)
            complement = M.full & ~side
            if side and complement and is_convex(M, side) and is_convex(M, complement):
                cuts.append(side)
    logger.debug(f"Edge cuts: {len(cuts)} convex bipartition sides")
    return sorted(cuts)


def convex_sets_containing(M: MedianAlgebra, sides: Sequence[PointSet], anchor: PointId, limit: int) -> List[PointSet]:
    """
    Every convex set containing `anchor`, as intersections of the halfspace
    sides containing it (convex sets of a finite median algebra are exactly
    the intersections of halfspaces).
    """
    relevant = [side for side in sides if (side >> anchor) & 1]
    found = {M.full}
    frontier = [M.full]
    while frontier:
        fresh = []
        for current in frontier:
            for side in relevant:
                smaller = current & side
                if smaller != current and smaller not in found:
                    found.add(smaller)
                    fresh.append(smaller)
                    if len(found) > limit:
                        raise GuardExceededError("convex sets", len(found), limit)
        frontier = fresh
    return sorted(found, key=lambda c: (popcount(c), c))
