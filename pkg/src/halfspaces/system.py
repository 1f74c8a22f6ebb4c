from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging

import networkx as nx

from config.settings import settings
from src.core.algebra import MedianAlgebra, PointId, PointSet, bits, mask_of
from src.core.convexity import edge_cuts, is_convex
from src.exceptions import GuardExceededError, MalformedInputError
from src.schemas import Failure, ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Halfspace:
    """A convex set with convex, nonempty complement."""
    index: int
    side: PointSet
    wall_id: int
    complement_id: int


@dataclass(frozen=True)
class Wall:
    """Unordered pair {h, h*}; `sides[0]` is the side containing point 0."""
    index: int
    sides: Tuple[int, int]


class HalfspaceSystem:
    """
    All halfspaces of a median algebra, indexed so that wall w owns the
    halfspaces 2w (the side containing point 0) and 2w + 1 (its complement).
    Walls are ordered by the bitset of their side not containing point 0.
    """

    def __init__(self, algebra: MedianAlgebra, sides: Iterable[PointSet]):
        self.algebra = algebra
        full = algebra.full
        far_sides = sorted({side if not side & 1 else full & ~side for side in sides})
        ordered: List[PointSet] = []
        for far in far_sides:
            ordered.extend((full & ~far, far))
        self._sides: Tuple[PointSet, ...] = tuple(ordered)
        self.halfspaces: Tuple[Halfspace, ...] = tuple(
            Halfspace(index=h, side=side, wall_id=h >> 1, complement_id=h ^ 1)
            for h, side in enumerate(ordered)
        )
        self.walls: Tuple[Wall, ...] = tuple(Wall(index=w, sides=(2 * w, 2 * w + 1)) for w in range(len(far_sides)))

    def __repr__(self) -> str:
        return f"HalfspaceSystem(points={self.algebra.n}, walls={len(self.walls)})"

    def __len__(self) -> int:
        return len(self._sides)

    def side(self, h: int) -> PointSet:
        return self._sides[h]

    @staticmethod
    def complement(h: int) -> int:
        return h ^ 1

    @staticmethod
    def wall_of(h: int) -> int:
        return h >> 1

    def contains(self, h: int, k: int) -> bool:
        """h ⊆ k."""
        return not self._sides[h] & ~self._sides[k]

    def is_transverse(self, h: int, k: int) -> bool:
        a, b = self._sides[h], self._sides[k]
        full = self.algebra.full
        return bool(a & b and a & (full & ~b) and (full & ~a) & b and (full & ~a) & (full & ~b))

    def side_containing(self, w: int, x: PointId) -> int:
        """The halfspace of wall w that contains x."""
        return 2 * w if (self._sides[2 * w] >> x) & 1 else 2 * w + 1

    @cached_property
    def containment(self) -> FrozenSet[Tuple[int, int]]:
        """Strict containment pairs (h, k) with h ⊊ k."""
        count = len(self._sides)
        return frozenset(
            (h, k) for h in range(count) for k in range(count) if h != k and self.contains(h, k)
        )

    @cached_property
    def transversality(self) -> nx.Graph:
        """Graph on wall indices with an edge between transverse walls."""
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.walls)))
        for w in range(len(self.walls)):
            for v in range(w + 1, len(self.walls)):
                if self.is_transverse(2 * w, 2 * v):
                    graph.add_edge(w, v)
        return graph

    @cached_property
    def rank(self) -> int:
        if not self.walls:
            return 0
        return max(len(clique) for clique in nx.find_cliques(self.transversality))

    @cached_property
    def signatures(self) -> Tuple[int, ...]:
        """Per point, the bitset over halfspace indices of σ_x."""
        return tuple(
            mask_of(h for h, side in enumerate(self._sides) if (side >> x) & 1)
            for x in range(self.algebra.n)
        )

    def sigma(self, x: PointId) -> FrozenSet[int]:
        return frozenset(bits(self.signatures[x]))

    def describe(self, h: int) -> str:
        return "{" + ",".join(self.algebra.names(self._sides[h])) + "}"

    def check_pocset(self) -> ValidationReport:
        """* reverses ⊆, h and h* are incomparable, ⊆ is antisymmetric on indices."""
        failures: List[Failure] = []
        count = len(self._sides)
        for h in range(count):
            if self.contains(h, h ^ 1) or self.contains(h ^ 1, h):
                failures.append(Failure(axiom="pocset-incomparable", witness=[self.describe(h)]))
            for k in range(count):
                if h == k:
                    continue
                if self.contains(h, k) != self.contains(k ^ 1, h ^ 1):
                    failures.append(Failure(axiom="pocset-involution", witness=[self.describe(h), self.describe(k)]))
                if self.contains(h, k) and self.contains(k, h):
                    failures.append(Failure(axiom="pocset-antisymmetry", witness=[self.describe(h), self.describe(k)]))
        return ValidationReport.from_failures(failures)


def enumerate_halfspaces(M: MedianAlgebra) -> HalfspaceSystem:
    """Every halfspace of a validated algebra, via edge cuts."""
    system = HalfspaceSystem(M, edge_cuts(M))
    logger.info(f"Enumerated {len(system)} halfspaces on {len(system.walls)} walls")
    return system


def bipartition_scan(M: MedianAlgebra, limit: Optional[int] = None) -> List[PointSet]:
    """Brute-force oracle: every side of every convex bipartition, over all 2ⁿ subsets."""
    limit = settings.BIPARTITION_ORACLE_LIMIT if limit is None else limit
    if M.n > limit:
        raise GuardExceededError("bipartition scan points", M.n, limit)
    full = M.full
    return [
        side for side in range(1, full)
        if is_convex(M, side) and is_convex(M, full & ~side)
    ]


def separating(H: HalfspaceSystem, A: PointSet, B: PointSet) -> FrozenSet[int]:
    """ℋ(A|B): halfspaces containing B and disjoint from A."""
    return frozenset(
        h for h in range(len(H))
        if not B & ~H.side(h) and not A & H.side(h)
    )


def transverse(H: HalfspaceSystem, h: int, k: int) -> bool:
    return H.is_transverse(h, k)


def separating_walls(H: HalfspaceSystem, x: PointId, y: PointId) -> List[int]:
    """𝒲(x|y) as wall indices."""
    return sorted({H.wall_of(h) for h in separating(H, 1 << x, 1 << y)})


def require_halfspaces(H: HalfspaceSystem, selection: Sequence[int]) -> None:
    for h in selection:
        if not 0 <= h < len(H):
            raise MalformedInputError(f"halfspace index {h} out of range")
