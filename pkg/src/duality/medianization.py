"""
Medianization of finite spaces with measured walls
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple
import logging

from networkx.utils import UnionFind

from config.settings import settings
from src.core.algebra import MedianAlgebra, PointId, PointSet, bits, mask_of
from src.exceptions import InvariantError, MalformedInputError
from src.halfspaces.system import HalfspaceSystem, enumerate_halfspaces
from src.metric.space import FiniteMedianSpace, as_rational
from src.metric.weights import wall_weights
from src.schemas import Failure, ValidationReport
from .dual import majority_table
from .pocset import AbstractPocset, UltrafilterFamily, all_ultrafilters

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WallSpace:
    """
    A finite set with weighted walls. Each wall is stored by its side not
    containing point 0; walls are distinct, sorted and carry positive weights.
    """
    points: Tuple[str, ...]
    walls: Tuple[PointSet, ...]
    weights: Tuple[Fraction, ...]

    @classmethod
    def of(cls, points: Sequence[str], sides: Iterable, weights: Iterable) -> "WallSpace":
        """
        Build a wall space, merging repeated walls by adding their weights.

        Args:
            points: distinct point labels
            sides: one side per wall, as a bitset or an iterable of labels
            weights: positive rationals, one per wall

        Raises:
            MalformedInputError: on a one-sided wall, an unknown label or a
                nonpositive weight
        """
        points = tuple(str(p) for p in points)
        if not points or len(set(points)) != len(points):
            raise MalformedInputError("a wall space needs distinct point labels")
        index = {label: i for i, label in enumerate(points)}
        full = (1 << len(points)) - 1
        merged: Dict[PointSet, Fraction] = {}
        sides, weights = list(sides), [as_rational(w) for w in weights]
        if len(sides) != len(weights):
            raise MalformedInputError(f"{len(sides)} walls but {len(weights)} weights")
        for side, weight in zip(sides, weights):
            if not isinstance(side, int):
                try:
                    side = mask_of(index[str(label)] for label in side)
                except KeyError as e:
                    raise MalformedInputError(f"unknown point {e.args[0]!r} in a wall") from None
            if side <= 0 or side & ~full or side == full:
                raise MalformedInputError("every wall needs two nonempty sides")
            if weight <= 0:
                raise MalformedInputError(f"wall weights must be positive, got {weight}")
            far = side if not side & 1 else full & ~side
            merged[far] = merged.get(far, Fraction(0)) + weight
        walls = tuple(sorted(merged))
        return cls(points=points, walls=walls, weights=tuple(merged[w] for w in walls))

    @property
    def n(self) -> int:
        return len(self.points)

    def sides(self) -> List[PointSet]:
        """Halfspace sides in pocset order: wall w gives 2w (containing point 0) and 2w + 1."""
        full = (1 << self.n) - 1
        ordered: List[PointSet] = []
        for far in self.walls:
            ordered.extend((full & ~far, far))
        return ordered


class Medianization(NamedTuple):
    space: FiniteMedianSpace
    point_map: Tuple[PointId, ...]
    family: UltrafilterFamily


def wall_pseudometric(W: WallSpace) -> List[List[Fraction]]:
    """pdist(x, y) = μ of the walls separating x and y."""
    return [
        [
            sum((weight for far, weight in zip(W.walls, W.weights) if ((far >> x) ^ (far >> y)) & 1), Fraction(0))
            for y in range(W.n)
        ]
        for x in range(W.n)
    ]


def _labels(W: WallSpace, family: UltrafilterFamily, point_map: Sequence[int]) -> List[str]:
    labels = [""] * len(family)
    for x in reversed(range(W.n)):
        labels[point_map[x]] = W.points[x]
    taken = set(W.points)
    for i, label in enumerate(labels):
        if not label:
            fresh = f"u{i}"
            while fresh in taken:
                fresh = "_" + fresh
            labels[i] = fresh
            taken.add(fresh)
    return labels


def medianize(W: WallSpace, guard: Optional[int] = None) -> Medianization:
    """
    The median space of ultrafilters on the walls of W, with the weighted
    symmetric-difference metric, and the map x ↦ σ_x.

    Raises:
        GuardExceededError: too many walls or ultrafilters
        InvariantError: if the quotient by zero distance is not trivial or
            the map does not preserve the wall pseudo-metric
    """
    sides = W.sides()
    pocset = AbstractPocset.from_sides(sides)
    family = all_ultrafilters(pocset, guard, limit=settings.MAX_DUAL_POINTS, what="medianization points")

    even = sum(1 << h for h in range(0, len(sides), 2))

    def distance(a: int, b: int) -> Fraction:
        return sum((W.weights[h >> 1] for h in bits((a ^ b) & even)), Fraction(0))

    masks = family.masks
    dist = [[distance(a, b) for b in masks] for a in masks]

    classes = UnionFind(range(len(masks)))
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if dist[i][j] == 0:
                classes.union(i, j)
    merged = [sorted(group) for group in classes.to_sets() if len(group) > 1]
    if merged:
        raise InvariantError("ZeroDistanceQuotient", tuple(merged[0]))

    principal = [
        mask_of(h for h, side in enumerate(sides) if (side >> x) & 1)
        for x in range(W.n)
    ]
    point_map = tuple(family.index(mask) for mask in principal)
    labels = _labels(W, family, point_map)
    space = FiniteMedianSpace(dist, algebra=MedianAlgebra(majority_table(masks), labels))

    pdist = wall_pseudometric(W)
    for x in range(W.n):
        for y in range(x + 1, W.n):
            if space.d(point_map[x], point_map[y]) != pdist[x][y]:
                raise InvariantError("WallsToMedian", (W.points[x], W.points[y]))
    logger.info(f"Medianized {W.n} points with {len(W.walls)} walls into {len(masks)} points")
    return Medianization(space=space, point_map=point_map, family=family)


def wall_space_of(X: FiniteMedianSpace, H: Optional[HalfspaceSystem] = None) -> WallSpace:
    """The halfspace walls of X weighted by the recovered μ."""
    H = H or enumerate_halfspaces(X.algebra)
    mu = wall_weights(X, H)
    return WallSpace.of(X.labels, [H.side(wall.sides[1]) for wall in H.walls], mu.weights)


def theorem_A_check(X: FiniteMedianSpace, guard: Optional[int] = None) -> ValidationReport:
    """
    X → 𝓜(X) through the measured walls of X is a bijective isometry.

    Raises:
        GuardExceededError: propagated from the medianization
    """
    failures: List[Failure] = []
    try:
        result = medianize(wall_space_of(X), guard)
    except InvariantError as e:
        return ValidationReport.from_failures([Failure(axiom=e.statement, witness=list(e.witness))])

    point_map = result.point_map
    if sorted(point_map) != list(range(result.space.n)):
        extra = sorted(set(range(result.space.n)) - set(point_map))
        failures.append(Failure(axiom="medianization-surjective", witness=[result.space.labels[i] for i in extra]))
    for x in range(X.n):
        for y in range(x + 1, X.n):
            if result.space.d(point_map[x], point_map[y]) != X.d(x, y):
                failures.append(Failure(axiom="medianization-isometry", witness=[X.labels[x], X.labels[y]]))
                return ValidationReport.from_failures(failures)
    return ValidationReport.from_failures(failures)
