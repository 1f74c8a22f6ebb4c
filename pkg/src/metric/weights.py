from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple
import logging

from src.core.algebra import MedianAlgebra, PointId, bits
from src.core.gates import pair_of_gates
from src.exceptions import InvariantError, MalformedInputError
from src.halfspaces.system import HalfspaceSystem, enumerate_halfspaces
from src.schemas import Failure, ValidationReport
from .space import FiniteMedianSpace, as_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WallWeighting:
    """μ on the walls of one halfspace system, indexed by wall id."""
    weights: Tuple[Fraction, ...]

    @classmethod
    def of(cls, weights: Sequence) -> "WallWeighting":
        return cls(tuple(as_rational(w) for w in weights))

    def mu(self, w: int) -> Fraction:
        return self.weights[w]

    def nu(self, h: int) -> Fraction:
        """ν(h) = ν(h*) = μ of the wall of h."""
        return self.weights[h >> 1]


def _even_halfspaces(count: int) -> int:
    return sum(1 << h for h in range(0, count, 2))


def wall_sum(H: HalfspaceSystem, mu: WallWeighting, x: PointId, y: PointId) -> Fraction:
    """μ(𝒲(x|y))."""
    differing = (H.signatures[x] ^ H.signatures[y]) & _even_halfspaces(len(H))
    return sum((mu.weights[h >> 1] for h in bits(differing)), Fraction(0))


def metric_from_weights(
    M: MedianAlgebra,
    mu: WallWeighting,
    H: Optional[HalfspaceSystem] = None,
) -> FiniteMedianSpace:
    """
    d(x, y) = Σ of μ over the walls separating x and y.

    Raises:
        MalformedInputError: on a missing or nonpositive weight
    """
    H = H or enumerate_halfspaces(M)
    if len(mu.weights) != len(H.walls):
        raise MalformedInputError(f"expected {len(H.walls)} wall weights, got {len(mu.weights)}")
    for w, weight in enumerate(mu.weights):
        if weight <= 0:
            raise MalformedInputError(f"wall {w} has nonpositive weight {weight}")
    dist = [[wall_sum(H, mu, x, y) for y in range(M.n)] for x in range(M.n)]
    return FiniteMedianSpace(dist, algebra=M)


def wall_weights(X: FiniteMedianSpace, H: Optional[HalfspaceSystem] = None) -> WallWeighting:
    """
    Recover μ from the metric: the weight of {h, h*} is the distance between
    a pair of gates for h* and h. The identity d(x, y) = μ(𝒲(x|y)) is then
    asserted for every pair.

    Raises:
        InvariantError: if the reconstruction identity fails
    """
    M = X.algebra
    H = H or enumerate_halfspaces(M)
    weights = []
    for wall in H.walls:
        h, h_star = wall.sides
        x1, x2 = pair_of_gates(M, H.side(h_star), H.side(h), H)
        weights.append(X.d(x1, x2))
    mu = WallWeighting(tuple(weights))

    for x in range(M.n):
        for y in range(x + 1, M.n):
            if wall_sum(H, mu, x, y) != X.d(x, y):
                logger.error(f"Wall weights do not reproduce d({X.labels[x]}, {X.labels[y]})")
                raise InvariantError("MedianToWalls", (X.labels[x], X.labels[y]))
    logger.debug(f"Recovered {len(weights)} wall weights")
    return mu


def halfspace_counting_check(X: FiniteMedianSpace, H: HalfspaceSystem, mu: WallWeighting) -> ValidationReport:
    """d(x, y) = ν(ℋ(x|y)) with ν(h) = ν(h*) = μ(w), for every ordered pair."""
    failures = []
    for x in range(X.n):
        for y in range(X.n):
            between = H.signatures[y] & ~H.signatures[x]
            total = sum((mu.nu(h) for h in bits(between)), Fraction(0))
            if total != X.d(x, y):
                failures.append(Failure(axiom="median-to-halfspaces", witness=[X.labels[x], X.labels[y]]))
                return ValidationReport.from_failures(failures)
    return ValidationReport.from_failures(failures)
