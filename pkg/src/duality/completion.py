"""
Zero-completion of a finite median algebra.

Points of the completion are computed from the gate-convex, a-directed
subsets for a basepoint a, and each is given its coordinates in the inverse
limit of the intervals of M under gate-projections.
"""

from typing import Dict, List, NamedTuple, Optional, Tuple
import logging

import numpy as np

from config.settings import settings
from src.core.algebra import MedianAlgebra, PointId, PointSet, bits
from src.core.convexity import convex_sets_containing, gate_map, image_mask
from src.exceptions import GuardExceededError, InvariantError
from src.halfspaces.system import HalfspaceSystem, enumerate_halfspaces
from .dual import is_median_morphism

logger = logging.getLogger(__name__)


class ZeroCompletion(NamedTuple):
    algebra: MedianAlgebra
    embedding: Tuple[PointId, ...]
    directed_sets: Tuple[PointSet, ...]


def interval_family(M: MedianAlgebra) -> List[Tuple[PointId, PointId]]:
    """One endpoint pair per distinct interval (singletons included), ordered by interval bitset."""
    representatives: Dict[PointSet, Tuple[PointId, PointId]] = {}
    for x in range(M.n):
        for y in range(x, M.n):
            representatives.setdefault(M.interval_mask(x, y), (x, y))
    return [representatives[mask] for mask in sorted(representatives)]


def interval_coordinates(M: MedianAlgebra, x: PointId) -> Tuple[PointId, ...]:
    """(π_I(x))_I over `interval_family(M)`; the gate onto I(u, v) is m(u, v, ·)."""
    family = interval_family(M)
    return tuple(int(M.table[u, v, x]) for u, v in family)


def _guard_points(M: MedianAlgebra, guard: Optional[int]) -> None:
    guard = settings.MAX_COMPLETION_POINTS if guard is None else guard
    if M.n > guard:
        logger.warning(f"Refusing zero-completion on {M.n} points (guard {guard})")
        raise GuardExceededError("completion points", M.n, guard)


def is_directed(M: MedianAlgebra, a: PointId, C: PointSet) -> bool:
    """Every two members of C lie in a common interval I(a, z) with z ∈ C."""
    members = list(bits(C))
    cones = [M.interval_mask(a, z) for z in members]
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            pair = (1 << x) | (1 << y)
            if not any(not pair & ~cone for cone in cones):
                return False
    return True


def directed_gate_convex_sets(
    M: MedianAlgebra,
    a: PointId,
    H: Optional[HalfspaceSystem] = None,
    guard: Optional[int] = None,
) -> List[PointSet]:
    """
    All gate-convex, a-directed subsets of M. Each is asserted to be an
    interval I(a, b), one per point b.

    Raises:
        GuardExceededError: too many points or convex sets
        InvariantError: if the sets are not in bijection with the points
    """
    _guard_points(M, guard)
    H = H or enumerate_halfspaces(M)
    convex = convex_sets_containing(M, [H.side(h) for h in range(len(H))], a, settings.MAX_CONVEX_SETS)
    directed = []
    for C in convex:
        # raises unless every point has a gate in C
        gate_map(M, C)
        if is_directed(M, a, C):
            directed.append(C)
    logger.debug(f"{len(directed)} of {len(convex)} convex sets are {M.labels[a]}-directed")

    cones = sorted(M.interval_mask(a, b) for b in range(M.n))
    if sorted(directed) != cones or len(set(cones)) != M.n:
        raise InvariantError("RecognisingZeroCompletion", (M.labels[a],))
    return directed


def _far_endpoint(M: MedianAlgebra, near: PointId, image: PointSet) -> PointId:
    """The e with I(near, e) = image."""
    for e in bits(image):
        if M.interval_mask(near, e) == image:
            return e
    raise InvariantError("ProjectionIsInterval", (M.labels[near], M.names(image)))


def inverse_limit_points(M: MedianAlgebra, guard: Optional[int] = None) -> List[Tuple[PointId, ...]]:
    """
    Every compatible family (x_I)_I with x_I ∈ I and π_J(x_I) = x_J for J ⊆ I,
    by backtracking over the maximal intervals. Coordinates of the other
    intervals follow from any maximal interval containing them.

    Raises:
        GuardExceededError: above INVERSE_LIMIT_CROSSCHECK_POINTS points
    """
    guard = settings.INVERSE_LIMIT_CROSSCHECK_POINTS if guard is None else guard
    if M.n > guard:
        raise GuardExceededError("inverse limit points", M.n, guard)
    family = interval_family(M)
    masks = [M.interval_mask(u, v) for u, v in family]
    maximal = [i for i, mask in enumerate(masks) if not any(mask != other and not mask & ~other for other in masks)]
    table = M.table

    def project(f: int, point: PointId) -> PointId:
        u, v = family[f]
        return int(table[u, v, point])

    # intervals below both of two maximal ones, where their choices must agree
    shared = {
        (i, j): [f for f, mask in enumerate(masks) if not mask & ~(masks[i] & masks[j])]
        for i in maximal for j in maximal if i < j
    }

    chosen: Dict[int, PointId] = {}
    results: List[Tuple[PointId, ...]] = []

    def extend(depth: int) -> None:
        if depth == len(maximal):
            owner = [next(i for i in maximal if not masks[f] & ~masks[i]) for f in range(len(masks))]
            results.append(tuple(project(f, chosen[owner[f]]) for f in range(len(masks))))
            return
        current = maximal[depth]
        for point in bits(masks[current]):
            if all(
                project(f, chosen[earlier]) == project(f, point)
                for earlier in maximal[:depth]
                for f in shared[(earlier, current)]
            ):
                chosen[current] = point
                extend(depth + 1)
                del chosen[current]

    extend(0)
    return sorted(results)


def zero_completion(
    M: MedianAlgebra,
    H: Optional[HalfspaceSystem] = None,
    guard: Optional[int] = None,
) -> ZeroCompletion:
    """
    The zero-completion M̄ through the basepoint-0 directed sets, with the
    coordinatewise median of the inverse limit.

    Asserted: M → M̄ is an isomorphism, rank(M̄) = rank(M), each coordinate
    map is the gate-projection onto its interval, and for small inputs the
    points agree with the tuple enumeration of the inverse limit.

    Raises:
        GuardExceededError: too many points or convex sets
        InvariantError: if any of the assertions fails
    """
    _guard_points(M, guard)
    H = H or enumerate_halfspaces(M)
    base = 0
    directed = directed_gate_convex_sets(M, base, H, guard)
    family = interval_family(M)
    table = M.table

    # order the completion's points by the b with C = I(a, b)
    endpoint = {M.interval_mask(base, b): b for b in range(M.n)}
    directed = sorted(directed, key=lambda C: endpoint[C])
    coordinates = np.empty((len(directed), len(family)), dtype=np.int64)
    for k, C in enumerate(directed):
        for f, (u, v) in enumerate(family):
            image = image_mask(table[u, v, :], C)
            coordinates[k, f] = _far_endpoint(M, int(table[u, v, base]), image)

    lookup = {row.tobytes(): k for k, row in enumerate(coordinates)}
    if len(lookup) != len(directed):
        raise InvariantError("CompletionCoordinatesDistinct", ())
    size = len(directed)
    completion_table = np.empty((size, size, size), dtype=np.int64)
    for i in range(size):
        for j in range(size):
            medians = table[coordinates[i][None, :], coordinates[j][None, :], coordinates]
            for k, row in enumerate(np.ascontiguousarray(medians)):
                key = row.tobytes()
                if key not in lookup:
                    raise InvariantError("CompletionMedianClosed", (i, j, k))
                completion_table[i, j, k] = lookup[key]
    labels = [M.labels[endpoint[C]] for C in directed]
    completion = MedianAlgebra(completion_table, labels)

    embedding = tuple(
        lookup[np.asarray(interval_coordinates(M, x), dtype=np.int64).tobytes()] for x in range(M.n)
    )
    if sorted(embedding) != list(range(M.n)) or not is_median_morphism(M, completion, embedding):
        raise InvariantError("ZeroCompletionEqualsM", tuple(M.labels))

    completion_rank = enumerate_halfspaces(completion).rank
    if completion_rank != H.rank:
        raise InvariantError("RankOfCompletion", (H.rank, completion_rank))

    # gate-projection of M̄ onto the image of I(u, v) agrees with the coordinate
    image = np.asarray(embedding, dtype=np.int64)
    ends_u = image[[u for u, _ in family]]
    ends_v = image[[v for _, v in family]]
    projected = completion.table[ends_u[:, None], ends_v[:, None], np.arange(size)[None, :]]
    if not np.array_equal(projected, image[coordinates.T]):
        f, k = (int(i) for i in np.argwhere(projected != image[coordinates.T])[0])
        raise InvariantError("RecognisingGateProjections", (labels[k], M.names(M.interval_mask(*family[f]))))

    if M.n <= settings.INVERSE_LIMIT_CROSSCHECK_POINTS:
        tuples = inverse_limit_points(M)
        if tuples != sorted(tuple(int(c) for c in row) for row in coordinates):
            raise InvariantError("InverseLimitCrossCheck", (len(tuples), size))

    logger.info(f"Zero-completion of {M.n} points has {size} points and rank {completion_rank}")
    return ZeroCompletion(algebra=completion, embedding=embedding, directed_sets=tuple(directed))
