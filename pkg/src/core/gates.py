"""
Gate calculus: projection identities, pairs of gates and Helly's theorem
"""

from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

from src.exceptions import InvariantError, NotConvexError
from src.halfspaces.system import HalfspaceSystem, enumerate_halfspaces, separating
from src.schemas import Failure, ValidationReport
from .algebra import MedianAlgebra, PointId, PointSet, lowest
from .convexity import gate, gate_map, image_mask, is_convex, require_convex

logger = logging.getLogger(__name__)


def _intervals_preserved(M: MedianAlgebra, projection: np.ndarray) -> Optional[Tuple[int, int]]:
    """
    First pair (x, y) whose interval is not mapped onto I(π(x), π(y)), if any.

    The image of I(x, y) is {π(med(x, y, z)) : z ∈ M}; it is compared with the
    interval between the projected endpoints for all pairs at once.
    """
    n = M.n
    image = np.zeros((n, n, n), dtype=bool)
    idx = np.arange(n)
    image[idx[:, None, None], idx[None, :, None], projection[M.table]] = True
    expected = M.interval_tensor[projection[:, None], projection[None, :], :]
    mismatch = np.argwhere((image != expected).any(axis=2))
    if len(mismatch):
        return int(mismatch[0][0]), int(mismatch[0][1])
    return None


def gate_projection_check(M: MedianAlgebra, C1: PointSet, C2: PointSet) -> ValidationReport:
    """
    Pointwise check of the gate-projection identities for two convex sets:
    π1∘π2∘π1 = π1∘π2, π2(C1) = C1 ∩ C2 when they meet, and both projections
    map intervals onto intervals.
    """
    require_convex(M, C1, "C1")
    require_convex(M, C2, "C2")
    p1 = gate_map(M, C1)
    p2 = gate_map(M, C2)
    failures: List[Failure] = []
    name = M.labels

    composed = p1[p2]
    twice = p1[p2[p1]]
    bad = np.flatnonzero(twice != composed)
    if len(bad):
        x = int(bad[0])
        failures.append(Failure(axiom="gates-vs-inclusions-composition", witness=[name[x]]))

    if C1 & C2:
        image = image_mask(p2, C1)
        if image != C1 & C2:
            failures.append(Failure(axiom="gates-vs-inclusions-intersection", witness=M.names(image ^ (C1 & C2))))

    for label, projection in (("C1", p1), ("C2", p2)):
        witness = _intervals_preserved(M, projection)
        if witness is not None:
            x, y = witness
            failures.append(Failure(axiom=f"retraction-intervals-{label}", witness=[name[x], name[y]]))

    return ValidationReport.from_failures(failures)


def pair_of_gates(
    M: MedianAlgebra,
    C1: PointSet,
    C2: PointSet,
    H: Optional[HalfspaceSystem] = None,
) -> Tuple[PointId, PointId]:
    """
    A pair of gates (x1, x2) for two convex sets.

    x2 is the gate in C2 of the lowest point of C1 and x1 is the gate of x2
    in C1. ℋ(C1|C2) = ℋ(x1|x2) is asserted.
    """
    require_convex(M, C1, "C1")
    require_convex(M, C2, "C2")
    x2 = gate(M, lowest(C1), C2)
    x1 = gate(M, x2, C1)
    H = H or enumerate_halfspaces(M)
    if separating(H, C1, C2) != separating(H, 1 << x1, 1 << x2):
        raise InvariantError("GatesForPairs1", (M.labels[x1], M.labels[x2]))
    return x1, x2


def helly_check(M: MedianAlgebra, sets: Sequence[PointSet]) -> bool:
    """
    Helly's theorem for a family of convex sets: pairwise intersecting
    implies a common point.

    Raises:
        NotConvexError: if a member is empty or not convex
    """
    for C in sets:
        if not C or not is_convex(M, C):
            raise NotConvexError(f"{M.names(C)} is not a nonempty convex set")
    pairwise = all(a & b for i, a in enumerate(sets) for b in sets[i + 1:])
    if not pairwise:
        return True
    common = M.full
    for C in sets:
        common &= C
    return bool(common)
