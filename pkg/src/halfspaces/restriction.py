from typing import Dict, Tuple
import logging

from src.core.algebra import PointSet, bits, mask_of
from src.core.convexity import require_convex, gate_map
from src.exceptions import InvariantError
from .system import HalfspaceSystem, enumerate_halfspaces

logger = logging.getLogger(__name__)


def restrict_to_convex(H: HalfspaceSystem, C: PointSet) -> Tuple[HalfspaceSystem, Dict[int, int]]:
    """
    Halfspaces of a convex subset C, matched with the halfspaces of the
    ambient algebra that cut C.

    Returns:
        The halfspace system of the induced subalgebra on C and the bijection
        h ↦ index of h ∩ C, defined on every h with h ∩ C ≠ ∅ ≠ h* ∩ C.
        The inverse is the preimage under the gate-projection to C, and the
        bijection preserves and reflects containment; all of this is asserted.

    Raises:
        NotConvexError: if C is not convex
    """
    M = H.algebra
    require_convex(M, C)
    sub_algebra, ids = M.restrict(C)
    sub = enumerate_halfspaces(sub_algebra)
    position = {original: new for new, original in enumerate(ids)}
    by_side = {sub.side(k): k for k in range(len(sub))}

    bijection: Dict[int, int] = {}
    for h in range(len(H)):
        trace = H.side(h) & C
        if not trace or trace == C:
            continue
        image = mask_of(position[p] for p in bits(trace))
        if image not in by_side:
            raise InvariantError("WallsInConvex", (H.describe(h),))
        bijection[h] = by_side[image]
    if sorted(bijection.values()) != list(range(len(sub))):
        raise InvariantError("WallsInConvex", ("not onto", len(bijection), len(sub)))

    projection = gate_map(M, C)
    for h, k in bijection.items():
        lifted = mask_of(ids[p] for p in bits(sub.side(k)))
        preimage = mask_of(x for x in range(M.n) if (lifted >> int(projection[x])) & 1)
        if preimage != H.side(h):
            raise InvariantError("WallsInConvex", ("preimage", H.describe(h)))

    for h, k in bijection.items():
        for h2, k2 in bijection.items():
            if H.contains(h, h2) != sub.contains(k, k2):
                raise InvariantError("WallsInConvex", ("order", H.describe(h), H.describe(h2)))

    logger.debug(f"Restricted {len(H.walls)} walls to {len(sub.walls)} walls of a {len(ids)}-point convex set")
    return sub, bijection
