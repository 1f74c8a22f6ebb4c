from typing import Iterable
import logging

import networkx as nx

from src.exceptions import InvariantError, MalformedInputError
from .system import HalfspaceSystem, require_halfspaces

logger = logging.getLogger(__name__)


def rank(H: HalfspaceSystem) -> int:
    """Maximal number of pairwise-transverse walls (0 for a single point)."""
    return H.rank


def rank_relative(H: HalfspaceSystem, K: Iterable[int]) -> int:
    """
    Maximal number of pairwise-transverse halfspaces inside K.

    K must reach every pair of distinct points: for all x ≠ y some member of K
    belongs to a wall separating them. Under that condition the answer equals
    rank(H), which is asserted.

    Raises:
        MalformedInputError: if K misses some pair
        InvariantError: if the relative rank differs from rank(H)
    """
    chosen = sorted(set(K))
    require_halfspaces(H, chosen)
    M = H.algebra
    walls = sorted({H.wall_of(h) for h in chosen})

    reach = [0] * M.n
    for bit, w in enumerate(walls):
        side = H.side(2 * w)
        for x in range(M.n):
            if (side >> x) & 1:
                reach[x] |= 1 << bit
    seen = {}
    for x, signature in enumerate(reach):
        if signature in seen:
            y = seen[signature]
            raise MalformedInputError(
                f"K does not meet the walls separating {M.labels[y]} and {M.labels[x]}"
            )
        seen[signature] = x

    graph = nx.Graph()
    graph.add_nodes_from(chosen)
    for i, h in enumerate(chosen):
        for k in chosen[i + 1:]:
            if H.is_transverse(h, k):
                graph.add_edge(h, k)
    relative = max((len(clique) for clique in nx.find_cliques(graph)), default=0)
    if relative != H.rank:
        logger.error(f"Relative rank {relative} differs from rank {H.rank}")
        raise InvariantError("RankWithSubset", (relative, H.rank))
    return relative
