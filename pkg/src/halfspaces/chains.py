from itertools import combinations
from typing import List, Optional, Sequence, Tuple
import logging

import networkx as nx
from networkx.algorithms import bipartite

from config.settings import settings
from src.core.algebra import PointId
from src.exceptions import GuardExceededError, InvariantError, MalformedInputError
from .system import HalfspaceSystem, separating

logger = logging.getLogger(__name__)

Chain = Tuple[int, ...]


def _minimum_chain_cover(H: HalfspaceSystem, elements: Sequence[int]) -> List[Chain]:
    """
    Minimum chain cover of a set of halfspaces under ⊆, via Hopcroft–Karp
    matching on the split comparability graph (Dilworth/König).
    """
    graph = nx.Graph()
    left = [("L", h) for h in elements]
    graph.add_nodes_from(left, bipartite=0)
    graph.add_nodes_from((("R", h) for h in elements), bipartite=1)
    for h in elements:
        for k in elements:
            if h != k and H.contains(h, k):
                graph.add_edge(("L", h), ("R", k))

    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    successor = {u[1]: v[1] for u, v in matching.items() if u[0] == "L"}
    has_predecessor = set(successor.values())

    chains: List[Chain] = []
    for start in elements:
        if start in has_predecessor:
            continue
        chain = [start]
        while chain[-1] in successor:
            chain.append(successor[chain[-1]])
        chains.append(tuple(chain))
    return sorted(chains)


def dilworth_decompose(H: HalfspaceSystem, x: PointId, y: PointId) -> List[Chain]:
    """
    Partition σ_y \\ σ_x = ℋ(x|y) into the minimum number of chains.

    Each chain is listed from its smallest halfspace to its largest. The
    chain count equals the largest antichain and is at most rank(H).
    """
    if x == y:
        raise MalformedInputError("dilworth_decompose needs two distinct points")
    elements = sorted(separating(H, 1 << x, 1 << y))
    chains = _minimum_chain_cover(H, elements)
    for chain in chains:
        for smaller, larger in zip(chain, chain[1:]):
            if not H.contains(smaller, larger):
                raise InvariantError("DilworthForDifferences", (smaller, larger))
    if len(chains) > H.rank:
        logger.error(f"{len(chains)} chains exceed rank {H.rank}")
        raise InvariantError("DilworthForDifferences", (len(chains), H.rank))
    logger.debug(f"ℋ({x}|{y}): {len(elements)} halfspaces in {len(chains)} chains")
    return chains


def max_antichain_size(H: HalfspaceSystem, elements: Sequence[int], limit: Optional[int] = None) -> int:
    """Exhaustive oracle: the largest pairwise-incomparable subset."""
    limit = settings.ANTICHAIN_ORACLE_LIMIT if limit is None else limit
    if len(elements) > limit:
        raise GuardExceededError("antichain oracle elements", len(elements), limit)

    def comparable(h: int, k: int) -> bool:
        return H.contains(h, k) or H.contains(k, h)

    for size in range(len(elements), 0, -1):
        for subset in combinations(elements, size):
            if not any(comparable(h, k) for h, k in combinations(subset, 2)):
                return size
    return 0
