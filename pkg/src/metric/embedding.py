from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple
import logging

from src.core.algebra import PointId, bits
from src.exceptions import InvariantError
from src.halfspaces.chains import dilworth_decompose
from src.halfspaces.system import HalfspaceSystem, enumerate_halfspaces
from .space import FiniteMedianSpace
from .weights import WallWeighting, wall_weights

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class L1Embedding:
    """Isometric embedding of I(x, y) into ℓ¹ with one coordinate per chain."""
    base: Tuple[PointId, PointId]
    chains: Tuple[Tuple[int, ...], ...]
    coordinates: Dict[PointId, Tuple[Fraction, ...]]

    @property
    def dimension(self) -> int:
        return len(self.chains)

    def distance(self, u: PointId, v: PointId) -> Fraction:
        return sum((abs(a - b) for a, b in zip(self.coordinates[u], self.coordinates[v])), Fraction(0))


def l1_embed_interval(
    X: FiniteMedianSpace,
    x: PointId,
    y: PointId,
    H: Optional[HalfspaceSystem] = None,
    mu: Optional[WallWeighting] = None,
) -> L1Embedding:
    """
    Embed I(x, y) into ℓ¹ with coordinates f_i(z) = ν(C_i ∩ ℋ(x|z)), where
    C_1..C_r is the Dilworth decomposition of ℋ(x|y).

    Raises:
        InvariantError: if the embedding is not an exact isometry
    """
    M = X.algebra
    H = H or enumerate_halfspaces(M)
    span = list(bits(M.interval_mask(x, y)))
    if x == y:
        return L1Embedding(base=(x, y), chains=(), coordinates={x: ()})
    mu = mu or wall_weights(X, H)
    chains = tuple(dilworth_decompose(H, x, y))

    # every h in a chain contains y and not x, so h ∈ ℋ(x|z) iff z ∈ h
    coordinates = {
        z: tuple(
            sum((mu.nu(h) for h in chain if (H.side(h) >> z) & 1), Fraction(0))
            for chain in chains
        )
        for z in span
    }
    embedding = L1Embedding(base=(x, y), chains=chains, coordinates=coordinates)
    for i, u in enumerate(span):
        for v in span[i + 1:]:
            if embedding.distance(u, v) != X.d(u, v):
                raise InvariantError("IntervalsAreEuclidean", (X.labels[u], X.labels[v]))
    return embedding
