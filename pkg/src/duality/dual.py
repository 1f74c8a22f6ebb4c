"""
Double dual of a finite median algebra: ultrafilters on its halfspace
pocset with the selection-majority median
"""

from typing import NamedTuple, Optional, Sequence, Tuple
import logging

import numpy as np

from config.settings import settings
from src.core.algebra import MedianAlgebra, PointId
from src.exceptions import GuardExceededError, InvariantError
from src.halfspaces.system import HalfspaceSystem, enumerate_halfspaces
from .pocset import AbstractPocset, UltrafilterFamily, all_ultrafilters

logger = logging.getLogger(__name__)


class DoubleDual(NamedTuple):
    algebra: MedianAlgebra
    embedding: Tuple[PointId, ...]
    family: UltrafilterFamily


def majority_table(masks: Sequence[int]) -> np.ndarray:
    """
    Median table of a family of selections closed under majority.

    Args:
        masks: selections as bitmasks over at most 64 pocset elements

    Returns:
        (k, k, k) table whose entry is the index of maj(a, b, c)

    Raises:
        InvariantError: if the family is not closed under majority
    """
    if any(mask >> 64 for mask in masks):
        raise GuardExceededError("selection width in bits", max(m.bit_length() for m in masks), 64)
    values = np.array(masks, dtype=np.uint64)
    order = np.argsort(values, kind="stable")
    ordered = values[order]
    size = len(values)
    table = np.empty((size, size, size), dtype=np.int64)
    for i in range(size):
        a = values[i]
        b = values[:, None]
        c = values[None, :]
        majority = (a & b) | (b & c) | (a & c)
        slot = np.minimum(np.searchsorted(ordered, majority), size - 1)
        found = ordered[slot] == majority
        if not found.all():
            j, k = (int(v) for v in np.argwhere(~found)[0])
            raise InvariantError("MajorityClosed", (i, j, k))
        table[i] = order[slot]
    return table


def is_median_morphism(M: MedianAlgebra, N: MedianAlgebra, f: Sequence[PointId]) -> bool:
    """f(m(x, y, z)) = m(f(x), f(y), f(z)) for every triple."""
    image = np.asarray(f, dtype=np.int64)
    if image.shape != (M.n,) or image.min(initial=0) < 0 or image.max(initial=0) >= N.n:
        return False
    lhs = image[M.table]
    rhs = N.table[image[:, None, None], image[None, :, None], image[None, None, :]]
    return bool(np.array_equal(lhs, rhs))


def halfspace_pocset(H: HalfspaceSystem) -> AbstractPocset:
    return AbstractPocset.from_sides(
        [H.side(h) for h in range(len(H))],
        labels=[H.describe(h) for h in range(len(H))],
    )


def double_dual(M: MedianAlgebra, H: Optional[HalfspaceSystem] = None, guard: Optional[int] = None) -> DoubleDual:
    """
    All ultrafilters on ℋ(M) with the majority median, and the embedding
    x ↦ σ_x. For a finite algebra the embedding is asserted to be an
    isomorphism.

    Raises:
        GuardExceededError: too many walls or ultrafilters
        InvariantError: if the embedding is not a bijective median morphism
    """
    H = H or enumerate_halfspaces(M)
    family = all_ultrafilters(halfspace_pocset(H), guard, limit=settings.MAX_DUAL_POINTS, what="double dual points")

    principal = {mask: x for x, mask in enumerate(H.signatures)}
    labels = [
        M.labels[principal[mask]] if mask in principal else f"u{i}"
        for i, mask in enumerate(family.masks)
    ]
    missing = [labels[i] for i, mask in enumerate(family.masks) if mask not in principal]
    if missing or len(family) != M.n:
        logger.error(f"Non-principal ultrafilters on a finite algebra: {missing}")
        raise InvariantError("DoubleDualIsomorphism", tuple(missing))

    dual = MedianAlgebra(majority_table(family.masks), labels)
    embedding = tuple(family.index(mask) for mask in H.signatures)
    inverse = [0] * M.n
    for x, u in enumerate(embedding):
        inverse[u] = x
    if not is_median_morphism(M, dual, embedding) or not is_median_morphism(dual, M, inverse):
        raise InvariantError("DoubleDualMorphism", ())
    logger.info(f"Double dual has {dual.n} points")
    return DoubleDual(algebra=dual, embedding=embedding, family=family)
