from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np

from src.exceptions import MalformedInputError

logger = logging.getLogger(__name__)

PointId = int
# Bitset over the points of one algebra: bit i set iff point i is a member.
PointSet = int


def bits(mask: PointSet) -> Iterator[PointId]:
    """Iterate the members of a bitset in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(points: Iterable[PointId]) -> PointSet:
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


def popcount(mask: PointSet) -> int:
    return bin(mask).count("1")


def lowest(mask: PointSet) -> PointId:
    if not mask:
        raise ValueError("empty point set has no lowest member")
    return (mask & -mask).bit_length() - 1


def mask_to_array(mask: PointSet, n: int) -> np.ndarray:
    """Boolean membership vector of length n."""
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=bool)


def array_to_mask(row: np.ndarray) -> PointSet:
    packed = np.packbits(np.asarray(row, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


class MedianAlgebra:
    """
    A finite point set with a total ternary median table.

    The table is stored as a read-only numpy array of shape (n, n, n). The
    constructor only checks the shape; whether the table really is a median
    algebra is the job of `validate`.
    """

    def __init__(self, table: Sequence, labels: Optional[Sequence[str]] = None):
        array = np.array(table, dtype=np.int64)
        if array.ndim != 3 or len(set(array.shape)) != 1:
            raise MalformedInputError(f"median table must have shape (n, n, n), got {array.shape}")
        n = array.shape[0]
        if n == 0:
            raise MalformedInputError("the empty algebra is not supported")
        array.setflags(write=False)
        self._table = array
        self.n = n

        labels = tuple(str(label) for label in labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise MalformedInputError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise MalformedInputError("point labels must be distinct")
        self.labels: Tuple[str, ...] = labels
        self._index = {label: i for i, label in enumerate(labels)}

    def __repr__(self) -> str:
        return f"MedianAlgebra(n={self.n})"

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def full(self) -> PointSet:
        return (1 << self.n) - 1

    def med(self, x: PointId, y: PointId, z: PointId) -> PointId:
        return int(self._table[x, y, z])

    def index(self, label: str) -> PointId:
        try:
            return self._index[label]
        except KeyError:
            raise MalformedInputError(f"unknown point label {label!r}") from None

    def names(self, mask: PointSet) -> List[str]:
        return [self.labels[p] for p in bits(mask)]

    def is_well_formed(self) -> bool:
        """Every table entry names a point."""
        return bool(((self._table >= 0) & (self._table < self.n)).all())

    @cached_property
    def interval_tensor(self) -> np.ndarray:
        """Boolean (n, n, n) array: [x, y, z] is True iff med(x, y, z) = z."""
        tensor = self._table == np.arange(self.n)[None, None, :]
        tensor.setflags(write=False)
        return tensor

    @cached_property
    def _interval_masks(self) -> Tuple[Tuple[PointSet, ...], ...]:
        packed = np.packbits(self.interval_tensor, axis=2, bitorder="little")
        return tuple(
            tuple(int.from_bytes(packed[x, y].tobytes(), "little") for y in range(self.n))
            for x in range(self.n)
        )

    def interval_mask(self, x: PointId, y: PointId) -> PointSet:
        return self._interval_masks[x][y]

    def is_closed(self, subset: PointSet) -> bool:
        """True iff the subset is closed under the median."""
        ids = list(bits(subset))
        if not ids:
            return True
        inside = mask_to_array(subset, self.n)
        return bool(inside[self._table[np.ix_(ids, ids, ids)]].all())

    def restrict(self, subset: PointSet) -> Tuple["MedianAlgebra", Tuple[PointId, ...]]:
        """
        Induced subalgebra on a median-closed subset.

        Returns:
            The subalgebra (points relabeled 0..k-1 in increasing order) and
            the tuple mapping new indices to original ones.
        """
        ids = tuple(bits(subset))
        if not ids:
            raise MalformedInputError("cannot restrict to the empty set")
        position = np.full(self.n, -1, dtype=np.int64)
        position[list(ids)] = np.arange(len(ids))
        sub = position[self._table[np.ix_(ids, ids, ids)]]
        if (sub < 0).any():
            raise MalformedInputError("subset is not closed under the median")
        return MedianAlgebra(sub, [self.labels[i] for i in ids]), ids
