from fractions import Fraction
from functools import reduce
from math import lcm, prod
from typing import Optional, Sequence, Tuple

import numpy as np

from src.core.algebra import MedianAlgebra
from src.exceptions import GuardExceededError, InvariantError, MalformedInputError
from src.metric.space import FiniteMedianSpace, as_rational

Coordinates = Tuple[Fraction, ...]


def coordinate_median(a: Coordinates, b: Coordinates, c: Coordinates) -> Coordinates:
    return tuple(sorted(t)[1] for t in zip(a, b, c))


def lattice_space(points: Sequence[Coordinates], labels: Optional[Sequence[str]] = None) -> FiniteMedianSpace:
    """
    A median-closed finite subset of ℝ^d with the ℓ¹ metric.

    Args:
        points: distinct coordinate tuples, closed under coordinatewise median
        labels: display names, defaulting to the coordinates

    Raises:
        InvariantError: if the set is not closed under the median
    """
    points = [tuple(as_rational(c) for c in p) for p in points]
    if not points:
        raise MalformedInputError("a lattice space needs at least one point")
    n, dim = len(points), len(points[0])
    if any(len(p) != dim for p in points):
        raise MalformedInputError("lattice points must share one dimension")

    # per axis, replace each value by its rank; the median commutes with ranking
    ranks = np.zeros((n, dim), dtype=np.int64)
    radices = []
    for axis in range(dim):
        exact = {value: r for r, value in enumerate(sorted({p[axis] for p in points}))}
        ranks[:, axis] = [exact[p[axis]] for p in points]
        radices.append(len(exact))
    if prod(radices) >= 2 ** 62:
        raise GuardExceededError("lattice key space", prod(radices), 2 ** 62)
    place = np.array([prod(radices[:axis]) for axis in range(dim)], dtype=np.int64)
    keys = ranks @ place if dim else np.zeros(n, dtype=np.int64)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    if len(np.unique(keys)) != n:
        raise MalformedInputError("lattice points must be distinct")

    table = np.empty((n, n, n), dtype=np.int64)
    for i in range(n):
        a, b, c = ranks[i][None, None, :], ranks[:, None, :], ranks[None, :, :]
        medians = a + b + c - np.maximum(np.maximum(a, b), c) - np.minimum(np.minimum(a, b), c)
        wanted = medians @ place if dim else np.zeros((n, n), dtype=np.int64)
        slot = np.minimum(np.searchsorted(sorted_keys, wanted), n - 1)
        found = sorted_keys[slot] == wanted
        if not found.all():
            j, k = (int(v) for v in np.argwhere(~found)[0])
            raise InvariantError("MedianClosed", (i, j, k))
        table[i] = order[slot]

    denominator = reduce(lcm, (c.denominator for p in points for c in p), 1)
    scaled = np.array(
        [[c.numerator * (denominator // c.denominator) for c in p] for p in points],
        dtype=object,
    ).reshape(n, dim)
    gaps = np.abs(scaled[:, None, :] - scaled[None, :, :]).sum(axis=2) if dim else np.zeros((n, n), dtype=object)
    dist = [[Fraction(int(v), denominator) for v in row] for row in gaps]
    if labels is None:
        labels = ["(" + ",".join(str(c) for c in p) + ")" for p in points]
    return FiniteMedianSpace(dist, algebra=MedianAlgebra(table, labels))
