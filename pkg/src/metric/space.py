from fractions import Fraction
from functools import cached_property, reduce
from math import lcm
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

from src.core.algebra import MedianAlgebra, PointId, PointSet, array_to_mask, bits, lowest, popcount
from src.core.validation import validate
from src.exceptions import InvariantError, MalformedInputError
from src.schemas import Failure, ValidationReport

logger = logging.getLogger(__name__)

Rational = Fraction
# Largest scaled distance kept in int64; sums of three must not overflow.
_INT64_SAFE = 2 ** 61


def as_rational(value) -> Fraction:
    """Exact conversion; floats are refused because they are not exact."""
    if isinstance(value, float):
        raise MalformedInputError(f"refusing inexact float {value!r}; use 'p/q' strings or Fractions")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MalformedInputError(f"not a rational number: {value!r}") from e


def scaled_integers(matrix: Sequence[Sequence[Fraction]]) -> Tuple[np.ndarray, int]:
    """
    Scale a rational matrix to integers by the least common denominator.

    Returns:
        The integer array (int64, or object dtype when values could overflow)
        and the common denominator.
    """
    denominator = reduce(lcm, (value.denominator for row in matrix for value in row), 1)
    scaled = [[value.numerator * (denominator // value.denominator) for value in row] for row in matrix]
    largest = max((abs(v) for row in scaled for v in row), default=0)
    dtype = np.int64 if largest < _INT64_SAFE else object
    return np.array(scaled, dtype=dtype).reshape(len(matrix), len(matrix)), denominator


class FiniteMedianSpace:
    """
    A finite metric space with exact rational distances and its median algebra.

    The algebra may be given; otherwise it is derived from the metric on first
    use, by taking for each triple the unique point common to the three
    metric intervals.
    """

    def __init__(
        self,
        dist: Sequence[Sequence],
        algebra: Optional[MedianAlgebra] = None,
        labels: Optional[Sequence[str]] = None,
    ):
        matrix = tuple(tuple(as_rational(value) for value in row) for row in dist)
        n = len(matrix)
        if n == 0:
            raise MalformedInputError("the empty space is not supported")
        if any(len(row) != n for row in matrix):
            raise MalformedInputError("distance matrix must be square")
        if algebra is not None and algebra.n != n:
            raise MalformedInputError(f"algebra has {algebra.n} points but the matrix has {n}")
        self.dist: Tuple[Tuple[Fraction, ...], ...] = matrix
        self.n = n
        if labels is None:
            labels = algebra.labels if algebra is not None else tuple(str(i) for i in range(n))
        self.labels: Tuple[str, ...] = tuple(str(label) for label in labels)
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise MalformedInputError("labels must be distinct, one per point")
        self._given_algebra = algebra

    def __repr__(self) -> str:
        return f"FiniteMedianSpace(n={self.n})"

    def d(self, x: PointId, y: PointId) -> Fraction:
        return self.dist[x][y]

    @cached_property
    def _scaled(self) -> Tuple[np.ndarray, int]:
        return scaled_integers(self.dist)

    @cached_property
    def metric_intervals(self) -> Tuple[Tuple[PointSet, ...], ...]:
        """Per pair, the bitset {z : d(x, z) + d(z, y) = d(x, y)}."""
        D, _ = self._scaled
        return tuple(
            tuple(array_to_mask(D[x, :] + D[:, y] == D[x, y]) for y in range(self.n))
            for x in range(self.n)
        )

    def metric_median(self, x: PointId, y: PointId, z: PointId) -> PointSet:
        """The triple intersection of metric intervals (a single point in a median space)."""
        I = self.metric_intervals
        return I[x][y] & I[y][z] & I[z][x]

    @property
    def algebra_given(self) -> bool:
        return self._given_algebra is not None

    @cached_property
    def algebra(self) -> MedianAlgebra:
        if self._given_algebra is not None:
            return self._given_algebra
        return MedianAlgebra(median_table_from_metric(self), self.labels)

    def distance_to_set(self, x: PointId, A: PointSet) -> Fraction:
        if not A:
            raise MalformedInputError("distance to the empty set is undefined")
        return min(self.dist[x][a] for a in bits(A))

    def set_distance(self, A: PointSet, B: PointSet) -> Fraction:
        if not A or not B:
            raise MalformedInputError("distance between empty sets is undefined")
        return min(self.dist[a][b] for a in bits(A) for b in bits(B))

    def index(self, label: str) -> PointId:
        try:
            return self.labels.index(label)
        except ValueError:
            raise MalformedInputError(f"unknown point label {label!r}") from None


def median_table_from_metric(X: FiniteMedianSpace) -> np.ndarray:
    """
    Median table of a median metric.

    Raises:
        InvariantError: on the first triple whose metric intervals do not meet
            in exactly one point
    """
    n = X.n
    table = np.empty((n, n, n), dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            for z in range(y, n):
                common = X.metric_median(x, y, z)
                if popcount(common) != 1:
                    raise InvariantError("UniqueMedian", (X.labels[x], X.labels[y], X.labels[z]))
                m = lowest(common)
                for a, b, c in ((x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)):
                    table[a, b, c] = m
    return table


def validate_median_metric(X: FiniteMedianSpace) -> ValidationReport:
    """
    Metric axioms plus the unique-median condition; the derived median table
    is then cross-validated with the algebra oracle, and a given algebra must
    agree with the metric (same medians, same intervals).
    """
    failures: List[Failure] = []
    name = X.labels
    n = X.n
    D, _ = X._scaled

    def first(mask: np.ndarray):
        hits = np.argwhere(mask)
        return [name[int(i)] for i in hits[0]] if len(hits) else None

    checks = [
        ("metric-zero-diagonal", np.diag(D) != 0),
        ("metric-symmetry", D != D.T),
        ("metric-positivity", (D <= 0) & ~np.eye(n, dtype=bool)),
    ]
    for axiom, mismatch in checks:
        witness = first(np.asarray(mismatch, dtype=bool))
        if witness is not None:
            failures.append(Failure(axiom=axiom, witness=witness))
    if failures:
        return ValidationReport.from_failures(failures)

    triangle = D[:, None, :] > D[:, :, None] + D[None, :, :]
    witness = first(np.asarray(triangle, dtype=bool))
    if witness is not None:
        # D[x, z] > D[x, y] + D[y, z]
        x, y, z = witness
        failures.append(Failure(axiom="metric-triangle", witness=[x, y, z]))
        return ValidationReport.from_failures(failures)

    try:
        derived = MedianAlgebra(median_table_from_metric(X), name)
    except InvariantError as e:
        failures.append(Failure(axiom="unique-median", witness=list(e.witness)))
        logger.info(f"Metric is not median: {e.witness}")
        return ValidationReport.from_failures(failures)

    report = validate(derived)
    failures.extend(report.failures)

    if X.algebra_given:
        given = X.algebra
        mismatch = np.argwhere(given.table != derived.table)
        if len(mismatch):
            failures.append(Failure(axiom="metric-median-agrees", witness=[name[int(i)] for i in mismatch[0]]))
        else:
            for x in range(n):
                for y in range(n):
                    if given.interval_mask(x, y) != X.metric_intervals[x][y]:
                        failures.append(Failure(axiom="metric-intervals-agree", witness=[name[x], name[y]]))
                        break
                else:
                    continue
                break
    return ValidationReport.from_failures(failures)
