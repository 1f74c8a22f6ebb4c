"""
Seeded random instances and fault injection
"""

from fractions import Fraction
from typing import Optional, Sequence
import logging

import networkx as nx
import numpy as np

from src.core.algebra import MedianAlgebra
from src.core.convexity import median_closure
from src.core.validation import validate
from src.exceptions import InvariantError, MalformedInputError
from src.metric.space import FiniteMedianSpace, as_rational
from .families import tree_from_edges
from .lattice import lattice_space

logger = logging.getLogger(__name__)


def _random_length(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4)))


def random_subalgebra(n: int, m: int, seed: int, weights: Optional[Sequence] = None) -> FiniteMedianSpace:
    """
    Median closure of m distinct random vertices of the weighted n-cube.

    Args:
        n: cube dimension
        m: number of seed vertices, 1 ≤ m ≤ 2^n
        seed: generator seed
        weights: per-coordinate edge lengths; seeded random rationals if omitted

    Returns:
        The closure with the restricted ℓ¹ metric, points labelled by their
        bit strings in increasing order
    """
    if n < 0 or not 1 <= m <= 2 ** n:
        raise MalformedInputError(f"need 1 <= m <= 2^n, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    vertices = [int(v) for v in rng.choice(2 ** n, size=m, replace=False)]
    if weights is None:
        weights = [_random_length(rng) for _ in range(n)]
    weights = [as_rational(w) for w in weights]
    if len(weights) != n or any(w <= 0 for w in weights):
        raise MalformedInputError(f"expected {n} positive weights")

    closure = sorted(median_closure(vertices, lambda a, b, c: (a & b) | (b & c) | (a & c)))
    points = [tuple(weights[j] if (v >> j) & 1 else Fraction(0) for j in range(n)) for v in closure]
    labels = [format(v, f"0{n}b") if n else "o" for v in closure]
    space = lattice_space(points, labels)
    report = validate(space.algebra)
    if not report.ok:
        raise InvariantError("RandomSubalgebraValid", tuple(report.failures[0].witness))
    logger.debug(f"Random subalgebra of Q{n} from {m} seeds has {space.n} points")
    return space


def random_tree(n: int, seed: int) -> FiniteMedianSpace:
    """A uniformly random labelled tree on n nodes (Prüfer code) with random rational lengths."""
    if n < 1:
        raise MalformedInputError(f"a tree needs at least one node, got {n}")
    rng = np.random.default_rng(seed)
    if n == 1:
        return tree_from_edges([], nodes=["0"])
    code = [int(v) for v in rng.integers(0, n, size=n - 2)]
    graph = nx.from_prufer_sequence(code)
    edges = [(str(u), str(v), _random_length(rng)) for u, v in sorted(graph.edges)]
    return tree_from_edges(edges, nodes=[str(i) for i in range(n)])


def corrupt_median_table(X: FiniteMedianSpace, seed: int) -> MedianAlgebra:
    """
    Overwrite one entry m(x, y, z) with x ≠ y by a different point, which
    breaks symmetry. Needs at least two points.
    """
    M = X.algebra
    if M.n < 2:
        raise MalformedInputError("cannot corrupt a one-point algebra")
    rng = np.random.default_rng(seed)
    x, y = (int(v) for v in rng.choice(M.n, size=2, replace=False))
    z = int(rng.integers(0, M.n))
    table = np.array(M.table)
    table[x, y, z] = (table[x, y, z] + 1 + int(rng.integers(0, M.n - 1))) % M.n
    logger.info(f"Corrupted m({M.labels[x]}, {M.labels[y]}, {M.labels[z]})")
    return MedianAlgebra(table, M.labels)
