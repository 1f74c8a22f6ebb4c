"""
Canonical instance families: hypercubes, trees, paths, products, grids,
the truncated staircase, cycles and the tripod wall space
"""

from fractions import Fraction
from itertools import product as cartesian
from typing import List, Optional, Sequence, Tuple
import logging

import networkx as nx
import numpy as np

from src.core.algebra import MedianAlgebra
from src.core.convexity import median_closure
from src.duality.medianization import WallSpace, medianize
from src.exceptions import InvariantError, MalformedInputError
from src.halfspaces.system import enumerate_halfspaces
from src.metric.space import FiniteMedianSpace, as_rational
from .lattice import Coordinates, coordinate_median, lattice_space

logger = logging.getLogger(__name__)


def _positive(values: Sequence, what: str) -> List[Fraction]:
    result = [as_rational(v) for v in values]
    if any(v <= 0 for v in result):
        raise MalformedInputError(f"{what} must be positive")
    return result


def hypercube(k: int, weights: Optional[Sequence] = None) -> FiniteMedianSpace:
    """
    The k-cube {0, w_1} × … × {0, w_k} with the ℓ¹ metric.

    Args:
        k: dimension, k ≥ 0
        weights: per-coordinate edge lengths (default 1)
    """
    if k < 0:
        raise MalformedInputError(f"hypercube dimension must be nonnegative, got {k}")
    weights = _positive(weights if weights is not None else [1] * k, "hypercube weights")
    if len(weights) != k:
        raise MalformedInputError(f"expected {k} weights, got {len(weights)}")
    corners = list(cartesian((0, 1), repeat=k))
    points = [tuple(w if bit else Fraction(0) for bit, w in zip(corner, weights)) for corner in corners]
    labels = ["".join(str(bit) for bit in corner) or "o" for corner in corners]
    return lattice_space(points, labels)


def tree_from_edges(edges: Sequence[Tuple[str, str, object]], nodes: Sequence[str] = ()) -> FiniteMedianSpace:
    """
    Path metric of a weighted tree; rank 1 is asserted.

    Args:
        edges: (u, v, length) triples with positive rational lengths
        nodes: extra nodes, for the one-point tree

    Raises:
        MalformedInputError: if the graph is empty, has a cycle or is disconnected
    """
    graph = nx.Graph()
    graph.add_nodes_from(str(v) for v in nodes)
    for u, v, length in edges:
        (length,) = _positive([length], f"edge ({u}, {v}) length")
        if graph.has_edge(str(u), str(v)):
            raise MalformedInputError(f"repeated edge ({u}, {v})")
        graph.add_edge(str(u), str(v), length=length)
    if graph.number_of_nodes() == 0:
        raise MalformedInputError("a tree needs at least one node")
    if not nx.is_tree(graph):
        reason = "disconnected" if not nx.is_connected(graph) else "has a cycle"
        raise MalformedInputError(f"edges do not form a tree: graph {reason}")

    order = list(graph.nodes)
    lengths = dict(nx.all_pairs_dijkstra_path_length(graph, weight="length"))
    dist = [[Fraction(lengths[u][v]) for v in order] for u in order]
    space = FiniteMedianSpace(dist, labels=order)
    tree_rank = enumerate_halfspaces(space.algebra).rank
    if tree_rank != min(1, len(order) - 1):
        raise InvariantError("TreeRank", (tree_rank,))
    return space


def path(n: int, lengths: Optional[Sequence] = None) -> FiniteMedianSpace:
    """Points 0..n-1 along a line, consecutive gaps given by `lengths` (default 1)."""
    if n < 1:
        raise MalformedInputError(f"a path needs at least one point, got {n}")
    lengths = _positive(lengths if lengths is not None else [1] * (n - 1), "path lengths")
    if len(lengths) != n - 1:
        raise MalformedInputError(f"expected {n - 1} lengths, got {len(lengths)}")
    edges = [(str(i), str(i + 1), lengths[i]) for i in range(n - 1)]
    return tree_from_edges(edges, nodes=[str(i) for i in range(n)])


def product(X1: FiniteMedianSpace, X2: FiniteMedianSpace) -> FiniteMedianSpace:
    """
    X1 × X2 with the coordinatewise median and the ℓ¹ sum metric; point
    (i, j) has index i * |X2| + j. Rank additivity is asserted.
    """
    n1, n2 = X1.n, X2.n
    first = np.arange(n1 * n2) // n2
    second = np.arange(n1 * n2) % n2
    T1, T2 = X1.algebra.table, X2.algebra.table
    table = (
        T1[first[:, None, None], first[None, :, None], first[None, None, :]] * n2
        + T2[second[:, None, None], second[None, :, None], second[None, None, :]]
    )
    dist = [
        [X1.d(int(i), int(k)) + X2.d(int(j), int(l)) for k, l in zip(first, second)]
        for i, j in zip(first, second)
    ]
    labels = [f"({X1.labels[i]},{X2.labels[j]})" for i, j in zip(first, second)]
    space = FiniteMedianSpace(dist, algebra=MedianAlgebra(table, labels))

    expected = enumerate_halfspaces(X1.algebra).rank + enumerate_halfspaces(X2.algebra).rank
    actual = enumerate_halfspaces(space.algebra).rank
    if actual != expected:
        raise InvariantError("ProductRank", (expected, actual))
    return space


def grid(m: int, n: int, x_weights: Optional[Sequence] = None, y_weights: Optional[Sequence] = None) -> FiniteMedianSpace:
    """path(m) × path(n)."""
    return product(path(m, x_weights), path(n, y_weights))


def staircase_corners(k: int) -> List[Coordinates]:
    """Corners of k stacked unit-height layers [0, s_i] × [-i, -i+1], s_i = 2 - 2^(1-i)."""
    corners: List[Coordinates] = []
    for i in range(1, k + 1):
        width = 2 - Fraction(1, 2 ** (i - 1))
        for x in (Fraction(0), width):
            for y in (Fraction(1 - i), Fraction(-i)):
                corners.append((x, y))
    return corners


def staircase(k: int) -> FiniteMedianSpace:
    """
    Finite truncation of the descending staircase with unit step heights
    and halving widths: the median closure of the layer corners.
    """
    if k < 1:
        raise MalformedInputError(f"a staircase needs at least one step, got {k}")
    closure = median_closure(staircase_corners(k), coordinate_median)
    points = sorted(closure, key=lambda p: (-p[1], p[0]))
    space = lattice_space(points)
    logger.debug(f"Staircase with {k} steps has {space.n} points")
    stair_rank = enumerate_halfspaces(space.algebra).rank
    if stair_rank != 2:
        raise InvariantError("StaircaseRank", (k, stair_rank))
    return space


def cycle_metric(n: int) -> FiniteMedianSpace:
    """Graph metric of the n-cycle; median only for n = 4. The algebra is not derived eagerly."""
    if n < 3:
        raise MalformedInputError(f"a cycle needs at least 3 points, got {n}")
    dist = [[min((i - j) % n, (j - i) % n) for j in range(n)] for i in range(n)]
    return FiniteMedianSpace(dist, labels=[f"c{i}" for i in range(n)])


def tripod_wall_space() -> WallSpace:
    """Three points a, b, c with the unit walls {a|bc}, {b|ac}, {c|ab}."""
    return WallSpace.of(["a", "b", "c"], [["a"], ["b"], ["c"]], [1, 1, 1])


def tripod() -> FiniteMedianSpace:
    return medianize(tripod_wall_space()).space
