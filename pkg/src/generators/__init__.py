"""
Instance generators for the corpus, the CLI and the tests
"""

from .families import (
    cycle_metric,
    grid,
    hypercube,
    path,
    product,
    staircase,
    tree_from_edges,
    tripod,
    tripod_wall_space,
)
from .lattice import lattice_space
from .random_instances import corrupt_median_table, random_subalgebra, random_tree
from .registry import GENERATORS, generate

__all__ = [
    'cycle_metric',
    'grid',
    'hypercube',
    'path',
    'product',
    'staircase',
    'tree_from_edges',
    'tripod',
    'tripod_wall_space',
    'lattice_space',
    'corrupt_median_table',
    'random_subalgebra',
    'random_tree',
    'GENERATORS',
    'generate',
]
