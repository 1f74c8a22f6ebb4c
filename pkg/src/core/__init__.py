"""
Finite median algebras: point sets, intervals, convexity, gates and validation
"""

from .algebra import MedianAlgebra, PointId, PointSet, bits, mask_of, popcount
from .convexity import (
    interval,
    is_geodesic,
    is_convex,
    convex_hull,
    subalgebra_closure,
    gate,
)
from .validation import validate

__all__ = [
    'MedianAlgebra',
    'PointId',
    'PointSet',
    'bits',
    'mask_of',
    'popcount',
    'interval',
    'is_geodesic',
    'is_convex',
    'convex_hull',
    'subalgebra_closure',
    'gate',
    'validate',
]
