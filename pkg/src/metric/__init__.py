"""
Finite median metric spaces, wall weights and ℓ¹ embeddings of intervals
"""

from .space import FiniteMedianSpace, Rational, validate_median_metric
from .weights import WallWeighting, metric_from_weights, wall_weights
from .embedding import L1Embedding, l1_embed_interval
from .checks import pair_of_gates_distance_check, strict_distance_check

__all__ = [
    'FiniteMedianSpace',
    'Rational',
    'validate_median_metric',
    'WallWeighting',
    'metric_from_weights',
    'wall_weights',
    'L1Embedding',
    'l1_embed_interval',
    'pair_of_gates_distance_check',
    'strict_distance_check',
]
