"""
Pocsets, ultrafilters, the double dual, the zero-completion and medianization
"""

from .pocset import AbstractPocset, UltrafilterFamily, all_ultrafilters
from .dual import double_dual, is_median_morphism, majority_table
from .completion import directed_gate_convex_sets, interval_coordinates, inverse_limit_points, zero_completion
from .medianization import WallSpace, medianize, theorem_A_check, wall_pseudometric, wall_space_of

__all__ = [
    'AbstractPocset',
    'UltrafilterFamily',
    'all_ultrafilters',
    'double_dual',
    'is_median_morphism',
    'majority_table',
    'directed_gate_convex_sets',
    'interval_coordinates',
    'inverse_limit_points',
    'zero_completion',
    'WallSpace',
    'medianize',
    'theorem_A_check',
    'wall_pseudometric',
    'wall_space_of',
]
