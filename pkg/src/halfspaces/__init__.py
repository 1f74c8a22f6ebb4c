"""
Halfspaces, walls, rank, Dilworth chains and side selections
"""

from .system import Halfspace, Wall, HalfspaceSystem, enumerate_halfspaces, separating, transverse
from .rank import rank, rank_relative
from .chains import dilworth_decompose, max_antichain_size
from .filters import (
    SelectionKind,
    SideSelection,
    classify_selection,
    complete_to_ultrafilter,
    inseparable_closure,
    principal_selection,
)
from .restriction import restrict_to_convex

__all__ = [
    'Halfspace',
    'Wall',
    'HalfspaceSystem',
    'enumerate_halfspaces',
    'separating',
    'transverse',
    'rank',
    'rank_relative',
    'dilworth_decompose',
    'max_antichain_size',
    'SelectionKind',
    'SideSelection',
    'classify_selection',
    'complete_to_ultrafilter',
    'inseparable_closure',
    'principal_selection',
    'restrict_to_convex',
]
