"""
Side selections: partial filters, filters and ultrafilters on the halfspace pocset
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, Optional
import logging

from src.core.algebra import PointId, PointSet, lowest, popcount
from src.exceptions import InconsistentSelectionError, InvariantError
from .system import HalfspaceSystem, require_halfspaces

logger = logging.getLogger(__name__)


class SelectionKind(str, Enum):
    INCONSISTENT = "inconsistent"
    PARTIAL_FILTER = "partial_filter"
    FILTER = "filter"
    ULTRAFILTER = "ultrafilter"


@dataclass(frozen=True)
class SideSelection:
    """A set of halfspace indices; `kind` caches a known classification."""
    halfspaces: FrozenSet[int]
    kind: Optional[SelectionKind] = field(default=None, compare=False)

    @classmethod
    def of(cls, halfspaces: Iterable[int], kind: Optional[SelectionKind] = None) -> "SideSelection":
        return cls(frozenset(halfspaces), kind)

    def __len__(self) -> int:
        return len(self.halfspaces)

    def __contains__(self, h: int) -> bool:
        return h in self.halfspaces

    def sorted(self):
        return sorted(self.halfspaces)


def principal_selection(H: HalfspaceSystem, x: PointId) -> SideSelection:
    """σ_x, the halfspaces containing x."""
    return SideSelection(H.sigma(x), SelectionKind.ULTRAFILTER)


def convex_selection(H: HalfspaceSystem, C: PointSet) -> SideSelection:
    """σ_C, the halfspaces containing C."""
    return SideSelection.of(h for h in range(len(H)) if not C & ~H.side(h))


def selection_majority(a: SideSelection, b: SideSelection, c: SideSelection) -> SideSelection:
    """Halfspaces chosen by at least two of the three selections."""
    first, second, third = a.halfspaces, b.halfspaces, c.halfspaces
    return SideSelection((first & second) | (second & third) | (first & third))


def inseparable_closure(H: HalfspaceSystem, S: Iterable[int]) -> FrozenSet[int]:
    """S together with every j such that h ⊆ j ⊆ k for some h, k in S."""
    chosen = sorted(set(S))
    require_halfspaces(H, chosen)
    closure = set(chosen)
    for j in range(len(H)):
        if j in closure:
            continue
        below = any(H.contains(h, j) for h in chosen)
        if below and any(H.contains(j, k) for k in chosen):
            closure.add(j)
    return frozenset(closure)


def _is_consistent(H: HalfspaceSystem, chosen) -> bool:
    members = sorted(chosen)
    for i, h in enumerate(members):
        if h ^ 1 in chosen:
            return False
        for k in members[i + 1:]:
            if not H.side(h) & H.side(k):
                return False
    return True


def classify_selection(H: HalfspaceSystem, S: SideSelection) -> SelectionKind:
    chosen = S.halfspaces
    require_halfspaces(H, chosen)
    if not _is_consistent(H, chosen):
        return SelectionKind.INCONSISTENT
    if len({H.wall_of(h) for h in chosen}) == len(H.walls):
        return SelectionKind.ULTRAFILTER
    for h in chosen:
        for k in range(len(H)):
            if k not in chosen and H.contains(h, k):
                return SelectionKind.PARTIAL_FILTER
    return SelectionKind.FILTER


def complete_to_ultrafilter(H: HalfspaceSystem, S: SideSelection) -> SideSelection:
    """
    Extend a partial filter to an ultrafilter.

    Walls are visited in index order; an undecided wall gets its side
    containing point 0 when that side meets everything chosen so far,
    and the other side otherwise (which then always meets everything).

    Raises:
        InconsistentSelectionError: if S is not a partial filter
    """
    if classify_selection(H, S) is SelectionKind.INCONSISTENT:
        raise InconsistentSelectionError(f"selection {S.sorted()} is not a partial filter")
    chosen = set(S.halfspaces)
    decided = {H.wall_of(h) for h in chosen}
    for wall in H.walls:
        if wall.index in decided:
            continue
        preferred, other = wall.sides
        if all(H.side(preferred) & H.side(k) for k in chosen):
            chosen.add(preferred)
        else:
            chosen.add(other)
    result = SideSelection(frozenset(chosen), SelectionKind.ULTRAFILTER)
    if not _is_consistent(H, result.halfspaces):
        raise InvariantError("UltrafilterCompletion", tuple(result.sorted()))
    return result


def point_of_ultrafilter(H: HalfspaceSystem, S: SideSelection) -> PointId:
    """The unique point lying in every chosen halfspace (Helly, finite case)."""
    common: PointSet = H.algebra.full
    for h in S.halfspaces:
        common &= H.side(h)
    if popcount(common) != 1:
        raise InvariantError("PrincipalUltrafilter", tuple(H.algebra.names(common)))
    return lowest(common)
