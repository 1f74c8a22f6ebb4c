"""
Abstract pocsets and ultrafilter enumeration by backtracking
"""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple
import logging

from config.settings import settings
from src.core.algebra import bits
from src.exceptions import GuardExceededError, MalformedInputError
from src.halfspaces.filters import SelectionKind, SideSelection

logger = logging.getLogger(__name__)


class AbstractPocset:
    """
    A finite pocset whose elements are 0 .. 2w-1, element e having involute
    e ^ 1. Two elements a, b are compatible iff not a ≤ b*.

    Args:
        upper: per element, the bitset of elements f with e ≤ f (e included)
        labels: optional display names per element
    """

    def __init__(self, upper: Sequence[int], labels: Optional[Sequence[str]] = None):
        if len(upper) % 2:
            raise MalformedInputError("a pocset needs an even number of elements")
        self.upper: Tuple[int, ...] = tuple(upper)
        self.labels = tuple(labels) if labels is not None else tuple(str(e) for e in range(len(upper)))
        size = len(self.upper)
        lower = [0] * size
        for e in range(size):
            for f in bits(self.upper[e]):
                lower[f] |= 1 << e
        self.lower: Tuple[int, ...] = tuple(lower)
        self._check_axioms()

    @classmethod
    def from_sides(cls, sides: Sequence[int], labels: Optional[Sequence[str]] = None) -> "AbstractPocset":
        """Pocset of subsets ordered by inclusion; sides[2w] and sides[2w+1] are complementary."""
        upper = [
            sum(1 << f for f, other in enumerate(sides) if not side & ~other)
            for side in sides
        ]
        return cls(upper, labels)

    def __len__(self) -> int:
        return len(self.upper)

    @property
    def wall_count(self) -> int:
        return len(self.upper) // 2

    def leq(self, a: int, b: int) -> bool:
        return bool((self.upper[a] >> b) & 1)

    def compatible(self, a: int, b: int) -> bool:
        return not self.leq(a, b ^ 1)

    def _check_axioms(self) -> None:
        size = len(self.upper)
        for a in range(size):
            if not self.leq(a, a):
                raise MalformedInputError(f"pocset order is not reflexive at {self.labels[a]}")
            if self.leq(a, a ^ 1) or self.leq(a ^ 1, a):
                raise MalformedInputError(f"{self.labels[a]} is comparable with its involute")
            for b in bits(self.upper[a]):
                if b != a and self.leq(b, a):
                    raise MalformedInputError(f"pocset order is not antisymmetric at {self.labels[a]}, {self.labels[b]}")
                if not self.leq(b ^ 1, a ^ 1):
                    raise MalformedInputError(f"involution does not reverse {self.labels[a]} ≤ {self.labels[b]}")
                if (self.upper[a] | self.upper[b]) != self.upper[a]:
                    raise MalformedInputError(f"pocset order is not transitive at {self.labels[a]}")


@dataclass(frozen=True)
class UltrafilterFamily:
    """Ultrafilters on one pocset, in canonical backtracking order."""
    pocset: AbstractPocset
    masks: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.masks)

    @property
    def members(self) -> Tuple[SideSelection, ...]:
        return tuple(SideSelection(frozenset(bits(mask)), SelectionKind.ULTRAFILTER) for mask in self.masks)

    def index(self, mask: int) -> int:
        return self.masks.index(mask)


def _backtrack(P: AbstractPocset) -> Iterator[int]:
    walls = P.wall_count
    # incompatible[c]: elements that cannot sit next to c, i.e. everything ≤ c*
    incompatible = [P.lower[c ^ 1] for c in range(len(P))]
    stack: List[Tuple[int, int, int]] = [(0, 0, 0)]
    while stack:
        wall, chosen, forbidden = stack.pop()
        if wall == walls:
            yield chosen
            continue
        # push the second side first so the canonical side is explored first
        for side in (2 * wall + 1, 2 * wall):
            if not (forbidden >> side) & 1:
                stack.append((wall + 1, chosen | (1 << side), forbidden | incompatible[side]))


def all_ultrafilters(
    P: AbstractPocset,
    guard: Optional[int] = None,
    limit: Optional[int] = None,
    what: str = "ultrafilters",
) -> UltrafilterFamily:
    """
    Every consistent choice of one side per wall.

    Args:
        guard: wall cap, MAX_ULTRAFILTER_WALLS by default
        limit: ultrafilter cap; the search stops as soon as it is crossed
        what: name of the refused quantity in the guard error

    Raises:
        GuardExceededError: if the pocset has more walls than the guard, or
            more ultrafilters than the limit
    """
    guard = settings.MAX_ULTRAFILTER_WALLS if guard is None else guard
    if P.wall_count > guard:
        logger.warning(f"Refusing ultrafilter enumeration on {P.wall_count} walls (guard {guard})")
        raise GuardExceededError("ultrafilter walls", P.wall_count, guard)
    masks = []
    for mask in _backtrack(P):
        masks.append(mask)
        if limit is not None and len(masks) > limit:
            logger.warning(f"Stopped ultrafilter enumeration past {limit} {what}")
            raise GuardExceededError(what, len(masks), limit)
    logger.info(f"Found {len(masks)} ultrafilters on {P.wall_count} walls")
    return UltrafilterFamily(pocset=P, masks=tuple(masks))
