"""
Distance checks on finite median spaces: halfspace growth and pairs of gates
"""

from typing import List, Optional
import logging

from src.core.algebra import PointSet, bits
from src.core.convexity import gate_map, require_convex
from src.halfspaces.system import HalfspaceSystem, enumerate_halfspaces, separating
from src.schemas import Failure, ValidationReport
from .space import FiniteMedianSpace

logger = logging.getLogger(__name__)


def strict_distance_check(X: FiniteMedianSpace, H: Optional[HalfspaceSystem] = None) -> ValidationReport:
    """
    Inside every interval I(x, y): for halfspaces h ⊊ k of the interval
    containing y, the distance from x to h is strictly larger than to k.
    """
    M = X.algebra
    H = H or enumerate_halfspaces(M)
    failures: List[Failure] = []
    for x in range(M.n):
        for y in range(M.n):
            if x == y:
                continue
            span = M.interval_mask(x, y)
            traces = sorted({H.side(h) & span for h in separating(H, 1 << x, 1 << y)})
            reach = {trace: X.distance_to_set(x, trace) for trace in traces}
            for small in traces:
                for large in traces:
                    if small != large and not small & ~large and reach[small] <= reach[large]:
                        failures.append(Failure(
                            axiom="strictly-increasing-distance",
                            witness=[X.labels[x], X.labels[y], M.names(small), M.names(large)],
                        ))
                        return ValidationReport.from_failures(failures)
    return ValidationReport.from_failures(failures)


def pair_of_gates_distance_check(X: FiniteMedianSpace, C1: PointSet, C2: PointSet) -> ValidationReport:
    """(z1, z2) ∈ C1 × C2 is a pair of gates iff d(z1, z2) = d(C1, C2)."""
    M = X.algebra
    require_convex(M, C1, "C1")
    require_convex(M, C2, "C2")
    p1 = gate_map(M, C1)
    p2 = gate_map(M, C2)
    gap = X.set_distance(C1, C2)
    failures: List[Failure] = []
    if not C1 & C2 and gap <= 0:
        failures.append(Failure(axiom="disjoint-positive-distance", witness=[M.names(C1), M.names(C2)]))
    for z1 in bits(C1):
        for z2 in bits(C2):
            is_pair = p2[z1] == z2 and p1[z2] == z1
            if bool(is_pair) != (X.d(z1, z2) == gap):
                failures.append(Failure(axiom="gates-for-pairs-distance", witness=[X.labels[z1], X.labels[z2]]))
                return ValidationReport.from_failures(failures)
    return ValidationReport.from_failures(failures)
