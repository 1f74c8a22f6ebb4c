"""
Median-algebra validation by the halfspace-separation and majority-law oracle
"""

from itertools import permutations
from typing import List
import logging

import numpy as np

from src.schemas import Failure, ValidationReport
from .algebra import MedianAlgebra, mask_to_array
from .convexity import edge_cuts

logger = logging.getLogger(__name__)


def _first(mismatch: np.ndarray):
    """Lexicographically smallest index where `mismatch` is True, or None."""
    hits = np.argwhere(mismatch)
    return tuple(int(i) for i in hits[0]) if len(hits) else None


def validate(M: MedianAlgebra) -> ValidationReport:
    """
    Check that the table is a median algebra.

    The table passes iff (a) it is symmetric and absorbing, (b) its convex
    bipartitions separate every pair of distinct points and (c) for every
    halfspace h and triple, med(x, y, z) lies in h iff at least two of
    x, y, z do. Every failure carries the smallest witness.
    """
    failures: List[Failure] = []
    table = M.table
    n = M.n
    name = M.labels

    if not M.is_well_formed():
        x, y, z = _first((table < 0) | (table >= n))
        failures.append(Failure(axiom="malformed", witness=[name[x], name[y], name[z], int(table[x, y, z])]))
        logger.warning(f"Median table has out-of-range entry at {(x, y, z)}")
        return ValidationReport.from_failures(failures)

    for order in permutations(range(3)):
        if order == (0, 1, 2):
            continue
        witness = _first(table != table.transpose(order))
        if witness is not None:
            failures.append(Failure(axiom="symmetry", witness=[name[i] for i in witness]))
            break

    idx = np.arange(n)
    absorbing = table[idx, idx, :] == idx[:, None]
    witness = _first(~absorbing)
    if witness is not None:
        x, y = witness
        failures.append(Failure(axiom="absorption", witness=[name[x], name[x], name[y]]))

    sides = edge_cuts(M)
    columns = np.array([mask_to_array(side, n) for side in sides], dtype=bool).reshape(len(sides), n)
    signature = [columns[:, p].tobytes() for p in range(n)]
    separation_witness = None
    for x in range(n):
        for y in range(x + 1, n):
            if signature[x] == signature[y]:
                separation_witness = (x, y)
                break
        if separation_witness:
            break
    if separation_witness:
        x, y = separation_witness
        failures.append(Failure(axiom="separation", witness=[name[x], name[y]]))

    # The two sides of a wall give the same condition, so one side per wall suffices.
    seen = set()
    for side, inside in zip(sides, columns):
        complement = M.full & ~side
        if complement in seen:
            continue
        seen.add(side)
        votes = inside[:, None, None].astype(np.int8) + inside[None, :, None] + inside[None, None, :]
        witness = _first(inside[table] != (votes >= 2))
        if witness is not None:
            failures.append(Failure(axiom="majority", witness=[name[i] for i in witness] + [M.names(side)]))
            break

    report = ValidationReport.from_failures(failures)
    logger.info(f"Validated {n}-point algebra with {len(sides)} halfspaces: ok={report.ok}")
    return report
