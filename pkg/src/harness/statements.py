"""
Registry of checked statements.

Each statement runs against one instance and returns None when it holds, or
a witness list when it fails. Ids are stable: they key the scorecard.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Tuple
import logging

import numpy as np

from config.settings import settings
from src.core.algebra import MedianAlgebra, PointSet, mask_of
from src.core.convexity import convex_hull
from src.core.gates import gate_projection_check, helly_check, pair_of_gates
from src.core.validation import validate
from src.duality.completion import directed_gate_convex_sets, zero_completion
from src.duality.dual import double_dual
from src.duality.medianization import theorem_A_check
from src.exceptions import InvariantError
from src.halfspaces.chains import dilworth_decompose, max_antichain_size
from src.halfspaces.filters import principal_selection, selection_majority
from src.halfspaces.rank import rank_relative
from src.halfspaces.restriction import restrict_to_convex
from src.halfspaces.system import HalfspaceSystem, enumerate_halfspaces, separating
from src.metric.checks import pair_of_gates_distance_check, strict_distance_check
from src.metric.embedding import l1_embed_interval
from src.metric.space import FiniteMedianSpace, validate_median_metric
from src.metric.weights import WallWeighting, halfspace_counting_check, metric_from_weights, wall_weights
from src.schemas import ValidationReport

logger = logging.getLogger(__name__)

Witness = Optional[List[Any]]


class InstanceContext:
    """One corpus instance with lazily computed shared structure."""

    def __init__(self, instance_id: str, space: FiniteMedianSpace, seed: int = 0):
        self.instance_id = instance_id
        self.space = space
        self.seed = seed

    @property
    def algebra(self) -> MedianAlgebra:
        return self.space.algebra

    @cached_property
    def halfspaces(self) -> HalfspaceSystem:
        return enumerate_halfspaces(self.algebra)

    @cached_property
    def weights(self) -> WallWeighting:
        return wall_weights(self.space, self.halfspaces)

    def _random_convex(self, rng: np.random.Generator) -> PointSet:
        size = int(rng.integers(1, min(3, self.algebra.n) + 1))
        seeds = rng.choice(self.algebra.n, size=size, replace=False)
        return convex_hull(self.algebra, mask_of(int(p) for p in seeds))

    @cached_property
    def convex_pairs(self) -> Tuple[Tuple[PointSet, PointSet], ...]:
        """Seeded random pairs of convex hulls of one to three points."""
        rng = np.random.default_rng(self.seed)
        return tuple(
            (self._random_convex(rng), self._random_convex(rng))
            for _ in range(settings.GATE_PAIR_SAMPLES)
        )


@dataclass(frozen=True)
class Statement:
    id: str
    description: str
    check: Callable[[InstanceContext], Witness]


STATEMENTS: Dict[str, Statement] = {}


def statement(statement_id: str, description: str):
    def register(check: Callable[[InstanceContext], Witness]) -> Callable[[InstanceContext], Witness]:
        STATEMENTS[statement_id] = Statement(statement_id, description, check)
        return check
    return register


def _first_failure(report: ValidationReport) -> Witness:
    if report.ok:
        return None
    failure = report.failures[0]
    return [failure.axiom, *failure.witness]


def _pairs(n: int):
    return ((x, y) for x in range(n) for y in range(n) if x != y)


@statement("Validate", "median algebra axioms and median metric axioms")
def _validate(ctx: InstanceContext) -> Witness:
    if ctx.space.algebra_given:
        failed = _first_failure(validate(ctx.algebra))
        if failed is not None:
            return failed
    return _first_failure(validate_median_metric(ctx.space))


@statement("Helly", "pairwise intersecting convex sets have a common point")
def _helly(ctx: InstanceContext) -> Witness:
    M = ctx.algebra
    pairs = ctx.convex_pairs
    for (a, b), (c, _) in zip(pairs, pairs[1:]):
        if not helly_check(M, [a, b, c]):
            return [M.names(a), M.names(b), M.names(c)]
    return None


@statement("GatesVsInclusions", "gate-projections compose and preserve intervals")
def _gates_vs_inclusions(ctx: InstanceContext) -> Witness:
    for C1, C2 in ctx.convex_pairs:
        failed = _first_failure(gate_projection_check(ctx.algebra, C1, C2))
        if failed is not None:
            return failed
    return None


@statement("GatesForPairs1", "a pair of gates separates exactly like the two convex sets")
def _gates_for_pairs(ctx: InstanceContext) -> Witness:
    for C1, C2 in ctx.convex_pairs:
        pair_of_gates(ctx.algebra, C1, C2, ctx.halfspaces)
    return None


@statement("GatesForPairs2", "pairs of gates are exactly the pairs realising d(C1, C2)")
def _gates_distance(ctx: InstanceContext) -> Witness:
    for C1, C2 in ctx.convex_pairs:
        failed = _first_failure(pair_of_gates_distance_check(ctx.space, C1, C2))
        if failed is not None:
            return failed
    return None


@statement("WallsInConvex", "walls of a convex set are the ambient walls that cut it")
def _walls_in_convex(ctx: InstanceContext) -> Witness:
    for C, _ in ctx.convex_pairs:
        restrict_to_convex(ctx.halfspaces, C)
    return None


@statement("RankWithSubset", "a subset meeting every ℋ(x|y) realises the rank")
def _rank_with_subset(ctx: InstanceContext) -> Witness:
    H = ctx.halfspaces
    rng = np.random.default_rng(ctx.seed)
    one_side = [2 * w + int(rng.integers(0, 2)) for w in range(len(H.walls))]
    rank_relative(H, range(len(H)))
    rank_relative(H, one_side)
    return None


@statement("DilworthForDifferences", "ℋ(x|y) splits into at most rank chains, as many as its widest antichain")
def _dilworth(ctx: InstanceContext) -> Witness:
    H = ctx.halfspaces
    for x, y in _pairs(ctx.algebra.n):
        chains = dilworth_decompose(H, x, y)
        elements = sorted(separating(H, 1 << x, 1 << y))
        if len(elements) <= settings.ANTICHAIN_ORACLE_LIMIT and len(chains) != max_antichain_size(H, elements):
            return [ctx.algebra.labels[x], ctx.algebra.labels[y], len(chains)]
    return None


@statement("IntervalsAreEuclidean", "every interval embeds isometrically in ℓ¹ with at most rank coordinates")
def _intervals_are_euclidean(ctx: InstanceContext) -> Witness:
    H = ctx.halfspaces
    for x, y in _pairs(ctx.algebra.n):
        embedding = l1_embed_interval(ctx.space, x, y, H, ctx.weights)
        if embedding.dimension > H.rank:
            return [ctx.algebra.labels[x], ctx.algebra.labels[y], embedding.dimension]
    return None


@statement("MedianToWalls", "d(x, y) = μ(𝒲(x|y)) and the weights round-trip")
def _median_to_walls(ctx: InstanceContext) -> Witness:
    rebuilt = metric_from_weights(ctx.algebra, ctx.weights, ctx.halfspaces)
    if rebuilt.dist != ctx.space.dist:
        return ["metric"]
    if wall_weights(rebuilt, ctx.halfspaces) != ctx.weights:
        return ["weights"]
    return None


@statement("MedianToHalfspaces", "d(x, y) = ν(ℋ(x|y)) with ν(h) = ν(h*) = μ(w)")
def _median_to_halfspaces(ctx: InstanceContext) -> Witness:
    return _first_failure(halfspace_counting_check(ctx.space, ctx.halfspaces, ctx.weights))


@statement("HalfspaceMajority", "σ of a median is the majority of the three σ's")
def _halfspace_majority(ctx: InstanceContext) -> Witness:
    M, H = ctx.algebra, ctx.halfspaces
    sigma = [principal_selection(H, x) for x in range(M.n)]
    for x in range(M.n):
        for y in range(x, M.n):
            for z in range(y, M.n):
                if sigma[M.med(x, y, z)] != selection_majority(sigma[x], sigma[y], sigma[z]):
                    return [M.labels[x], M.labels[y], M.labels[z]]
    return None


@statement("TheoremA", "X → 𝓜(X) is a surjective isometry")
def _theorem_a(ctx: InstanceContext) -> Witness:
    return _first_failure(theorem_A_check(ctx.space))


@statement("DoubleDual", "the double dual of a finite algebra is the algebra itself")
def _double_dual(ctx: InstanceContext) -> Witness:
    double_dual(ctx.algebra, ctx.halfspaces)
    return None


@statement("ZeroCompletion", "M̄ = M with equal rank")
def _zero_completion(ctx: InstanceContext) -> Witness:
    zero_completion(ctx.algebra, ctx.halfspaces)
    return None


@statement("RecognisingZeroCompletion", "gate-convex a-directed sets are the intervals I(a, b)")
def _recognising_zero_completion(ctx: InstanceContext) -> Witness:
    for a in range(ctx.algebra.n):
        directed_gate_convex_sets(ctx.algebra, a, ctx.halfspaces)
    return None


@statement("StrictlyIncreasingDistance", "nested halfspaces of an interval are at strictly different distances")
def _strictly_increasing(ctx: InstanceContext) -> Witness:
    return _first_failure(strict_distance_check(ctx.space, ctx.halfspaces))


def run_statement(stmt: Statement, ctx: InstanceContext) -> Witness:
    """Run one check; an asserted postcondition that fails becomes a witness."""
    try:
        return stmt.check(ctx)
    except InvariantError as e:
        logger.error(f"{stmt.id} failed on {ctx.instance_id}: {e}")
        return [e.statement, *e.witness]
