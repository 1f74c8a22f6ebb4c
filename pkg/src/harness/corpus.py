"""
The default instance corpus and instance construction
"""

from fractions import Fraction
from typing import List, Optional
import logging

import numpy as np

from src.exceptions import MalformedInputError
from src.generators.random_instances import corrupt_median_table
from src.generators.registry import generate
from src.metric.space import FiniteMedianSpace
from src.schemas import CorpusSpec, GeneratorSpec
from .statements import InstanceContext

logger = logging.getLogger(__name__)

TREE_SIZES = (3, 5, 7, 9, 11, 12, 13, 14, 15, 15)
GRID_SHAPES = ((2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4))
# Random instances of corpus seed s use generator seeds s * SEED_STRIDE + i.
SEED_STRIDE = 100


def _random_weights(k: int, seed: int) -> List[str]:
    rng = np.random.default_rng(seed)
    return [str(Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4)))) for _ in range(k)]


def default_corpus(seed: Optional[int] = None) -> CorpusSpec:
    """
    Hypercubes Q1..Q4 (unit and random weights), paths up to 8 points, ten
    random trees up to 15 nodes, grids up to 4×4, staircases with 1..5
    steps, 25 random subalgebras of Q8 and the tripod.

    Args:
        seed: shifts every random instance and the convex-set sampling of the
            fixed ones; None gives the reference corpus
    """
    if seed is not None and seed < 0:
        raise MalformedInputError(f"corpus seed must be non-negative, got {seed}")
    base = 0 if seed is None else SEED_STRIDE * seed

    def fixed(family: str, **params) -> GeneratorSpec:
        return GeneratorSpec(family=family, params=params, seed=seed)

    specs: List[GeneratorSpec] = []
    for k in range(1, 5):
        specs.append(fixed("hypercube", k=k))
        specs.append(fixed("hypercube", k=k, weights=_random_weights(k, base + k)))
    for n in range(1, 9):
        specs.append(fixed("path", n=n))
    specs.append(fixed("path", n=3, lengths=["1", "5"]))
    for i, n in enumerate(TREE_SIZES):
        specs.append(GeneratorSpec(family="random_tree", params={"n": n}, seed=base + i))
    for m, n in GRID_SHAPES:
        specs.append(fixed("grid", m=m, n=n))
    specs.append(fixed("grid", m=3, n=3, x_weights=["1", "2"], y_weights=["3", "4"]))
    for k in range(1, 6):
        specs.append(fixed("staircase", k=k))
    for i in range(25):
        specs.append(GeneratorSpec(family="random_subalgebra", params={"n": 8, "m": 1 + i % 6}, seed=base + i))
    specs.append(fixed("tripod"))
    return CorpusSpec(name="default", instances=specs)


def build_instance(spec: GeneratorSpec) -> InstanceContext:
    """Generate the instance, corrupting its median table when asked to."""
    space = generate(spec)
    if spec.corrupt_seed is not None:
        space = FiniteMedianSpace(space.dist, algebra=corrupt_median_table(space, spec.corrupt_seed))
    return InstanceContext(spec.instance_id, space, seed=spec.seed or 0)
