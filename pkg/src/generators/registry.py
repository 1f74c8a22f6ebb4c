from typing import Callable, Dict
import logging

from config.settings import settings
from src.exceptions import MalformedInputError
from src.metric.space import FiniteMedianSpace
from src.schemas import GeneratorSpec
from .families import cycle_metric, grid, hypercube, path, staircase, tree_from_edges, tripod
from .random_instances import random_subalgebra, random_tree

logger = logging.getLogger(__name__)


def _params(spec: GeneratorSpec, *names: str) -> Dict[str, object]:
    unknown = set(spec.params) - set(names)
    if unknown:
        raise MalformedInputError(f"unknown parameters for {spec.family}: {sorted(unknown)}")
    return {name: spec.params[name] for name in names if name in spec.params}


def _seed(spec: GeneratorSpec) -> int:
    return settings.DEFAULT_SEED if spec.seed is None else spec.seed


def _build_random_subalgebra(spec: GeneratorSpec) -> FiniteMedianSpace:
    return random_subalgebra(seed=_seed(spec), **_params(spec, "n", "m", "weights"))


def _build_random_tree(spec: GeneratorSpec) -> FiniteMedianSpace:
    return random_tree(seed=_seed(spec), **_params(spec, "n"))


GENERATORS: Dict[str, Callable[[GeneratorSpec], FiniteMedianSpace]] = {
    "hypercube": lambda spec: hypercube(**_params(spec, "k", "weights")),
    "path": lambda spec: path(**_params(spec, "n", "lengths")),
    "tree": lambda spec: tree_from_edges(**_params(spec, "edges", "nodes")),
    "random_tree": _build_random_tree,
    "grid": lambda spec: grid(**_params(spec, "m", "n", "x_weights", "y_weights")),
    "staircase": lambda spec: staircase(**_params(spec, "k")),
    "random_subalgebra": _build_random_subalgebra,
    "tripod": lambda spec: tripod(),
    "cycle": lambda spec: cycle_metric(**_params(spec, "n")),
}


def generate(spec: GeneratorSpec) -> FiniteMedianSpace:
    """Build the instance a spec describes."""
    logger.debug(f"Generating {spec.instance_id}")
    try:
        return GENERATORS[spec.family](spec)
    except TypeError as e:
        raise MalformedInputError(f"bad parameters for {spec.family}: {e}") from e
