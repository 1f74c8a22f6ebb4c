"""
Finite median algebras and median spaces
"""

# Lazy imports so that `import src.core` does not pull in networkx-heavy
# subpackages or the harness.

__version__ = "1.0.0"

_EXPORTS = {
    "MedianAlgebra": "src.core.algebra",
    "validate": "src.core.validation",
    "HalfspaceSystem": "src.halfspaces.system",
    "enumerate_halfspaces": "src.halfspaces.system",
    "FiniteMedianSpace": "src.metric.space",
    "validate_median_metric": "src.metric.space",
    "WallSpace": "src.duality.medianization",
    "medianize": "src.duality.medianization",
    "double_dual": "src.duality.dual",
    "zero_completion": "src.duality.completion",
    "generate": "src.generators.registry",
    "run_suite": "src.harness.runner",
}


def __getattr__(name):
    """Lazy load the public API only when accessed"""
    if name in _EXPORTS:
        from importlib import import_module
        return getattr(import_module(_EXPORTS[name]), name)
    raise AttributeError(f"module '{__name__}' has no attribute '{name}'")


__all__ = list(_EXPORTS)
