"""
Statement registry, default corpus and the scorecard runner
"""

from .statements import STATEMENTS, InstanceContext, Statement
from .corpus import build_instance, default_corpus
from .runner import check_instance, demo_staircase, run_suite

__all__ = [
    'STATEMENTS',
    'InstanceContext',
    'Statement',
    'build_instance',
    'default_corpus',
    'check_instance',
    'demo_staircase',
    'run_suite',
]
