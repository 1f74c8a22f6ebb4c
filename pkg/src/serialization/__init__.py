"""
JSON document schema and conversions
"""

from .documents import (
    AlgebraDocument,
    Document,
    MedianSpaceDocument,
    ReportDocument,
    WallSpaceDocument,
    algebra_document,
    canonical,
    emit,
    median_space_document,
    parse,
    report_document,
    to_algebra,
    to_median_space,
    to_wall_space,
    wall_space_document,
)

__all__ = [
    'AlgebraDocument',
    'Document',
    'MedianSpaceDocument',
    'ReportDocument',
    'WallSpaceDocument',
    'algebra_document',
    'canonical',
    'emit',
    'median_space_document',
    'parse',
    'report_document',
    'to_algebra',
    'to_median_space',
    'to_wall_space',
    'wall_space_document',
]
