"""
Versioned JSON documents for algebras, median spaces, wall spaces and reports
"""

from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union
import json
import logging

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator, model_validator

from config.settings import settings
from src.core.algebra import MedianAlgebra, bits
from src.duality.medianization import WallSpace
from src.exceptions import DocumentError, InvariantError, MalformedInputError
from src.metric.space import FiniteMedianSpace, as_rational

logger = logging.getLogger(__name__)


def _rational_text(value: Any) -> str:
    try:
        return str(as_rational(value))
    except MalformedInputError as e:
        raise ValueError(str(e)) from None


class _PointsDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: str = Field(default_factory=lambda: settings.FORMAT_VERSION)
    points: List[str] = Field(min_length=1)

    @field_validator("points")
    @classmethod
    def _distinct(cls, points: List[str]) -> List[str]:
        if len(set(points)) != len(points):
            raise ValueError("point names must be distinct")
        return points


class AlgebraDocument(_PointsDocument):
    """A median algebra given by its full table or by the edges of its median graph"""
    kind: Literal["algebra"] = "algebra"
    median: Literal["table", "edges"] = "table"
    table: Optional[List[List[List[int]]]] = None
    edges: Optional[List[Tuple[str, str]]] = None

    @model_validator(mode="after")
    def _payload_matches_median(self):
        if self.median == "table" and self.table is None:
            raise ValueError("median 'table' needs a table")
        if self.median == "edges" and self.edges is None:
            raise ValueError("median 'edges' needs edges")
        return self


class MedianSpaceDocument(AlgebraDocument):
    """An algebra document plus the exact distance matrix; median 'metric' derives the algebra from it"""
    kind: Literal["median_space"] = "median_space"
    median: Literal["table", "edges", "metric"] = "table"
    dist: List[List[str]]

    @field_validator("dist", mode="before")
    @classmethod
    def _exact(cls, dist: Any) -> Any:
        if not isinstance(dist, list):
            return dist
        return [[_rational_text(v) for v in row] if isinstance(row, list) else row for row in dist]


class WallEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    side: List[str] = Field(min_length=1)
    weight: str = "1"

    @field_validator("weight", mode="before")
    @classmethod
    def _exact(cls, weight: Any) -> str:
        return _rational_text(weight)


class WallSpaceDocument(_PointsDocument):
    """Points with weighted walls, each wall given by one of its sides"""
    kind: Literal["wall_space"] = "wall_space"
    walls: List[WallEntry] = Field(default_factory=list)


class ReportDocument(BaseModel):
    """Any check result, scorecard or query answer"""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["report"] = "report"
    version: str = Field(default_factory=lambda: settings.FORMAT_VERSION)
    name: str
    payload: Dict[str, Any] = Field(default_factory=dict)


Document = Annotated[
    Union[AlgebraDocument, MedianSpaceDocument, WallSpaceDocument, ReportDocument],
    Field(discriminator="kind"),
]
_document_adapter = TypeAdapter(Document)


def parse(text: str) -> Document:
    """
    Parse and validate one document.

    Raises:
        DocumentError: on invalid JSON (with line and column), a schema
            violation (with the field path) or an unsupported version
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, f"line {e.lineno}, column {e.colno}") from None
    try:
        document = _document_adapter.validate_python(raw)
    except ValidationError as e:
        first = e.errors()[0]
        path = ".".join(str(part) for part in first["loc"])
        raise DocumentError(first["msg"], path) from None
    if document.version != settings.FORMAT_VERSION:
        raise DocumentError(f"unsupported format version {document.version!r}", "version")
    return document


def emit(document: BaseModel) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    payload = document.model_dump(mode="json", exclude_none=True)
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def canonical(text: str) -> str:
    return emit(parse(text))


# domain -> document

def algebra_document(M: MedianAlgebra) -> AlgebraDocument:
    return AlgebraDocument(points=list(M.labels), table=M.table.tolist())


def median_space_document(X: FiniteMedianSpace, with_table: bool = True) -> MedianSpaceDocument:
    dist = [[str(v) for v in row] for row in X.dist]
    if not with_table:
        return MedianSpaceDocument(points=list(X.labels), median="metric", dist=dist)
    return MedianSpaceDocument(points=list(X.labels), table=X.algebra.table.tolist(), dist=dist)


def wall_space_document(W: WallSpace) -> WallSpaceDocument:
    return WallSpaceDocument(
        points=list(W.points),
        walls=[
            WallEntry(side=[W.points[p] for p in bits(far)], weight=str(weight))
            for far, weight in zip(W.walls, W.weights)
        ],
    )


def report_document(name: str, payload: Union[BaseModel, Dict[str, Any]]) -> ReportDocument:
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return ReportDocument(name=name, payload=payload)


# document -> domain

def _median_graph_algebra(points: List[str], edges: List[Tuple[str, str]]) -> FiniteMedianSpace:
    graph = nx.Graph()
    graph.add_nodes_from(points)
    for k, (u, v) in enumerate(edges):
        if u not in graph or v not in graph:
            raise DocumentError(f"edge ({u}, {v}) names an unknown point", f"edges.{k}")
        graph.add_edge(u, v)
    if not nx.is_connected(graph):
        raise DocumentError("the edge graph is disconnected", "edges")
    lengths = dict(nx.all_pairs_shortest_path_length(graph))
    dist = [[lengths[u][v] for v in points] for u in points]
    return FiniteMedianSpace(dist, labels=points)


def to_algebra(document: Union[AlgebraDocument, MedianSpaceDocument]) -> MedianAlgebra:
    """
    The algebra of an algebra or median space document.

    Raises:
        DocumentError: on a table of the wrong shape, or edges that do not
            form a median graph
    """
    if document.median == "table":
        try:
            return MedianAlgebra(document.table, document.points)
        except (MalformedInputError, ValueError) as e:
            raise DocumentError(str(e), "table") from None
    if document.median == "metric":
        space = to_median_space(document)
    else:
        space = _median_graph_algebra(document.points, document.edges)
    try:
        return space.algebra
    except InvariantError as e:
        raise DocumentError(f"{document.median} do not give a median algebra (triple {list(e.witness)})", "median") from None


def to_median_space(document: MedianSpaceDocument) -> FiniteMedianSpace:
    """
    The median space of a document. With median 'metric' the algebra is
    derived lazily, so a non-median metric still loads for validation.
    """
    n = len(document.points)
    if len(document.dist) != n or any(len(row) != n for row in document.dist):
        raise DocumentError(f"dist must be a {n}x{n} matrix", "dist")
    dist = [[Fraction(v) for v in row] for row in document.dist]
    if document.median == "metric":
        return FiniteMedianSpace(dist, labels=document.points)
    return FiniteMedianSpace(dist, algebra=to_algebra(document))


def to_wall_space(document: WallSpaceDocument) -> WallSpace:
    try:
        return WallSpace.of(
            document.points,
            [wall.side for wall in document.walls],
            [wall.weight for wall in document.walls],
        )
    except MalformedInputError as e:
        raise DocumentError(str(e), "walls") from None
