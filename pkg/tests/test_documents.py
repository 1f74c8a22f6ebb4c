import json

import pytest

from src.core.validation import validate
from src.exceptions import DocumentError
from src.generators import grid, hypercube, staircase, tripod_wall_space
from src.halfspaces import enumerate_halfspaces
from src.metric import validate_median_metric
from src.serialization import (
    AlgebraDocument,
    MedianSpaceDocument,
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
from src.schemas import ValidationReport


def _read(fixtures_dir, name):
    return (fixtures_dir / name).read_text(encoding="utf-8")


class TestFixtures:
    def test_tripod(self, fixtures_dir):
        document = parse(_read(fixtures_dir, "tripod.json"))
        assert isinstance(document, WallSpaceDocument)
        W = to_wall_space(document)
        assert W.n == 3
        assert len(W.walls) == 3

    def test_cube_from_edges(self, fixtures_dir):
        document = parse(_read(fixtures_dir, "q3.json"))
        assert isinstance(document, AlgebraDocument)
        M = to_algebra(document)
        assert M.n == 8
        assert validate(M).ok
        assert enumerate_halfspaces(M).rank == 3

    def test_weighted_path(self, fixtures_dir):
        X = to_median_space(parse(_read(fixtures_dir, "weighted_path.json")))
        assert X.algebra_given
        assert X.d(0, 2) == 3
        assert validate_median_metric(X).ok

    def test_five_cycle_loads_but_is_not_median(self, fixtures_dir):
        document = parse(_read(fixtures_dir, "c5.json"))
        assert isinstance(document, MedianSpaceDocument)
        X = to_median_space(document)
        assert not validate_median_metric(X).ok
        with pytest.raises(DocumentError):
            to_algebra(document)


class TestErrors:
    def test_truncated_json(self):
        with pytest.raises(DocumentError) as excinfo:
            parse('{"kind": "algebra",\n  "points": [')
        assert excinfo.value.path.startswith("line 2")

    def test_missing_field(self):
        with pytest.raises(DocumentError) as excinfo:
            parse('{"kind": "wall_space", "version": "1"}')
        assert "points" in excinfo.value.path

    def test_unknown_kind(self):
        with pytest.raises(DocumentError):
            parse('{"kind": "graph", "points": ["a"]}')

    def test_version_mismatch(self):
        with pytest.raises(DocumentError) as excinfo:
            parse('{"kind": "wall_space", "version": "2", "points": ["a"]}')
        assert excinfo.value.path == "version"

    def test_float_distance(self):
        text = json.dumps({"kind": "median_space", "points": ["a"], "median": "metric", "dist": [[0.5]]})
        with pytest.raises(DocumentError):
            parse(text)

    def test_extra_field(self):
        with pytest.raises(DocumentError):
            parse('{"kind": "wall_space", "points": ["a"], "colour": "red"}')

    def test_table_payload_required(self):
        with pytest.raises(DocumentError):
            parse('{"kind": "algebra", "points": ["a"], "median": "table"}')

    def test_bad_table_shape(self):
        document = parse('{"kind": "algebra", "points": ["a", "b"], "table": [[[0]]]}')
        with pytest.raises(DocumentError):
            to_algebra(document)

    def test_edge_to_unknown_point(self):
        document = parse('{"kind": "algebra", "points": ["a", "b"], "median": "edges", "edges": [["a", "z"]]}')
        with pytest.raises(DocumentError) as excinfo:
            to_algebra(document)
        assert excinfo.value.path == "edges.0"

    def test_one_sided_wall(self):
        document = parse('{"kind": "wall_space", "points": ["a", "b"], "walls": [{"side": ["a", "b"]}]}')
        with pytest.raises(DocumentError):
            to_wall_space(document)


class TestEmit:
    def test_canonical_is_stable(self, fixtures_dir):
        text = canonical(_read(fixtures_dir, "tripod.json"))
        assert canonical(text) == text
        assert text.endswith("}\n")

    def test_median_space_survives(self):
        X = grid(2, 3, ["1/2"], [2, 3])
        Y = to_median_space(parse(emit(median_space_document(X))))
        assert Y.dist == X.dist
        assert Y.labels == X.labels
        assert (Y.algebra.table == X.algebra.table).all()

    def test_metric_only_form(self):
        X = staircase(2)
        document = median_space_document(X, with_table=False)
        assert "table" not in json.loads(emit(document))
        assert (to_algebra(parse(emit(document))).table == X.algebra.table).all()

    def test_algebra_survives(self, q2):
        M = to_algebra(parse(emit(algebra_document(q2.algebra))))
        assert M.labels == q2.algebra.labels

    def test_wall_space_survives(self):
        W = tripod_wall_space()
        assert to_wall_space(parse(emit(wall_space_document(W)))) == W

    def test_report(self):
        document = report_document("validate", ValidationReport())
        assert json.loads(emit(document))["payload"] == {"ok": True, "failures": []}
        assert parse(emit(document)).name == "validate"
