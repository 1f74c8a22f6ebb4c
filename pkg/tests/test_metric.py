from fractions import Fraction

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.core.algebra import mask_of
from src.exceptions import MalformedInputError
from src.generators import cycle_metric, grid, hypercube, path, random_subalgebra, staircase
from src.halfspaces import enumerate_halfspaces
from src.metric import (
    FiniteMedianSpace,
    WallWeighting,
    l1_embed_interval,
    metric_from_weights,
    pair_of_gates_distance_check,
    strict_distance_check,
    validate_median_metric,
    wall_weights,
)
from src.metric.space import as_rational
from src.metric.weights import halfspace_counting_check


class TestFiniteMedianSpace:
    def test_rationals_only(self):
        assert as_rational("3/4") == Fraction(3, 4)
        with pytest.raises(MalformedInputError):
            as_rational(0.5)
        with pytest.raises(MalformedInputError):
            as_rational("x")

    def test_rejects_ragged_matrix(self):
        with pytest.raises(MalformedInputError):
            FiniteMedianSpace([[0, 1]])

    def test_rejects_algebra_of_wrong_size(self, q2):
        with pytest.raises(MalformedInputError):
            FiniteMedianSpace([[0]], algebra=q2.algebra)

    def test_derives_algebra_of_square(self):
        X = cycle_metric(4)
        assert not X.algebra_given
        assert validate_median_metric(X).ok
        assert X.algebra.med(0, 1, 2) == 1

    def test_five_cycle_is_not_median(self):
        report = validate_median_metric(cycle_metric(5))
        assert not report.ok
        assert report.failures[0].axiom == "unique-median"

    def test_single_point(self):
        assert validate_median_metric(FiniteMedianSpace([[0]])).ok

    def test_triangle_failure(self):
        report = validate_median_metric(FiniteMedianSpace([[0, 1, 5], [1, 0, 1], [5, 1, 0]]))
        assert report.failures[0].axiom == "metric-triangle"

    def test_asymmetric_distance(self):
        report = validate_median_metric(FiniteMedianSpace([[0, 1], [2, 0]]))
        assert report.failures[0].axiom == "metric-symmetry"

    def test_given_algebra_must_agree(self, path3):
        # center 0 in the metric, center 1 in the algebra
        X = FiniteMedianSpace([[0, 1, 1], [1, 0, 2], [1, 2, 0]], algebra=path3.algebra)
        report = validate_median_metric(X)
        assert [f.axiom for f in report.failures] == ["metric-median-agrees"]

    def test_set_distance(self, q3):
        M = q3.algebra
        assert q3.set_distance(1 << M.index("000"), 1 << M.index("111")) == 3
        with pytest.raises(MalformedInputError):
            q3.set_distance(0, 1)


class TestWallWeights:
    def test_metric_from_weights_on_a_path(self, path3):
        X = metric_from_weights(path3.algebra, WallWeighting.of([2, 1]))
        assert X.d(0, 1) == 1
        assert X.d(1, 2) == 2
        assert X.d(0, 2) == 3

    @pytest.mark.parametrize("weights", [[0, 1], [1], ["-1/2", 1]])
    def test_bad_weights(self, path3, weights):
        with pytest.raises(MalformedInputError):
            metric_from_weights(path3.algebra, WallWeighting.of(weights))

    def test_unit_cube(self, q3):
        assert wall_weights(q3).weights == (1, 1, 1)

    def test_recovers_weights(self):
        X = path(3, [1, 2])
        mu = wall_weights(X)
        assert mu.weights == (2, 1)
        assert metric_from_weights(X.algebra, mu).dist == X.dist

    def test_halfspace_counting(self):
        X = grid(3, 3, [1, 2], [3, 4])
        H = enumerate_halfspaces(X.algebra)
        assert halfspace_counting_check(X, H, wall_weights(X, H)).ok

    def test_weighted_grid_diameter(self):
        X = grid(3, 3, [1, 2], [3, 4])
        assert X.d(0, 8) == 10


class TestEmbedding:
    def test_square_diagonal(self, q2):
        M = q2.algebra
        e = l1_embed_interval(q2, M.index("00"), M.index("11"))
        assert e.dimension == 2
        assert set(e.coordinates.values()) == {(0, 0), (1, 0), (0, 1), (1, 1)}
        assert e.coordinates[M.index("00")] == (0, 0)
        assert e.coordinates[M.index("11")] == (1, 1)

    def test_single_point(self, q3):
        e = l1_embed_interval(q3, 2, 2)
        assert e.dimension == 0
        assert e.coordinates == {2: ()}

    def test_path_is_one_dimensional(self):
        X = path(4, [1, "1/2", 3])
        e = l1_embed_interval(X, 0, 3)
        assert e.dimension == 1
        assert e.coordinates[3] == (Fraction(9, 2),)

    def test_weighted_grid(self):
        X = grid(3, 3, [1, 2], [3, 4])
        e = l1_embed_interval(X, 0, 8)
        assert e.dimension == 2
        assert len(e.coordinates) == 9
        assert e.distance(0, 8) == 10


class TestDistanceChecks:
    @pytest.mark.parametrize("space", [path(4, [1, 2, 3]), hypercube(3), grid(3, 3, [1, 2], [3, 4]), staircase(3)])
    def test_strictly_increasing_distance(self, space):
        assert strict_distance_check(space).ok

    def test_opposite_faces(self, q3):
        M = q3.algebra
        low = mask_of(i for i, label in enumerate(M.labels) if label[0] == "0")
        high = M.full & ~low
        assert pair_of_gates_distance_check(q3, low, high).ok
        assert q3.set_distance(low, high) == 1

    def test_overlapping_sets(self, grid33):
        assert pair_of_gates_distance_check(grid33, mask_of([0, 1, 3, 4]), mask_of([4, 5, 7, 8])).ok


@hyp_settings(max_examples=15, deadline=None)
@given(seed=st.integers(min_value=0, max_value=1000), m=st.integers(min_value=2, max_value=6))
def test_intervals_embed_isometrically(seed, m):
    X = random_subalgebra(4, m, seed)
    H = enumerate_halfspaces(X.algebra)
    mu = wall_weights(X, H)
    for y in range(X.n):
        e = l1_embed_interval(X, 0, y, H, mu)
        assert e.dimension <= H.rank
