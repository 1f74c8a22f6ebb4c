import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.core.validation import validate
from src.duality import (
    AbstractPocset,
    WallSpace,
    all_ultrafilters,
    directed_gate_convex_sets,
    double_dual,
    interval_coordinates,
    inverse_limit_points,
    is_median_morphism,
    majority_table,
    medianize,
    theorem_A_check,
    wall_pseudometric,
    wall_space_of,
    zero_completion,
)
from src.duality.dual import halfspace_pocset
from src.exceptions import GuardExceededError, InvariantError, MalformedInputError
from src.generators import hypercube, path, random_subalgebra, staircase, tree_from_edges, tripod_wall_space
from src.halfspaces import enumerate_halfspaces


class TestPocsets:
    def test_tripod_has_four_ultrafilters(self):
        W = tripod_wall_space()
        assert len(all_ultrafilters(AbstractPocset.from_sides(W.sides()))) == 4

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_cube_ultrafilters(self, k):
        H = enumerate_halfspaces(hypercube(k).algebra)
        assert len(all_ultrafilters(halfspace_pocset(H))) == 2 ** k

    def test_empty_pocset_has_one_ultrafilter(self):
        family = all_ultrafilters(AbstractPocset([]))
        assert family.masks == (0,)

    def test_wall_guard(self, q3):
        P = halfspace_pocset(enumerate_halfspaces(q3.algebra))
        with pytest.raises(GuardExceededError):
            all_ultrafilters(P, guard=2)

    def test_point_limit_stops_the_search(self):
        P = halfspace_pocset(enumerate_halfspaces(hypercube(4).algebra))
        with pytest.raises(GuardExceededError) as e:
            all_ultrafilters(P, limit=3, what="cube points")
        assert (e.value.what, e.value.size, e.value.guard) == ("cube points", 4, 3)

    def test_dual_point_cap(self, q3, monkeypatch):
        from config.settings import settings

        monkeypatch.setattr(settings, "MAX_DUAL_POINTS", 4)
        with pytest.raises(GuardExceededError) as e:
            double_dual(q3.algebra)
        assert (e.value.what, e.value.size) == ("double dual points", 5)
        with pytest.raises(GuardExceededError) as e:
            medianize(wall_space_of(q3))
        assert (e.value.what, e.value.size) == ("medianization points", 5)

    def test_rejects_odd_element_count(self):
        with pytest.raises(MalformedInputError):
            AbstractPocset([1])

    def test_rejects_element_below_its_involute(self):
        # 0 ≤ 1 = 0*
        with pytest.raises(MalformedInputError):
            AbstractPocset([0b11, 0b10])


class TestMajority:
    def test_closed_family(self):
        table = majority_table([0b00, 0b01])
        assert table.shape == (2, 2, 2)
        assert table[0, 1, 1] == 1

    def test_open_family(self):
        with pytest.raises(InvariantError):
            majority_table([0b001, 0b010, 0b100])

    def test_morphisms(self, q2, path3):
        Q, P = q2.algebra, path3.algebra
        assert is_median_morphism(Q, Q, [0, 1, 2, 3])
        assert is_median_morphism(Q, P, [1, 1, 1, 1])
        assert not is_median_morphism(Q, P, [0, 1, 1, 2])
        assert not is_median_morphism(Q, P, [0, 1, 2])


class TestDoubleDual:
    @pytest.mark.parametrize("space", [hypercube(3), path(4), staircase(2)])
    def test_isomorphism(self, space):
        M = space.algebra
        result = double_dual(M)
        assert result.algebra.n == M.n
        assert sorted(result.embedding) == list(range(M.n))
        assert is_median_morphism(M, result.algebra, result.embedding)
        assert [result.algebra.labels[result.embedding[x]] for x in range(M.n)] == list(M.labels)
        assert validate(result.algebra).ok

    def test_guard(self, q3):
        with pytest.raises(GuardExceededError):
            double_dual(q3.algebra, guard=1)


class TestZeroCompletion:
    def test_directed_sets_on_a_path(self, path3):
        assert directed_gate_convex_sets(path3.algebra, 0) == [0b001, 0b011, 0b111]

    def test_directed_sets_on_a_square(self, q2):
        assert len(directed_gate_convex_sets(q2.algebra, 0)) == 4

    @pytest.mark.parametrize("space", [hypercube(2), path(5), staircase(2)])
    def test_completion_is_the_algebra(self, space):
        M = space.algebra
        result = zero_completion(M)
        assert result.algebra.n == M.n
        assert result.embedding == tuple(range(M.n))
        assert result.algebra.labels == M.labels
        assert len(result.directed_sets) == M.n

    def test_inverse_limit_matches_interval_coordinates(self, q2):
        M = q2.algebra
        assert inverse_limit_points(M) == sorted(interval_coordinates(M, x) for x in range(M.n))

    def test_guards(self, q3):
        with pytest.raises(GuardExceededError):
            zero_completion(q3.algebra, guard=4)
        with pytest.raises(GuardExceededError):
            inverse_limit_points(q3.algebra, guard=4)


class TestMedianization:
    def test_tripod(self):
        result = medianize(tripod_wall_space())
        X = result.space
        assert X.n == 4
        center = (set(range(4)) - set(result.point_map)).pop()
        a, b, c = result.point_map
        assert X.d(a, center) == 1
        assert X.d(a, b) == X.d(b, c) == X.d(a, c) == 2
        assert validate(X.algebra).ok

    def test_tripod_is_a_star(self):
        star = tree_from_edges([("o", "a", 1), ("o", "b", 1), ("o", "c", 1)])
        X = medianize(tripod_wall_space()).space
        for u in "abc":
            for v in "abc":
                assert X.d(X.index(u), X.index(v)) == star.d(star.index(u), star.index(v))

    def test_no_walls_collapses_to_a_point(self):
        result = medianize(WallSpace.of(["p", "q"], [], []))
        assert result.space.n == 1
        assert result.point_map == (0, 0)
        assert result.space.labels == ("p",)

    def test_unseparated_points_share_an_image(self):
        W = WallSpace.of(["p", "q", "r"], [["r"]], ["2"])
        assert wall_pseudometric(W)[0][1] == 0
        result = medianize(W)
        assert result.space.n == 2
        assert result.point_map[0] == result.point_map[1]
        assert result.space.d(result.point_map[0], result.point_map[2]) == 2

    def test_repeated_walls_are_merged(self):
        W = WallSpace.of(["a", "b"], [["a"], ["b"]], [1, 2])
        assert W.walls == (0b10,)
        assert W.weights == (3,)

    @pytest.mark.parametrize(
        "sides, weights",
        [([["a", "b"]], [1]), ([["a"]], [0]), ([["z"]], [1]), ([["a"]], [1, 2])],
    )
    def test_malformed_wall_spaces(self, sides, weights):
        with pytest.raises(MalformedInputError):
            WallSpace.of(["a", "b"], sides, weights)

    def test_wall_space_of_weighted_path(self):
        W = wall_space_of(path(3, ["1", "5"]))
        assert W.walls == (0b100, 0b110)
        assert W.weights == (5, 1)

    @pytest.mark.parametrize("space", [hypercube(3), path(3, ["1", "5"]), staircase(2)])
    def test_round_trip_is_an_isometry(self, space):
        assert theorem_A_check(space).ok


@hyp_settings(max_examples=10, deadline=None)
@given(seed=st.integers(min_value=0, max_value=1000), m=st.integers(min_value=1, max_value=5))
def test_random_subalgebras_are_their_own_medianization(seed, m):
    space = random_subalgebra(4, m, seed)
    assert theorem_A_check(space).ok
    assert double_dual(space.algebra).algebra.n == space.n
