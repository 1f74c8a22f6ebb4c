import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.core.algebra import MedianAlgebra, bits, mask_of, popcount
from src.core.convexity import (
    convex_hull,
    edge_cuts,
    gate,
    gate_map,
    interval,
    is_convex,
    is_geodesic,
    subalgebra_closure,
)
from src.core.gates import gate_projection_check, helly_check, pair_of_gates
from src.core.validation import validate
from src.exceptions import MalformedInputError, NotConvexError
from src.generators import corrupt_median_table, hypercube, path, random_subalgebra


def _face(M, bit, value):
    """Points of a hypercube whose coordinate `bit` equals `value`."""
    return mask_of(i for i, label in enumerate(M.labels) if label[bit] == str(value))


class TestMedianAlgebra:
    def test_rejects_bad_shapes(self):
        with pytest.raises(MalformedInputError):
            MedianAlgebra(np.zeros((2, 2), dtype=int))
        with pytest.raises(MalformedInputError):
            MedianAlgebra(np.zeros((0, 0, 0), dtype=int))

    def test_rejects_duplicate_labels(self, path3):
        with pytest.raises(MalformedInputError):
            MedianAlgebra(path3.algebra.table, ["a", "a", "b"])

    def test_table_is_read_only(self, q2):
        with pytest.raises(ValueError):
            q2.algebra.table[0, 0, 0] = 1

    def test_restrict_to_face(self, q3):
        M = q3.algebra
        sub, ids = M.restrict(_face(M, 0, 0))
        assert sub.n == 4
        assert [M.labels[i] for i in ids] == ["000", "001", "010", "011"]
        assert validate(sub).ok

    def test_restrict_rejects_open_subset(self, q3):
        M = q3.algebra
        with pytest.raises(MalformedInputError):
            M.restrict(mask_of(M.index(label) for label in ("001", "010", "100")))


class TestConvexity:
    def test_interval_of_diagonal_is_everything(self, q2):
        M = q2.algebra
        assert interval(M, M.index("00"), M.index("11")) == M.full

    def test_interval_of_point_is_point(self, q3):
        M = q3.algebra
        assert interval(M, 5, 5) == 1 << 5

    def test_geodesics_on_a_path(self, path4):
        M = path4.algebra
        assert is_geodesic(M, [0, 1, 2, 3])
        assert is_geodesic(M, [2])
        assert not is_geodesic(M, [0, 2, 1])
        with pytest.raises(MalformedInputError):
            is_geodesic(M, [])

    def test_diagonal_is_not_convex(self, q2):
        M = q2.algebra
        assert not is_convex(M, mask_of([M.index("00"), M.index("11")]))
        assert is_convex(M, mask_of([M.index("00"), M.index("01")]))

    def test_hull_of_diagonal(self, q2):
        M = q2.algebra
        assert convex_hull(M, mask_of([M.index("00"), M.index("11")])) == M.full
        assert convex_hull(M, 1 << 2) == 1 << 2

    def test_subalgebra_closure_adds_majority(self, q3):
        M = q3.algebra
        seeds = mask_of(M.index(label) for label in ("000", "011", "101"))
        closure = subalgebra_closure(M, seeds)
        assert M.names(closure) == ["000", "001", "011", "101"]
        with pytest.raises(MalformedInputError):
            subalgebra_closure(M, 0)

    def test_gate_on_a_path(self, path4):
        M = path4.algebra
        assert gate(M, 0, mask_of([2, 3])) == 2
        assert gate(M, 3, mask_of([2, 3])) == 3
        assert list(gate_map(M, mask_of([1, 2]))) == [1, 1, 2, 2]

    def test_gate_needs_convex_set(self, q2):
        M = q2.algebra
        with pytest.raises(NotConvexError):
            gate(M, 1, mask_of([M.index("00"), M.index("11")]))

    def test_edge_cuts_match_bipartition_count(self, q3):
        assert len(edge_cuts(q3.algebra)) == 6


class TestValidation:
    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_hypercubes_validate(self, k):
        assert validate(hypercube(k).algebra).ok

    def test_corrupted_table_breaks_symmetry(self, q3):
        report = validate(corrupt_median_table(q3, seed=3))
        assert not report.ok
        assert report.failures[0].axiom == "symmetry"
        assert len(report.failures[0].witness) == 3

    def test_out_of_range_entry_is_malformed(self, path3):
        table = np.array(path3.algebra.table)
        table[0, 1, 2] = 7
        report = validate(MedianAlgebra(table))
        assert [f.axiom for f in report.failures] == ["malformed"]

    def test_absorption_failure(self, path3):
        table = np.array(path3.algebra.table)
        table[0, 0, 2] = table[0, 2, 0] = table[2, 0, 0] = 2
        report = validate(MedianAlgebra(table, path3.labels))
        assert "absorption" in [f.axiom for f in report.failures]


class TestGates:
    def test_gate_projection_identities_on_faces(self, q3):
        M = q3.algebra
        for bit in range(3):
            for other in range(3):
                report = gate_projection_check(M, _face(M, bit, 0), _face(M, other, 1))
                assert report.ok, report.failures

    def test_pair_of_gates_on_a_path(self):
        M = path(5).algebra
        assert pair_of_gates(M, mask_of([0, 1]), mask_of([3, 4])) == (1, 3)

    def test_pair_of_gates_for_intersecting_sets(self, q3):
        M = q3.algebra
        x1, x2 = pair_of_gates(M, _face(M, 0, 0), _face(M, 1, 0))
        assert x1 == x2

    def test_helly_on_three_faces(self, q3):
        M = q3.algebra
        faces = [_face(M, bit, 1) for bit in range(3)]
        assert helly_check(M, faces)

    def test_helly_rejects_non_convex(self, q2):
        M = q2.algebra
        with pytest.raises(NotConvexError):
            helly_check(M, [mask_of([M.index("00"), M.index("11")])])


@hyp_settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=500), chosen=st.integers(min_value=1, max_value=255))
def test_hull_is_convex_and_idempotent(seed, chosen):
    M = random_subalgebra(5, 4, seed).algebra
    S = chosen & M.full or 1
    hull = convex_hull(M, S)
    assert not S & ~hull
    assert is_convex(M, hull)
    assert convex_hull(M, hull) == hull
    assert popcount(hull) <= M.n


@hyp_settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=500))
def test_gate_lies_in_every_interval(seed):
    M = random_subalgebra(5, 5, seed).algebra
    rng = np.random.default_rng(seed)
    C = convex_hull(M, mask_of(int(p) for p in rng.choice(M.n, size=min(2, M.n), replace=False)))
    for x in range(M.n):
        g = gate(M, x, C)
        for z in bits(C):
            assert (M.interval_mask(x, z) >> g) & 1


@hyp_settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=500))
def test_intervals_are_convex_with_median_gates(seed):
    M = random_subalgebra(4, 5, seed).algebra
    for x in range(M.n):
        for y in range(x, M.n):
            I = interval(M, x, y)
            assert is_convex(M, I)
            for z in range(M.n):
                assert gate(M, z, I) == M.med(x, y, z)


@hyp_settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=500),
    inner=st.integers(min_value=1, max_value=255),
    extra=st.integers(min_value=0, max_value=255),
)
def test_hull_is_monotone(seed, inner, extra):
    M = random_subalgebra(5, 4, seed).algebra
    S = inner & M.full or 1
    T = S | (extra & M.full)
    assert not convex_hull(M, S) & ~convex_hull(M, T)
