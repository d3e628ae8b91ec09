import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swarmcheck import (
    Cube,
    DimensionMismatch,
    SwarmState,
    bounding_cube,
    centroid,
    mean_velocity,
)

UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


def make_state(positions, velocities=None, time=0.0):
    pos = np.asarray(positions, dtype=float)
    vel = np.zeros_like(pos) if velocities is None else np.asarray(velocities, dtype=float)
    return SwarmState(time=time, positions=pos, velocities=vel)


finite_coord = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)


@st.composite
def swarm_positions(draw, max_n=12, d=2):
    n = draw(st.integers(min_value=1, max_value=max_n))
    rows = draw(
        st.lists(
            st.lists(finite_coord, min_size=d, max_size=d), min_size=n, max_size=n
        )
    )
    return np.array(rows, dtype=float)


class TestCentroid:
    def test_midpoint(self):
        assert np.allclose(centroid(make_state([[0, 0], [2, 0]])), [1.0, 0.0])

    def test_single_agent_identity(self):
        assert np.allclose(centroid(make_state([[3, 4]])), [3.0, 4.0])

    def test_unit_square_mean(self):
        expected = UNIT_SQUARE.mean(axis=0)  # arithmetic mean over 4 points
        assert np.array_equal(centroid(make_state(UNIT_SQUARE)), expected)
        assert np.allclose(expected, [0.5, 0.5])

    @settings(max_examples=50)
    @given(pts=swarm_positions(), shift=st.lists(finite_coord, min_size=2, max_size=2))
    def test_translation_equivariant_and_permutation_invariant(self, pts, shift):
        shift = np.array(shift)
        moved = centroid(pts + shift)
        assert np.allclose(moved, centroid(pts) + shift, atol=1e-9)
        perm = np.random.default_rng(0).permutation(len(pts))
        assert np.allclose(centroid(pts[perm]), centroid(pts), atol=1e-12)


class TestMeanVelocity:
    def test_identical(self):
        state = make_state([[0, 0], [1, 0]], [[1, 0], [1, 0]])
        assert np.array_equal(mean_velocity(state), [1.0, 0.0])

    def test_symmetric_cancel(self):
        state = make_state([[0, 0], [1, 0]], [[1, 0], [-1, 0]])
        assert np.array_equal(mean_velocity(state), [0.0, 0.0])

    def test_mean_of_four(self):
        vels = np.array([[1, 0], [0, 1], [2, 2], [1, 1]], dtype=float)
        state = make_state(np.zeros((4, 2)) + np.arange(4)[:, None], vels)
        assert np.allclose(mean_velocity(state), [1.0, 1.0])


class TestBoundingCube:
    def test_unit_square(self):
        cube = bounding_cube(make_state(UNIT_SQUARE))
        assert np.allclose(cube.center, [0.5, 0.5])
        assert cube.side == 1.0

    def test_max_extent_across_dimensions(self):
        cube = bounding_cube(make_state([[0, 0], [4, 1]]))
        assert np.allclose(cube.center, [2.0, 0.5])
        assert cube.side == 4.0

    def test_degenerate_single_agent(self):
        cube = bounding_cube(make_state([[7, 7]]))
        assert np.allclose(cube.center, [7.0, 7.0])
        assert cube.side == 0.0

    @settings(max_examples=50)
    @given(pts=swarm_positions(), shift=st.lists(finite_coord, min_size=2, max_size=2))
    def test_translation_and_containment(self, pts, shift):
        shift = np.array(shift)
        cube = bounding_cube(pts)
        assert cube.contains(pts)
        moved = bounding_cube(pts + shift)
        assert np.allclose(moved.center, cube.center + shift, atol=1e-9)
        assert abs(moved.side - cube.side) <= 1e-9 * max(1.0, cube.side)

    @settings(max_examples=30)
    @given(pts=swarm_positions(), scale=st.floats(min_value=0.01, max_value=50.0))
    def test_positive_scaling(self, pts, scale):
        scaled = bounding_cube(scale * pts)
        assert scaled.side == pytest.approx(scale * bounding_cube(pts).side, rel=1e-12)


class TestInvariants:
    def test_rejects_nan_positions(self):
        with pytest.raises(ValueError):
            make_state([[0.0, np.nan]])

    def test_rejects_mismatched_velocity_shape(self):
        with pytest.raises(DimensionMismatch):
            SwarmState(time=0.0, positions=np.zeros((2, 2)), velocities=np.zeros((2, 3)))

    def test_rejects_negative_time(self):
        with pytest.raises(ValueError):
            make_state([[0, 0]], time=-1.0)

    def test_rejects_ragged_vectors(self):
        with pytest.raises(DimensionMismatch):
            centroid([[0.0, 1.0], [1.0, 2.0, 3.0]])

    def test_cube_rejects_negative_side(self):
        with pytest.raises(ValueError):
            Cube(center=np.zeros(2), side=-1.0)

    def test_agent_view(self):
        state = make_state([[1, 2], [3, 4]], [[5, 6], [7, 8]])
        agent = state.agent(1)
        assert np.array_equal(agent.position, [3.0, 4.0])
        assert np.array_equal(agent.velocity, [7.0, 8.0])
