import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from lpvinterp.hankel import (blockdiag_kron, hankel, residual_matrix, scheduled_stack,
                              select_rows)
from lpvinterp.signals import (DataDictionary, IndexSet, SchedulingTrajectory, Trajectory,
                               lift_scheduling, select, vec_trajectory)

W_DICT = Trajectory(np.array([[1, 3, 5, 7, 9], [2, 4, 6, 8, 0]], dtype=float))
H_EX = [[1, 3, 5], [2, 4, 6], [3, 5, 7], [4, 6, 8], [5, 7, 9], [6, 8, 0]]


def test_hankel_example():
    H = hankel(W_DICT, 3)
    assert H.shape == (6, 3)
    assert np.asarray(H).tolist() == H_EX


def test_hankel_single_column_and_scalar():
    H = hankel(W_DICT, 5)
    np.testing.assert_array_equal(np.asarray(H)[:, 0], vec_trajectory(W_DICT))
    assert np.asarray(hankel(Trajectory(np.array([1.0, 2, 3, 4])), 2)).tolist() == [[1, 2, 3], [2, 3, 4]]
    with pytest.raises(ValueError):
        hankel(W_DICT, 6)


def test_select_rows_examples():
    H = hankel(W_DICT, 3)
    assert select_rows(H, IndexSet.from_iterable([2, 5, 6], 6)).tolist() == [[2, 4, 6], [5, 7, 9], [6, 8, 0]]
    np.testing.assert_array_equal(select_rows(H, IndexSet.full(6)), np.asarray(H))
    assert select_rows(H, IndexSet.from_iterable([1], 6)).tolist() == [[1, 3, 5]]
    with pytest.raises(ValueError):
        select_rows(H, IndexSet.from_iterable([1], 7))


def test_blockdiag_kron_examples():
    np.testing.assert_array_equal(blockdiag_kron(SchedulingTrajectory(np.ones((1, 2))), 2), np.eye(4))
    np.testing.assert_array_equal(blockdiag_kron(SchedulingTrajectory(np.array([[2.0, 3.0]])), 1),
                                  np.diag([2.0, 3.0]))
    np.testing.assert_array_equal(blockdiag_kron(SchedulingTrajectory(np.array([[1.0], [2.0]])), 1),
                                  np.array([[1.0], [2.0]]))


def test_residual_matrix_hand_example():
    d = DataDictionary(Trajectory(np.array([1.0, 2, 3])), SchedulingTrajectory(np.array([4.0, 5, 6])))
    N = residual_matrix(d, SchedulingTrajectory(np.array([1.0, 1.0])), 2)
    assert N.tolist() == [[3, 8], [8, 15]]


def test_residual_matrix_trivial_zero():
    p = SchedulingTrajectory(np.full((1, 5), 0.3))
    d = DataDictionary(W_DICT, p)
    assert not residual_matrix(d, SchedulingTrajectory(np.full((1, 3), 0.3)), 3).any()
    d0 = DataDictionary(Trajectory(np.zeros((2, 5))), SchedulingTrajectory(np.arange(5.0)))
    assert not residual_matrix(d0, SchedulingTrajectory(np.ones(3)), 3).any()


def test_residual_matrix_dimension_errors():
    d = DataDictionary(W_DICT, SchedulingTrajectory(np.ones((1, 5))))
    with pytest.raises(ValueError):
        residual_matrix(d, SchedulingTrajectory(np.ones(2)), 3)
    with pytest.raises(ValueError):
        residual_matrix(d, SchedulingTrajectory(np.ones((2, 3))), 3)


def test_scheduled_stack_examples():
    d = DataDictionary(W_DICT, SchedulingTrajectory(np.ones((1, 5))))
    S = scheduled_stack(d, 3)
    np.testing.assert_array_equal(S[:6], S[6:])
    p2 = SchedulingTrajectory(np.arange(10.0).reshape(2, 5))
    assert scheduled_stack(DataDictionary(W_DICT, p2), 3)[:6].tolist() == H_EX


# ---------------------------------------------------------------- properties

small = st.floats(-5, 5, allow_nan=False)


@given(st.integers(1, 3), st.integers(2, 7), st.data())
def test_hankel_linearity(n_w, T, data):
    L = data.draw(st.integers(1, T))
    u = data.draw(hnp.arrays(float, (n_w, T), elements=small))
    v = data.draw(hnp.arrays(float, (n_w, T), elements=small))
    a, b = data.draw(small), data.draw(small)
    lhs = np.asarray(hankel(Trajectory(a * u + b * v), L))
    rhs = a * np.asarray(hankel(Trajectory(u), L)) + b * np.asarray(hankel(Trajectory(v), L))
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


@given(st.integers(1, 2), st.integers(1, 2), st.integers(3, 8), st.data())
def test_residual_matrix_matches_definition(n_w, n_p, N_d, data):
    L = data.draw(st.integers(1, 3))
    w = data.draw(hnp.arrays(float, (n_w, N_d), elements=small))
    p = data.draw(hnp.arrays(float, (n_p, N_d), elements=small))
    pt = data.draw(hnp.arrays(float, (n_p, L), elements=small))
    d = DataDictionary(Trajectory(w), SchedulingTrajectory(p))
    N = residual_matrix(d, SchedulingTrajectory(pt), L)
    # column by column: lifted window minus the target scheduling applied to the window
    for j in range(N_d - L + 1):
        win = Trajectory(w[:, j:j + L])
        expected = (vec_trajectory(lift_scheduling(win, SchedulingTrajectory(p[:, j:j + L])))
                    - vec_trajectory(lift_scheduling(win, SchedulingTrajectory(pt))))
        np.testing.assert_allclose(N[:, j], expected, atol=1e-12)


@settings(max_examples=50)
@given(st.integers(1, 3), st.integers(2, 6), st.data())
def test_row_selection_commutes(n_w, T, data):
    L = data.draw(st.integers(1, T))
    H = hankel(Trajectory(data.draw(hnp.arrays(float, (n_w, T), elements=small))), L)
    g = data.draw(hnp.arrays(float, T - L + 1, elements=small))
    idx = IndexSet.from_iterable(data.draw(st.sets(st.integers(1, L * n_w))), L * n_w)
    np.testing.assert_allclose(select_rows(H, idx) @ g, select(H @ g, idx), atol=1e-12)
