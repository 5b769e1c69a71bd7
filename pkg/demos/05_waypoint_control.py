"""
Way-point control with a known scheduling
=========================================

The output must pass a parabola at k = 6, 12, ..., 30 and the input must be
zero at k = 3, 9, ..., 27. Among all such trajectories we pick the one of
least weighted energy, and watch the input shrink as its weight Q grows.
"""

import numpy as np

from lpvinterp import (ControlProblem, ExcitationSpec, generate_dictionary, msd_kernel,
                       msd_parabola_waypoints, scheduling_signal, select, vec_trajectory,
                       waypoint_control, waypoints_to_given)

L = 30
dictionary = generate_dictionary(msd_kernel(), ExcitationSpec(seed=7, N_d=121))
p = scheduling_signal("sinusoid", L)  # one period over the horizon
given, targets = waypoints_to_given(msd_parabola_waypoints(L), L, n_w=2)

for Q in np.logspace(-4, 0, 5):
    prob = ControlProblem(dictionary, p, given, targets, Q=np.array([[Q]]), R=np.eye(1))
    sol = waypoint_control(prob)
    miss = np.abs(select(vec_trajectory(sol.trajectory), given) - targets).max()
    energy = np.sum(sol.trajectory.values[0] ** 2)
    print(f"Q = {Q:8.1e}   sum u^2 = {energy:10.2f}   cost = {sol.cost:10.2f}   way-point error = {miss:.1e}")
