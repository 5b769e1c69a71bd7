"""
Signals, index sets and Hankel matrices
=======================================

A trajectory of two channels over three samples, the given/missing split of
its stacked vector, and the Kronecker lift by a two-channel scheduling.
"""

import numpy as np

from lpvinterp import (IndexSet, SchedulingTrajectory, Trajectory, complement_index_set, hankel,
                       lift_index_set, lift_scheduling, select, select_rows, vec_trajectory)

# vec() stacks samples in time order, channels fastest
w = Trajectory(np.array([[1, 2, 3], [4, 5, 6]]))
v = vec_trajectory(w)
print("vec(w)          =", v)

# 1-based positions of the known entries, and the rest
given = IndexSet.from_iterable([2, 5, 6], universe=6)
missing = complement_index_set(given)
print("w given         =", select(v, given), "at", given.tolist())
print("w missing       =", select(v, missing), "at", missing.tolist())

# the scheduling multiplies every sample: p(k) ⊗ w(k)
p = SchedulingTrajectory(np.array([[7, 8, 9], [10, 11, 12]]))
lifted = vec_trajectory(lift_scheduling(w, p))
given_p = lift_index_set(given, n_w=2, n_p=2)
print("lifted given    =", select(lifted, given_p), "at", given_p.tolist())

# depth-3 Hankel matrix of a five-sample record; columns are shifted windows
record = Trajectory(np.array([[1, 3, 5, 7, 9], [2, 4, 6, 8, 0]]))
H = hankel(record, 3)
print("H_3 =\n", np.asarray(H))
print("rows at the given positions =\n", select_rows(H, given))
