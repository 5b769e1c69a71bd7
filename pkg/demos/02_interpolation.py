"""
Filling in a trajectory from a recorded dictionary
==================================================

A mass-spring-damper with scheduling-dependent stiffness is excited once
(121 samples). That record alone, with no model, recovers a new 30-sample
trajectory under a different scheduling from 35 of its 60 entries.
"""

import numpy as np

from lpvinterp import (ExcitationSpec, InterpolationProblem, check_gpe, generate_dictionary,
                       interpolate, msd_kernel, msd_structure, random_trajectory, sample_given_set,
                       scheduling_signal)

L = 30
system = msd_kernel()  # m = d = 1, stiffness 10 + 9 p
structure = msd_structure()

# record the dictionary and make sure it is rich enough for depth 30
dictionary = generate_dictionary(system, ExcitationSpec(seed=7, N_d=121))
gpe = check_gpe(dictionary, L, structure)
print(f"excitation rank {gpe.lhs_rank} (needs {gpe.rhs_rank_or_target})")

# a fresh trajectory under a fresh scheduling; we only keep 35 entries of it
p = scheduling_signal("uniform-pm1", L, seed=11)
truth = random_trajectory(system, p, seed=13)
given = sample_given_set(dictionary, p, 35, structure, np.random.default_rng(17))

prob = InterpolationProblem.from_trajectory(dictionary, p, given, truth, structure)
result = interpolate(prob)
print("result:", result.kind)
print("largest error against the truth:", np.abs(result.trajectory.values - truth.values).max())
