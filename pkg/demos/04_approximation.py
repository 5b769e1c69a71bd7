"""
Noisy given points: the closest behavior trajectory
===================================================

Perturbed entries are no longer consistent with any trajectory, so
interpolation reports them infeasible. The approximation instead returns the
trajectory whose given entries are nearest in a weighted 2-norm.
"""

import numpy as np

from lpvinterp import (ExcitationSpec, InterpolationProblem, WeightMatrix, approximate,
                       generate_dictionary, interpolate, msd_kernel, msd_structure,
                       random_trajectory, sample_given_set, scheduling_signal, select,
                       vec_trajectory)

L = 30
system, structure = msd_kernel(), msd_structure()
dictionary = generate_dictionary(system, ExcitationSpec(seed=7, N_d=121))
p = scheduling_signal("uniform-pm1", L, seed=11)
truth = random_trajectory(system, p, seed=13)

rng = np.random.default_rng(5)
given = sample_given_set(dictionary, p, 40, structure, rng)
noisy = select(vec_trajectory(truth), given) + 0.1 * rng.uniform(-1, 1, len(given))
prob = InterpolationProblem(dictionary, p, given, noisy, structure)

print("interpolation:", interpolate(prob).kind)

fit, err = approximate(prob)
# some behavior directions are barely visible at 40 random positions, so noise
# of size 0.1 can move the fit far more than that away from the given points
print(f"approximation error {err:.4f}, distance to truth {np.abs(fit.values - truth.values).max():.4f}")

# trust the first ten entries a thousand times more
weights = np.ones(len(given))
weights[:10] = 1e3
fit_w, err_w = approximate(prob, WeightMatrix.diagonal(weights))
resid = select(vec_trajectory(fit_w), given) - noisy
print(f"weighted: first ten off by {np.abs(resid[:10]).max():.4f}, the rest by {np.abs(resid[10:]).max():.4f}")
