"""
Too few given points: a family of interpolants
==============================================

With 10 of 60 entries known the data still admit trajectories through them,
but not just one. Any combination of the family basis gives another.
"""

import numpy as np

from lpvinterp import (ExcitationSpec, InterpolationProblem, evaluate_family, generate_dictionary,
                       interpolate, min_given_points, msd_kernel, msd_structure, random_trajectory,
                       sample_given_set, scheduling_signal, select, vec_trajectory)

L = 30
system, structure = msd_kernel(), msd_structure()
dictionary = generate_dictionary(system, ExcitationSpec(seed=7, N_d=121))
p = scheduling_signal("uniform-pm1", L, seed=11)
truth = random_trajectory(system, p, seed=13)

print("a unique answer needs at least", min_given_points(structure, L), "given entries")

rng = np.random.default_rng(43)
given = sample_given_set(dictionary, p, 10, structure, rng, require_unique=False)
prob = InterpolationProblem.from_trajectory(dictionary, p, given, truth, structure)
result = interpolate(prob)
print(result.kind, "with", result.family_basis.shape[1], "free coefficients")

for j in range(3):
    member = evaluate_family(prob, result, rng.standard_normal(result.family_basis.shape[1]))
    hit = np.abs(select(vec_trajectory(member), given) - prob.w_given).max()
    print(f"member {j}: off the given points by {hit:.1e}, y(15) = {member.values[1, 14]:+.3f}")
