"""Data-driven interpolation of partially specified trajectories."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .hankel import hankel
from .conditions import ConditionReport, check_gpe, check_uniqueness, stacked_constraints
from .numerics import InfeasibleError, kernel_basis, minnorm_lstsq, numerical_rank, range_basis
from .signals import (DataDictionary, IndexSet, SchedulingTrajectory, SystemStructure, Trajectory,
                      select, unvec, vec_trajectory)

__all__ = [
    "InterpolationProblem",
    "InterpolationResult",
    "interpolate",
    "evaluate_family",
    "trajectory_space_basis",
    "simulate_as_interpolation",
    "simulation_index_set",
]

UNIQUE = "Unique"
FAMILY = "Family"
INFEASIBLE = "Infeasible"


@dataclass(frozen=True, eq=False)
class InterpolationProblem:
    """Dictionary, target scheduling over ``[1, L]`` and the given entries of ``vec(w)``."""

    dictionary: DataDictionary
    p_target: SchedulingTrajectory
    given: IndexSet
    w_given: np.ndarray
    structure: SystemStructure

    def __post_init__(self):
        w_given = np.array(self.w_given, dtype=float).ravel()
        object.__setattr__(self, "w_given", w_given)
        if w_given.size != len(self.given):
            raise ValueError(f"{w_given.size} given values for {len(self.given)} indices")
        if self.given.universe != self.L * self.dictionary.n_w:
            raise ValueError(f"index set universe {self.given.universe} != L * n_w = "
                             f"{self.L * self.dictionary.n_w}")
        if self.p_target.n_p != self.dictionary.n_p:
            raise ValueError("target scheduling and dictionary disagree on n_p")
        if self.dictionary.N_d < self.L:
            raise ValueError(f"dictionary length {self.dictionary.N_d} shorter than L={self.L}")

    @property
    def L(self) -> int:
        return self.p_target.T

    @property
    def n_w(self) -> int:
        return self.dictionary.n_w

    @classmethod
    def from_trajectory(cls, dictionary, p_target, given: IndexSet, w: Trajectory,
                        structure) -> "InterpolationProblem":
        """Problem whose given values are read off a full trajectory ``w``."""
        return cls(dictionary, p_target, given, select(vec_trajectory(w), given), structure)


@dataclass(frozen=True, eq=False)
class InterpolationResult:
    """Outcome of :func:`interpolate`.

    ``family_basis`` lives in the coefficient space of ``g``; its columns
    are zero when the interpolant is unique.
    """

    kind: str
    trajectory: Optional[Trajectory]
    particular_g: np.ndarray
    family_basis: np.ndarray
    residual: float
    uniqueness: Optional[ConditionReport] = None
    gpe: Optional[ConditionReport] = None
    notes: List[str] = field(default_factory=list)

    @property
    def is_feasible(self) -> bool:
        return self.kind != INFEASIBLE


def interpolate(prob: InterpolationProblem, rtol: Optional[float] = None) -> InterpolationResult:
    """Complete a partially specified trajectory from the dictionary.

    Solves ``[H|I_g; N] g = [w_given; 0]`` in the minimum-norm least-squares
    sense and maps ``g`` through the Hankel matrix. A residual above the
    feasibility tolerance yields an ``"Infeasible"`` result; otherwise the
    result is ``"Unique"`` or ``"Family"`` according to the uniqueness test.
    """
    d, s = prob.dictionary, prob.structure
    H, N, A = stacked_constraints(d, prob.p_target, prob.given)
    rhs = np.concatenate([prob.w_given, np.zeros(N.shape[0])])
    sol = minnorm_lstsq(A, rhs, rtol)
    notes = []

    gpe = None
    if prob.L >= s.lag:
        gpe = check_gpe(d, prob.L, s, rtol)
        if not gpe.satisfied:
            notes.append(f"dictionary is not GPE at L={prob.L} "
                         f"(rank {gpe.lhs_rank}, target {gpe.rhs_rank_or_target})")
    else:
        notes.append(f"L={prob.L} below the lag {s.lag}")

    if not sol.is_consistent:
        notes.append("given points inconsistent with the behavior (Condition 2 violated)")
        return InterpolationResult(INFEASIBLE, None, sol.solution, np.zeros((A.shape[1], 0)),
                                   sol.residual_norm, None, gpe, notes)

    g = sol.solution
    trajectory = unvec(H @ g, prob.n_w)
    uniq = check_uniqueness(d, prob.p_target, prob.given, s, rtol)
    if uniq.satisfied:
        return InterpolationResult(UNIQUE, trajectory, g, np.zeros((A.shape[1], 0)),
                                   sol.residual_norm, uniq, gpe, notes)

    family = kernel_basis(A, rtol)
    if family.shape[1] == 0 or numerical_rank(H @ family, rtol).rank == 0:
        notes.append("uniqueness test failed but every solution maps to the same trajectory")
        return InterpolationResult(UNIQUE, trajectory, g, np.zeros((A.shape[1], 0)),
                                   sol.residual_norm, uniq, gpe, notes)
    return InterpolationResult(FAMILY, trajectory, g, family, sol.residual_norm, uniq, gpe, notes)


def evaluate_family(prob: InterpolationProblem, result: InterpolationResult, coeffs) -> Trajectory:
    """Member ``H (g + family_basis @ coeffs)`` of the interpolant family."""
    if result.kind != FAMILY:
        raise ValueError(f"evaluate_family needs a Family result, got {result.kind}")
    coeffs = np.asarray(coeffs, dtype=float).ravel()
    if coeffs.size != result.family_basis.shape[1]:
        raise ValueError(f"expected {result.family_basis.shape[1]} coefficients, got {coeffs.size}")
    H = hankel(prob.dictionary.w, prob.L).data
    return unvec(H @ (result.particular_g + result.family_basis @ coeffs), prob.n_w)


def trajectory_space_basis(prob: InterpolationProblem, result: InterpolationResult,
                           rtol: Optional[float] = None) -> np.ndarray:
    """Orthonormal basis of the directions along which family members differ in ``vec(w)``."""
    H = hankel(prob.dictionary.w, prob.L).data
    return range_basis(H @ result.family_basis, rtol)


def simulation_index_set(n_w: int, T_ini: int, T_f: int, input_channels: Sequence[int]) -> IndexSet:
    """Given entries of a simulation: the whole initial window plus all future inputs."""
    L = T_ini + T_f
    idx = list(range(1, T_ini * n_w + 1))
    for k in range(T_ini + 1, L + 1):
        idx.extend((k - 1) * n_w + ch for ch in sorted(input_channels))
    return IndexSet(np.array(idx, dtype=np.int64), L * n_w)


def simulate_as_interpolation(dictionary: DataDictionary, p_target: SchedulingTrajectory,
                              w_init: Trajectory, u_future, s: SystemStructure,
                              input_channels: Sequence[int] = (1,),
                              rtol: Optional[float] = None) -> Trajectory:
    """Data-driven simulation posed as interpolation.

    Parameters
    ----------
    dictionary : DataDictionary
    p_target : SchedulingTrajectory
        Scheduling over the whole horizon ``w_init.T + T_f``.
    w_init : Trajectory
        Initial window, all channels; should be at least as long as the lag.
    u_future : array_like, shape (n_u, T_f)
        Future inputs; a flat array is read sample by sample.
    input_channels : sequence of int
        1-based channels of ``w`` that are inputs.

    Returns
    -------
    Trajectory
        The full horizon ``w_init ∧ w_future``.
    """
    n_w = dictionary.n_w
    n_u = len(input_channels)
    u = np.asarray(u_future, dtype=float)
    if u.ndim == 1:
        u = u.reshape(-1, n_u).T
    T_ini, T_f = w_init.T, u.shape[1]
    if w_init.n_w != n_w:
        raise ValueError("initial window must carry every manifest channel")
    if p_target.T != T_ini + T_f:
        raise ValueError(f"scheduling length {p_target.T} != {T_ini} + {T_f}")
    if T_ini < s.lag:
        warnings.warn(f"initial window of length {T_ini} is shorter than the lag {s.lag}; "
                      "the continuation need not be unique", stacklevel=2)
    given = simulation_index_set(n_w, T_ini, T_f, input_channels)
    w_given = np.concatenate([vec_trajectory(w_init), u.T.ravel()])
    result = interpolate(InterpolationProblem(dictionary, p_target, given, w_given, s), rtol)
    if result.kind == INFEASIBLE:
        raise InfeasibleError("initial window is not a trajectory for the given scheduling",
                              residual=result.residual)
    if result.kind == FAMILY:
        warnings.warn("simulation is not unique; returning the minimum-norm member "
                      "(dictionary may be insufficiently exciting)", stacklevel=2)
    return result.trajectory
