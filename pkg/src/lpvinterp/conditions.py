"""Rank tests for excitation, existence and uniqueness of interpolants."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .hankel import hankel, residual_matrix, scheduled_stack, select_rows
from .numerics import kernel_basis, numerical_rank
from .signals import (DataDictionary, IndexSet, SchedulingTrajectory, SystemStructure,
                      lift_index_set)

__all__ = [
    "ConditionReport",
    "check_gpe",
    "check_existence",
    "check_uniqueness",
    "min_given_points",
    "stacked_constraints",
    "sample_given_set",
]


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of a rank test.

    ``satisfied`` holds exactly when ``lhs_rank == rhs_rank_or_target``.
    ``near_degenerate`` flags a singular value within a factor 10 of the
    rank threshold, i.e. a decision that could flip under a different tolerance.
    """

    name: str
    satisfied: bool
    lhs_rank: int
    rhs_rank_or_target: int
    tolerance_used: float
    near_degenerate: bool = False
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "satisfied": self.satisfied,
            "lhs_rank": self.lhs_rank,
            "rhs_rank_or_target": self.rhs_rank_or_target,
            "tolerance_used": self.tolerance_used,
            "near_degenerate": self.near_degenerate,
            **self.details,
        }


def min_given_points(s: SystemStructure, L: int) -> int:
    """Fewest given entries that can pin down a unique interpolant: ``n + m L``."""
    return s.order + s.n_inputs * L


def gpe_target(s: SystemStructure, L: int) -> int:
    return s.order + (s.n_inputs + s.n_p * s.n_w) * L


def check_gpe(dictionary: DataDictionary, L: int, s: SystemStructure,
              rtol: Optional[float] = None) -> ConditionReport:
    """Generalized persistence of excitation of the dictionary at depth ``L``."""
    if L < s.lag:
        raise ValueError(f"depth L={L} is below the lag {s.lag}; the data-driven representation is invalid")
    if dictionary.N_d < L:
        raise ValueError(f"dictionary length {dictionary.N_d} shorter than L={L}")
    report = numerical_rank(scheduled_stack(dictionary, L), rtol)
    target = gpe_target(s, L)
    return ConditionReport("GPE (Condition 1)", report.rank == target, report.rank, target,
                           report.tolerance_used, report.near_degenerate,
                           {"columns": dictionary.N_d - L + 1})


def stacked_constraints(dictionary: DataDictionary, p_target: SchedulingTrajectory,
                        given: IndexSet, restricted: bool = False):
    """Matrices of the interpolation constraints.

    Returns ``(H, N, A)`` where ``H`` is the depth-``L`` Hankel matrix of the
    dictionary, ``N`` the scheduling-residual matrix for ``p_target`` and ``A``
    the stacked constraint matrix ``[H|I_g; N]``. With ``restricted=True`` only
    the residual rows selected by the lifted index set enter ``A``.
    """
    L = p_target.T
    H = hankel(dictionary.w, L).data
    N = residual_matrix(dictionary, p_target, L)
    if given.universe != H.shape[0]:
        raise ValueError(f"index set universe {given.universe} != L * n_w = {H.shape[0]}")
    N_rows = N
    if restricted:
        N_rows = select_rows(N, lift_index_set(given, dictionary.n_w, dictionary.n_p))
    A = np.vstack([select_rows(H, given), N_rows])
    return H, N, A


def check_existence(dictionary: DataDictionary, p_target: SchedulingTrajectory, given: IndexSet,
                    w_given, s: SystemStructure, rtol: Optional[float] = None,
                    restricted: bool = False) -> ConditionReport:
    """Is ``[w_given; 0]`` in the column space of the stacked constraint matrix?

    The appended column is rescaled to the spectral norm of the matrix; this
    leaves the exact rank unchanged but keeps the numerical test independent
    of the units of ``w_given``.
    """
    w_given = np.asarray(w_given, dtype=float).ravel()
    if w_given.size != len(given):
        raise ValueError(f"{w_given.size} given values for {len(given)} indices")
    _, _, A = stacked_constraints(dictionary, p_target, given, restricted)
    rhs = np.concatenate([w_given, np.zeros(A.shape[0] - w_given.size)])
    base = numerical_rank(A, rtol)
    scale = np.linalg.norm(rhs)
    if scale > 0:
        smax = base.singular_values[0] if base.singular_values.size else 0.0
        rhs = rhs * ((smax if smax > 0 else 1.0) / scale)
    # identical absolute threshold for both matrices
    tol = base.tolerance_used
    s_aug = np.linalg.svd(np.column_stack([A, rhs]), compute_uv=False)
    aug_rank = int(np.count_nonzero(s_aug > tol))
    near = base.near_degenerate or bool(
        tol > 0 and np.any((s_aug > tol / 10) & (s_aug < tol * 10)))
    return ConditionReport("existence (Condition 2)", base.rank == aug_rank, base.rank,
                           aug_rank, tol, near, {"restricted": restricted})


def check_uniqueness(dictionary: DataDictionary, p_target: SchedulingTrajectory, given: IndexSet,
                     s: SystemStructure, rtol: Optional[float] = None) -> ConditionReport:
    """``rank(H|I_g 𝒩) == rank(H 𝒩) == n + m L`` with ``𝒩`` spanning ``kernel(N)``.

    ``lhs_rank`` is the rank of the given-rows product; the full-matrix rank is
    reported in ``details["full_rank"]``.
    """
    L = p_target.T
    H, N, _ = stacked_constraints(dictionary, p_target, given)
    kern = kernel_basis(N, rtol)
    target = min_given_points(s, L)
    full = numerical_rank(H @ kern, rtol)
    if len(given):
        part = numerical_rank(select_rows(H, given) @ kern, rtol)
    else:
        part = numerical_rank(np.zeros((1, kern.shape[1])), rtol)
    ok = part.rank == target and full.rank == target
    return ConditionReport("uniqueness (Condition 3)", ok, part.rank, target, part.tolerance_used,
                           part.near_degenerate or full.near_degenerate,
                           {"full_rank": full.rank, "kernel_dim": kern.shape[1]})


def sample_given_set(dictionary: DataDictionary, p_target: SchedulingTrajectory, K: int,
                     s: SystemStructure, rng: np.random.Generator, require_unique: bool = True,
                     max_tries: int = 10_000, rtol: Optional[float] = None) -> IndexSet:
    """Draw ``K`` distinct given positions uniformly at random.

    With ``require_unique`` the draw is repeated until the uniqueness test
    passes for it; ``H 𝒩`` is formed once and only the selected rows are
    re-ranked per draw.

    Raises
    ------
    RuntimeError
        If no admissible set is found within ``max_tries`` draws.
    """
    L = p_target.T
    universe = L * dictionary.n_w
    if not 0 <= K <= universe:
        raise ValueError(f"cannot draw {K} positions out of {universe}")

    def draw():
        return IndexSet(np.sort(rng.choice(universe, K, replace=False) + 1), universe)

    if not require_unique:
        return draw()
    target = min_given_points(s, L)
    if K < target:
        raise ValueError(f"K={K} is below the minimum {target} for a unique interpolant")
    H = hankel(dictionary.w, L).data
    HN = H @ kernel_basis(residual_matrix(dictionary, p_target, L), rtol)
    if numerical_rank(HN, rtol).rank != target:
        raise RuntimeError("dictionary does not span the behavior for this scheduling; "
                           "no given set can be unique")
    for _ in range(max_tries):
        idx = draw()
        if numerical_rank(HN[idx.zero_based], rtol).rank == target:
            return idx
    raise RuntimeError(f"no uniquely determining set of {K} positions found in {max_tries} draws")
