"""Weighted least-squares approximation of given points by a behavior trajectory."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .hankel import hankel, residual_matrix, select_rows
from .interpolate import InterpolationProblem
from .numerics import apply_pinv, kernel_basis, range_basis
from .signals import DataDictionary, SchedulingTrajectory, Trajectory, unvec

__all__ = ["WeightMatrix", "ApproximationResult", "approximate", "behavior_basis"]


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric positive definite ``K x K`` weight of the approximation error."""

    M: np.ndarray

    def __post_init__(self):
        M = np.atleast_2d(np.array(self.M, dtype=float))
        if M.shape[0] != M.shape[1]:
            raise ValueError(f"weight matrix must be square, got {M.shape}")
        if not np.allclose(M, M.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(M).max())):
            raise ValueError("weight matrix must be symmetric")
        if np.linalg.eigvalsh(M).min() <= 0:
            raise ValueError("weight matrix must be positive definite")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)

    @classmethod
    def identity(cls, K: int) -> "WeightMatrix":
        return cls(np.eye(K))

    @classmethod
    def diagonal(cls, weights) -> "WeightMatrix":
        return cls(np.diag(np.asarray(weights, dtype=float)))

    @property
    def K(self) -> int:
        return self.M.shape[0]

    def sqrt(self) -> np.ndarray:
        """Symmetric square root ``M^{1/2}``."""
        vals, vecs = np.linalg.eigh(self.M)
        return (vecs * np.sqrt(vals)) @ vecs.T


class ApproximationResult(NamedTuple):
    trajectory: Trajectory
    error_norm: float


def behavior_basis(dictionary: DataDictionary, p_target: SchedulingTrajectory, L: int,
                   rtol: Optional[float] = None) -> np.ndarray:
    """Orthonormal basis of the depth-``L`` behavior for the scheduling ``p_target``.

    Spans ``image(H 𝒩)`` where the columns of ``𝒩`` span ``kernel(N)``.
    """
    H = hankel(dictionary.w, L).data
    kern = kernel_basis(residual_matrix(dictionary, p_target, L), rtol)
    return range_basis(H @ kern, rtol)


def approximate(prob: InterpolationProblem, M=None, rtol: Optional[float] = None) -> ApproximationResult:
    """Behavior trajectory closest to the given points in the ``M``-weighted 2-norm.

    Parameters
    ----------
    prob : InterpolationProblem
    M : WeightMatrix or array_like, optional
        Defaults to the identity.

    Returns
    -------
    ApproximationResult
        The approximating trajectory and its weighted error
        ``sqrt(eᵀ M e)`` with ``e = w̃_{I_g} - w_given``.
    """
    K = len(prob.given)
    if M is None:
        M = WeightMatrix.identity(K)
    elif not isinstance(M, WeightMatrix):
        M = WeightMatrix(M)
    if M.K != K:
        raise ValueError(f"weight matrix is {M.K}x{M.K} but there are {K} given points")

    B = behavior_basis(prob.dictionary, prob.p_target, prob.L, rtol)
    M_half = M.sqrt()
    coeffs = apply_pinv(M_half @ select_rows(B, prob.given), M_half @ prob.w_given, rtol)
    w_vec = B @ coeffs
    err = w_vec[prob.given.zero_based] - prob.w_given
    return ApproximationResult(unvec(w_vec, prob.n_w), float(np.sqrt(max(err @ M.M @ err, 0.0))))
