"""SVD-based rank, kernel, least-squares and equality-constrained QP routines.

Every routine uses the same threshold convention: singular values at or
below ``rtol * sigma_max`` are treated as zero, with the default
``rtol = max(rows, cols) * eps``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

__all__ = [
    "InfeasibleError",
    "RankReport",
    "LsSolution",
    "default_rtol",
    "feasibility_tolerance",
    "numerical_rank",
    "kernel_basis",
    "range_basis",
    "minnorm_lstsq",
    "apply_pinv",
    "eq_constrained_qp",
    "eq_constrained_lsq",
]

EPS = np.finfo(float).eps


class InfeasibleError(ValueError):
    """Equality constraints (given points) are inconsistent with the behavior."""

    def __init__(self, message, residual: float = float("nan"), iterate: Optional[int] = None):
        super().__init__(message)
        self.residual = residual
        self.iterate = iterate


@dataclass(frozen=True, eq=False)
class RankReport:
    rank: int
    singular_values: np.ndarray
    tolerance_used: float

    @property
    def near_degenerate(self) -> bool:
        """True if some singular value sits within a factor 10 of the threshold."""
        s = self.singular_values
        if s.size == 0 or self.tolerance_used == 0.0:
            return False
        return bool(np.any((s > self.tolerance_used / 10) & (s < self.tolerance_used * 10)))


@dataclass(frozen=True, eq=False)
class LsSolution:
    solution: np.ndarray
    residual_norm: float
    is_consistent: bool


def default_rtol(shape) -> float:
    return max(shape) * EPS if len(shape) else EPS


def feasibility_tolerance(b) -> float:
    """Residual bound separating consistent from inconsistent right-hand sides."""
    return 1e-8 * (1.0 + float(np.linalg.norm(b)))


def _svd(A, full_matrices=False):
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.size == 0:
        m, n = A.shape
        return (np.zeros((m, 0 if not full_matrices else m)), np.zeros(0),
                np.eye(n) if full_matrices else np.zeros((0, n)))
    return scipy.linalg.svd(A, full_matrices=full_matrices, lapack_driver="gesdd")


def _threshold(s, shape, rtol):
    if rtol is None:
        rtol = default_rtol(shape)
    smax = s[0] if s.size else 0.0
    return rtol * smax


def numerical_rank(A, rtol: Optional[float] = None) -> RankReport:
    """Numerical rank of ``A`` with its singular spectrum.

    >>> numerical_rank([[1, 2], [2, 4]]).rank
    1
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    s = _svd(A)[1] if A.size else np.zeros(0)
    tol = _threshold(s, A.shape, rtol)
    return RankReport(int(np.count_nonzero(s > tol)), s, float(tol))


def kernel_basis(A, rtol: Optional[float] = None) -> np.ndarray:
    """Orthonormal basis of ``kernel(A)``, one basis vector per column."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n)
    _, s, Vh = _svd(A, full_matrices=True)
    tol = _threshold(s, A.shape, rtol)
    r = int(np.count_nonzero(s > tol))
    return Vh[r:].T.copy()


def range_basis(A, rtol: Optional[float] = None) -> np.ndarray:
    """Orthonormal basis of ``image(A)``."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.size == 0:
        return np.zeros((A.shape[0], 0))
    U, s, _ = _svd(A)
    tol = _threshold(s, A.shape, rtol)
    r = int(np.count_nonzero(s > tol))
    return U[:, :r].copy()


def _pinv_solve(A, b, rtol):
    U, s, Vh = _svd(A)
    tol = _threshold(s, A.shape, rtol)
    r = int(np.count_nonzero(s > tol))
    return Vh[:r].T @ ((U[:, :r].T @ b) / s[:r])


def minnorm_lstsq(A, b, rtol: Optional[float] = None) -> LsSolution:
    """Minimum-norm least-squares solution of ``A x ≈ b``.

    ``is_consistent`` reports whether the residual is within
    :func:`feasibility_tolerance` of zero.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    if A.shape[0] != b.size:
        raise ValueError(f"A has {A.shape[0]} rows but b has {b.size} entries")
    if A.size == 0:
        x = np.zeros(A.shape[1])
    else:
        x = _pinv_solve(A, b, rtol)
    res = float(np.linalg.norm(A @ x - b)) if b.size else 0.0
    return LsSolution(x, res, res <= feasibility_tolerance(b))


def apply_pinv(A, b, rtol: Optional[float] = None) -> np.ndarray:
    """``A⁺ b`` via a truncated SVD."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float)
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"A has {A.shape[0]} rows but b has {b.shape[0]}")
    if A.size == 0:
        return np.zeros((A.shape[1],) + b.shape[1:])
    return _pinv_solve(A, b, rtol)


def eq_constrained_qp(W, c, A, b, rtol: Optional[float] = None) -> np.ndarray:
    """Minimize ``xᵀ W x - 2 cᵀ x`` subject to ``A x = b`` (null-space method).

    Parameters
    ----------
    W : (n, n) array_like
        Symmetric positive semidefinite weight.
    c : (n,) array_like
    A : (m, n) array_like
        Constraint matrix; ``m = 0`` means unconstrained.
    b : (m,) array_like
    rtol : float, optional
        Rank threshold shared by the particular solution, the kernel basis
        and the reduced solve.

    Returns
    -------
    x : ndarray
        ``x_p + Z z`` with ``x_p`` the minimum-norm particular solution, ``Z`` an
        orthonormal basis of ``kernel(A)`` and ``z`` the minimum-norm minimizer
        of the reduced quadratic.

    Raises
    ------
    InfeasibleError
        If ``A x = b`` has no solution within the feasibility tolerance.
    """
    W = np.atleast_2d(np.asarray(W, dtype=float))
    c = np.asarray(c, dtype=float).ravel()
    n = c.size
    A = np.asarray(A, dtype=float).reshape(-1, n)
    b = np.asarray(b, dtype=float).ravel()
    if W.shape != (n, n):
        raise ValueError(f"W must be {n}x{n}, got {W.shape}")

    particular = minnorm_lstsq(A, b, rtol)
    if not particular.is_consistent:
        raise InfeasibleError(
            f"equality constraints are inconsistent (residual {particular.residual_norm:.3e})",
            residual=particular.residual_norm)
    x_p = particular.solution
    Z = kernel_basis(A, rtol) if A.shape[0] else np.eye(n)
    if Z.shape[1] == 0:
        return x_p
    reduced_hessian = Z.T @ W @ Z
    reduced_hessian = 0.5 * (reduced_hessian + reduced_hessian.T)
    z = minnorm_lstsq(reduced_hessian, Z.T @ (c - W @ x_p), rtol).solution
    return x_p + Z @ z


def eq_constrained_lsq(F, d, A, b, rtol: Optional[float] = None) -> np.ndarray:
    """Minimize ``||F x - d||²`` subject to ``A x = b``.

    Same minimizer as ``eq_constrained_qp(FᵀF, Fᵀd, A, b)``, but the reduced
    problem is solved as a least-squares problem in ``F Z`` instead of through
    the normal equations, which keeps the condition number unsquared.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    d = np.asarray(d, dtype=float).ravel()
    n = F.shape[1]
    A = np.asarray(A, dtype=float).reshape(-1, n)
    b = np.asarray(b, dtype=float).ravel()
    if F.shape[0] != d.size:
        raise ValueError(f"F has {F.shape[0]} rows but d has {d.size} entries")

    particular = minnorm_lstsq(A, b, rtol)
    if not particular.is_consistent:
        raise InfeasibleError(
            f"equality constraints are inconsistent (residual {particular.residual_norm:.3e})",
            residual=particular.residual_norm)
    x_p = particular.solution
    Z = kernel_basis(A, rtol) if A.shape[0] else np.eye(n)
    if Z.shape[1] == 0:
        return x_p
    z = minnorm_lstsq(F @ Z, d - F @ x_p, rtol).solution
    return x_p + Z @ z
