"""Hankel matrices and the scheduling-residual matrix of the data-driven representation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.linalg import block_diag

from .signals import (DataDictionary, IndexSet, SchedulingTrajectory, Trajectory,
                      lift_scheduling)

__all__ = [
    "HankelMatrix",
    "hankel",
    "select_rows",
    "blockdiag_kron",
    "residual_matrix",
    "scheduled_stack",
]


@dataclass(frozen=True, eq=False)
class HankelMatrix:
    """Block-Hankel matrix of depth ``L`` built from a ``source_channels``-channel signal.

    Behaves as an ndarray in numpy expressions (``H @ g``, ``np.vstack``).
    """

    data: np.ndarray
    L: int
    source_channels: int

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.data
        return self.data.astype(dtype)

    def __matmul__(self, other):
        return self.data @ np.asarray(other)

    @property
    def shape(self):
        return self.data.shape


def hankel(signal: Trajectory, L: int) -> HankelMatrix:
    """Depth-``L`` Hankel matrix of ``signal``.

    Column ``j`` (1-based) is ``vec`` of the window ``signal(j), ..., signal(j + L - 1)``.

    Raises
    ------
    ValueError
        If ``L`` is not in ``[1, signal.T]``.
    """
    if not 1 <= L <= signal.T:
        raise ValueError(f"Hankel depth L={L} must lie in [1, T={signal.T}]")
    c = signal.n_w
    # windows[ch, col, lag] = signal[ch, col + lag]
    windows = sliding_window_view(signal.values, L, axis=1)
    data = np.ascontiguousarray(windows.transpose(2, 0, 1).reshape(L * c, signal.T - L + 1))
    return HankelMatrix(data, L, c)


def select_rows(H, idx: IndexSet) -> np.ndarray:
    """Rows of ``H`` at the 1-based positions ``idx``."""
    data = np.asarray(H)
    if idx.universe != data.shape[0]:
        raise ValueError(f"index set universe {idx.universe} does not match {data.shape[0]} rows")
    return data[idx.zero_based, :]


def blockdiag_kron(p: SchedulingTrajectory, n: int) -> np.ndarray:
    """``blkdiag(p(1) ⊗ I_n, ..., p(T) ⊗ I_n)``, of shape ``(T n_p n, T n)``."""
    eye = np.eye(n)
    return block_diag(*[np.kron(p.values[:, k:k + 1], eye) for k in range(p.T)])


def residual_matrix(dictionary: DataDictionary, p_target: SchedulingTrajectory, L: int) -> np.ndarray:
    """Scheduling-residual matrix ``H_L(w̆^p̆) - (p̃ ⊛ I_{n_w}) H_L(w̆)``.

    Its kernel parametrizes the dictionary columns combinations that remain
    trajectories once the scheduling is replaced by ``p_target``.
    """
    if p_target.T != L:
        raise ValueError(f"target scheduling has {p_target.T} samples, expected L={L}")
    if p_target.n_p != dictionary.n_p:
        raise ValueError(f"target scheduling has {p_target.n_p} channels, dictionary has {dictionary.n_p}")
    if dictionary.N_d < L:
        raise ValueError(f"dictionary length {dictionary.N_d} shorter than L={L}")
    H_w = hankel(dictionary.w, L).data
    H_lift = hankel(lift_scheduling(dictionary.w, dictionary.p), L).data
    return H_lift - blockdiag_kron(p_target, dictionary.n_w) @ H_w


def scheduled_stack(dictionary: DataDictionary, L: int) -> np.ndarray:
    """``[H_L(w̆); H_L(w̆^p̆)]``, the matrix whose rank is tested for excitation."""
    H_w = hankel(dictionary.w, L).data
    H_lift = hankel(lift_scheduling(dictionary.w, dictionary.p), L).data
    return np.vstack([H_w, H_lift])
