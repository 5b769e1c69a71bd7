"""Trajectory containers and index-set algebra.

Samples are stored column-wise: ``values[:, k]`` is the sample at time
``k + 1``. Vectorization is time-major with channels varying fastest, so
position ``(k - 1) * n_w + i`` (1-based) of ``vec(w)`` holds ``w_i(k)``.

All index sets exposed to users are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "Trajectory",
    "SchedulingTrajectory",
    "DataDictionary",
    "IndexSet",
    "SystemStructure",
    "vec_trajectory",
    "unvec",
    "lift_scheduling",
    "complement_index_set",
    "lift_index_set",
    "select",
    "scatter",
]


def _as_signal_matrix(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim == 1:
        # a scalar signal given as a flat sequence of samples
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array (channels x time), got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one channel and one sample, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Finite manifest-variable signal ``w(1), ..., w(T)``.

    Parameters
    ----------
    values : array_like, shape (n_w, T)
        Column ``k`` holds the sample at time ``k + 1``. A 1-D input is read
        as a single-channel signal.
    """

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_signal_matrix(self.values, "Trajectory"))

    @classmethod
    def from_samples(cls, samples: Iterable[Sequence[float]]) -> "Trajectory":
        """Build from a sequence of per-time samples ``[w(1), w(2), ...]``."""
        return cls(np.array([np.atleast_1d(s) for s in samples], dtype=float).T)

    @property
    def n_w(self) -> int:
        return self.values.shape[0]

    @property
    def T(self) -> int:
        return self.values.shape[1]

    def __len__(self):
        return self.T

    def __repr__(self):
        return f"{type(self).__name__}(n_w={self.n_w}, T={self.T})"

    def window(self, t1: int, t2: int) -> "Trajectory":
        """Truncation to the 1-based closed time interval ``[t1, t2]``."""
        if not 1 <= t1 <= t2 <= self.T:
            raise ValueError(f"window [{t1}, {t2}] outside [1, {self.T}]")
        return Trajectory(self.values[:, t1 - 1:t2])

    def concat(self, other: "Trajectory") -> "Trajectory":
        """Concatenation ``self ∧ other`` in time."""
        if other.n_w != self.n_w:
            raise ValueError("cannot concatenate trajectories with different channel counts")
        return Trajectory(np.hstack([self.values, other.values]))

    def channel(self, i: int) -> np.ndarray:
        """Samples of the 1-based channel ``i``."""
        return self.values[i - 1]

    def allclose(self, other: "Trajectory", atol: float = 1e-12) -> bool:
        return self.values.shape == other.values.shape and bool(
            np.allclose(self.values, other.values, rtol=0.0, atol=atol))


@dataclass(frozen=True, eq=False)
class SchedulingTrajectory:
    """Scheduling signal ``p(1), ..., p(T)`` with an optional box scheduling set.

    ``bounds`` has shape (n_p, 2) holding ``[lo_j, hi_j]`` per channel.
    """

    values: np.ndarray
    bounds: Optional[np.ndarray] = None

    def __post_init__(self):
        values = _as_signal_matrix(self.values, "SchedulingTrajectory")
        object.__setattr__(self, "values", values)
        if self.bounds is not None:
            bounds = np.array(self.bounds, dtype=float).reshape(-1, 2)
            if bounds.shape[0] == 1 and values.shape[0] > 1:
                bounds = np.repeat(bounds, values.shape[0], axis=0)
            if bounds.shape[0] != values.shape[0]:
                raise ValueError("bounds must give one [lo, hi] interval per scheduling channel")
            if np.any(bounds[:, 0] > bounds[:, 1]):
                raise ValueError("scheduling bounds must satisfy lo <= hi")
            # tiny slack absorbs round-off from maps evaluated near the boundary
            slack = 1e-12 * (1.0 + np.abs(bounds))
            if np.any(values < (bounds[:, :1] - slack[:, :1])) or np.any(
                    values > (bounds[:, 1:] + slack[:, 1:])):
                raise ValueError("scheduling samples violate the declared scheduling set")
            bounds.setflags(write=False)
            object.__setattr__(self, "bounds", bounds)

    @property
    def n_p(self) -> int:
        return self.values.shape[0]

    @property
    def T(self) -> int:
        return self.values.shape[1]

    def __len__(self):
        return self.T

    def __repr__(self):
        return f"SchedulingTrajectory(n_p={self.n_p}, T={self.T})"

    def window(self, t1: int, t2: int) -> "SchedulingTrajectory":
        if not 1 <= t1 <= t2 <= self.T:
            raise ValueError(f"window [{t1}, {t2}] outside [1, {self.T}]")
        return SchedulingTrajectory(self.values[:, t1 - 1:t2], self.bounds)

    @classmethod
    def constant(cls, value, T: int, bounds=None) -> "SchedulingTrajectory":
        value = np.atleast_1d(np.asarray(value, dtype=float))
        return cls(np.repeat(value[:, None], T, axis=1), bounds)


@dataclass(frozen=True, eq=False)
class DataDictionary:
    """Recorded pair ``(w̆, p̆)`` of equal length ``N_d``."""

    w: Trajectory
    p: SchedulingTrajectory

    def __post_init__(self):
        if self.w.T != self.p.T:
            raise ValueError(f"dictionary length mismatch: w has {self.w.T} samples, p has {self.p.T}")

    @property
    def N_d(self) -> int:
        return self.w.T

    @property
    def n_w(self) -> int:
        return self.w.n_w

    @property
    def n_p(self) -> int:
        return self.p.n_p

    def __repr__(self):
        return f"DataDictionary(N_d={self.N_d}, n_w={self.n_w}, n_p={self.n_p})"


@dataclass(frozen=True, eq=False)
class IndexSet:
    """Sorted set of 1-based positions into a vector of length ``universe``."""

    indices: np.ndarray
    universe: int

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64).ravel()
        if int(self.universe) < 1:
            raise ValueError("universe must be a positive integer")
        if idx.size and (idx.min() < 1 or idx.max() > self.universe):
            raise ValueError(f"indices must lie in [1, {self.universe}]")
        if idx.size > 1 and np.any(np.diff(idx) <= 0):
            raise ValueError("indices must be strictly increasing")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "universe", int(self.universe))

    @classmethod
    def from_iterable(cls, indices: Iterable[int], universe: int) -> "IndexSet":
        """Build from unsorted, possibly repeated, 1-based indices."""
        return cls(np.unique(np.fromiter(indices, dtype=np.int64)), universe)

    @classmethod
    def full(cls, universe: int) -> "IndexSet":
        return cls(np.arange(1, universe + 1), universe)

    @classmethod
    def empty(cls, universe: int) -> "IndexSet":
        return cls(np.empty(0, dtype=np.int64), universe)

    @property
    def zero_based(self) -> np.ndarray:
        return self.indices - 1

    def __len__(self):
        return int(self.indices.size)

    def __iter__(self):
        return iter(int(i) for i in self.indices)

    def __contains__(self, i) -> bool:
        return bool(np.any(self.indices == i))

    def __eq__(self, other):
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.universe == other.universe and np.array_equal(self.indices, other.indices)

    def __hash__(self):
        return hash((self.universe, self.indices.tobytes()))

    def __repr__(self):
        return f"IndexSet({self.indices.tolist()}, universe={self.universe})"

    def tolist(self) -> list:
        return [int(i) for i in self.indices]

    def union(self, other: "IndexSet") -> "IndexSet":
        if other.universe != self.universe:
            raise ValueError("index sets live in different universes")
        return IndexSet(np.union1d(self.indices, other.indices), self.universe)


@dataclass(frozen=True)
class SystemStructure:
    """Structural invariants of a behavior: order, input count and lag."""

    n_w: int
    n_p: int
    order: int
    n_inputs: int
    lag: int

    def __post_init__(self):
        if self.n_w < 1 or self.n_p < 1:
            raise ValueError("n_w and n_p must be positive")
        if self.order < 0 or self.n_inputs < 0 or self.lag < 0:
            raise ValueError("order, n_inputs and lag must be nonnegative")
        if self.n_inputs > self.n_w:
            raise ValueError("n_inputs cannot exceed n_w")


def vec_trajectory(w: Trajectory) -> np.ndarray:
    """Stack the samples of ``w`` in time order (channels fastest)."""
    return w.values.T.reshape(-1).copy()


def unvec(v, n_w: int) -> Trajectory:
    """Inverse of :func:`vec_trajectory`."""
    v = np.asarray(v, dtype=float).ravel()
    if n_w < 1 or v.size % n_w:
        raise ValueError(f"vector of length {v.size} cannot be split into samples of {n_w} channels")
    return Trajectory(v.reshape(-1, n_w).T)


def lift_scheduling(w: Trajectory, p: SchedulingTrajectory) -> Trajectory:
    """Samplewise Kronecker product ``p(k) ⊗ w(k)`` (``n_p * n_w`` channels)."""
    if w.T != p.T:
        raise ValueError(f"length mismatch: w has {w.T} samples, p has {p.T}")
    lifted = np.einsum("ik,jk->ijk", p.values, w.values).reshape(p.n_p * w.n_w, w.T)
    return Trajectory(lifted)


def complement_index_set(given: IndexSet) -> IndexSet:
    """Missing indices: ``{1, ..., universe}`` minus ``given``."""
    full = np.arange(1, given.universe + 1)
    return IndexSet(np.setdiff1d(full, given.indices, assume_unique=True), given.universe)


def lift_index_set(given: IndexSet, n_w: int, n_p: int) -> IndexSet:
    """Positions in ``vec(w^p)`` produced by the entries of ``w`` selected by ``given``.

    Entry ``i`` of ``vec(w)`` lives in sample ``ceil(i / n_w)``; in the lifted
    signal it contributes ``n_p`` entries, one per scheduling channel ``r``,
    at ``i + n_w * (r + (ceil(i / n_w) - 1) * (n_p - 1) - 1)``.
    """
    if given.universe % n_w:
        raise ValueError("index-set universe must be a multiple of n_w")
    i = given.indices[:, None]
    r = np.arange(1, n_p + 1)[None, :]
    sample = -(-i // n_w)  # ceil(i / n_w) for positive integers
    lifted = i + n_w * (r + (sample - 1) * (n_p - 1) - 1)
    return IndexSet(np.sort(lifted.ravel()), given.universe * n_p)


def select(v, idx: IndexSet) -> np.ndarray:
    """Entries of ``v`` at the (1-based) positions in ``idx``."""
    v = np.asarray(v)
    if len(idx) and idx.indices[-1] > v.shape[0]:
        raise IndexError(f"index {idx.indices[-1]} out of range for length {v.shape[0]}")
    return v[idx.zero_based]


def scatter(values, idx: IndexSet, universe: int, fill: float = 0.0) -> np.ndarray:
    """Place ``values`` at the positions ``idx`` of a length-``universe`` vector."""
    values = np.asarray(values, dtype=float).ravel()
    if values.size != len(idx):
        raise ValueError(f"{values.size} values for {len(idx)} indices")
    if len(idx) and idx.indices[-1] > universe:
        raise IndexError(f"index {idx.indices[-1]} out of range for universe {universe}")
    out = np.full(universe, fill, dtype=float)
    out[idx.zero_based] = values
    return out
