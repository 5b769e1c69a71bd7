"""Way-point optimal control by interpolation, and its iterated form for endogenous scheduling."""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .conditions import stacked_constraints
from .numerics import InfeasibleError, eq_constrained_lsq
from .signals import (DataDictionary, IndexSet, SchedulingTrajectory, Trajectory,
                      unvec, vec_trajectory)

__all__ = [
    "SchedulingMap",
    "SCHEDULING_MAPS",
    "msd_endogenous_map",
    "ControlProblem",
    "ControlResult",
    "SqpOptions",
    "SqpIterate",
    "NonlinearControlResult",
    "sample_weight",
    "waypoint_control",
    "nonlinear_waypoint_control",
    "linear_interp_init",
    "waypoints_to_given",
    "parabola_reference",
    "msd_parabola_waypoints",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SchedulingMap:
    """Samplewise map from a manifest sample ``w(k)`` to a scheduling sample ``p(k)``."""

    func: Callable[[np.ndarray], np.ndarray]
    n_p: int = 1
    name: str = "custom"
    bounds: Optional[Tuple[Tuple[float, float], ...]] = None

    def __call__(self, w: Trajectory) -> SchedulingTrajectory:
        vals = np.column_stack([np.atleast_1d(self.func(w.values[:, k])) for k in range(w.T)])
        return SchedulingTrajectory(vals.reshape(self.n_p, w.T), self.bounds)


def _msd_endogenous(w_k):
    y = w_k[1]
    return np.cos(y) * np.tanh(y)


msd_endogenous_map = SchedulingMap(_msd_endogenous, 1, "msd-endogenous", ((-1.0, 1.0),))

SCHEDULING_MAPS = {"msd-endogenous": msd_endogenous_map}


@dataclass(frozen=True, eq=False)
class ControlProblem:
    """Way-point control problem over the horizon ``L = given.universe / n_w``.

    ``scheduling`` is either a fixed trajectory or a :class:`SchedulingMap`
    (endogenous scheduling). ``Q`` weights the input channels and ``R`` the
    output channels, as labelled by ``io_partition``.
    """

    dictionary: DataDictionary
    scheduling: Union[SchedulingTrajectory, SchedulingMap]
    given: IndexSet
    w_given: np.ndarray
    Q: np.ndarray
    R: np.ndarray
    io_partition: Tuple[str, ...] = ("u", "y")
    w_ref: Optional[Trajectory] = None

    def __post_init__(self):
        n_w = self.dictionary.n_w
        w_given = np.array(self.w_given, dtype=float).ravel()
        object.__setattr__(self, "w_given", w_given)
        if w_given.size != len(self.given):
            raise ValueError(f"{w_given.size} way-point values for {len(self.given)} indices")
        if self.given.universe % n_w:
            raise ValueError("index set universe must be a multiple of n_w")
        part = tuple(self.io_partition)
        if len(part) != n_w or set(part) - {"u", "y"}:
            raise ValueError("io_partition must label every manifest channel 'u' or 'y'")
        object.__setattr__(self, "io_partition", part)
        Q = np.atleast_2d(np.array(self.Q, dtype=float))
        R = np.atleast_2d(np.array(self.R, dtype=float))
        for name, mat, size in (("Q", Q, part.count("u")), ("R", R, part.count("y"))):
            if mat.shape != (size, size):
                raise ValueError(f"{name} must be {size}x{size}, got {mat.shape}")
            if not np.allclose(mat, mat.T) or np.linalg.eigvalsh(mat).min() < -1e-12 * max(1, abs(mat).max()):
                raise ValueError(f"{name} must be symmetric positive semidefinite")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "R", R)
        if self.w_ref is None:
            object.__setattr__(self, "w_ref", Trajectory(np.zeros((n_w, self.L))))
        elif self.w_ref.T != self.L or self.w_ref.n_w != n_w:
            raise ValueError(f"reference must have {n_w} channels and {self.L} samples")
        if isinstance(self.scheduling, SchedulingTrajectory) and self.scheduling.T != self.L:
            raise ValueError(f"scheduling has {self.scheduling.T} samples, horizon is {self.L}")

    @property
    def L(self) -> int:
        return self.given.universe // self.dictionary.n_w

    @property
    def n_w(self) -> int:
        return self.dictionary.n_w


class ControlResult(NamedTuple):
    trajectory: Trajectory
    cost: float
    g: np.ndarray


@dataclass(frozen=True)
class SqpOptions:
    tol_p: float = 1e-7
    max_iters: int = 100
    record_iterates: bool = False

    def __post_init__(self):
        if self.tol_p <= 0 or self.max_iters < 1:
            raise ValueError("tol_p must be positive and max_iters at least 1")


@dataclass(frozen=True, eq=False)
class SqpIterate:
    iteration: int
    trajectory: Trajectory
    scheduling: SchedulingTrajectory
    step_norm: float
    cost: float


@dataclass(frozen=True, eq=False)
class NonlinearControlResult:
    trajectory: Trajectory
    p_final: SchedulingTrajectory
    iterations: int
    converged: bool
    cost: float
    step_norms: List[float]
    history: Optional[List[SqpIterate]] = None

    def __iter__(self):
        # unpacks like (trajectory, p_final, iterations, history)
        return iter((self.trajectory, self.p_final, self.iterations, self.history))


def sample_weight(Q, R, io_partition: Sequence[str]) -> np.ndarray:
    """Per-sample weight: ``Q`` on the input channels, ``R`` on the output channels."""
    part = list(io_partition)
    ins = [i for i, lab in enumerate(part) if lab == "u"]
    outs = [i for i, lab in enumerate(part) if lab == "y"]
    W = np.zeros((len(part), len(part)))
    W[np.ix_(ins, ins)] = np.atleast_2d(Q)
    W[np.ix_(outs, outs)] = np.atleast_2d(R)
    return W


def _psd_sqrt(W):
    vals, vecs = np.linalg.eigh(0.5 * (W + W.T))
    return (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.T


def waypoint_control(prob: ControlProblem, p_target: Optional[SchedulingTrajectory] = None,
                     rtol: Optional[float] = None) -> ControlResult:
    """Minimum-cost trajectory through the way-points for a fixed scheduling.

    Minimizes ``(H g - vec(w_ref))ᵀ (I_L ⊗ W_s) (H g - vec(w_ref))`` over all
    ``g`` with ``H|I_g g = w_given`` and ``N g = 0``, where ``W_s`` places
    ``Q`` and ``R`` on the input and output channels.

    Raises
    ------
    InfeasibleError
        If the way-points cannot be met by any trajectory (Condition 2 fails).
    """
    if p_target is None:
        if not isinstance(prob.scheduling, SchedulingTrajectory):
            raise ValueError("problem has an endogenous scheduling map; pass p_target explicitly")
        p_target = prob.scheduling
    if p_target.T != prob.L:
        raise ValueError(f"scheduling has {p_target.T} samples, horizon is {prob.L}")
    H, N, A = stacked_constraints(prob.dictionary, p_target, prob.given)
    b = np.concatenate([prob.w_given, np.zeros(N.shape[0])])
    W_s = sample_weight(prob.Q, prob.R, prob.io_partition)
    root = np.kron(np.eye(prob.L), _psd_sqrt(W_s))
    ref = vec_trajectory(prob.w_ref)
    try:
        g = eq_constrained_lsq(root @ H, root @ ref, A, b, rtol)
    except InfeasibleError as exc:
        raise InfeasibleError(f"way-points are infeasible (Condition 2 violated): {exc}",
                              residual=exc.residual) from exc
    err = H @ g - ref
    W_big = np.kron(np.eye(prob.L), W_s)
    return ControlResult(unvec(H @ g, prob.n_w), float(err @ W_big @ err), g)


def linear_interp_init(given: IndexSet, w_given, L: int, n_w: int) -> Trajectory:
    """Per-channel linear interpolation of the given entries in time.

    Entries outside the span of a channel's given samples hold the nearest
    given value; channels without given samples are zero.
    """
    w_given = np.asarray(w_given, dtype=float).ravel()
    idx = given.zero_based
    times, channels = idx // n_w, idx % n_w
    out = np.zeros((n_w, L))
    grid = np.arange(L)
    for ch in range(n_w):
        mask = channels == ch
        if np.any(mask):
            out[ch] = np.interp(grid, times[mask], w_given[mask])
    return Trajectory(out)


def nonlinear_waypoint_control(prob: ControlProblem, opts: SqpOptions = SqpOptions(),
                               rtol: Optional[float] = None) -> NonlinearControlResult:
    """Way-point control with endogenous scheduling by fixed-point iteration.

    Starting from the linear interpolation of the way-points, the scheduling
    is evaluated along the current trajectory, frozen, and the resulting
    convex problem re-solved, until successive scheduling estimates differ by
    less than ``opts.tol_p`` in 2-norm.

    Raises
    ------
    InfeasibleError
        If some iterate's quadratic program is infeasible; ``iterate`` names it.
    """
    psi = prob.scheduling
    if not isinstance(psi, SchedulingMap):
        raise ValueError("nonlinear control needs a SchedulingMap")
    w = linear_interp_init(prob.given, prob.w_given, prob.L, prob.n_w)
    p = psi(w)
    step_norms: List[float] = []
    history: Optional[List[SqpIterate]] = [] if opts.record_iterates else None
    for it in range(1, opts.max_iters + 1):
        try:
            result = waypoint_control(prob, p, rtol)
        except InfeasibleError as exc:
            raise InfeasibleError(f"iterate {it}: {exc}", residual=exc.residual, iterate=it) from exc
        p_next = psi(result.trajectory)
        step = float(np.linalg.norm(p_next.values - p.values))
        step_norms.append(step)
        log.debug("iterate %d: |dp| = %.3e, J = %.6g", it, step, result.cost)
        if history is not None:
            history.append(SqpIterate(it, result.trajectory, p, step, result.cost))
        if step < opts.tol_p:
            return NonlinearControlResult(result.trajectory, p, it, True, result.cost,
                                          step_norms, history)
        p_used, p = p, p_next
    warnings.warn(f"scheduling iteration did not converge in {opts.max_iters} iterations "
                  f"(last |dp| = {step_norms[-1]:.3e})", RuntimeWarning, stacklevel=2)
    return NonlinearControlResult(result.trajectory, p_used, opts.max_iters, False, result.cost,
                                  step_norms, history)


def waypoints_to_given(triples, L: int, n_w: int) -> Tuple[IndexSet, np.ndarray]:
    """Convert 1-based ``(channel, time, value)`` triples to ``(I_g, w_given)``."""
    entries = {}
    for ch, k, val in triples:
        ch, k = int(ch), int(k)
        if not (1 <= ch <= n_w and 1 <= k <= L):
            raise ValueError(f"way-point (channel={ch}, time={k}) outside {n_w} channels x {L} samples")
        pos = (k - 1) * n_w + ch
        if pos in entries and entries[pos] != float(val):
            raise ValueError(f"conflicting way-points at channel {ch}, time {k}")
        entries[pos] = float(val)
    positions = sorted(entries)
    return IndexSet(np.array(positions, dtype=np.int64), L * n_w), np.array([entries[i] for i in positions])


def parabola_reference(k):
    """Output reference ``-k²/70 + 31k/70 - 3/7``."""
    k = np.asarray(k, dtype=float)
    return -k ** 2 / 70 + 31 * k / 70 - 3 / 7


def msd_parabola_waypoints(L: int = 30, period: int = 6, u_channel: int = 1, y_channel: int = 2):
    """Way-points of the mass-spring-damper benchmark as ``(channel, time, value)`` triples.

    The output follows :func:`parabola_reference` at ``k = period * i`` and the
    input is zero at ``k = period * i - period / 2``.
    """
    triples = []
    for k in range(period, L + 1, period):
        triples.append((y_channel, k, float(parabola_reference(k))))
    for k in range(period - period // 2, L + 1, period):
        triples.append((u_channel, k, 0.0))
    return triples
