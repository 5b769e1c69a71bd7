"""Model-based shifted-affine LPV kernel representations and simulation.

A representation is ``sum_i r_i(q^i p) q^i w = 0`` with
``r_i(q^i p) = r_{i,0} + sum_j r_{i,j} p_j(k + i)``, i.e. the coefficient of
``w(k + i)`` depends affinely on the scheduling at the same time ``k + i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .signals import DataDictionary, SchedulingTrajectory, SystemStructure, Trajectory

__all__ = [
    "KernelRep",
    "ExcitationSpec",
    "MSD_DEFAULT",
    "msd_kernel",
    "msd_structure",
    "simulate_kernel",
    "generate_dictionary",
    "kernel_residual",
    "scheduling_signal",
    "random_trajectory",
]

# Parameter values of the parameter-varying mass-spring-damper benchmark.
MSD_DEFAULT = {"m": 1.0, "d": 1.0, "kappa0": 10.0, "kappa1": 9.0, "tau": 0.1}


@dataclass(frozen=True, eq=False)
class KernelRep:
    """Shifted-affine kernel representation.

    ``coeffs[i, j]`` is the ``rows x n_w`` matrix ``r_{i,j}``; ``j = 0`` is the
    constant part. ``io_partition`` labels each manifest channel ``"u"`` or ``"y"``.
    """

    coeffs: np.ndarray
    io_partition: Tuple[str, ...]

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        if coeffs.ndim != 4:
            raise ValueError("coeffs must have shape (n_r + 1, n_p + 1, rows, n_w)")
        part = tuple(self.io_partition)
        if len(part) != coeffs.shape[3] or set(part) - {"u", "y"}:
            raise ValueError("io_partition must label every manifest channel 'u' or 'y'")
        if part.count("y") != coeffs.shape[2]:
            raise ValueError("forward simulation needs as many kernel rows as output channels")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "io_partition", part)

    @property
    def n_r(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def n_p(self) -> int:
        return self.coeffs.shape[1] - 1

    @property
    def n_w(self) -> int:
        return self.coeffs.shape[3]

    @property
    def rows(self) -> int:
        return self.coeffs.shape[2]

    @property
    def input_channels(self) -> np.ndarray:
        return np.array([i for i, lab in enumerate(self.io_partition) if lab == "u"], dtype=int)

    @property
    def output_channels(self) -> np.ndarray:
        return np.array([i for i, lab in enumerate(self.io_partition) if lab == "y"], dtype=int)

    def coefficient(self, i: int, p_sample) -> np.ndarray:
        """``r_i`` evaluated at the scheduling sample ``p_sample``."""
        p_sample = np.atleast_1d(p_sample)
        return self.coeffs[i, 0] + np.tensordot(p_sample, self.coeffs[i, 1:], axes=(0, 0))


@dataclass(frozen=True)
class ExcitationSpec:
    """Seeded excitation used to record a data dictionary.

    The seed is split into two independent streams (inputs first, then
    scheduling) with :class:`numpy.random.SeedSequence`.
    """

    seed: int
    N_d: int
    input_law: str = "gaussian-unit"
    scheduling_law: str = "uniform-pm1"


def msd_kernel(m: float = 1.0, d: float = 1.0, kappa0: float = 10.0, kappa1: float = 9.0,
               tau: float = 0.1) -> KernelRep:
    """Euler-discretized mass-spring-damper with stiffness ``kappa0 + kappa1 p``.

    Manifest signal ``w = col(u, y)``; single kernel row
    ``-tau²/m u(k) + y(k+2) + (d tau - 2m)/m y(k+1) + ((m + kappa0 tau² - d tau)/m + kappa1 tau²/m p(k)) y(k) = 0``.
    """
    if m <= 0 or tau <= 0:
        raise ValueError("mass and sampling time must be positive")
    coeffs = np.zeros((3, 2, 1, 2))
    coeffs[0, 0, 0, 0] = -tau ** 2 / m
    coeffs[0, 0, 0, 1] = (m + kappa0 * tau ** 2 - d * tau) / m
    coeffs[0, 1, 0, 1] = kappa1 * tau ** 2 / m
    coeffs[1, 0, 0, 1] = (d * tau - 2 * m) / m
    coeffs[2, 0, 0, 1] = 1.0
    return KernelRep(coeffs, ("u", "y"))


def msd_structure() -> SystemStructure:
    return SystemStructure(n_w=2, n_p=1, order=2, n_inputs=1, lag=2)


def _assemble(rep: KernelRep, u: np.ndarray, y: np.ndarray) -> np.ndarray:
    w = np.empty((rep.n_w, u.shape[1]))
    w[rep.input_channels] = u
    w[rep.output_channels] = y
    return w


def simulate_kernel(rep: KernelRep, u: Trajectory, p: SchedulingTrajectory,
                    y_init: Trajectory) -> Trajectory:
    """Forward recursion of the kernel equation.

    Parameters
    ----------
    rep : KernelRep
    u : Trajectory
        Input samples, one channel per ``"u"`` label, length ``T``.
    p : SchedulingTrajectory
        Scheduling, length ``T``.
    y_init : Trajectory
        The first ``n_r`` output samples.

    Returns
    -------
    Trajectory
        Full manifest signal ``w`` of length ``T`` with channels ordered by
        ``rep.io_partition``.
    """
    n_r = rep.n_r
    T = u.T
    ins, outs = rep.input_channels, rep.output_channels
    if u.n_w != ins.size:
        raise ValueError(f"expected {ins.size} input channels, got {u.n_w}")
    if p.T != T or p.n_p != rep.n_p:
        raise ValueError("scheduling must match the input length and the representation's n_p")
    if y_init.T != n_r or y_init.n_w != outs.size:
        raise ValueError(f"y_init must hold {n_r} samples of {outs.size} outputs")
    if T < n_r:
        raise ValueError(f"trajectory length {T} shorter than the lag {n_r}")

    y = np.zeros((outs.size, T))
    y[:, :n_r] = y_init.values
    w = _assemble(rep, u.values, y)
    for k in range(T - n_r):
        lead = rep.coefficient(n_r, p.values[:, k + n_r])
        lead_y = lead[:, outs]
        rhs = lead[:, ins] @ w[ins, k + n_r]
        for i in range(n_r):
            rhs = rhs + rep.coefficient(i, p.values[:, k + i]) @ w[:, k + i]
        try:
            w[outs, k + n_r] = np.linalg.solve(lead_y, -rhs)
        except np.linalg.LinAlgError as exc:
            raise np.linalg.LinAlgError(
                f"leading output coefficient is singular at k={k + n_r + 1}") from exc
    return Trajectory(w)


def generate_dictionary(rep: KernelRep, spec: ExcitationSpec) -> DataDictionary:
    """Record a data dictionary from zero initial outputs under seeded excitation."""
    if spec.N_d < rep.n_r + 1:
        raise ValueError(f"N_d must be at least n_r + 1 = {rep.n_r + 1}")
    if spec.input_law != "gaussian-unit":
        raise ValueError(f"unknown input law {spec.input_law!r}")
    if spec.scheduling_law != "uniform-pm1":
        raise ValueError(f"unknown scheduling law {spec.scheduling_law!r}")
    input_seq, sched_seq = np.random.SeedSequence(spec.seed).spawn(2)
    n_u = rep.input_channels.size
    u = np.random.default_rng(input_seq).standard_normal((n_u, spec.N_d))
    p = np.random.default_rng(sched_seq).uniform(-1.0, 1.0, (rep.n_p, spec.N_d))
    y_init = Trajectory(np.zeros((rep.output_channels.size, rep.n_r)))
    w = simulate_kernel(rep, Trajectory(u), SchedulingTrajectory(p), y_init)
    return DataDictionary(w, SchedulingTrajectory(p, bounds=[[-1.0, 1.0]] * rep.n_p))


def kernel_residual(rep: KernelRep, w: Trajectory, p: SchedulingTrajectory) -> np.ndarray:
    """Norm of ``sum_i r_i(p(k+i)) w(k+i)`` for every window ``k = 1, ..., T - n_r``."""
    if w.T != p.T:
        raise ValueError(f"length mismatch: w has {w.T} samples, p has {p.T}")
    if w.n_w != rep.n_w or p.n_p != rep.n_p:
        raise ValueError("signal dimensions do not match the representation")
    n_r = rep.n_r
    if w.T < n_r + 1:
        raise ValueError(f"need at least {n_r + 1} samples")
    T = w.T
    total = np.zeros((rep.rows, T - n_r))
    for i in range(n_r + 1):
        wi = w.values[:, i:T - n_r + i]
        pi = p.values[:, i:T - n_r + i]
        total += rep.coeffs[i, 0] @ wi
        for j in range(rep.n_p):
            total += (rep.coeffs[i, j + 1] @ wi) * pi[j]
    return np.linalg.norm(total, axis=0)


def scheduling_signal(law: str, T: int, seed: int = 0, amplitude: float = 1.0,
                      period: float = None, phase: float = 0.0, value: float = 0.0,
                      values=None) -> SchedulingTrajectory:
    """Single-channel target scheduling on ``[1, T]``.

    Laws: ``"uniform-pm1"`` (seeded ``U(-1, 1)``), ``"sinusoid"``
    (``amplitude * sin(2 pi k / period + phase)``, default period ``T``),
    ``"constant"`` and ``"values"`` (explicit samples).
    """
    k = np.arange(1, T + 1)
    if law == "uniform-pm1":
        p = np.random.default_rng(seed).uniform(-1.0, 1.0, T)
    elif law == "sinusoid":
        p = amplitude * np.sin(2 * np.pi * k / (period or T) + phase)
    elif law == "constant":
        p = np.full(T, float(value))
    elif law == "values":
        p = np.asarray(values, dtype=float).ravel()
        if p.size != T:
            raise ValueError(f"expected {T} scheduling values, got {p.size}")
    else:
        raise ValueError(f"unknown scheduling law {law!r}")
    return SchedulingTrajectory(p.reshape(1, T))


def random_trajectory(rep: KernelRep, p: SchedulingTrajectory, seed: int,
                      y_init: str = "random") -> Trajectory:
    """Behavior trajectory under ``p`` with standard normal inputs.

    ``y_init`` is ``"random"`` (standard normal initial outputs) or ``"zero"``.
    Inputs and initial outputs come from independent streams of ``seed``.
    """
    u_seq, y_seq = np.random.SeedSequence(seed).spawn(2)
    n_u, n_y = rep.input_channels.size, rep.output_channels.size
    u = np.random.default_rng(u_seq).standard_normal((n_u, p.T))
    if y_init == "random":
        y0 = np.random.default_rng(y_seq).standard_normal((n_y, rep.n_r))
    elif y_init == "zero":
        y0 = np.zeros((n_y, rep.n_r))
    else:
        raise ValueError(f"unknown initial condition law {y_init!r}")
    return simulate_kernel(rep, Trajectory(u), p, Trajectory(y0))
