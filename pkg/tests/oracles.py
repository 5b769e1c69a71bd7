"""Independent reference solutions shared by the unit and acceptance tests."""
import numpy as np

from lpvinterp.approximate import WeightMatrix
from lpvinterp.control import sample_weight
from lpvinterp.hankel import hankel, residual_matrix
from lpvinterp.numerics import eq_constrained_lsq, numerical_rank
from lpvinterp.signals import complement_index_set, vec_trajectory


def approximation_qp(prob, M):
    """Weighted fit as an equality-constrained QP in the stacked unknowns ``(w, g)``.

    Minimizes ``‖M^½(w|I_g − w_given)‖²`` subject to ``w = H g`` and ``N g = 0``.
    The QP is solved in least-squares form so the Hessian ``Hᵀ M H`` (whose
    condition number is the square of ``H``'s) is never formed.
    """
    H = hankel(prob.dictionary.w, prob.L).data
    N = residual_matrix(prob.dictionary, prob.p_target, prob.L)
    nt, ng = H.shape
    S = np.eye(nt)[prob.given.zero_based]
    Ms = WeightMatrix(M).sqrt()
    F = np.hstack([Ms @ S, np.zeros((len(prob.given), ng))])
    A = np.block([[np.eye(nt), -H], [np.zeros((N.shape[0], nt)), N]])
    traj = eq_constrained_lsq(F, Ms @ prob.w_given, A, np.zeros(A.shape[0]))[:nt]
    e = traj[prob.given.zero_based] - prob.w_given
    return traj, float(np.sqrt(e @ M @ e))


def control_kkt(prob, p, basis):
    """Dense KKT solve of the way-point QP in behavior coordinates ``w = B z``."""
    BI = basis[prob.given.zero_based]
    W = np.kron(np.eye(prob.L), sample_weight(prob.Q, prob.R, prob.io_partition))
    ref = vec_trajectory(prob.w_ref)
    r, k = basis.shape[1], len(prob.given)
    K = np.block([[2 * basis.T @ W @ basis, BI.T], [BI, np.zeros((k, k))]])
    sol = np.linalg.solve(K, np.concatenate([2 * basis.T @ W @ ref, prob.w_given]))
    return basis @ sol[:r]


def kernel_matrix(rep, p):
    """Model-based kernel equations on every window, as rows acting on ``vec(w)``."""
    T, n_w, n_r = p.T, rep.n_w, rep.n_r
    K = np.zeros((T - n_r, T * n_w))
    for k in range(T - n_r):
        for i in range(n_r + 1):
            K[k, (k + i) * n_w:(k + i + 1) * n_w] = rep.coefficient(i, p.values[:, k + i])[0]
    return K


def model_reconstruction(rep, p, given, w_given):
    """Fill in the missing entries from the model's kernel equations; ``None`` if not unique."""
    K = kernel_matrix(rep, p)
    miss = complement_index_set(given)
    Km, Kg = K[:, miss.zero_based], K[:, given.zero_based]
    if numerical_rank(Km).rank < len(miss):
        return None
    x = np.linalg.lstsq(Km, -Kg @ w_given, rcond=None)[0]
    v = np.zeros(p.T * rep.n_w)
    v[given.zero_based], v[miss.zero_based] = w_given, x
    return v
