"""Compression model for nilpotent contractions.

A contraction T (||T|| <= 1) with T^n = 0 is the compression V^* (I_r (x) S_n^*) V
of r copies of the adjoint shift, where r is the rank of the defect operator
D_T = (I - T^*T)^{1/2} and the isometry V stacks the blocks D_T T^{t-1},
t = 1..n. This module builds V, checks the identities numerically, and
compares computed rank-k ranges of T against the resulting disc bound.
"""

import math
from dataclasses import dataclass

import numpy as np

from .engine import DEFAULT_THETA_SAMPLES, numerical_radius, rank_ranges
from .errors import NotContractionError, NotNilpotentError
from .geometry import ConvexRegion, DiscRegion, default_tol
from .linalg import (
    DEFAULT_RANK_TOL,
    as_matrix,
    hermitian_eigh,
    max_abs,
    nilpotency_index,
    numerical_rank,
    operator_norm,
    psd_sqrt,
    shift_matrix,
)
from .oracles import nilpotent_bound

__all__ = [
    "DilationModel",
    "ContainmentReport",
    "defect_operator",
    "build_dilation",
    "verify_dilation",
    "telescoping_residual",
    "containment_report",
    "containment_reports",
    "radius_bound_report",
    "CONTRACTION_SLACK",
]

CONTRACTION_SLACK = 1e-8


@dataclass(frozen=True, eq=False)
class DilationModel:
    T: np.ndarray
    n: int
    r: int
    defect_basis: np.ndarray  # N x r, orthonormal columns
    V: np.ndarray  # (r n) x N

    @property
    def shift_block(self):
        """I_r (x) S_n^*, the operator that T compresses."""
        return np.kron(np.eye(self.r), shift_matrix(self.n).conj().T)


@dataclass(frozen=True, eq=False)
class ContainmentReport:
    k: int
    n: int
    r: int
    computed_region: ConvexRegion
    bound: DiscRegion | None
    contained: bool
    margin: float
    tol: float
    r_loose: int
    rank_sensitive: bool


def _check_contraction(T):
    norm = operator_norm(T)
    if norm > 1.0 + CONTRACTION_SLACK:
        raise NotContractionError(f"not a contraction: ||T|| = {norm:.12g} > 1")
    return norm


def _check_nilpotent(T):
    n = nilpotency_index(T)
    if n is None:
        raise NotNilpotentError("not nilpotent: no power T^n vanishes for n <= dim")
    return n


def defect_operator(T):
    """(I - T^*T)^{1/2} for a contraction T."""
    T = as_matrix(T, square=True)
    _check_contraction(T)
    N = T.shape[0]
    # ||T|| <= 1 + slack lets I - T^*T dip to about -2 * slack
    return psd_sqrt(np.eye(N) - T.conj().T @ T, tol=3 * CONTRACTION_SLACK)


def _defect_basis(D, rank_tol):
    w, U = hermitian_eigh(D)
    keep = w > rank_tol * max(w[0], 0.0)
    U = U[:, keep]
    # fix each column's phase: largest-magnitude component real positive
    lead = np.argmax(np.abs(U), axis=0)
    ph = U[lead, np.arange(U.shape[1])]
    return U * (np.abs(ph) / ph)[None, :]


def build_dilation(T, rank_tol=DEFAULT_RANK_TOL):
    """Isometry V with T = V^* (I_r (x) S_n^*) V.

    Row block t (r rows, t = 1..n) of V is ``B^* D T^{t-1}``, where the
    columns of B span the range of the defect operator D.
    """
    T = as_matrix(T, square=True)
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    _check_contraction(T)
    n = _check_nilpotent(T)
    D = defect_operator(T)
    r = numerical_rank(D, rank_tol)
    if r == 0:
        raise RuntimeError("defect operator vanished for a nilpotent matrix; inconsistent input")
    B = _defect_basis(D, rank_tol)
    if B.shape[1] != r:
        raise RuntimeError(f"defect basis has {B.shape[1]} columns but rank is {r}")

    N = T.shape[0]
    # slot (t, j) of the tensor product lands in row j * n + t, matching kron(I_r, S_n^*)
    V = np.zeros((r * n, N), dtype=complex)
    P = np.eye(N, dtype=complex)
    for t in range(n):
        V[t::n, :] = B.conj().T @ D @ P
        P = P @ T
    return DilationModel(T, n, r, B, V)


def verify_dilation(model):
    """Max-abs residuals of V^*V = I, V T = K V and T = V^* K V with K = I_r (x) S_n^*."""
    T, V = model.T, model.V
    K = model.shift_block
    N = T.shape[0]
    iso = max_abs(V.conj().T @ V - np.eye(N))
    intertwine = max_abs(V @ T - K @ V)
    compression = max_abs(T - V.conj().T @ K @ V)
    return iso, intertwine, compression


def telescoping_residual(T, n=None):
    """Max-abs residual of sum_{t<n} T^{t*} (I - T^*T) T^t = I."""
    T = as_matrix(T, square=True)
    n = _check_nilpotent(T) if n is None else n
    N = T.shape[0]
    defect2 = np.eye(N) - T.conj().T @ T
    total = np.zeros((N, N), dtype=complex)
    P = np.eye(N, dtype=complex)
    for _ in range(n):
        total += P.conj().T @ defect2 @ P
        P = P @ T
    return max_abs(total - np.eye(N))


def _margin(region, bound):
    if region.is_empty:
        return bound.radius if bound is not None else 0.0
    if bound is None:
        return -math.inf
    reach = float(np.max(np.abs(region.vertices - bound.center)))
    return bound.radius - reach


def containment_reports(T, ks, theta_samples=DEFAULT_THETA_SAMPLES, rank_tol=DEFAULT_RANK_TOL,
                      tol=None):
    """Containment reports for several k, sharing one eigenvalue sweep.

    ``margin`` is the bound radius minus the farthest computed vertex; the
    computed region is an outer approximation, so containment allows a
    slack of ``outer_error_estimate + tol``. A k above the matrix size has
    an empty rank-k range and is reported as trivially contained.
    """
    T = as_matrix(T, square=True)
    _check_contraction(T)
    n = _check_nilpotent(T)
    ks = [int(k) for k in ks]
    if any(k < 1 for k in ks):
        raise ValueError("k must be positive")
    N = T.shape[0]
    D = defect_operator(T)
    r = numerical_rank(D, rank_tol)
    r_loose = numerical_rank(D, 10 * rank_tol)
    tol = default_tol(operator_norm(T) + 1.0) if tol is None else tol
    inside = sorted({k for k in ks if k <= N})
    results = dict(zip(inside, rank_ranges(T, inside, theta_samples, tol)))

    reports = []
    for k in ks:
        bound = nilpotent_bound(n, k, r)
        if k in results:
            region = results[k].region
            slack = results[k].outer_error_estimate + tol
        else:
            region, slack = ConvexRegion.empty(), tol
        margin = _margin(region, bound)
        reports.append(ContainmentReport(
            k=k, n=n, r=r,
            computed_region=region,
            bound=bound,
            contained=margin >= -slack,
            margin=margin,
            tol=slack,
            r_loose=r_loose,
            rank_sensitive=r != r_loose,
        ))
    return reports


def containment_report(T, k, theta_samples=DEFAULT_THETA_SAMPLES, rank_tol=DEFAULT_RANK_TOL,
                     tol=None):
    """Check that the computed rank-k range of T sits inside its dilation disc.

    See :func:`containment_reports` for the meaning of the fields.
    """
    return containment_reports(T, [k], theta_samples, rank_tol, tol)[0]


def radius_bound_report(T, theta_samples=DEFAULT_THETA_SAMPLES):
    """(numerical radius, ||T|| cos(pi / (n + 1))) for nilpotent T of index n."""
    T = as_matrix(T, square=True)
    n = _check_nilpotent(T)
    omega = numerical_radius(T, theta_samples)
    return omega, operator_norm(T) * math.cos(math.pi / (n + 1))
