"""Dense complex linear algebra used by the rank-k range engine.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; spectra are
1-D float arrays sorted in *descending* order, so ``spectrum[k - 1]`` is
the k-th largest eigenvalue.

Hermitian eigenvalues come from a cyclic complex Jacobi iteration that is
vectorised over a stack of matrices, which is how the engine evaluates a
whole sweep of rotation angles in one call.
"""

import numpy as np

from .errors import ConvergenceError, NotHermitianError, NotPSDError

__all__ = [
    "as_matrix",
    "identity",
    "shift_matrix",
    "max_abs",
    "rotated_hermitian_part",
    "rotated_hermitian_stack",
    "jacobi_eigh",
    "hermitian_eigenvalues",
    "hermitian_eigh",
    "kronecker",
    "psd_sqrt",
    "numerical_rank",
    "nilpotency_index",
    "operator_norm",
    "DEFAULT_RANK_TOL",
]

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
DEFAULT_RANK_TOL = 1e-8
DEFAULT_NILPOTENT_TOL = 1e-10


def as_matrix(M, square=False):
    """Coerce ``M`` to a finite 2-D complex array.

    Raises ``ValueError`` for wrong dimensionality, empty shape, non-finite
    entries, or (with ``square=True``) a non-square shape.
    """
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {A.shape}")
    if square and A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def identity(n):
    return np.eye(n, dtype=complex)


def shift_matrix(n):
    """The n x n shift: ones on the first subdiagonal, zeros elsewhere."""
    if n < 1:
        raise ValueError("shift_matrix needs n >= 1")
    return np.eye(n, k=-1, dtype=complex)


def max_abs(M):
    """Max-abs-entry norm (0 for an empty array)."""
    M = np.asarray(M)
    return float(np.max(np.abs(M))) if M.size else 0.0


def _symmetrize(H):
    return 0.5 * (H + np.conj(np.swapaxes(H, -1, -2)))


def rotated_hermitian_part(T, theta):
    """Return ``e^{i theta} T + e^{-i theta} T^*``, symmetrized exactly."""
    T = as_matrix(T, square=True)
    w = np.exp(1j * theta)
    return _symmetrize(w * T + np.conj(w) * T.conj().T)


def rotated_hermitian_stack(T, thetas):
    """Stack of ``rotated_hermitian_part(T, theta)`` over an array of angles."""
    T = as_matrix(T, square=True)
    w = np.exp(1j * np.asarray(thetas, dtype=float))[:, None, None]
    return _symmetrize(w * T[None] + np.conj(w) * T.conj().T[None])


def jacobi_eigh(H, vectors=False, max_sweeps=60):
    """Cyclic Jacobi diagonalisation of a stack of Hermitian matrices.

    ``H`` has shape ``(..., n, n)``. Each rotation zeroes the (p, q) entry of
    every matrix in the stack at once: the phase of ``H[p, q]`` is moved onto
    column q, after which a real Givens rotation finishes the job.

    Returns eigenvalues of shape ``(..., n)`` in *ascending* order and, if
    requested, the matching eigenvectors as columns.
    """
    H = np.asarray(H, dtype=complex)
    batch_shape = H.shape[:-2]
    n = H.shape[-1]
    A = _symmetrize(H).reshape((-1, n, n)).copy()
    V = np.broadcast_to(np.eye(n, dtype=complex), A.shape).copy() if vectors else None

    fro = np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2)))
    eps = np.finfo(float).eps
    offmask = ~np.eye(n, dtype=bool)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]

    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(A[:, offmask]) ** 2, axis=1))
        if np.all(off <= eps * fro):
            break
        for p, q in pairs:
            apq = A[:, p, q].copy()
            b = np.abs(apq)
            # entries this small cannot move an eigenvalue; rotating on them overflows
            live = b > 1e-18 * fro
            if not live.any():
                A[:, p, q] = 0.0
                A[:, q, p] = 0.0
                continue
            app = A[:, p, p].real.copy()
            aqq = A[:, q, q].real.copy()
            safe_b = np.where(live, b, 1.0)
            tau = (aqq - app) / (2.0 * safe_b)
            sign = np.where(tau >= 0.0, 1.0, -1.0)
            t = sign / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(live, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            phase = np.where(live, apq / safe_b, 1.0)
            cph = np.conj(phase)

            # G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns p, q
            g00, g01 = c, s
            g10, g11 = -s * cph, c * cph
            colp = A[:, :, p].copy()
            colq = A[:, :, q]
            A[:, :, p] = colp * g00[:, None] + colq * g10[:, None]
            A[:, :, q] = colp * g01[:, None] + colq * g11[:, None]
            rowp = A[:, p, :].copy()
            rowq = A[:, q, :]
            A[:, p, :] = rowp * np.conj(g00)[:, None] + rowq * np.conj(g10)[:, None]
            A[:, q, :] = rowp * np.conj(g01)[:, None] + rowq * np.conj(g11)[:, None]
            A[:, p, q] = 0.0
            A[:, q, p] = 0.0
            tb = np.where(live, t * b, 0.0)
            A[:, p, p] = app - tb
            A[:, q, q] = aqq + tb
            if vectors:
                vp = V[:, :, p].copy()
                vq = V[:, :, q]
                V[:, :, p] = vp * g00[:, None] + vq * g10[:, None]
                V[:, :, q] = vp * g01[:, None] + vq * g11[:, None]
    else:
        off = np.sqrt(np.sum(np.abs(A[:, offmask]) ** 2, axis=1))
        if np.any(off > 1e3 * eps * fro):
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diagonal(A, axis1=1, axis2=2).real
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1).reshape(batch_shape + (n,))
    if not vectors:
        return w
    V = np.take_along_axis(V, order[:, None, :], axis=2).reshape(batch_shape + (n, n))
    return w, V


def _check_hermitian(H):
    H = as_matrix(H, square=True)
    scale = max_abs(H)
    if max_abs(H - H.conj().T) > HERMITIAN_TOL * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    return H


def hermitian_eigenvalues(H):
    """All eigenvalues of a Hermitian matrix, largest first."""
    H = _check_hermitian(H)
    return jacobi_eigh(H)[::-1].copy()


def hermitian_eigh(H):
    """Eigenvalues (largest first) and orthonormal eigenvectors (columns)."""
    H = _check_hermitian(H)
    w, V = jacobi_eigh(H, vectors=True)
    return w[::-1].copy(), V[:, ::-1].copy()


def kronecker(A, B):
    return np.kron(as_matrix(A), as_matrix(B))


def psd_sqrt(H, tol=PSD_TOL):
    """Hermitian PSD square root; eigenvalues down to -tol*max|H_ij| are clamped to 0."""
    w, V = hermitian_eigh(H)
    scale = max_abs(H)
    if w.size and w[-1] < -tol * scale:
        raise NotPSDError(f"matrix is not positive semidefinite (eigenvalue {w[-1]:.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    R = (V * root) @ V.conj().T
    return _symmetrize(R)


def numerical_rank(M, tol=DEFAULT_RANK_TOL):
    """Number of singular values above ``tol`` times the largest one."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    sv = np.linalg.svd(as_matrix(M), compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def operator_norm(T):
    """Largest singular value."""
    return float(np.linalg.norm(as_matrix(T), 2))


def nilpotency_index(T, tol=DEFAULT_NILPOTENT_TOL):
    """Smallest n <= dim with ``||T^n|| <= tol * max(1, ||T||^n)``, else None."""
    T = as_matrix(T, square=True)
    if tol <= 0:
        raise ValueError("tol must be positive")
    norm = operator_norm(T)
    P = np.eye(T.shape[0], dtype=complex)
    for n in range(1, T.shape[0] + 1):
        P = P @ T
        if operator_norm(P) <= tol * max(1.0, norm ** n):
            return n
    return None
