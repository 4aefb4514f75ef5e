"""Seeded random matrices for tests, demos, and the acceptance run."""

import numpy as np

__all__ = [
    "complex_gaussian",
    "random_unitary",
    "random_isometry",
    "random_hermitian",
    "random_normal",
    "random_nilpotent_contraction",
]


def complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_isometry(rng, n, m):
    """n x m matrix with orthonormal columns (QR of a Gaussian matrix)."""
    Q, R = np.linalg.qr(complex_gaussian(rng, (n, m)))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))[None, :]


def random_unitary(rng, n):
    return random_isometry(rng, n, n)


def random_hermitian(rng, n):
    A = complex_gaussian(rng, (n, n))
    return (A + A.conj().T) / 2.0


def random_normal(rng, n):
    """U diag(eigs) U^*; returns the matrix and its eigenvalues."""
    eigs = complex_gaussian(rng, n)
    U = random_unitary(rng, n)
    return (U * eigs[None, :]) @ U.conj().T, eigs


def random_nilpotent_contraction(rng, n, norm_range=(0.5, 0.99)):
    """Strictly lower-triangular complex Gaussian matrix rescaled to a norm in ``norm_range``."""
    A = np.tril(complex_gaussian(rng, (n, n)), -1)
    target = rng.uniform(*norm_range)
    return A * (target / np.linalg.norm(A, 2))
