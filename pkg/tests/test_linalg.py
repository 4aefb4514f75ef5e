import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from rankrange.errors import NotHermitianError, NotPSDError
from rankrange.linalg import (
    as_matrix,
    hermitian_eigenvalues,
    hermitian_eigh,
    identity,
    jacobi_eigh,
    kronecker,
    nilpotency_index,
    numerical_rank,
    operator_norm,
    psd_sqrt,
    rotated_hermitian_part,
    rotated_hermitian_stack,
    shift_matrix,
)
from rankrange.samples import complex_gaussian, random_hermitian, random_unitary


def test_shift_matrix_small_cases():
    assert np.array_equal(shift_matrix(2), [[0, 0], [1, 0]])
    assert np.array_equal(shift_matrix(1), [[0]])
    assert np.allclose(np.linalg.matrix_power(shift_matrix(3), 3), 0)


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        as_matrix([[1, 2, 3], [4, 5, 6]], square=True)
    with pytest.raises(ValueError):
        as_matrix([[np.nan]])


def test_rotated_hermitian_part_examples():
    H = rotated_hermitian_part(shift_matrix(3), 0.0)
    assert np.allclose(H, [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    assert np.allclose(rotated_hermitian_part(np.zeros((3, 3)), 1.1), 0)
    assert np.allclose(rotated_hermitian_part(np.diag([1.0, 2.0]), 0.0), np.diag([2.0, 4.0]))


def test_rotated_hermitian_part_is_exactly_hermitian(rng):
    T = complex_gaussian(rng, (5, 5))
    for theta in (0.0, 0.3, 2.9, -1.0):
        H = rotated_hermitian_part(T, theta)
        assert np.array_equal(H, H.conj().T)


def test_stack_matches_single_angles(rng):
    T = complex_gaussian(rng, (4, 4))
    thetas = np.array([0.0, 0.5, 3.0])
    stack = rotated_hermitian_stack(T, thetas)
    for H, t in zip(stack, thetas):
        assert np.allclose(H, rotated_hermitian_part(T, t), atol=1e-15)


def test_hermitian_eigenvalues_examples():
    s2 = math.sqrt(2.0)
    got = hermitian_eigenvalues(rotated_hermitian_part(shift_matrix(3), 0.0))
    assert np.allclose(got, [s2, 0.0, -s2], atol=1e-14)
    assert np.allclose(hermitian_eigenvalues(identity(4)), [1, 1, 1, 1])
    got = hermitian_eigenvalues(rotated_hermitian_part(shift_matrix(2), 0.7))
    assert np.allclose(got, [1.0, -1.0], atol=1e-14)


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(shift_matrix(3))


@given(st.integers(1, 9), st.integers(0, 2**32 - 1))
def test_jacobi_agrees_with_lapack(n, seed):
    H = random_hermitian(np.random.default_rng(seed), n)
    got = hermitian_eigenvalues(H)
    want = np.linalg.eigvalsh(H)[::-1]
    assert np.all(np.diff(got) <= 0)
    assert np.allclose(got, want, atol=1e-12 * max(1.0, np.abs(want).max()))


def test_jacobi_vectors_diagonalise(rng):
    H = random_hermitian(rng, 7)
    w, V = hermitian_eigh(H)
    assert np.allclose(V.conj().T @ V, np.eye(7), atol=1e-12)
    assert np.allclose(H @ V, V * w, atol=1e-12)


def test_jacobi_handles_stacks_and_degenerate_spectra(rng):
    U = random_unitary(rng, 6)
    D = np.diag([3.0, 3.0, 3.0, -1.0, -1.0, 0.0])
    H = U @ D @ U.conj().T
    stack = np.stack([H, np.eye(6), np.zeros((6, 6))])
    w = jacobi_eigh(stack)
    assert w.shape == (3, 6)
    assert np.allclose(w[0], np.sort(np.diag(D)), atol=1e-12)
    assert np.allclose(w[1], 1.0)
    assert np.allclose(w[2], 0.0)


def test_jacobi_on_tiny_entries():
    H = np.array([[1.0, 1e-300], [1e-300, 1.0]], dtype=complex)
    assert np.allclose(jacobi_eigh(H), [1.0, 1.0])


def test_kronecker_examples():
    assert np.array_equal(kronecker(identity(1), shift_matrix(3)), shift_matrix(3))
    K = kronecker(identity(2), shift_matrix(2))
    assert np.array_equal(K[:2, :2], shift_matrix(2))
    assert np.array_equal(K[2:, 2:], shift_matrix(2))
    assert np.array_equal(K[:2, 2:], np.zeros((2, 2)))
    s2 = math.sqrt(2.0)
    H = rotated_hermitian_part(kronecker(identity(2), shift_matrix(3).conj().T), 0.0)
    assert np.allclose(hermitian_eigenvalues(H), [s2, s2, 0, 0, -s2, -s2], atol=1e-14)


def test_psd_sqrt_examples():
    assert np.allclose(psd_sqrt(identity(3)), identity(3))
    assert np.allclose(psd_sqrt(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]))
    T = 0.5 * shift_matrix(2)
    R = psd_sqrt(np.eye(2) - T.conj().T @ T)
    assert np.allclose(R, np.diag([math.sqrt(0.75), 1.0]), atol=1e-14)


def test_psd_sqrt_matches_scipy(rng):
    A = complex_gaussian(rng, (5, 5))
    H = A @ A.conj().T
    R = psd_sqrt(H)
    assert np.allclose(R, scipy.linalg.sqrtm(H), atol=1e-10)
    assert np.allclose(R @ R, H, atol=1e-10)


def test_psd_sqrt_clamps_rounding_but_rejects_negative():
    H = np.diag([1.0, -1e-13])
    assert np.allclose(psd_sqrt(H), np.diag([1.0, 0.0]))
    with pytest.raises(NotPSDError):
        psd_sqrt(np.diag([1.0, -0.1]))


def test_numerical_rank_examples():
    S = shift_matrix(5)
    assert numerical_rank(np.eye(5) - S.conj().T @ S) == 1
    assert numerical_rank(identity(5)) == 5
    T = 0.5 * shift_matrix(2)
    assert numerical_rank(psd_sqrt(np.eye(2) - T.conj().T @ T)) == 2
    assert numerical_rank(np.zeros((3, 3))) == 0


def test_nilpotency_index_examples():
    assert nilpotency_index(shift_matrix(4)) == 4
    assert nilpotency_index(identity(2)) is None
    T = np.zeros((3, 3))
    T[1, 0], T[2, 1] = 2.0, -0.5
    assert nilpotency_index(T) == 3
    assert nilpotency_index(np.zeros((2, 2))) == 1


def test_operator_norm_examples(rng):
    assert operator_norm(shift_matrix(6)) == pytest.approx(1.0)
    assert operator_norm(np.zeros((3, 3))) == 0.0
    U = random_unitary(rng, 4)
    assert operator_norm((2 - 1j) * U) == pytest.approx(abs(2 - 1j))
