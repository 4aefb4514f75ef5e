import math
from dataclasses import replace

import numpy as np
import pytest

from rankrange.dilation import (
    build_dilation,
    defect_operator,
    radius_bound_report,
    telescoping_residual,
    containment_report,
    containment_reports,
    verify_dilation,
)
from rankrange.engine import rank_range
from rankrange.errors import NotContractionError, NotNilpotentError
from rankrange.geometry import is_subset
from rankrange.linalg import kronecker, shift_matrix
from rankrange.samples import random_nilpotent_contraction


def test_defect_operator_examples():
    for n in (2, 4, 6):
        D = defect_operator(shift_matrix(n))
        want = np.zeros((n, n))
        want[-1, -1] = 1.0
        assert np.allclose(D, want, atol=1e-12)
    assert np.allclose(defect_operator(np.zeros((3, 3))), np.eye(3))
    assert np.allclose(defect_operator(0.5 * shift_matrix(2)), np.diag([math.sqrt(0.75), 1.0]))


def test_defect_operator_requires_contraction():
    with pytest.raises(NotContractionError):
        defect_operator(2 * shift_matrix(3))
    # norm one sits inside the slack
    defect_operator(shift_matrix(3) * (1 + 1e-10))


def test_build_dilation_for_shift():
    for n in (2, 3, 5):
        model = build_dilation(shift_matrix(n))
        assert model.n == n and model.r == 1
        assert model.V.shape == (n, n)
        assert np.allclose(model.V.conj().T @ model.V, np.eye(n), atol=1e-14)
        assert max(verify_dilation(model)) <= 1e-12


def test_build_dilation_for_zero_matrix():
    model = build_dilation(np.zeros((3, 3)))
    assert model.n == 1 and model.r == 3
    assert np.allclose(model.shift_block, 0)
    assert max(verify_dilation(model)) <= 1e-14


def test_build_dilation_random_contraction(rng):
    A = np.tril(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)), -1)
    T = 0.9 * A / np.linalg.norm(A, 2)
    model = build_dilation(T)
    assert model.V.shape == (model.r * model.n, 4)
    assert max(verify_dilation(model)) <= 1e-10
    B = model.defect_basis
    assert np.allclose(B.conj().T @ B, np.eye(model.r), atol=1e-12)


def test_dilation_row_layout_matches_kron_convention(rng):
    T = random_nilpotent_contraction(rng, 4)
    model = build_dilation(T)
    D = defect_operator(T)
    B = model.defect_basis
    # defect direction j, tensor slot t sits in row j * n + t
    for t in range(model.n):
        block = B.conj().T @ D @ np.linalg.matrix_power(T, t)
        assert np.allclose(model.V[t::model.n], block, atol=1e-13)


def test_defect_basis_is_deterministic(rng):
    T = random_nilpotent_contraction(rng, 5)
    a, b = build_dilation(T), build_dilation(T.copy())
    assert np.array_equal(a.V, b.V)
    lead = np.argmax(np.abs(a.defect_basis), axis=0)
    top = a.defect_basis[lead, np.arange(a.r)]
    assert np.allclose(top.imag, 0) and np.all(top.real > 0)


def test_verify_dilation_detects_broken_model():
    model = build_dilation(0.7 * shift_matrix(3))
    broken = replace(model, V=np.zeros_like(model.V))
    assert verify_dilation(broken)[0] == pytest.approx(1.0)
    assert max(verify_dilation(build_dilation(shift_matrix(3)))) <= 1e-12


def test_build_dilation_hypotheses():
    with pytest.raises(NotNilpotentError):
        build_dilation(np.eye(2))
    with pytest.raises(NotContractionError):
        build_dilation(3 * shift_matrix(3))
    with pytest.raises(ValueError):
        build_dilation(shift_matrix(3), rank_tol=0)


def test_telescoping_identity(rng):
    for n in range(2, 9):
        T = random_nilpotent_contraction(rng, n)
        assert telescoping_residual(T) <= 1e-9
    assert telescoping_residual(shift_matrix(5)) <= 1e-15


def test_containment_report_examples(rng):
    rep = containment_report(shift_matrix(4), 2)
    assert rep.bound.radius == pytest.approx(math.cos(2 * math.pi / 5))
    assert rep.contained
    assert abs(rep.margin) <= 1e-5

    rep = containment_report(0.9 * shift_matrix(4), 1)
    assert rep.contained
    assert rep.margin >= 0.1 * math.cos(math.pi / 5) - 1e-4

    A = np.tril(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)), -1)
    assert containment_report(0.95 * A / np.linalg.norm(A, 2), 2).contained


def test_containment_report_contained_iff_margin_within_tol(rng):
    for _ in range(10):
        T = random_nilpotent_contraction(rng, int(rng.integers(2, 7)))
        for rep in containment_reports(T, [1, 2, 3]):
            assert rep.contained == (rep.margin >= -rep.tol)
            assert rep.margin >= 0


def test_containment_beyond_dimension_is_empty():
    rep = containment_report(shift_matrix(2), 3)
    assert rep.bound is None
    assert rep.computed_region.is_empty and rep.contained


def test_containment_flags_rank_sensitivity():
    # a defect eigenvalue just above rank_tol * max makes r depend on the tolerance
    T = np.zeros((3, 3), dtype=complex)
    T[1, 0] = 1.0 - 1e-15
    T[2, 1] = math.sqrt(1 - (5e-8) ** 2)
    rep = containment_report(T, 1)
    assert rep.rank_sensitive and rep.r != rep.r_loose


def test_compression_inside_shift_model(rng):
    for _ in range(5):
        T = random_nilpotent_contraction(rng, int(rng.integers(2, 6)))
        model = build_dilation(T)
        big = kronecker(np.eye(model.r), shift_matrix(model.n).conj().T)
        for k in range(1, min(T.shape[0], 3) + 1):
            small_region = rank_range(T, k).region
            assert is_subset(small_region, rank_range(big, k).region, 1e-6)


def test_radius_bound_examples():
    for n in (2, 3, 6):
        omega, bound = radius_bound_report(shift_matrix(n))
        assert omega == pytest.approx(math.cos(math.pi / (n + 1)), abs=1e-12)
        assert bound == pytest.approx(omega, abs=1e-12)
    assert radius_bound_report(np.zeros((3, 3))) == (0.0, 0.0)
    omega, bound = radius_bound_report(0.5 * shift_matrix(2))
    assert omega == pytest.approx(0.25) and bound == pytest.approx(0.25)
    with pytest.raises(NotNilpotentError):
        radius_bound_report(np.eye(2))
