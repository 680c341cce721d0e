import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cyclicsums.linalg_core import (
    InputError,
    ToleranceProfile,
    block_inertia_reduction,
    inertia,
    kernel_projectors,
    null_basis,
    pseudoinverse,
    rank_of,
    symmetrize,
)

small_ints = st.integers(-3, 3).map(float)


def int_matrix(rows, cols):
    return arrays(np.float64, (rows, cols), elements=small_ints)


def test_inertia_of_diagonal():
    assert inertia(np.diag([3.0, 0.0, -1.0, -2.0])) == (1, 1, 2)


def test_inertia_ignores_rounding_noise():
    S = np.diag([1.0, 1e-17, -1.0])
    assert inertia(S) == (1, 1, 1)


def test_inertia_scale_pulls_tiny_eigenvalues_to_zero():
    S = np.diag([1e-15, -1e-15])
    assert inertia(S) == (1, 0, 1)
    assert inertia(S, scale=1.0) == (0, 2, 0)


def test_empty_matrix():
    assert inertia(np.zeros((0, 0))) == (0, 0, 0)
    assert rank_of(np.zeros((0, 3))) == 0


def test_asymmetric_input_rejected():
    with pytest.raises(InputError):
        symmetrize(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_non_finite_rejected():
    with pytest.raises(InputError):
        rank_of(np.array([[np.nan]]))


def test_tolerance_profile_validates():
    with pytest.raises(InputError):
        ToleranceProfile(rank_rel_tol=0.0)
    with pytest.raises(InputError):
        ToleranceProfile(eig_zero_factor=0.5)


def test_projectors_at_full_rank_are_exact_zero():
    E, F = kernel_projectors(np.eye(3))
    assert not E.any() and not F.any()


@settings(max_examples=60, deadline=None)
@given(int_matrix(3, 4))
def test_penrose_conditions(A):
    P = pseudoinverse(A)
    assert np.allclose(A @ P @ A, A, atol=1e-9)
    assert np.allclose(P @ A @ P, P, atol=1e-9)
    assert np.allclose((A @ P).T, A @ P, atol=1e-9)
    assert np.allclose((P @ A).T, P @ A, atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(int_matrix(4, 3))
def test_projectors_annihilate(A):
    E, F = kernel_projectors(A)
    assert np.allclose(E @ A, 0, atol=1e-9)
    assert np.allclose(A @ F, 0, atol=1e-9)
    assert round(np.trace(F)) == A.shape[1] - rank_of(A)
    assert null_basis(A).shape[1] == A.shape[1] - rank_of(A)


@settings(max_examples=60, deadline=None)
@given(int_matrix(4, 4))
def test_inertia_sums_to_dimension_and_matches_rank(A):
    S = A + A.T
    t = inertia(S)
    assert t.i_plus + t.i_zero + t.i_minus == 4
    assert t.rank == rank_of(S)


@settings(max_examples=60, deadline=None)
@given(int_matrix(4, 4), int_matrix(4, 4))
def test_inertia_is_congruence_invariant(A, C):
    S = A + A.T
    C = C + 7 * np.eye(4)  # strictly diagonally dominant, so nonsingular
    assert inertia(C.T @ S @ C) == inertia(S)


@settings(max_examples=60, deadline=None)
@given(int_matrix(2, 2), int_matrix(2, 3), int_matrix(3, 3))
def test_block_inertia_reduction(A, B, D):
    direct, reduced = block_inertia_reduction(A + A.T, B, D + D.T)
    assert direct == reduced
