import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicsums.lagrangian import (
    J,
    InvalidFrameError,
    LagrangianFrame,
    NotSymplecticError,
    RotationMatrix,
    SymplecticMatrix,
    find_transversal_angle,
    frame_to_symplectic,
    lower_block_triangular,
    random_frame,
    random_symplectic,
    symplectic_inverse,
    transversality_margin,
    validate_frame,
    validate_symplectic,
    wronskian,
    zero_frame,
)

seeds = st.integers(0, 2**31 - 1)
dims = st.integers(1, 3)
kinds = st.sampled_from(["integer", "real"])


def test_zero_frame_is_valid():
    assert validate_frame(zero_frame(2)).ok


def test_rank_deficient_frame_rejected():
    Y = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
    r = validate_frame(Y)
    assert not r.ok and r.rank == 1
    with pytest.raises(InvalidFrameError):
        LagrangianFrame(Y)


def test_non_lagrangian_frame_rejected():
    Y = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    assert not validate_frame(Y).ok


def test_perturbed_symplectic_rejected():
    Z = random_symplectic(2, 5)
    Z[0, 0] += 1e-3
    assert not validate_symplectic(Z).ok
    with pytest.raises(NotSymplecticError):
        SymplecticMatrix(Z)


def test_J_is_symplectic_with_known_inverse():
    assert np.array_equal(symplectic_inverse(J(2)), -J(2))


def test_rotation_inverse():
    R = RotationMatrix(0.7, 2)
    assert np.allclose(R.R @ R.R_inv, np.eye(4))
    assert validate_symplectic(R.R).ok


@settings(max_examples=50, deadline=None)
@given(dims, seeds, kinds)
def test_random_symplectic_is_symplectic(n, seed, kind):
    Z = random_symplectic(n, seed, kind=kind)
    assert validate_symplectic(Z).ok
    assert np.allclose(symplectic_inverse(Z) @ Z, np.eye(2 * n), atol=1e-8)


@settings(max_examples=50, deadline=None)
@given(dims, seeds, kinds)
def test_completion_reproduces_frame(n, seed, kind):
    Y = random_frame(n, seed, kind=kind)
    Z = frame_to_symplectic(Y)
    assert validate_symplectic(Z).ok
    assert np.array_equal(Z[:, n:], Y)


@settings(max_examples=50, deadline=None)
@given(dims, seeds, seeds)
def test_wronskian_transforms_under_symplectic_maps(n, s1, s2):
    Y, Yh = random_frame(n, s1), random_frame(n, s2)
    W = random_symplectic(n, s1 ^ s2)
    assert np.allclose(wronskian(W @ Y, W @ Yh), wronskian(Y, Yh), atol=1e-8)
    assert np.allclose(wronskian(Y, Yh), -wronskian(Yh, Y).T)


@settings(max_examples=30, deadline=None)
@given(dims, seeds)
def test_lower_block_triangular_fixes_zero_frame(n, seed):
    L = lower_block_triangular(n, seed)
    assert validate_symplectic(L).ok
    assert np.allclose(L[:n, n:], 0)


@settings(max_examples=30, deadline=None)
@given(dims, st.lists(seeds, min_size=2, max_size=5), seeds)
def test_transversal_angle_clears_floor(n, frame_seeds, seed):
    frames = [random_frame(n, s) for s in frame_seeds]
    R = find_transversal_angle(frames, seed=seed)
    assert transversality_margin(frames, R.alpha) > 1e-6


def test_alpha_zero_kept_when_already_transversal():
    frames = [np.vstack([np.eye(2), np.eye(2)]), np.vstack([np.eye(2), np.zeros((2, 2))])]
    assert find_transversal_angle(frames).alpha == 0.0
