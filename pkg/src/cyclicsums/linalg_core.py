"""Tolerance-governed dense linear algebra primitives.

Every integer produced by this package (ranks, eigenvalue counts) passes
through :func:`rank_of` or :func:`inertia`, so the thresholds below are the
only place where floating point turns into combinatorics.

Both functions accept an optional ``scale``: a magnitude the caller knows the
matrix is built from.  A matrix that is zero in exact arithmetic but was
assembled from products of order-one factors carries rounding noise of order
``eps * scale``; classifying its singular values or eigenvalues relative to
themselves would count that noise.  With ``scale`` the threshold is taken
relative to ``max(own magnitude, scale)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

_EPS = np.finfo(float).eps


class InputError(ValueError):
    """Raised for malformed numeric input (shape, non-finite entries, asymmetry)."""


@dataclass(frozen=True)
class ToleranceProfile:
    """Numerical thresholds shared by every computation.

    rank_rel_tol
        singular value ``s`` counts toward the rank iff
        ``s > rank_rel_tol * max(rows, cols) * max(s_max, scale)``.
    eig_zero_factor
        eigenvalue ``l`` is classified zero iff
        ``|l| <= eig_zero_factor * eps * dim * max(max|l|, scale)``.
    structure_tol
        relative residual allowed for the Lagrangian, symplectic and
        symmetry conditions.
    """

    rank_rel_tol: float = 1e-12
    eig_zero_factor: float = 100.0
    structure_tol: float = 1e-8

    def __post_init__(self):
        if not self.rank_rel_tol > 0:
            raise InputError(f"rank_rel_tol must be positive, got {self.rank_rel_tol}")
        if not self.eig_zero_factor >= 1:
            raise InputError(f"eig_zero_factor must be >= 1, got {self.eig_zero_factor}")
        if not self.structure_tol > 0:
            raise InputError(f"structure_tol must be positive, got {self.structure_tol}")


DEFAULT_TOL = ToleranceProfile()


class InertiaTriple(NamedTuple):
    """Eigenvalue sign counts ``(i_plus, i_zero, i_minus)`` of a symmetric matrix."""

    i_plus: int
    i_zero: int
    i_minus: int

    @property
    def ind(self) -> int:
        return self.i_minus

    @property
    def sign(self) -> int:
        return self.i_plus - self.i_minus

    @property
    def rank(self) -> int:
        return self.i_plus + self.i_minus

    @property
    def dim(self) -> int:
        return self.i_plus + self.i_zero + self.i_minus


def as_matrix(A, name: str = "matrix") -> np.ndarray:
    """Return ``A`` as a finite 2-D float array, or raise :class:`InputError`."""
    A = np.asarray(A, dtype=float)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, 0)
    if A.ndim != 2:
        raise InputError(f"{name} must be 2-D, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError(f"{name} has non-finite entries")
    return A


def _svd_rank(s: np.ndarray, shape, tol: ToleranceProfile, scale: float | None) -> int:
    if s.size == 0:
        return 0
    ref = max(float(s[0]), float(scale or 0.0))
    if ref == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel_tol * max(shape) * ref))


def pseudoinverse(A, tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse with singular values below the rank threshold dropped."""
    A = as_matrix(A)
    rows, cols = A.shape
    if A.size == 0:
        return np.zeros((cols, rows))
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    r = _svd_rank(s, A.shape, tol, scale)
    return (Vt[:r].T / s[:r]) @ U[:, :r].T


def rank_of(A, tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> int:
    """Number of singular values above the rank threshold."""
    A = as_matrix(A)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return _svd_rank(s, A.shape, tol, scale)


def kernel_projectors(A, tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None):
    """Return ``(E_A, F_A)`` with ``E_A = I - A A^+`` and ``F_A = I - A^+ A``.

    Both are assembled from the SVD null bases, which equals the pseudoinverse
    formula with the same truncation but gives exact zeros at full rank.
    """
    A = as_matrix(A)
    rows, cols = A.shape
    if A.size == 0:
        return np.eye(rows), np.eye(cols)
    U, s, Vt = np.linalg.svd(A, full_matrices=True)
    r = _svd_rank(s, A.shape, tol, scale)
    Un = U[:, r:]
    Vn = Vt[r:].T
    return Un @ Un.T, Vn @ Vn.T


def null_basis(A, tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> np.ndarray:
    """Orthonormal basis (as columns) of the kernel of ``A``."""
    A = as_matrix(A)
    cols = A.shape[1]
    if A.size == 0:
        return np.eye(cols)
    _, s, Vt = np.linalg.svd(A, full_matrices=True)
    r = _svd_rank(s, A.shape, tol, scale)
    return Vt[r:].T


def spectral_norm(A) -> float:
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def symmetrize(S, tol: ToleranceProfile = DEFAULT_TOL, name: str = "matrix") -> np.ndarray:
    """Return ``(S + S^T)/2`` after checking ``S`` is square and symmetric to tolerance."""
    S = as_matrix(S, name)
    if S.shape[0] != S.shape[1]:
        raise InputError(f"{name} must be square, got shape {S.shape}")
    if S.size == 0:
        return S
    norm = np.abs(S).max()
    if np.abs(S - S.T).max() > tol.structure_tol * norm:
        raise InputError(f"{name} is not symmetric within tolerance")
    return 0.5 * (S + S.T)


def inertia(S, tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> InertiaTriple:
    """Inertia of a symmetric matrix by thresholded eigenvalue counting."""
    S = symmetrize(S, tol)
    dim = S.shape[0]
    if dim == 0:
        return InertiaTriple(0, 0, 0)
    lam = np.linalg.eigvalsh(S)
    ref = max(float(np.abs(lam).max()), float(scale or 0.0))
    thresh = tol.eig_zero_factor * _EPS * dim * ref
    plus = int(np.count_nonzero(lam > thresh))
    minus = int(np.count_nonzero(lam < -thresh))
    return InertiaTriple(plus, dim - plus - minus, minus)


def ind(S, tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> int:
    """Number of negative eigenvalues."""
    return inertia(S, tol, scale).i_minus


def sandwich(F: np.ndarray, S: np.ndarray) -> np.ndarray:
    """``F S F`` for a symmetric projector ``F``, symmetrized."""
    G = F @ S @ F
    return 0.5 * (G + G.T)


def block_inertia_reduction(A, B, D, tol: ToleranceProfile = DEFAULT_TOL):
    """Inertia of ``[[A, B], [B^T, D]]`` computed directly and by the two-step reduction.

    The reduction is ``i_pm = i_pm(A) + rank(M) + i_pm(F_M (D - B^T A^+ B) F_M)``
    with ``M = E_A B``.  Returns ``(direct, reduced)``.
    """
    A = symmetrize(A, tol, "A")
    D = symmetrize(D, tol, "D")
    B = as_matrix(B, "B")
    k, l = A.shape[0], D.shape[0]
    if B.shape != (k, l):
        raise InputError(f"B must have shape {(k, l)}, got {B.shape}")
    whole = np.block([[A, B], [B.T, D]])
    direct = inertia(whole, tol)

    a_scale = spectral_norm(A)
    A_pinv = pseudoinverse(A, tol)
    E_A, _ = kernel_projectors(A, tol)
    b_scale = spectral_norm(B)
    M = E_A @ B
    _, F_M = kernel_projectors(M, tol, scale=b_scale)
    schur = D - B.T @ A_pinv @ B
    schur_scale = spectral_norm(D) + b_scale**2 * spectral_norm(A_pinv)
    i_A = inertia(A, tol, scale=a_scale)
    r_M = rank_of(M, tol, scale=b_scale)
    i_S = inertia(sandwich(F_M, schur), tol, scale=schur_scale)
    plus = i_A.i_plus + r_M + i_S.i_plus
    minus = i_A.i_minus + r_M + i_S.i_minus
    reduced = InertiaTriple(plus, k + l - plus - minus, minus)
    return direct, reduced
