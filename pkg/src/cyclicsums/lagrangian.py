"""Lagrangian frames, symplectic matrices, Wronskians and random generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg_core import DEFAULT_TOL, InputError, ToleranceProfile, as_matrix, rank_of


class InvalidFrameError(InputError):
    pass


class NotSymplecticError(InputError):
    pass


class TransversalSearchError(RuntimeError):
    pass


def J(n: int) -> np.ndarray:
    """The standard symplectic unit ``[[0, I], [-I, 0]]`` of size ``2n``."""
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, I], [-I, Z]])


def zero_frame(n: int) -> np.ndarray:
    """The frame ``(0; I)``."""
    return np.vstack([np.zeros((n, n)), np.eye(n)])


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    n: int
    rank: int
    residual: float
    reason: str = ""


def validate_frame(Y, tol: ToleranceProfile = DEFAULT_TOL) -> ValidationReport:
    """Check ``rank Y = n`` and ``Y^T J Y = 0`` for a ``2n x n`` matrix."""
    Y = as_matrix(Y, "frame")
    rows, cols = Y.shape
    if rows % 2 or rows == 0:
        raise InputError(f"frame must have an even, positive row count, got {rows}")
    n = rows // 2
    if cols != n:
        raise InputError(f"frame must be {2 * n}x{n}, got {rows}x{cols}")
    r = rank_of(Y, tol)
    residual = float(np.abs(Y.T @ J(n) @ Y).max())
    scale = max(1.0, float(np.abs(Y).max()) ** 2)
    if r != n:
        return ValidationReport(False, n, r, residual, f"rank {r} != {n}")
    if residual > tol.structure_tol * scale:
        return ValidationReport(False, n, r, residual, f"|Y^T J Y| = {residual:.3g}")
    return ValidationReport(True, n, r, residual)


def validate_symplectic(Z, tol: ToleranceProfile = DEFAULT_TOL) -> ValidationReport:
    """Check ``Z^T J Z = J`` for a ``2n x 2n`` matrix."""
    Z = as_matrix(Z, "symplectic matrix")
    rows, cols = Z.shape
    if rows != cols or rows % 2 or rows == 0:
        raise InputError(f"symplectic matrix must be square of even size, got {Z.shape}")
    n = rows // 2
    Jn = J(n)
    residual = float(np.abs(Z.T @ Jn @ Z - Jn).max())
    scale = max(1.0, float(np.abs(Z).max()) ** 2)
    r = rank_of(Z, tol)
    if residual > tol.structure_tol * scale:
        return ValidationReport(False, n, r, residual, f"|Z^T J Z - J| = {residual:.3g}")
    return ValidationReport(True, n, r, residual)


@dataclass(frozen=True, eq=False)
class LagrangianFrame:
    """A validated ``2n x n`` frame ``Y = (X; U)`` of a Lagrangian subspace."""

    Y: np.ndarray
    tol: ToleranceProfile = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        Y = as_matrix(self.Y, "frame")
        report = validate_frame(Y, self.tol)
        if not report.ok:
            raise InvalidFrameError(f"not a Lagrangian frame: {report.reason}")
        Y = Y.copy()
        Y.setflags(write=False)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self) -> int:
        return self.Y.shape[1]

    @property
    def X(self) -> np.ndarray:
        return self.Y[: self.n]

    @property
    def U(self) -> np.ndarray:
        return self.Y[self.n :]


@dataclass(frozen=True, eq=False)
class SymplecticMatrix:
    Z: np.ndarray
    tol: ToleranceProfile = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        Z = as_matrix(self.Z, "symplectic matrix")
        report = validate_symplectic(Z, self.tol)
        if not report.ok:
            raise NotSymplecticError(f"not symplectic: {report.reason}")
        Z = Z.copy()
        Z.setflags(write=False)
        object.__setattr__(self, "Z", Z)

    @property
    def n(self) -> int:
        return self.Z.shape[0] // 2

    def inv(self) -> np.ndarray:
        return symplectic_inverse(self.Z)

    def blocks(self):
        """``(A, B, C, D)`` in ``Z = [[A, B], [C, D]]``."""
        n = self.n
        Z = self.Z
        return Z[:n, :n], Z[:n, n:], Z[n:, :n], Z[n:, n:]


def frame_array(Y, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Array of a frame argument, validating raw arrays."""
    if isinstance(Y, LagrangianFrame):
        return Y.Y
    return LagrangianFrame(Y, tol).Y


def symplectic_array(Z, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    if isinstance(Z, SymplecticMatrix):
        return Z.Z
    return SymplecticMatrix(Z, tol).Z


def symplectic_inverse(Z) -> np.ndarray:
    """``Z^{-1} = -J Z^T J`` for symplectic ``Z``."""
    Z = np.asarray(Z, dtype=float)
    Jn = J(Z.shape[0] // 2)
    return -Jn @ Z.T @ Jn


def wronskian(Y1, Y2) -> np.ndarray:
    """``w(Y1, Y2) = Y1^T J Y2``."""
    Y1 = np.asarray(Y1.Y if isinstance(Y1, LagrangianFrame) else Y1, dtype=float)
    Y2 = np.asarray(Y2.Y if isinstance(Y2, LagrangianFrame) else Y2, dtype=float)
    if Y1.shape[0] != Y2.shape[0] or Y1.shape[0] % 2:
        raise InputError(f"frames of mismatched shapes {Y1.shape} and {Y2.shape}")
    n = Y1.shape[0] // 2
    # Y1^T J Y2 = X1^T U2 - U1^T X2, written out so that w(Y2,Y1) = -w(Y1,Y2)^T exactly
    return Y1[:n].T @ Y2[n:] - Y1[n:].T @ Y2[:n]


def frame_to_symplectic(Y, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """A symplectic ``Z`` with ``Z (0; I) = Y``.

    Orthonormalize ``Y = Q R``, complete ``Q`` to the orthosymplectic matrix
    ``(J Q | Q)`` and right-multiply by ``diag(R^{-T}, R)`` so that the second
    block column is ``Y`` again.
    """
    Y = frame_array(Y, tol)
    n = Y.shape[1]
    Q, R = np.linalg.qr(Y)
    Z0 = np.hstack([J(n) @ Q, Q])
    RinvT = np.linalg.inv(R).T
    Z = np.hstack([Z0[:, :n] @ RinvT, Z0[:, n:] @ R])
    # the second block column is Q R = Y up to rounding; pin it exactly
    Z[:, n:] = Y
    return Z


@dataclass(frozen=True)
class RotationMatrix:
    """``R_alpha = [[cos a I, sin a I], [-sin a I, cos a I]]``."""

    alpha: float
    n: int

    @property
    def R(self) -> np.ndarray:
        c, s = np.cos(self.alpha), np.sin(self.alpha)
        I = np.eye(self.n)
        return np.block([[c * I, s * I], [-s * I, c * I]])

    @property
    def R_inv(self) -> np.ndarray:
        return RotationMatrix(-self.alpha, self.n).R


def rotated_upper_blocks(frames: Sequence[np.ndarray], alpha: float) -> list[np.ndarray]:
    """Upper blocks ``cos(a) X_k - sin(a) U_k`` of ``R_alpha^{-1} Y_k``."""
    c, s = np.cos(alpha), np.sin(alpha)
    out = []
    for Y in frames:
        n = Y.shape[1]
        out.append(c * Y[:n] - s * Y[n:])
    return out


def transversality_margin(frames: Sequence[np.ndarray], alpha: float) -> float:
    """``min_k sigma_min(X~_k) / sigma_max(Y_k)`` for the rotation by ``alpha``."""
    margins = []
    for Y, Xt in zip(frames, rotated_upper_blocks(frames, alpha)):
        s = np.linalg.svd(Xt, compute_uv=False)
        margins.append(s[-1] / np.linalg.norm(Y, 2))
    return float(min(margins))


_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def find_transversal_angle(
    frames,
    seed: int = 0,
    floor: float = 1e-6,
    batch: int = 32,
    max_attempts: int = 4096,
    tol: ToleranceProfile = DEFAULT_TOL,
) -> RotationMatrix:
    """Rotation ``R_alpha`` making every rotated upper block ``X~_k`` nonsingular.

    ``alpha = 0`` is accepted when all ``X_k`` already clear the floor.
    Otherwise candidates ``gamma`` run over the additive golden-ratio sequence
    in ``(-10, 10)`` starting at an offset set by ``seed``; within each batch
    the candidate with the widest margin is taken, and the first batch whose
    best margin clears ``floor`` wins.
    """
    arrays = [frame_array(Y, tol) for Y in frames]
    if not arrays:
        raise InputError("need at least one frame")
    n = arrays[0].shape[1]
    if any(Y.shape[1] != n for Y in arrays):
        raise InputError("frames must share the dimension n")
    if transversality_margin(arrays, 0.0) > floor:
        return RotationMatrix(0.0, n)
    offset = (seed * _GOLDEN) % 1.0
    best = (-1.0, 0.0)
    for start in range(0, max_attempts, batch):
        for i in range(start, min(start + batch, max_attempts)):
            gamma = -10.0 + 20.0 * ((offset + (i + 1) * _GOLDEN) % 1.0)
            if gamma == 0.0:
                continue
            alpha = float(np.arctan(gamma))
            margin = transversality_margin(arrays, alpha)
            if margin > best[0]:
                best = (margin, alpha)
        if best[0] > floor:
            return RotationMatrix(best[1], n)
    raise TransversalSearchError(
        f"no transversal rotation after {max_attempts} candidates; best margin {best[0]:.3g}"
    )


# --- random generators -------------------------------------------------------


def _unimodular(n: int, rng: np.random.Generator) -> np.ndarray:
    K = np.eye(n)
    for _ in range(rng.integers(0, n + 1)):
        i, j = rng.choice(n, size=2, replace=False) if n > 1 else (0, 0)
        if i == j:
            K[i] *= -1
        else:
            K[i] += rng.choice([-1.0, 1.0]) * K[j]
    if n > 1:
        K = K[rng.permutation(n)]
    return K


def _low_rank_symmetric(n: int, rng: np.random.Generator) -> np.ndarray:
    r = int(rng.integers(0, n + 1))
    V = rng.integers(-1, 2, size=(n, r)).astype(float)
    d = rng.choice([-1.0, 1.0], size=r)
    return (V * d) @ V.T


def _partial_J(n: int, rng: np.random.Generator) -> np.ndarray:
    """Swap ``(x_i, u_i) -> (u_i, -x_i)`` on a random coordinate subset."""
    mask = rng.integers(0, 2, size=n).astype(bool)
    if not mask.any():
        mask[rng.integers(n)] = True
    P = np.diag(mask.astype(float))
    Q = np.diag((~mask).astype(float))
    return np.block([[Q, P], [-P, Q]])


def random_symplectic(
    n: int, seed: int, factors: int = 6, kind: str = "integer"
) -> np.ndarray:
    """Deterministic random symplectic matrix as a product of generators.

    Generators are shears ``[[I, B], [0, I]]`` and ``[[I, 0], [C, I]]`` with
    symmetric ``B, C``, block diagonals ``diag(K, K^{-T})`` and (partial) ``J``
    swaps.  ``kind="integer"`` draws sparse integer ``B, C`` of random rank and
    unimodular ``K``, so products stay integer and hit degenerate
    configurations; ``kind="real"`` draws Gaussian shears and ``K`` with
    singular values in ``[0.5, 2]``.
    """
    if n < 1:
        raise InputError("n must be >= 1")
    if kind not in ("integer", "real"):
        raise InputError(f"unknown kind {kind!r}")
    rng = np.random.default_rng(seed)
    I = np.eye(n)
    O = np.zeros((n, n))
    Z = np.eye(2 * n)
    for _ in range(factors):
        g = int(rng.integers(4))
        if kind == "integer":
            if g == 0:
                G = np.block([[I, _low_rank_symmetric(n, rng)], [O, I]])
            elif g == 1:
                G = np.block([[I, O], [_low_rank_symmetric(n, rng), I]])
            elif g == 2:
                K = _unimodular(n, rng)
                G = np.block([[K, O], [O, np.linalg.inv(K).T.round()]])
            else:
                G = _partial_J(n, rng)
        else:
            # moderate conditioning keeps genuine eigenvalues well above noise
            if g == 0:
                B = 0.5 * rng.standard_normal((n, n))
                G = np.block([[I, B + B.T], [O, I]])
            elif g == 1:
                C = 0.5 * rng.standard_normal((n, n))
                G = np.block([[I, O], [C + C.T, I]])
            elif g == 2:
                Qk, _ = np.linalg.qr(rng.standard_normal((n, n)))
                K = Qk * rng.uniform(0.5, 2.0, size=n)
                G = np.block([[K, O], [O, np.linalg.inv(K).T]])
            else:
                G = J(n)
        Z = G @ Z
    return Z


def random_frame(n: int, seed: int, factors: int = 6, kind: str = "integer") -> np.ndarray:
    """``random_symplectic(n, seed) @ (0; I)``."""
    return random_symplectic(n, seed, factors, kind)[:, n:].copy()


def lower_block_triangular(n: int, seed: int) -> np.ndarray:
    """Random symplectic ``[[K, 0], [C K, K^{-T}]]`` with symmetric ``C``."""
    rng = np.random.default_rng(seed)
    K = _unimodular(n, rng)
    C = _low_rank_symmetric(n, rng)
    I = np.eye(n)
    O = np.zeros((n, n))
    return np.block([[I, O], [C, I]]) @ np.block([[K, O], [O, np.linalg.inv(K).T.round()]])
