"""Comparative index and dual comparative index of an ordered pair of frames.

Three independent routes are provided:

* :func:`comparative_index` -- the Wronskian form ``M = (I - X^+ X) w``,
  ``T = I - M^+ M``, ``P = T (w^T X^+ X^) T``;
* :func:`comparative_index_via_Q` -- the symmetric-solution form with
  ``M~ = (I - X X^+) X^`` and ``P = T X^^T (Q^ - Q) X^ T``;
* :func:`comparative_index_via_block_inertia` -- negative and positive
  inertia of ``[[0, M~], [M~^T, X^^T (Q^ - Q) X^]]`` by eigenvalue counting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checks import IdentityCheck
from .lagrangian import (
    J,
    frame_array,
    frame_to_symplectic,
    symplectic_array,
    symplectic_inverse,
    wronskian,
    zero_frame,
)
from .linalg_core import (
    DEFAULT_TOL,
    InputError,
    ToleranceProfile,
    inertia,
    kernel_projectors,
    pseudoinverse,
    rank_of,
    sandwich,
    spectral_norm,
)


@dataclass(frozen=True, eq=False)
class ComparativeIndexBreakdown:
    mu1: int
    mu2: int
    mu2_star: int
    M: np.ndarray = field(repr=False)
    T: np.ndarray = field(repr=False)
    P: np.ndarray = field(repr=False)

    @property
    def mu(self) -> int:
        return self.mu1 + self.mu2

    @property
    def mu_star(self) -> int:
        return self.mu1 + self.mu2_star

    @property
    def sign_P(self) -> int:
        """``sign P = mu_star - mu``."""
        return self.mu2_star - self.mu2

    def counts(self) -> tuple[int, int, int]:
        return self.mu1, self.mu2, self.mu2_star


def _pair(Y, Yhat, tol):
    Y = frame_array(Y, tol)
    Yhat = frame_array(Yhat, tol)
    if Y.shape != Yhat.shape:
        raise InputError(f"frames of different dimensions: {Y.shape} vs {Yhat.shape}")
    return Y, Yhat


def comparative_index(Y, Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> ComparativeIndexBreakdown:
    """``mu(Y, Y^)`` and ``mu*(Y, Y^)`` from the Wronskian definition."""
    Y, Yhat = _pair(Y, Yhat, tol)
    n = Y.shape[1]
    X, Xh = Y[:n], Yhat[:n]
    y, yh = spectral_norm(Y), spectral_norm(Yhat)
    w = wronskian(Y, Yhat)
    _, F_X = kernel_projectors(X, tol, scale=y)
    M = F_X @ w
    _, T = kernel_projectors(M, tol, scale=y * yh)
    X_pinv = pseudoinverse(X, tol, scale=y)
    core = w.T @ X_pinv @ Xh
    P = sandwich(T, core)
    p_scale = y * yh**2 * spectral_norm(X_pinv)
    i = inertia(P, tol, scale=p_scale)
    return ComparativeIndexBreakdown(rank_of(M, tol, scale=y * yh), i.i_minus, i.i_plus, M, T, P)


def symmetric_Q(Y, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Symmetric ``Q`` with ``X^T Q X = X^T U``: ``Q = (U X^+ + (U X^+)^T) / 2``."""
    Y = frame_array(Y, tol)
    n = Y.shape[1]
    X, U = Y[:n], Y[n:]
    G = U @ pseudoinverse(X, tol, scale=spectral_norm(Y))
    Q = 0.5 * (G + G.T)
    residual = np.abs(X.T @ Q @ X - X.T @ U).max()
    if residual > tol.structure_tol * max(1.0, np.abs(Y).max() ** 2):
        raise InputError(f"no symmetric solution of X^T Q X = X^T U (residual {residual:.3g})")
    return Q


def _q_form(Y, Yhat, tol):
    n = Y.shape[1]
    X, Xh = Y[:n], Yhat[:n]
    Q = symmetric_Q(Y, tol)
    Qh = symmetric_Q(Yhat, tol)
    y, yh = spectral_norm(Y), spectral_norm(Yhat)
    E_X, _ = kernel_projectors(X, tol, scale=y)
    Mt = E_X @ Xh
    G = Xh.T @ (Qh - Q) @ Xh
    G = 0.5 * (G + G.T)
    g_scale = yh**2 * (spectral_norm(Q) + spectral_norm(Qh))
    return Mt, G, yh, g_scale


def comparative_index_via_Q(Y, Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> ComparativeIndexBreakdown:
    """Comparative index through symmetric solutions ``Q, Q^``."""
    Y, Yhat = _pair(Y, Yhat, tol)
    Mt, G, yh, g_scale = _q_form(Y, Yhat, tol)
    _, T = kernel_projectors(Mt, tol, scale=yh)
    P = sandwich(T, G)
    i = inertia(P, tol, scale=g_scale)
    return ComparativeIndexBreakdown(rank_of(Mt, tol, scale=yh), i.i_minus, i.i_plus, Mt, T, P)


def comparative_index_via_block_inertia(Y, Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> tuple[int, int]:
    """``(mu, mu*) = (i_-, i_+)`` of ``[[0, M~], [M~^T, X^^T (Q^ - Q) X^]]``."""
    Y, Yhat = _pair(Y, Yhat, tol)
    n = Y.shape[1]
    Mt, G, yh, g_scale = _q_form(Y, Yhat, tol)
    S = np.block([[np.zeros((n, n)), Mt], [Mt.T, G]])
    i = inertia(S, tol, scale=max(yh, g_scale))
    return i.i_minus, i.i_plus


def mu1_rank_formula(Y, Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> tuple[int, int]:
    """``rank(X | X^) - rank X`` and ``rank(X^T | w) - rank X``; both equal ``mu1``."""
    Y, Yhat = _pair(Y, Yhat, tol)
    n = Y.shape[1]
    X, Xh = Y[:n], Yhat[:n]
    y, yh = spectral_norm(Y), spectral_norm(Yhat)
    w = wronskian(Y, Yhat)
    r = rank_of(X, tol, scale=y)
    return (
        rank_of(np.hstack([X, Xh]), tol, scale=max(y, yh)) - r,
        rank_of(np.hstack([X.T, w]), tol, scale=max(y, y * yh)) - r,
    )


def wronskian_rank(Y, Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """``rank w(Y, Y^)`` measured against ``|Y| |Y^|``."""
    Y, Yhat = np.asarray(Y, float), np.asarray(Yhat, float)
    return rank_of(wronskian(Y, Yhat), tol, scale=spectral_norm(Y) * spectral_norm(Yhat))


def block_rank(Y, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """Rank of the upper block ``X`` of a frame, measured against ``|Y|``."""
    Y = np.asarray(Y, float)
    return rank_of(Y[: Y.shape[1]], tol, scale=spectral_norm(Y))


def mu(Y, Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    return comparative_index(Y, Yhat, tol).mu


def mu_star(Y, Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    return comparative_index(Y, Yhat, tol).mu_star


def verify_main_theorem(W, Y, Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> list[IdentityCheck]:
    """Check how ``mu`` and ``mu*`` transform under a symplectic ``W``.

    ``mu(WY, WY^) = mu(Y, Y^) + mu(Y^, W^{-1}(0;I)) - mu(Y, W^{-1}(0;I))``
    and the same with every ``mu`` replaced by ``mu*``.
    """
    W = symplectic_array(W, tol)
    Y, Yhat = _pair(Y, Yhat, tol)
    n = Y.shape[1]
    if W.shape != (2 * n, 2 * n):
        raise InputError(f"W must be {2 * n}x{2 * n}")
    E = symplectic_inverse(W) @ zero_frame(n)
    lhs = comparative_index(W @ Y, W @ Yhat, tol)
    base = comparative_index(Y, Yhat, tol)
    a = comparative_index(Yhat, E, tol)
    b = comparative_index(Y, E, tol)
    return [
        IdentityCheck("main theorem (mu)", lhs.mu, base.mu + a.mu - b.mu),
        IdentityCheck("main theorem (mu*)", lhs.mu_star, base.mu_star + a.mu_star - b.mu_star),
    ]


def lemma_properties(Y, Yhat, C=None, Chat=None, L=None, tol: ToleranceProfile = DEFAULT_TOL) -> list[IdentityCheck]:
    """Properties (i)-(vi) of the comparative index for one pair.

    ``C, Chat`` are nonsingular right factors and ``L`` a symplectic lower
    block-triangular matrix for property (i); identities default when omitted.
    """
    Y, Yhat = _pair(Y, Yhat, tol)
    n = Y.shape[1]
    C = np.eye(n) if C is None else np.asarray(C, float)
    Chat = np.eye(n) if Chat is None else np.asarray(Chat, float)
    L = np.eye(2 * n) if L is None else symplectic_array(L, tol)
    if np.abs(L[:n, n:]).max() != 0:
        raise InputError("L must be lower block-triangular")
    rw = wronskian_rank(Y, Yhat, tol)
    rX, rXh = block_rank(Y, tol), block_rank(Yhat, tol)

    ci = comparative_index(Y, Yhat, tol)
    rev = comparative_index(Yhat, Y, tol)
    scaled = comparative_index(L @ Y @ C, L @ Yhat @ Chat, tol)
    Z = frame_to_symplectic(Y, tol)
    Zi = symplectic_inverse(Z)
    moved = comparative_index(Zi @ zero_frame(n), Zi @ Yhat, tol)

    return [
        IdentityCheck("(i) mu1 invariant under L Y C", scaled.mu1, ci.mu1),
        IdentityCheck("(i) mu2 invariant under L Y C", scaled.mu2, ci.mu2),
        IdentityCheck("(ii) mu(Y,Y^) + mu(Y^,Y) = rank w", ci.mu + rev.mu, rw),
        IdentityCheck("(iii) mu(Y,Y^) = rank X^ - rank X + mu*(Y^,Y)", ci.mu, rXh - rX + rev.mu_star),
        IdentityCheck("(iv) mu1(Y,Y^) = mu1*(Z^-1(0;I), Z^-1 Y^)", ci.mu1, moved.mu1),
        IdentityCheck("(iv) mu2(Y,Y^) = mu2*(Z^-1(0;I), Z^-1 Y^)", ci.mu2, moved.mu2_star),
        IdentityCheck("(v) mu + mu* = rank w + rank X^ - rank X", ci.mu + ci.mu_star, rw + rXh - rX),
        IdentityCheck("(vi) 0 <= mu", 0 <= ci.mu, True),
        IdentityCheck("(vi) mu <= min(rank w, rank X^)", ci.mu <= min(rw, rXh), True),
        IdentityCheck("(vi) dual mu* <= min(rank w, rank X^)", ci.mu_star <= min(rw, rXh), True),
    ]


def route_agreement(Y, Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> list[IdentityCheck]:
    """The three computation routes and both ``mu1`` rank formulas agree."""
    a = comparative_index(Y, Yhat, tol)
    b = comparative_index_via_Q(Y, Yhat, tol)
    c = comparative_index_via_block_inertia(Y, Yhat, tol)
    r1, r2 = mu1_rank_formula(Y, Yhat, tol)
    return [
        IdentityCheck("mu: Wronskian form = Q form", a.counts(), b.counts()),
        IdentityCheck("(mu, mu*): Wronskian form = block inertia", (a.mu, a.mu_star), c),
        IdentityCheck("mu1 = rank(X|X^) - rank X", a.mu1, r1),
        IdentityCheck("mu1 = rank(X^T|w) - rank X", a.mu1, r2),
    ]


def special_cases(Yhat, tol: ToleranceProfile = DEFAULT_TOL) -> list[IdentityCheck]:
    """``mu(Y^, (0;I)) = 0``, ``mu((0;I), Y^) = rank X^``, ``mu(J(0;I), Y^) = ind(X^^T U^)``."""
    Yhat = frame_array(Yhat, tol)
    n = Yhat.shape[1]
    E = zero_frame(n)
    Xh, Uh = Yhat[:n], Yhat[n:]
    XU = Xh.T @ Uh
    return [
        IdentityCheck("mu(Y, (0;I)) = 0", mu(Yhat, E, tol), 0),
        IdentityCheck("mu((0;I), Y^) = rank X^", mu(E, Yhat, tol), block_rank(Yhat, tol)),
        IdentityCheck(
            "mu(J(0;I), Y^) = ind(X^^T U^)",
            mu(J(n) @ E, Yhat, tol),
            inertia(0.5 * (XU + XU.T), tol, scale=spectral_norm(Yhat) ** 2).i_minus,
        ),
    ]
