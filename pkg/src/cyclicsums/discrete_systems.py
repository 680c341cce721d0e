"""Discrete symplectic systems ``y_{k+1} = S_k y_k`` on ``k = 0..N`` and their focal points.

Forward multiplicities at step ``k`` are ``m1(k) = rank M_k`` and
``m2(k) = ind(T_k X_k X_{k+1}^+ B_k T_k)`` with ``M_k = (I - X_{k+1} X_{k+1}^+) B_k``
and ``T_k = I - M_k^+ M_k``.  Backward multiplicities are read from the
comparative index of the time-reversed system.  Totals over ``k = 0..N``
are ``l`` and ``l*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checks import IdentityCheck
from .comparative_index import comparative_index
from .cyclic_sums import UnsupportedRouteError, WronskianBlockMatrix, as_chain, cyclic_sums
from .lagrangian import (
    frame_array,
    frame_to_symplectic,
    random_frame,
    random_symplectic,
    symplectic_array,
    symplectic_inverse,
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
class SymplecticSystem:
    """Coefficients ``S_0..S_N`` of a discrete symplectic system."""

    coefficients: tuple
    tol: ToleranceProfile = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        mats = tuple(symplectic_array(S, self.tol) for S in self.coefficients)
        if not mats:
            raise InputError("a system needs at least one coefficient matrix (N >= 0)")
        size = mats[0].shape[0]
        for k, S in enumerate(mats):
            if S.shape[0] != size:
                raise InputError(f"coefficient {k} has size {S.shape[0]}, expected {size}")
            S.setflags(write=False)
        object.__setattr__(self, "coefficients", mats)

    @property
    def n(self) -> int:
        return self.coefficients[0].shape[0] // 2

    @property
    def N(self) -> int:
        return len(self.coefficients) - 1

    def B(self, k: int) -> np.ndarray:
        n = self.n
        return self.coefficients[k][:n, n:]

    def inverse(self, k: int) -> np.ndarray:
        return symplectic_inverse(self.coefficients[k])


def as_system(system, tol: ToleranceProfile = DEFAULT_TOL) -> SymplecticSystem:
    if isinstance(system, SymplecticSystem):
        return system
    return SymplecticSystem(tuple(system), tol)


@dataclass(frozen=True, eq=False)
class ConjoinedTrajectory:
    """Frames ``Y_0..Y_{N+1}`` of a conjoined basis with fundamentals ``Z_k``, ``Y_k = Z_k (0;I)``."""

    frames: tuple
    fundamentals: tuple

    @property
    def n(self) -> int:
        return self.frames[0].shape[1]

    def X(self, k: int) -> np.ndarray:
        return self.frames[k][: self.n]


def _trajectory_from(system: SymplecticSystem, start: int, Z_start: np.ndarray) -> ConjoinedTrajectory:
    """Fundamentals propagated forward and backward from ``Z_start`` at index ``start``."""
    N = system.N
    Z = [None] * (N + 2)
    Z[start] = Z_start
    for k in range(start, N + 1):
        Z[k + 1] = system.coefficients[k] @ Z[k]
    for k in range(start - 1, -1, -1):
        Z[k] = system.inverse(k) @ Z[k + 1]
    n = system.n
    frames = tuple(Zk[:, n:] for Zk in Z)
    return ConjoinedTrajectory(frames, tuple(Z))


def propagate(system, Y0, tol: ToleranceProfile = DEFAULT_TOL) -> ConjoinedTrajectory:
    """Trajectory from ``Y_0`` with fundamentals started at a completion of ``Y_0``."""
    system = as_system(system, tol)
    Y0 = frame_array(Y0, tol)
    if Y0.shape[1] != system.n:
        raise InputError(f"initial frame has n={Y0.shape[1]}, system has n={system.n}")
    return _trajectory_from(system, 0, frame_to_symplectic(Y0, tol))


def propagate_fundamental(system, Z0, tol: ToleranceProfile = DEFAULT_TOL) -> ConjoinedTrajectory:
    system = as_system(system, tol)
    Z0 = symplectic_array(Z0, tol)
    if Z0.shape[0] != 2 * system.n:
        raise InputError("fundamental matrix has the wrong size")
    return _trajectory_from(system, 0, Z0)


def principal_solution(system, M: int, tol: ToleranceProfile = DEFAULT_TOL) -> ConjoinedTrajectory:
    """Solution with ``Y_M = (0;I)``; its fundamentals satisfy ``Z_M = I``."""
    system = as_system(system, tol)
    if not 0 <= M <= system.N + 1:
        raise InputError(f"principal index {M} outside 0..{system.N + 1}")
    return _trajectory_from(system, M, np.eye(2 * system.n))


def _check_pair(system: SymplecticSystem, traj: ConjoinedTrajectory):
    if len(traj.frames) != system.N + 2 or traj.n != system.n:
        raise InputError("trajectory does not match the system (length or dimension)")


@dataclass(frozen=True)
class FocalPointTally:
    m1: tuple
    m2: tuple
    m: tuple
    m_star: tuple
    checks: tuple = field(default=(), compare=False, repr=False)

    @property
    def l_total(self) -> int:
        return sum(self.m)

    @property
    def l_star_total(self) -> int:
        return sum(self.m_star)


def forward_focal_multiplicities(system, traj: ConjoinedTrajectory, tol: ToleranceProfile = DEFAULT_TOL):
    """``(m1, m2, m, checks)`` per step; ``m`` is also computed by two comparative-index formulas."""
    system = as_system(system, tol)
    _check_pair(system, traj)
    n = system.n
    E = zero_frame(n)
    m1, m2, m, checks = [], [], [], []
    for k in range(system.N + 1):
        S = system.coefficients[k]
        Bk = system.B(k)
        y_k, y_k1 = spectral_norm(traj.frames[k]), spectral_norm(traj.frames[k + 1])
        s_norm = spectral_norm(S)
        Xk, Xk1 = traj.X(k), traj.X(k + 1)
        E_X, _ = kernel_projectors(Xk1, tol, scale=y_k1)
        Mk = E_X @ Bk
        _, Tk = kernel_projectors(Mk, tol, scale=s_norm)
        Xk1_pinv = pseudoinverse(Xk1, tol, scale=y_k1)
        Pk = sandwich(Tk, Xk @ Xk1_pinv @ Bk)
        a = rank_of(Mk, tol, scale=s_norm)
        b = inertia(Pk, tol, scale=y_k * spectral_norm(Xk1_pinv) * s_norm).i_minus
        m1.append(a)
        m2.append(b)
        m.append(a + b)
        via_frames = comparative_index(traj.frames[k + 1], S @ E, tol).mu
        Zk1_inv = symplectic_inverse(traj.fundamentals[k + 1])
        Zk_inv = symplectic_inverse(traj.fundamentals[k])
        via_fund = comparative_index(Zk1_inv @ E, Zk_inv @ E, tol).mu_star
        checks.append(IdentityCheck(f"m({k}): definition = mu(Y_k+1, S_k(0;I))", a + b, via_frames))
        checks.append(IdentityCheck(f"m({k}): definition = mu*(Z_k+1^-1(0;I), Z_k^-1(0;I))", a + b, via_fund))
    return tuple(m1), tuple(m2), tuple(m), checks


def backward_focal_multiplicities(system, traj: ConjoinedTrajectory, tol: ToleranceProfile = DEFAULT_TOL):
    """``(m_star, checks)`` per step: ``mu*(Y_k, S_k^-1 (0;I))``, checked against ``mu(Z_k^-1(0;I), Z_k+1^-1(0;I))``."""
    system = as_system(system, tol)
    _check_pair(system, traj)
    E = zero_frame(system.n)
    m_star, checks = [], []
    for k in range(system.N + 1):
        a = comparative_index(traj.frames[k], system.inverse(k) @ E, tol).mu_star
        Zk_inv = symplectic_inverse(traj.fundamentals[k])
        Zk1_inv = symplectic_inverse(traj.fundamentals[k + 1])
        b = comparative_index(Zk_inv @ E, Zk1_inv @ E, tol).mu
        m_star.append(a)
        checks.append(IdentityCheck(f"m*({k}): mu*(Y_k, S_k^-1(0;I)) = mu(Z_k^-1(0;I), Z_k+1^-1(0;I))", a, b))
    return tuple(m_star), checks


def focal_tally(system, traj: ConjoinedTrajectory, tol: ToleranceProfile = DEFAULT_TOL) -> FocalPointTally:
    m1, m2, m, fchecks = forward_focal_multiplicities(system, traj, tol)
    m_star, bchecks = backward_focal_multiplicities(system, traj, tol)
    n = traj.n
    bounds = [IdentityCheck(f"0 <= m({k}) <= n", 0 <= v <= n, True) for k, v in enumerate(m)]
    bounds += [IdentityCheck(f"0 <= m*({k}) <= n", 0 <= v <= n, True) for k, v in enumerate(m_star)]
    return FocalPointTally(m1, m2, m, m_star, tuple(fchecks + bchecks + bounds))


def _chain_of(traj: ConjoinedTrajectory):
    E = zero_frame(traj.n)
    return [symplectic_inverse(Z) @ E for Z in traj.fundamentals]


@dataclass(frozen=True)
class FocalCyclicReport:
    mu_minus_chain: int
    mu_plus_rev: int
    nu_minus_chain: int
    nu_plus_rev: int
    checks: tuple = field(default=(), compare=False, repr=False)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.mu_minus_chain, self.mu_plus_rev, self.nu_minus_chain, self.nu_plus_rev


def focal_via_cyclic(system, traj: ConjoinedTrajectory, tol: ToleranceProfile = DEFAULT_TOL) -> FocalCyclicReport:
    """Cyclic sums of ``Z_0^-1(0;I), ..., Z_{N+1}^-1(0;I)`` against principal-solution focal counts."""
    system = as_system(system, tol)
    _check_pair(system, traj)
    chain = as_chain(_chain_of(traj), tol)
    fwd = cyclic_sums(chain, tol)
    rev = cyclic_sums(chain.reversed(), tol)
    t0 = focal_tally(system, principal_solution(system, 0, tol), tol)
    tN = focal_tally(system, principal_solution(system, system.N + 1, tol), tol)
    checks = (
        IdentityCheck("mu_c^-(chain) = l*(Y^[0])", fwd.mu_minus, t0.l_star_total),
        IdentityCheck("mu_c^-(chain) = l(Y^[N+1])", fwd.mu_minus, tN.l_total),
        IdentityCheck("mu_c^+(reversed chain) = l(Y^[N+1])", rev.mu_plus, tN.l_total),
        IdentityCheck("nu_c^-(chain) = l(Y^[0])", fwd.nu_minus, t0.l_total),
        IdentityCheck("nu_c^-(chain) = l*(Y^[N+1])", fwd.nu_minus, tN.l_star_total),
        IdentityCheck("nu_c^+(reversed chain) = l(Y^[0])", rev.nu_plus, t0.l_total),
    )
    return FocalCyclicReport(fwd.mu_minus, rev.mu_plus, fwd.nu_minus, rev.nu_plus, checks)


@dataclass(frozen=True, eq=False)
class PrincipalBlockMatrices:
    """Block matrices built from the upper blocks of all principal solutions.

    ``S0`` has blocks ``S0(i, j) = X^{[i]T}_j`` for ``j >= i`` (0-based).
    ``S0_bar`` is ``None`` when ``N = 0``.
    """

    S0: np.ndarray = field(repr=False)
    S0_bar: np.ndarray | None = field(repr=False)
    M_tilde_d: np.ndarray | None = field(repr=False)
    M_d: np.ndarray | None = field(repr=False)
    D_d: np.ndarray | None = field(repr=False)
    reduced_block: np.ndarray | None = field(repr=False)
    scale: float = 1.0
    reduced_scale: float = 1.0


def principal_block_matrix(system, tol: ToleranceProfile = DEFAULT_TOL) -> PrincipalBlockMatrices:
    system = as_system(system, tol)
    n, N = system.n, system.N
    sols = [principal_solution(system, M, tol) for M in range(N + 2)]
    X = [[sol.X(k) for k in range(N + 2)] for sol in sols]
    # S0 is linear in the frames, so the X-block scale applies (not its square)
    scale = max(spectral_norm(Y) for sol in sols for Y in sol.frames)
    rows = []
    for i in range(N + 2):
        rows.append([X[i][j].T if j >= i else X[j][i] for j in range(N + 2)])
    S0 = np.block(rows)
    S0 = 0.5 * (S0 + S0.T)
    if N == 0:
        return PrincipalBlockMatrices(S0, None, None, None, None, None, scale, scale)

    K_d = np.hstack([X[0][k].T for k in range(1, N + 1)])
    N_d = np.hstack([X[N + 1][k].T for k in range(1, N + 1)])
    _, F0 = kernel_projectors(X[N + 1][0], tol, scale=scale)
    _, FN = kernel_projectors(X[0][N + 1], tol, scale=scale)
    M_tilde = F0 @ N_d
    M_d = FN @ K_d
    XN_pinv = pseudoinverse(X[0][N + 1], tol, scale=scale)
    D_d = -K_d.T @ XN_pinv @ N_d
    mid = S0[n : (N + 1) * n, n : (N + 1) * n]
    G = mid - D_d - D_d.T
    G = 0.5 * (G + G.T)
    S_bar = np.block([[np.zeros((n, n)), M_tilde], [M_tilde.T, G]])
    reduced_scale = scale * (1.0 + scale * spectral_norm(XN_pinv))
    return PrincipalBlockMatrices(S0, S_bar, M_tilde, M_d, D_d, G, scale, reduced_scale)


def focal_counts_via_inertia(system, tol: ToleranceProfile = DEFAULT_TOL) -> tuple[int, int | None]:
    """``(ind(-S0), ind(-S0_bar))``; the second entry is ``None`` when ``N = 0``."""
    P = principal_block_matrix(system, tol)
    first = inertia(P.S0, tol, scale=P.scale).i_plus
    if P.S0_bar is None:
        return first, None
    return first, inertia(P.S0_bar, tol, scale=P.reduced_scale).i_plus


@dataclass(frozen=True)
class DisconjugacyCertificate:
    index: int
    M_tilde_zero: bool
    M_zero: bool
    reduced_nonpositive: bool
    split_condition: bool
    offending_eigenvalue: float | None


def disconjugacy_check(system, tol: ToleranceProfile = DEFAULT_TOL) -> tuple[bool, DisconjugacyCertificate]:
    """Disconjugacy on ``[0, N+1]`` read off from ``ind(-S0_bar) = 0``."""
    system = as_system(system, tol)
    if system.N < 1:
        raise UnsupportedRouteError("the reduced block matrix needs N >= 1; use l(Y^[0]) = 0 directly")
    P = principal_block_matrix(system, tol)
    idx = inertia(P.S0_bar, tol, scale=P.reduced_scale).i_plus
    Mt_zero = rank_of(P.M_tilde_d, tol, scale=P.scale) == 0
    M_zero = rank_of(P.M_d, tol, scale=P.scale) == 0
    red_pos = inertia(P.reduced_block, tol, scale=P.reduced_scale).i_plus
    offending = None
    if idx:
        offending = float(np.linalg.eigvalsh(P.S0_bar)[-1])
    return idx == 0, DisconjugacyCertificate(idx, Mt_zero, M_zero, red_pos == 0, Mt_zero and red_pos == 0, offending)


def random_system(n: int, N: int, seed: int, kind: str = "integer") -> SymplecticSystem:
    """``N + 1`` coefficient matrices from consecutive generator seeds."""
    rng = np.random.default_rng(seed)
    seeds = rng.integers(0, 2**31, size=N + 1)
    return SymplecticSystem(tuple(random_symplectic(n, int(s), kind=kind) for s in seeds))


def system_identity_report(
    system, Y0=None, L=None, seed: int = 0, tol: ToleranceProfile = DEFAULT_TOL
) -> list[IdentityCheck]:
    """Route agreement, mirror equalities, inertia equalities and invariances for one system.

    ``Y0`` is an extra conjoined basis (random when omitted); ``L`` a symplectic
    lower block-triangular matrix for the fundamental-choice invariance.
    """
    system = as_system(system, tol)
    n, N = system.n, system.N
    t0 = focal_tally(system, principal_solution(system, 0, tol), tol)
    tN = focal_tally(system, principal_solution(system, N + 1, tol), tol)
    out = list(t0.checks) + list(tN.checks)
    out.append(IdentityCheck("l(Y^[0]) = l*(Y^[N+1])", t0.l_total, tN.l_star_total))
    out.append(IdentityCheck("l*(Y^[0]) = l(Y^[N+1])", t0.l_star_total, tN.l_total))

    Y0 = random_frame(n, seed) if Y0 is None else frame_array(Y0, tol)
    traj = propagate(system, Y0, tol)
    tally = focal_tally(system, traj, tol)
    out += list(tally.checks)
    cyc = focal_via_cyclic(system, traj, tol)
    out += list(cyc.checks)
    principal_cyc = focal_via_cyclic(system, principal_solution(system, 0, tol), tol)
    out.append(IdentityCheck("cyclic sums independent of the conjoined basis", cyc.as_tuple(), principal_cyc.as_tuple()))
    if L is not None:
        L = symplectic_array(L, tol)
        shifted = ConjoinedTrajectory(traj.frames, tuple(Z @ L for Z in traj.fundamentals))
        out.append(
            IdentityCheck("cyclic sums unchanged under Z_k -> Z_k L", focal_via_cyclic(system, shifted, tol).as_tuple(), cyc.as_tuple())
        )
    out.append(IdentityCheck("l(Y^[0]) <= l(Y)", t0.l_total <= tally.l_total, True))

    chain = _chain_of(principal_solution(system, 0, tol))
    S_chain = WronskianBlockMatrix(as_chain(chain, tol), tol).S
    P = principal_block_matrix(system, tol)
    gap = float(np.abs(P.S0 - S_chain).max())
    out.append(IdentityCheck("S0 blocks = Wronskians of the fundamental chain", gap <= tol.structure_tol * max(1.0, P.scale), True))
    sup = all(
        np.allclose(P.S0[k * n : (k + 1) * n, (k + 1) * n : (k + 2) * n].T, system.B(k), atol=tol.structure_tol * P.scale)
        for k in range(N + 1)
    )
    out.append(IdentityCheck("S0 superdiagonal blocks are B_k", sup, True))
    l_star0, l0 = focal_counts_via_inertia(system, tol)
    out.append(IdentityCheck("l*(Y^[0]) = ind(-S0)", t0.l_star_total, l_star0))
    if N >= 1:
        out.append(IdentityCheck("l(Y^[0]) = ind(-S0_bar)", t0.l_total, l0))
        i_M = inertia(
            np.block([[np.zeros((n, n)), P.M_d], [P.M_d.T, P.reduced_block]]), tol, scale=P.reduced_scale
        ).i_plus
        out.append(IdentityCheck("l(Y^[0]) = ind(-S0_bar) with M_d", t0.l_total, i_M))
        flag, cert = disconjugacy_check(system, tol)
        out.append(IdentityCheck("disconjugate iff l(Y^[0]) = 0", flag, t0.l_total == 0))
        out.append(IdentityCheck("disconjugacy equals the split condition", flag, cert.split_condition))
    return out
