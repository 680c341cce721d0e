"""Cyclic sums of frame chains and their inertia representations.

For a chain ``Y_1, ..., Y_m`` (``m >= 2``) of frames of common size ``n``:

* first kind:  ``mu_c^- = sum_j mu(Y_j, Y_{j+1}) + mu(Y_m, Y_1)``, and
  ``mu_c^+`` with ``mu*`` in place of ``mu``;
* second kind: ``nu_c^- = sum_j mu(Y_j, Y_{j+1}) - mu(Y_1, Y_m)``, and
  ``nu_c^+`` likewise with ``mu*``.

Besides the definition, the sums are available from eigenvalue counts of the
block Wronskian matrix ``S`` (zero diagonal blocks, ``w(Y_i, Y_j)`` above the
diagonal), from two reduced versions of ``S`` with the last frame moved to the
front, and from symmetric charts after a common rotation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .checks import IdentityCheck
from .comparative_index import comparative_index, wronskian_rank
from .lagrangian import (
    InvalidFrameError,
    find_transversal_angle,
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
    null_basis,
    pseudoinverse,
    rank_of,
    sandwich,
    spectral_norm,
)


class UnsupportedRouteError(InputError):
    """A reduced formula was requested for a chain too short to define it."""


@dataclass(frozen=True, eq=False)
class FrameChain:
    """Validated ordered chain of frames sharing one dimension ``n``."""

    frames: tuple
    tol: ToleranceProfile = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        arrays = tuple(frame_array(Y, self.tol) for Y in self.frames)
        if len(arrays) < 2:
            raise InputError(f"a chain needs at least 2 frames, got {len(arrays)}")
        n = arrays[0].shape[1]
        for k, Y in enumerate(arrays):
            if Y.shape[1] != n:
                raise InvalidFrameError(f"frame {k} has n={Y.shape[1]}, expected {n}")
            Y.setflags(write=False)
        object.__setattr__(self, "frames", arrays)

    @property
    def m(self) -> int:
        return len(self.frames)

    @property
    def n(self) -> int:
        return self.frames[0].shape[1]

    def __len__(self) -> int:
        return self.m

    def __getitem__(self, k):
        return self.frames[k]

    def __iter__(self):
        return iter(self.frames)

    def reversed(self) -> "FrameChain":
        return FrameChain(self.frames[::-1], self.tol)

    def rotated(self, k: int = 1) -> "FrameChain":
        """Cyclic shift moving the last ``k`` frames to the front."""
        k %= self.m
        return FrameChain(self.frames[-k:] + self.frames[:-k] if k else self.frames, self.tol)

    def select(self, indices: Sequence[int]) -> "FrameChain":
        return FrameChain(tuple(self.frames[i] for i in indices), self.tol)

    def transformed(self, W) -> "FrameChain":
        """Chain ``W Y_1, ..., W Y_m`` for a symplectic ``W``."""
        W = symplectic_array(W, self.tol)
        return FrameChain(tuple(W @ Y for Y in self.frames), self.tol)

    def scaled(self, C_list) -> "FrameChain":
        if len(C_list) != self.m:
            raise InputError(f"need {self.m} right factors, got {len(C_list)}")
        return FrameChain(tuple(Y @ np.asarray(C, float) for Y, C in zip(self.frames, C_list)), self.tol)


def as_chain(frames, tol: ToleranceProfile = DEFAULT_TOL) -> FrameChain:
    if isinstance(frames, FrameChain):
        return frames
    return FrameChain(tuple(frames), tol)


@dataclass(frozen=True)
class CyclicSumBundle:
    mu_minus: int
    mu_plus: int
    nu_minus: int
    nu_plus: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.mu_minus, self.mu_plus, self.nu_minus, self.nu_plus


def _norm2(chain: FrameChain) -> float:
    return max(spectral_norm(Y) for Y in chain) ** 2


def _pair_counts(chain: FrameChain, tol):
    """``(mu, mu*)`` for consecutive pairs ``j = 1..m-1`` and for ``(Y_m, Y_1)``, ``(Y_1, Y_m)``."""
    Ys = chain.frames
    steps = [comparative_index(Ys[j], Ys[j + 1], tol) for j in range(chain.m - 1)]
    closing = comparative_index(Ys[-1], Ys[0], tol)
    opening = comparative_index(Ys[0], Ys[-1], tol)
    return steps, closing, opening


def cyclic_sums(frames, tol: ToleranceProfile = DEFAULT_TOL) -> CyclicSumBundle:
    """All four cyclic sums from the definition."""
    chain = as_chain(frames, tol)
    steps, closing, opening = _pair_counts(chain, tol)
    open_mu = sum(c.mu for c in steps)
    open_mu_star = sum(c.mu_star for c in steps)
    return CyclicSumBundle(
        open_mu + closing.mu,
        open_mu_star + closing.mu_star,
        open_mu - opening.mu,
        open_mu_star - opening.mu_star,
    )


def cyclic_sum_first(frames, tol: ToleranceProfile = DEFAULT_TOL) -> tuple[int, int]:
    """``(mu_c^-, mu_c^+)`` from the definition."""
    b = cyclic_sums(frames, tol)
    return b.mu_minus, b.mu_plus


def cyclic_sum_second(frames, tol: ToleranceProfile = DEFAULT_TOL) -> tuple[int, int]:
    """``(nu_c^-, nu_c^+)`` from the definition."""
    b = cyclic_sums(frames, tol)
    return b.nu_minus, b.nu_plus


def _hcat(blocks, n):
    return np.hstack(blocks) if blocks else np.zeros((n, 0))


@dataclass(frozen=True, eq=False)
class WronskianBlockMatrix:
    """The block Wronskian matrix of a chain and the blocks of its permuted forms.

    Blocks are indexed from 0: ``w(i, j) = w(Y_{i+1}, Y_{j+1})``.  The permuted
    quantities refer to the chain ``Y_m, Y_1, ..., Y_{m-1}``.
    """

    chain: FrameChain
    tol: ToleranceProfile = field(default=DEFAULT_TOL, repr=False)

    @property
    def m(self) -> int:
        return self.chain.m

    @property
    def n(self) -> int:
        return self.chain.n

    @cached_property
    def scale(self) -> float:
        """Bound for the magnitude of every Wronskian block."""
        return _norm2(self.chain)

    @cached_property
    def _w(self) -> dict:
        Ys = self.chain.frames
        out = {}
        for i in range(self.m):
            for j in range(i + 1, self.m):
                out[i, j] = wronskian(Ys[i], Ys[j])
        return out

    def w(self, i: int, j: int) -> np.ndarray:
        if i == j:
            return np.zeros((self.n, self.n))
        if i < j:
            return self._w[i, j]
        return self._w[j, i].T

    def principal(self, start: int, stop: int) -> np.ndarray:
        """Block matrix of frames ``start..stop-1``; the empty range gives ``0_n``."""
        n = self.n
        idx = list(range(start, stop))
        if not idx:
            return np.zeros((n, n))
        return np.block([[self.w(i, j) for j in idx] for i in idx])

    @cached_property
    def S(self) -> np.ndarray:
        return self.principal(0, self.m)

    @cached_property
    def S_head(self) -> np.ndarray:
        """Block matrix of ``Y_1..Y_{m-1}``; ``0_n`` when ``m = 2``."""
        return self.principal(0, self.m - 1)

    @cached_property
    def S_mid(self) -> np.ndarray:
        """Block matrix of ``Y_2..Y_{m-1}``; ``0_n`` when ``m = 3``."""
        self._need3()
        return self.principal(1, self.m - 1)

    @cached_property
    def w_m1(self) -> np.ndarray:
        return self.w(self.m - 1, 0)

    @cached_property
    def W(self) -> np.ndarray:
        return _hcat([self.w(self.m - 1, j) for j in range(self.m - 1)], self.n)

    @cached_property
    def N(self) -> np.ndarray:
        self._need3()
        return _hcat([self.w(self.m - 1, j) for j in range(1, self.m - 1)], self.n)

    @cached_property
    def K(self) -> np.ndarray:
        self._need3()
        return _hcat([self.w(0, j) for j in range(1, self.m - 1)], self.n)

    @cached_property
    def w_m1_pinv(self) -> np.ndarray:
        return pseudoinverse(self.w_m1, self.tol, scale=self.scale)

    @cached_property
    def M_tilde(self) -> np.ndarray:
        E, _ = kernel_projectors(self.w_m1, self.tol, scale=self.scale)
        return E @ self.N

    @cached_property
    def M(self) -> np.ndarray:
        _, F = kernel_projectors(self.w_m1, self.tol, scale=self.scale)
        return F @ self.K

    @cached_property
    def D(self) -> np.ndarray:
        return self.K.T @ self.w_m1_pinv @ self.N

    @cached_property
    def reduced_block(self) -> np.ndarray:
        G = self.S_mid - self.D - self.D.T
        return 0.5 * (G + G.T)

    @cached_property
    def reduced_scale(self) -> float:
        return self.scale * (1.0 + self.scale * spectral_norm(self.w_m1_pinv))

    def S_bar(self, use_M: bool = False) -> np.ndarray:
        B = self.M if use_M else self.M_tilde
        k = B.shape[1]
        return np.block([[np.zeros((self.n, self.n)), B], [B.T, self.reduced_block]]) if k else np.zeros(
            (self.n, self.n)
        )

    @cached_property
    def F_W(self) -> np.ndarray:
        _, F = kernel_projectors(self.W, self.tol, scale=self.scale)
        return F

    @cached_property
    def projected_head(self) -> np.ndarray:
        """``F_W S_{1..m-1} F_W``."""
        return sandwich(self.F_W, self.S_head)

    def _need3(self):
        if self.m < 3:
            raise UnsupportedRouteError("the reduced blocks need a chain of length m >= 3")

    # integer summaries -----------------------------------------------------

    def rank(self, A) -> int:
        return rank_of(A, self.tol, scale=self.scale)

    def inertia_S(self):
        return inertia(self.S, self.tol, scale=self.scale)

    def inertia_projected(self):
        return inertia(self.projected_head, self.tol, scale=self.scale)

    def inertia_S_bar(self, use_M: bool = False):
        return inertia(self.S_bar(use_M), self.tol, scale=self.reduced_scale)

    def inertia_schur(self, use_M: bool = False):
        B = self.M if use_M else self.M_tilde
        _, F = kernel_projectors(B, self.tol, scale=self.scale)
        return inertia(sandwich(F, self.reduced_block), self.tol, scale=self.reduced_scale)


def wronskian_block_matrix(frames, tol: ToleranceProfile = DEFAULT_TOL) -> WronskianBlockMatrix:
    return WronskianBlockMatrix(as_chain(frames, tol), tol)


def cyclic_sum_via_inertia(frames, tol: ToleranceProfile = DEFAULT_TOL) -> tuple[int, int]:
    """``(mu_c^-, mu_c^+) = (i_+(S), i_-(S))``."""
    i = wronskian_block_matrix(frames, tol).inertia_S()
    return i.i_plus, i.i_minus


_NU_ROUTES = ("projector", "reduced", "schur")


def nu_via_inertia(
    frames, route: str = "projector", use_M: bool = False, tol: ToleranceProfile = DEFAULT_TOL
) -> tuple[int, int]:
    """``(nu_c^-, nu_c^+)`` from a reduced inertia formula.

    ``projector``: ``rank M~ + i_-+(F_W S_{1..m-1} F_W)`` (any ``m``);
    ``reduced``:   ``i_-+(S_bar)`` (``m >= 3``);
    ``schur``:     ``rank M~ + i_-+(F_{M~} (S_{2..m-1} - D - D^T) F_{M~})`` (``m >= 3``).
    With ``use_M`` the block ``M~`` is replaced by ``M``.
    """
    if route not in _NU_ROUTES:
        raise InputError(f"unknown route {route!r}; choose from {_NU_ROUTES}")
    B = wronskian_block_matrix(frames, tol)
    if route == "projector":
        if B.m == 2:
            # M~ has no columns and S_1 := 0
            i = B.inertia_projected()
            return i.i_plus, i.i_minus
        r = B.rank(B.M if use_M else B.M_tilde)
        i = B.inertia_projected()
        return r + i.i_plus, r + i.i_minus
    if B.m < 3:
        raise UnsupportedRouteError(f"route {route!r} needs m >= 3")
    if route == "reduced":
        i = B.inertia_S_bar(use_M)
        return i.i_plus, i.i_minus
    r = B.rank(B.M if use_M else B.M_tilde)
    i = B.inertia_schur(use_M)
    return r + i.i_plus, r + i.i_minus


def permuted_block_inertia(
    frames, route: str = "projector", tol: ToleranceProfile = DEFAULT_TOL
) -> tuple[int, int]:
    """``(mu_c^-, mu_c^+)`` with the last frame moved to the front.

    ``projector``: ``rank W + i_-+(F_W S_{1..m-1} F_W)``;
    ``reduced``:   ``rank w_{m,1} + i_-+(S_bar)`` (``m >= 3``).
    """
    B = wronskian_block_matrix(frames, tol)
    if route == "projector":
        r = B.rank(B.W)
        i = B.inertia_projected()
    elif route == "reduced":
        if B.m < 3:
            raise UnsupportedRouteError("route 'reduced' needs m >= 3")
        r = B.rank(B.w_m1)
        i = B.inertia_S_bar()
    else:
        raise InputError(f"unknown route {route!r}")
    return r + i.i_plus, r + i.i_minus


def transversal_chart_sums(frames, seed: int = 0, tol: ToleranceProfile = DEFAULT_TOL) -> CyclicSumBundle:
    """Cyclic sums from symmetric charts ``Q~_k = U~_k X~_k^{-1}`` after a common rotation."""
    chain = as_chain(frames, tol)
    rot = find_transversal_angle(chain.frames, seed=seed, tol=tol)
    n = chain.n
    Q = []
    for Y in chain:
        Yt = rot.R_inv @ Y
        G = np.linalg.solve(Yt[:n].T, Yt[n:].T).T
        Q.append(0.5 * (G + G.T))

    def counts(a, b):
        # returns (ind(-(Q_a - Q_b)), ind(Q_a - Q_b)) = (mu, mu*) of the pair (a, b)
        i = inertia(Q[a] - Q[b], tol, scale=spectral_norm(Q[a]) + spectral_norm(Q[b]))
        return i.i_plus, i.i_minus

    m = chain.m
    steps = [counts(k, k + 1) for k in range(m - 1)]
    lo = sum(s[0] for s in steps)
    hi = sum(s[1] for s in steps)
    close = counts(m - 1, 0)
    opening = counts(0, m - 1)
    return CyclicSumBundle(lo + close[0], hi + close[1], lo - opening[0], hi - opening[1])


# --- bounds --------------------------------------------------------------------


@dataclass(frozen=True)
class CyclicSumBounds:
    r_lower: int
    P_upper: int
    nu_lower: int
    nu_upper: int
    checks: tuple = field(default=(), compare=False)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.r_lower, self.P_upper, self.nu_lower, self.nu_upper


def cyclic_sum_bounds(frames, R=None, tol: ToleranceProfile = DEFAULT_TOL) -> CyclicSumBounds:
    """``r <= mu_c^+- <= P`` and the shifted bounds for ``nu_c^+-``.

    ``r`` is the largest ``rank w(Y_l, Y_k)`` over ``l < k``; ``P`` sums
    ``min(rank w(Y_j, Y_{j+1}), rank w(R(0;I), Y_{j+1}))`` around the cycle.
    ``R`` defaults to the identity.
    """
    chain = as_chain(frames, tol)
    n, m = chain.n, chain.m
    R = np.eye(2 * n) if R is None else symplectic_array(R, tol)
    RE = R @ zero_frame(n)
    Ys = chain.frames
    r = max(wronskian_rank(Ys[l], Ys[k], tol) for l in range(m) for k in range(l + 1, m))
    nxt = list(range(1, m)) + [0]
    P = sum(
        min(wronskian_rank(Ys[j], Ys[k], tol), wronskian_rank(RE, Ys[k], tol)) for j, k in zip(range(m), nxt)
    )
    r1m = wronskian_rank(Ys[0], Ys[-1], tol)
    b = cyclic_sums(chain, tol)
    checks = (
        IdentityCheck("0 <= r <= mu_c^-", 0 <= r <= b.mu_minus, True),
        IdentityCheck("0 <= r <= mu_c^+", 0 <= r <= b.mu_plus, True),
        IdentityCheck("mu_c^- <= P", b.mu_minus <= P, True),
        IdentityCheck("mu_c^+ <= P", b.mu_plus <= P, True),
        IdentityCheck("r - rank w(Y_1,Y_m) <= nu_c^-", r - r1m <= b.nu_minus, True),
        IdentityCheck("r - rank w(Y_1,Y_m) <= nu_c^+", r - r1m <= b.nu_plus, True),
        IdentityCheck("nu_c^- <= P - rank w(Y_1,Y_m)", b.nu_minus <= P - r1m, True),
        IdentityCheck("nu_c^+ <= P - rank w(Y_1,Y_m)", b.nu_plus <= P - r1m, True),
    )
    return CyclicSumBounds(r, P, r - r1m, P - r1m, checks)


# --- identity reports ----------------------------------------------------------


def _rank_sums(chain: FrameChain, tol):
    Ys = chain.frames
    open_ranks = sum(wronskian_rank(Ys[j], Ys[j + 1], tol) for j in range(chain.m - 1))
    return open_ranks, wronskian_rank(Ys[-1], Ys[0], tol)


def intersection_dimension(frames, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """``dim(L_1 ∩ ... ∩ L_m)`` for the column spaces, from the stacked complement projectors."""
    chain = as_chain(frames, tol)
    blocks = []
    for Y in chain:
        Qy, _ = np.linalg.qr(Y)
        blocks.append(np.eye(2 * chain.n) - Qy @ Qy.T)
    return null_basis(np.vstack(blocks), tol, scale=1.0).shape[1]


def sum_dimension(frames, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """``dim(L_1 + ... + L_m) = rank(Y_1 ... Y_m)``."""
    chain = as_chain(frames, tol)
    return rank_of(np.hstack(chain.frames), tol, scale=np.sqrt(_norm2(chain)))


def geometric_identities(frames, tol: ToleranceProfile = DEFAULT_TOL) -> list[IdentityCheck]:
    """Rank and dimension identities for the projected block matrix."""
    chain = as_chain(frames, tol)
    B = WronskianBlockMatrix(chain, tol)
    n, m = chain.n, chain.m
    open_ranks, closing = _rank_sums(chain, tol)
    rank_W = B.rank(B.W)
    i_proj = B.inertia_projected()
    dim_sum = sum_dimension(chain, tol)
    dim_cap = intersection_dimension(chain, tol)
    Ys = chain.frames
    nxt = list(range(1, m)) + [0]
    pair_caps = sum(n - wronskian_rank(Ys[j], Ys[k], tol) for j, k in zip(range(m), nxt))
    out = [
        IdentityCheck("rank W = dim(sum L) - n", rank_W, dim_sum - n),
        IdentityCheck("dim(cap L) = 2n - dim(sum L)", dim_cap, 2 * n - dim_sum),
        IdentityCheck(
            "rank(F_W S F_W) = sum rank w + rank w_m1 - 2 rank W",
            i_proj.rank,
            open_ranks + closing - 2 * rank_W,
        ),
        IdentityCheck(
            "rank(F_W S F_W) = 2 dim(cap L) + (m-2)n - sum dim(L_j cap L_j+1)",
            i_proj.rank,
            2 * dim_cap + (m - 2) * n - pair_caps,
        ),
    ]
    if m >= 3:
        out.append(IdentityCheck("rank W = rank w_m1 + rank M~", rank_W, B.rank(B.w_m1) + B.rank(B.M_tilde)))
        out.append(IdentityCheck("rank F_W S F_W = rank of reduced Schur form", i_proj.rank, B.inertia_schur().rank))
        out.append(IdentityCheck("F_{M~} = F_M (rank M~ = rank M)", B.rank(B.M_tilde), B.rank(B.M)))
    return out


def route_agreement(frames, seed: int = 0, tol: ToleranceProfile = DEFAULT_TOL) -> list[IdentityCheck]:
    """All routes for ``mu_c^+-`` and ``nu_c^+-`` against the definition."""
    chain = as_chain(frames, tol)
    b = cyclic_sums(chain, tol)
    mu = (b.mu_minus, b.mu_plus)
    nu = (b.nu_minus, b.nu_plus)
    out = [
        IdentityCheck("mu_c: definition = inertia of S", mu, cyclic_sum_via_inertia(chain, tol)),
        IdentityCheck("mu_c: definition = rank W + projected inertia", mu, permuted_block_inertia(chain, "projector", tol)),
        IdentityCheck("nu_c: definition = rank M~ + projected inertia", nu, nu_via_inertia(chain, "projector", tol=tol)),
        IdentityCheck("mu_c, nu_c: definition = transversal charts", b.as_tuple(), transversal_chart_sums(chain, seed, tol).as_tuple()),
    ]
    if chain.m >= 3:
        out += [
            IdentityCheck("mu_c: definition = rank w_m1 + inertia of S_bar", mu, permuted_block_inertia(chain, "reduced", tol)),
            IdentityCheck("nu_c: definition = inertia of S_bar", nu, nu_via_inertia(chain, "reduced", tol=tol)),
            IdentityCheck("nu_c: definition = inertia of S_bar with M", nu, nu_via_inertia(chain, "reduced", True, tol)),
            IdentityCheck("nu_c: definition = reduced Schur form", nu, nu_via_inertia(chain, "schur", tol=tol)),
            IdentityCheck("nu_c: definition = reduced Schur form with M", nu, nu_via_inertia(chain, "schur", True, tol)),
        ]
    return out


def _nu_pair(chain, tol):
    b = cyclic_sums(chain, tol)
    return b.nu_minus, b.nu_plus


def _mu_pair(chain, tol):
    b = cyclic_sums(chain, tol)
    return b.mu_minus, b.mu_plus


def chain_property_report(
    frames, R=None, C_list=None, tol: ToleranceProfile = DEFAULT_TOL
) -> list[IdentityCheck]:
    """Invariance, duality, rank-sum, reduction and recurrence identities for one chain.

    ``R`` (symplectic) defaults to the identity, ``C_list`` (nonsingular right
    factors, one per frame) to identities.
    """
    chain = as_chain(frames, tol)
    n, m = chain.n, chain.m
    Ys = chain.frames
    R = np.eye(2 * n) if R is None else symplectic_array(R, tol)
    C_list = [np.eye(n)] * m if C_list is None else C_list
    b = cyclic_sums(chain, tol)
    mu = (b.mu_minus, b.mu_plus)
    nu = (b.nu_minus, b.nu_plus)
    open_ranks, closing = _rank_sums(chain, tol)
    out = [
        IdentityCheck("connection mu_c^- = nu_c^- + rank w(Y_m,Y_1)", b.mu_minus, b.nu_minus + closing),
        IdentityCheck("connection mu_c^+ = nu_c^+ + rank w(Y_m,Y_1)", b.mu_plus, b.nu_plus + closing),
        IdentityCheck("nu_c^- >= 0", b.nu_minus >= 0, True),
        IdentityCheck("nu_c^+ >= 0", b.nu_plus >= 0, True),
    ]

    scaled = chain.scaled(C_list)
    sb = cyclic_sums(scaled, tol)
    out.append(IdentityCheck("right scaling leaves all sums unchanged", sb.as_tuple(), b.as_tuple()))

    for k in range(1, m):
        out.append(IdentityCheck(f"cyclic shift by {k} leaves mu_c unchanged", _mu_pair(chain.rotated(k), tol), mu))

    rb = cyclic_sums(chain.reversed(), tol)
    out.append(IdentityCheck("reversal: mu_c^+-(Y) = mu_c^-+(reversed)", mu, (rb.mu_plus, rb.mu_minus)))
    out.append(IdentityCheck("reversal: nu_c^+-(Y) = nu_c^-+(reversed)", nu, (rb.nu_plus, rb.nu_minus)))

    out.append(IdentityCheck("mu_c^- + mu_c^+ = sum rank w + rank w_m1", b.mu_minus + b.mu_plus, open_ranks + closing))
    out.append(IdentityCheck("nu_c^- + nu_c^+ = sum rank w - rank w_m1", b.nu_minus + b.nu_plus, open_ranks - closing))

    Ri = symplectic_inverse(R)
    out.append(IdentityCheck("symplectic invariance under R^-1", cyclic_sums(chain.transformed(Ri), tol).as_tuple(), b.as_tuple()))

    Zi = symplectic_inverse(frame_to_symplectic(Ys[-1], tol))
    moved = [Zi @ Y for Y in Ys[:-1]]
    red = [comparative_index(moved[j], moved[j + 1], tol) for j in range(m - 2)]
    red_mu = sum(c.mu for c in red)
    red_star = sum(c.mu_star for c in red)
    out += [
        IdentityCheck("Z_m reduction for mu_c^-", b.mu_minus, red_mu + closing),
        IdentityCheck("Z_m reduction for mu_c^+", b.mu_plus, red_star + closing),
        IdentityCheck("Z_m reduction for nu_c^-", b.nu_minus, red_mu),
        IdentityCheck("Z_m reduction for nu_c^+", b.nu_plus, red_star),
    ]

    def nu_of(idx):
        return _nu_pair(chain.select(idx), tol) if len(idx) >= 3 else (0, 0)

    def mu_of(idx):
        return _mu_pair(chain.select(idx), tol)

    def add(a, c, shift=0):
        return a[0] + c[0] - shift, a[1] + c[1] - shift

    def rk(i, j):
        return wronskian_rank(Ys[i], Ys[j], tol)

    full = list(range(m))
    for l in range(1, m - 1):  # 0-based split point, i.e. 2 <= l+1 < m
        head, tail = full[: l + 1], [0] + full[l:]
        out.append(IdentityCheck(f"nu recurrence at split {l + 1} (first form)", nu, add(nu_of(head), nu_of(tail))))
        head2, tail2 = full[: l + 1] + [m - 1], full[l:]
        out.append(IdentityCheck(f"nu recurrence at split {l + 1} (second form)", nu, add(nu_of(head2), nu_of(tail2))))
        out.append(
            IdentityCheck(
                f"mu recurrence at split {l + 1} (first form)", mu, add(mu_of(head), mu_of(tail), rk(0, l))
            )
        )
        out.append(
            IdentityCheck(
                f"mu recurrence at split {l + 1} (second form)", mu, add(mu_of(head2), mu_of(tail2), rk(l, m - 1))
            )
        )

    if m >= 3:
        fan = [nu_of([0, j, j + 1]) for j in range(1, m - 1)]
        out.append(IdentityCheck("nu as sum over triples (Y_1, Y_j, Y_j+1)", nu, tuple(map(sum, zip(*fan)))))
        fan = [nu_of([j, j + 1, m - 1]) for j in range(m - 2)]
        out.append(IdentityCheck("nu as sum over triples (Y_j, Y_j+1, Y_m)", nu, tuple(map(sum, zip(*fan)))))
        fan = [mu_of([0, j, j + 1]) for j in range(1, m - 1)]
        corr = sum(rk(0, j) for j in range(2, m - 1))
        out.append(
            IdentityCheck(
                "mu as sum over triples (Y_1, Y_j, Y_j+1)", mu, tuple(s - corr for s in map(sum, zip(*fan)))
            )
        )
        fan = [mu_of([j, j + 1, m - 1]) for j in range(m - 2)]
        corr = sum(rk(j, m - 1) for j in range(1, m - 2))
        out.append(
            IdentityCheck("mu as sum over triples (Y_j, Y_j+1, Y_m)", mu, tuple(s - corr for s in map(sum, zip(*fan))))
        )

    if m == 3:
        total = rk(0, 1) + rk(0, 2) + rk(1, 2)
        swapped = mu_of([1, 0, 2])
        out.append(
            IdentityCheck("m=3: mu_c(Y1,Y2,Y3) = sum rank w - mu_c(Y2,Y1,Y3)", mu, (total - swapped[0], total - swapped[1]))
        )
        out.append(IdentityCheck("m=3: mu_c(Y2,Y1,Y3) = mu_c(Y3,Y2,Y1)", swapped, mu_of([2, 1, 0])))
        out.append(IdentityCheck("m=3: mu_c(Y2,Y1,Y3) = mu_c(Y1,Y3,Y2)", swapped, mu_of([0, 2, 1])))
        r12, r23, r13 = rk(0, 1), rk(1, 2), rk(0, 2)
        out.append(
            IdentityCheck(
                "m=3: nu_c(Y1,Y2,Y3) = rank w12 - nu_c(Y2,Y1,Y3)", nu, tuple(r12 - v for v in nu_of([1, 0, 2]))
            )
        )
        out.append(
            IdentityCheck(
                "m=3: nu_c(Y1,Y2,Y3) = rank w23 - nu_c(Y1,Y3,Y2)", nu, tuple(r23 - v for v in nu_of([0, 2, 1]))
            )
        )
        out.append(
            IdentityCheck(
                "m=3: nu_c(Y1,Y2,Y3) = rank w12 + rank w23 - rank w13 - nu_c(Y3,Y2,Y1)",
                nu,
                tuple(r12 + r23 - r13 - v for v in nu_of([2, 1, 0])),
            )
        )

    if m == 4:
        lhs = nu
        out.append(IdentityCheck("m=4 cocycle: nu(1234) = nu(123) + nu(134)", lhs, add(nu_of([0, 1, 2]), nu_of([0, 2, 3]))))
        out.append(IdentityCheck("m=4 cocycle: nu(1234) = nu(124) + nu(234)", lhs, add(nu_of([0, 1, 3]), nu_of([1, 2, 3]))))
    return out
