"""Kashiwara index of Lagrangian tuples.

For three frames the index is the signature of the quadratic form
``B(x) = w(x_1, x_2) + w(x_2, x_3) + w(x_3, x_1)`` on ``L_1 + L_2 + L_3``
written in frame coordinates ``x_i = Y_i c_i``.  Longer tuples are handled by
the fan sum ``tau(L_1..L_m) = sum_{j=2}^{m-1} tau(L_1, L_j, L_{j+1})``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checks import IdentityCheck
from .comparative_index import comparative_index, wronskian_rank
from .cyclic_sums import CyclicSumBundle, WronskianBlockMatrix, as_chain, cyclic_sums
from .lagrangian import frame_to_symplectic, symplectic_array, symplectic_inverse, wronskian
from .linalg_core import DEFAULT_TOL, InputError, ToleranceProfile, inertia, spectral_norm


@dataclass(frozen=True, eq=False)
class KashiwaraFormMatrix:
    S_B: np.ndarray = field(repr=False)
    K_diag: np.ndarray = field(repr=False)
    scale: float = 0.0

    def signature(self, tol: ToleranceProfile = DEFAULT_TOL) -> int:
        return inertia(self.S_B, tol, scale=self.scale).sign


def kashiwara_form_matrix(Y1, Y2, Y3, tol: ToleranceProfile = DEFAULT_TOL) -> KashiwaraFormMatrix:
    """Matrix of ``B`` in frame coordinates, assembled directly from the three Wronskians."""
    chain = as_chain([Y1, Y2, Y3], tol)
    n = chain.n
    Y1, Y2, Y3 = chain.frames
    O = np.zeros((n, n))
    G = np.block(
        [
            [O, wronskian(Y1, Y2), O],
            [O, O, wronskian(Y2, Y3)],
            [wronskian(Y3, Y1), O, O],
        ]
    )
    I = np.eye(n)
    K = np.block([[I, O, O], [O, -I, O], [O, O, I]])
    scale = max(spectral_norm(Y) for Y in chain) ** 2
    return KashiwaraFormMatrix(0.5 * (G + G.T), K, scale)


def _need3(chain):
    if chain.m < 3:
        raise InputError(f"the Kashiwara index needs at least 3 frames, got {chain.m}")


def kashiwara_index(frames, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """Signature of ``B`` for a triple; the fan sum over triples ``(L_1, L_j, L_{j+1})`` beyond."""
    chain = as_chain(frames, tol)
    _need3(chain)
    Ys = chain.frames
    return sum(
        kashiwara_form_matrix(Ys[0], Ys[j], Ys[j + 1], tol).signature(tol) for j in range(1, chain.m - 1)
    )


def kashiwara_via_cyclic(frames, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """``mu_c^+ - mu_c^-``."""
    chain = as_chain(frames, tol)
    _need3(chain)
    b = cyclic_sums(chain, tol)
    return b.mu_plus - b.mu_minus


def _rank_sums(chain, tol):
    Ys = chain.frames
    steps = sum(wronskian_rank(Ys[j], Ys[j + 1], tol) for j in range(chain.m - 1))
    return steps, wronskian_rank(Ys[-1], Ys[0], tol)


def kashiwara_inverse_formulas(frames, tol: ToleranceProfile = DEFAULT_TOL) -> CyclicSumBundle:
    """Cyclic sums rebuilt from ``tau`` and the Wronskian ranks.

    ``mu_c^+- = (sum + rank w_m1 +- tau) / 2`` and
    ``nu_c^+- = (sum - rank w_m1 +- tau) / 2``; raises if a numerator is odd.
    """
    chain = as_chain(frames, tol)
    _need3(chain)
    tau = kashiwara_index(chain, tol)
    steps, closing = _rank_sums(chain, tol)
    nums = (steps + closing - tau, steps + closing + tau, steps - closing - tau, steps - closing + tau)
    if any(v % 2 for v in nums):
        raise ArithmeticError(f"odd numerator in half formulas: ranks {steps}+{closing}, tau {tau}")
    return CyclicSumBundle(*(v // 2 for v in nums))


def kashiwara_sign_representations(frames, R=None, tol: ToleranceProfile = DEFAULT_TOL) -> dict[str, int]:
    """Every alternative expression for ``tau``, keyed by a short description.

    ``R`` (symplectic, default identity) enters the sum of ``sign P`` over the
    transformed chain ``R^{-1} Y_k``.
    """
    chain = as_chain(frames, tol)
    _need3(chain)
    n, m = chain.n, chain.m
    R = np.eye(2 * n) if R is None else symplectic_array(R, tol)
    Ri = symplectic_inverse(R)
    moved = [Ri @ Y for Y in chain]
    nxt = list(range(1, m)) + [0]
    sign_sum = sum(comparative_index(moved[j], moved[k], tol).sign_P for j, k in zip(range(m), nxt))

    Zi = symplectic_inverse(frame_to_symplectic(chain[-1], tol))
    reduced = [Zi @ Y for Y in chain.frames[:-1]]
    z_sum = sum(comparative_index(reduced[j], reduced[j + 1], tol).sign_P for j in range(m - 2))

    B = WronskianBlockMatrix(chain, tol)
    b = cyclic_sums(chain, tol)
    return {
        "signature of B (fan sum)": kashiwara_index(chain, tol),
        "mu_c^+ - mu_c^-": b.mu_plus - b.mu_minus,
        "nu_c^+ - nu_c^-": b.nu_plus - b.nu_minus,
        "sum of sign P over R^-1 Y": sign_sum,
        "sum of sign P over Z_m^-1 Y": z_sum,
        "-sign S": -B.inertia_S().sign,
        "-sign(F_W S_head F_W)": -B.inertia_projected().sign,
        "-sign(F_M~ (S_mid - D - D^T) F_M~)": -B.inertia_schur().sign,
    }


def kashiwara_checks(frames, R=None, tol: ToleranceProfile = DEFAULT_TOL) -> list[IdentityCheck]:
    """Agreement of all representations, the half formulas and the elementary index properties."""
    chain = as_chain(frames, tol)
    reps = kashiwara_sign_representations(chain, R, tol)
    tau = reps.pop("signature of B (fan sum)")
    out = [IdentityCheck(f"tau = {name}", tau, value) for name, value in reps.items()]
    steps, closing = _rank_sums(chain, tol)
    out.append(IdentityCheck("|tau| <= sum rank w + rank w_m1", abs(tau) <= steps + closing, True))
    out.append(IdentityCheck("sum rank w + rank w_m1 + tau is even", (steps + closing + tau) % 2, 0))
    if (steps + closing + tau) % 2 == 0:
        out.append(
            IdentityCheck(
                "half formulas reproduce the cyclic sums",
                kashiwara_inverse_formulas(chain, tol).as_tuple(),
                cyclic_sums(chain, tol).as_tuple(),
            )
        )
    if chain.m == 3:
        form = kashiwara_form_matrix(*chain.frames, tol)
        S123 = WronskianBlockMatrix(chain, tol).S
        K = form.K_diag
        gap = float(np.abs(form.S_B + 0.5 * K @ S123 @ K).max())
        out.append(IdentityCheck("S_B = -1/2 K S_123 K", gap <= tol.structure_tol * max(1.0, form.scale), True))
        out.append(IdentityCheck("tau(L1,L2,L3) = tau(L3,L1,L2)", tau, kashiwara_index(chain.select([2, 0, 1]), tol)))
        out.append(IdentityCheck("tau(L1,L2,L3) = tau(L2,L3,L1)", tau, kashiwara_index(chain.select([1, 2, 0]), tol)))
        out.append(IdentityCheck("tau(L1,L2,L3) = -tau(L2,L1,L3)", tau, -kashiwara_index(chain.select([1, 0, 2]), tol)))
    return out
