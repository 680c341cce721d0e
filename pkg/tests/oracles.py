"""Independent reference computations used by the tests.

Nothing here calls into the package's index code: the scalar formulas are
written out from the definitions for n = 1, and the generic-position
formula uses plain numpy eigenvalues.
"""

from __future__ import annotations

import numpy as np

from cyclicsums.lagrangian import random_frame
from cyclicsums.verification import trial_seed


def mu_lines(y, yh) -> tuple[int, int]:
    """``(mu, mu*)`` for two lines ``(x; u)`` and ``(xh; uh)`` in the plane."""
    x, u = float(y[0]), float(y[1])
    xh, uh = float(yh[0]), float(yh[1])
    w = x * uh - u * xh
    if x != 0:
        p = w * xh / x
        return int(p < 0), int(p > 0)
    return int(w != 0), int(w != 0)


def cyclic_lines(lines) -> tuple[int, int, int, int]:
    m = len(lines)
    pairs = [mu_lines(lines[j], lines[(j + 1) % m]) for j in range(m)]
    mu_minus = sum(p[0] for p in pairs)
    mu_plus = sum(p[1] for p in pairs)
    opened = pairs[:-1]
    back = mu_lines(lines[0], lines[-1])
    return mu_minus, mu_plus, sum(p[0] for p in opened) - back[0], sum(p[1] for p in opened) - back[1]


def mu_generic(Y, Yh) -> tuple[int, int]:
    """``(mu, mu*)`` when both upper blocks are invertible: negative and positive eigenvalues of ``Qh - Q``."""
    n = Y.shape[1]
    Q = Y[n:] @ np.linalg.inv(Y[:n])
    Qh = Yh[n:] @ np.linalg.inv(Yh[:n])
    D = Qh - Q
    ev = np.linalg.eigvalsh(0.5 * (D + D.T))
    cut = 1e-9 * max(1.0, np.abs(ev).max())
    return int((ev < -cut).sum()), int((ev > cut).sum())


def scalar_focal_counts(coeffs, x0: float, u0: float) -> tuple[list[int], list[int]]:
    """Forward and backward focal multiplicities of a scalar (n = 1) conjoined basis by direct propagation."""
    xs, us = [x0], [u0]
    for S in coeffs:
        a, b = S[0]
        c, d = S[1]
        xs.append(a * xs[-1] + b * us[-1])
        us.append(c * xs[-2] + d * us[-1])
    fwd, bwd = [], []
    for k, S in enumerate(coeffs):
        b = S[0][1]
        xk, xk1 = xs[k], xs[k + 1]
        if xk1 == 0:
            fwd.append(int(b != 0))
        else:
            fwd.append(int(xk * b / xk1 < 0))
        if xk == 0:
            bwd.append(int(b != 0))
        else:
            bwd.append(int(xk1 * b / xk < 0))
    return fwd, bwd


def random_chain(master: int, t: int):
    """Seeded chain with ``n`` in 1..3, ``m`` in 2..6, occasionally with a repeated subspace."""
    rng = np.random.default_rng(trial_seed(master, t))
    n = int(rng.integers(1, 4))
    m = int(rng.integers(2, 7))
    kind = "real" if rng.random() < 0.25 else "integer"
    frames = [random_frame(n, int(rng.integers(0, 2**31)), kind=kind) for _ in range(m)]
    if m >= 3 and rng.random() < 0.3:
        i, j = rng.choice(m, size=2, replace=False)
        C = np.triu(rng.integers(-2, 3, size=(n, n)), 1) + np.diag(rng.choice([-2.0, 1.0, 3.0], size=n))
        frames[j] = frames[i] @ C
    return frames


def unit_triangular(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.triu(rng.integers(-2, 3, size=(n, n)), 1) + np.diag(rng.choice([-2.0, -1.0, 1.0, 2.0], size=n))
