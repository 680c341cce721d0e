"""Hand-built integer fixtures with singular upper blocks, rank-deficient Wronskians and repeats.

Frames are written either directly or as ``(B; I)`` / ``(I; Q)`` graphs of
integer symmetric matrices, so every entry is a small integer and every
eigenvalue that should be nonzero is far from the zero threshold.  Where a
fixture's cyclic sums were worked out by hand they are stored in ``expected``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    frames: tuple
    expected: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.frames[0].shape[1]


def line(x: float, u: float) -> np.ndarray:
    """``n = 1`` frame ``(x; u)``."""
    return np.array([[x], [u]], float)


def graph_B(B) -> np.ndarray:
    """``(B; I)`` for integer symmetric ``B``."""
    B = np.asarray(B, float)
    return np.vstack([B, np.eye(len(B))])


def graph_Q(Q) -> np.ndarray:
    """``(I; Q)`` for integer symmetric ``Q``."""
    Q = np.asarray(Q, float)
    return np.vstack([np.eye(len(Q)), Q])


def diag_frame(x, u) -> np.ndarray:
    """``(diag(x); diag(u))``; Lagrangian for any diagonals, a frame when ``x_i, u_i`` never both vanish."""
    return np.vstack([np.diag(np.asarray(x, float)), np.diag(np.asarray(u, float))])


def _n2():
    E = diag_frame([0, 0], [1, 1])
    D = diag_frame([1, 1], [0, 0])
    A = diag_frame([1, 0], [0, 1])
    A2 = diag_frame([0, 1], [1, 0])
    return E, D, A, A2


def build_corpus() -> list[Fixture]:
    e1, e2, d, a = line(1, 0), line(0, 1), line(1, 1), line(1, -1)
    E, D, A, A2 = _n2()
    E3 = diag_frame([0, 0, 0], [1, 1, 1])
    D3 = diag_frame([1, 1, 1], [0, 0, 0])
    P = np.array([[1, 1], [1, 1]])
    Pm = np.array([[1, -1], [-1, 1]])
    shear = np.array([[1, 1], [0, 1]])
    fx = [
        Fixture(
            "n1 triple (1,0),(0,1),(1,1)",
            (e1, e2, d),
            {"mu": (2, 1), "nu": (1, 0), "tau": -1, "S": [[0, 1, 1], [1, 0, -1], [1, -1, 0]]},
        ),
        Fixture("n1 all equal triple", (e2, e2, e2), {"mu": (0, 0), "nu": (0, 0), "tau": 0}),
        Fixture("n1 transversal pair", (e1, e2), {"mu": (1, 1), "nu": (0, 0)}),
        Fixture("n1 same line, rescaled", (e1, 2 * e1, -3 * e1), {"mu": (0, 0), "nu": (0, 0), "tau": 0}),
        Fixture("n1 repeated neighbours", (e1, e1, e2, e2)),
        Fixture("n1 adjacent repeat then diagonal", (e2, e2, d)),
        Fixture("n1 four lines", (e1, d, e2, a)),
        Fixture("n1 six frames with returns", (e2, e1, d, e2, a, e1)),
        Fixture("n1 pair on one line", (d, 2 * d), {"mu": (0, 0), "nu": (0, 0)}),
        Fixture("n2 vertical and horizontal", (E, D), {"mu": (2, 2), "nu": (0, 0)}),
        Fixture("n2 vertical twice then horizontal", (E, E, D)),
        Fixture("n2 coordinate swaps", (A, A2, E, D)),
        Fixture("n2 graphs of Q with singular differences", (graph_Q([[1, 1], [1, 0]]), graph_Q([[0, 0], [0, 1]]), graph_Q(np.zeros((2, 2))))),
        Fixture("n2 singular X, rank-one Wronskian", (diag_frame([1, 0], [2, 1]), diag_frame([1, 0], [-1, 1]), E)),
        Fixture("n2 one subspace, three bases", (A, A @ shear, A @ np.diag([2, -1])), {"mu": (0, 0), "nu": (0, 0), "tau": 0}),
        Fixture("n2 graphs of singular B", (graph_B(P), graph_B(Pm), graph_B(np.zeros((2, 2))))),
        Fixture("n2 singular B graphs against horizontal", (graph_B(P), D, graph_B(Pm), E)),
        Fixture("n2 five frames mixed", (E, A, graph_B(P), D, A2)),
        Fixture("n2 repeated after rescaling", (graph_Q(P), E, graph_Q(P) @ shear, E @ np.diag([1, -2]))),
        Fixture("n3 coordinate frames", (E3, D3, diag_frame([1, 0, 0], [0, 1, 1]), diag_frame([1, 1, 0], [0, 0, 1]))),
        Fixture(
            "n3 rank-one Wronskian pair",
            (graph_Q(np.diag([1, 0, 0])), graph_Q(np.diag([1, 0, 1]))),
            {"mu": (1, 1), "nu": (0, 0)},
        ),
        Fixture(
            "n3 six frames with repeats",
            (E3, diag_frame([1, 0, 0], [0, 1, 1]), E3, graph_B(np.diag([1, 0, -1])), D3, graph_B(np.diag([1, 0, -1]))),
        ),
    ]
    return fx


def rotation_system():
    """``n = 1``, ``S_k = J`` for ``k = 0, 1``."""
    J1 = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return (J1, J1)


def shear_system(N: int = 2):
    """``n = 1``, ``S_k = [[1, 1], [0, 1]]`` for ``k = 0..N``."""
    return tuple(np.array([[1.0, 1.0], [0.0, 1.0]]) for _ in range(N + 1))


def identity_system(n: int = 1, N: int = 1):
    return tuple(np.eye(2 * n) for _ in range(N + 1))
