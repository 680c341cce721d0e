"""Randomized battery over every identity the package implements.

Trial ``t`` of a run with master seed ``s`` draws everything from the seed
``SeedSequence([s, t])``, so any failure can be replayed on its own with
:func:`run_trial`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import comparative_index as ci
from . import cyclic_sums as cs
from . import discrete_systems as ds
from . import kashiwara as kw
from .checks import IdentityCheck
from .lagrangian import lower_block_triangular, random_frame, random_symplectic
from .linalg_core import DEFAULT_TOL, ToleranceProfile


def trial_seed(master: int, t: int) -> int:
    return int(np.random.SeedSequence([master, t]).generate_state(1)[0])


@dataclass(frozen=True)
class TrialResult:
    trial: int
    seed: int
    n: int
    m: int
    N: int
    kind: str
    checks: tuple = field(repr=False)


def _nonsingular(n: int, rng: np.random.Generator) -> np.ndarray:
    C = np.triu(rng.integers(-2, 3, size=(n, n)), 1).astype(float)
    return C + np.diag(rng.choice([-2.0, -1.0, 1.0, 3.0], size=n))


def run_trial(seed: int, n_max: int = 3, m_max: int = 6, tol: ToleranceProfile = DEFAULT_TOL, trial: int = 0) -> TrialResult:
    """All identity groups on one random instance drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(2, max(m_max, 2) + 1))
    kind = "real" if rng.random() < 0.25 else "integer"

    def draw() -> int:
        return int(rng.integers(0, 2**31))

    frames = [random_frame(n, draw(), kind=kind) for _ in range(m)]
    if m >= 3 and rng.random() < 0.3:
        # repeated subspace with a different basis
        i, j = rng.choice(m, size=2, replace=False)
        frames[j] = frames[i] @ _nonsingular(n, rng)

    W = random_symplectic(n, draw(), kind=kind)
    R = random_symplectic(n, draw(), kind=kind)
    L = lower_block_triangular(n, draw())
    Y, Yh = frames[0], frames[1]
    checks: list[IdentityCheck] = []
    checks += ci.route_agreement(Y, Yh, tol)
    checks += ci.verify_main_theorem(W, Y, Yh, tol)
    checks += ci.lemma_properties(Y, Yh, _nonsingular(n, rng), _nonsingular(n, rng), L, tol)
    checks += ci.special_cases(Yh, tol)

    checks += cs.route_agreement(frames, seed=draw(), tol=tol)
    checks += cs.chain_property_report(frames, R, [_nonsingular(n, rng) for _ in range(m)], tol)
    checks += cs.geometric_identities(frames, tol)
    checks += list(cs.cyclic_sum_bounds(frames, R, tol).checks)
    if m >= 3:
        checks += kw.kashiwara_checks(frames, R, tol)

    ns = min(n, 2)
    N = int(rng.integers(0, 6))
    system = ds.random_system(ns, N, draw(), kind=kind)
    checks += ds.system_identity_report(
        system, Y0=random_frame(ns, draw(), kind=kind), L=lower_block_triangular(ns, draw()), tol=tol
    )
    return TrialResult(trial, seed, n, m, N, kind, tuple(checks))


@dataclass(frozen=True)
class VerificationReport:
    trials: int
    seed: int
    checked: int
    failed: int
    failures: tuple = field(repr=False)
    failures_by_group: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _group(name: str) -> str:
    return name.split(":")[0].split(" (")[0]


def run_battery(
    trials: int, n_max: int = 3, m_max: int = 6, seed: int = 0, tol: ToleranceProfile = DEFAULT_TOL
) -> VerificationReport:
    if trials < 1 or n_max < 1 or m_max < 2:
        raise ValueError("need trials >= 1, n_max >= 1, m_max >= 2")
    checked = 0
    fails = []
    groups: Counter = Counter()
    for t in range(trials):
        s = trial_seed(seed, t)
        res = run_trial(s, n_max, m_max, tol, trial=t)
        checked += len(res.checks)
        for c in res.checks:
            if not c.ok:
                groups[_group(c.name)] += 1
                fails.append({"trial": t, "seed": s, **c.as_dict()})
    return VerificationReport(trials, seed, checked, len(fails), tuple(fails), dict(sorted(groups.items())))
