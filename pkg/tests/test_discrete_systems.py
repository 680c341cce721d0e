import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import scalar_focal_counts

from cyclicsums.corpus import identity_system, rotation_system, shear_system
from cyclicsums.cyclic_sums import UnsupportedRouteError
from cyclicsums.discrete_systems import (
    SymplecticSystem,
    disconjugacy_check,
    focal_counts_via_inertia,
    focal_tally,
    focal_via_cyclic,
    principal_block_matrix,
    principal_solution,
    propagate,
    random_system,
    system_identity_report,
)
from cyclicsums.lagrangian import NotSymplecticError, lower_block_triangular, random_frame

seeds = st.integers(0, 2**31 - 1)


def _failed(checks):
    return [c.as_dict() for c in checks if not c.ok]


def test_rotation_system():
    system = SymplecticSystem(rotation_system())
    t0 = focal_tally(system, principal_solution(system, 0))
    tN = focal_tally(system, principal_solution(system, 2))
    assert (t0.l_total, t0.l_star_total, tN.l_total, tN.l_star_total) == (1, 1, 1, 1)
    P = principal_block_matrix(system)
    assert np.array_equal(P.S0, [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    assert focal_counts_via_inertia(system) == (1, 1)
    assert disconjugacy_check(system)[0] is False
    fwd, bwd = scalar_focal_counts(rotation_system(), 0.0, 1.0)
    assert (tuple(fwd), tuple(bwd)) == (t0.m, t0.m_star)


def test_shear_system_is_disconjugate():
    flag, cert = disconjugacy_check(SymplecticSystem(shear_system(2)))
    assert flag and cert.index == 0 and cert.split_condition


def test_identity_system_has_no_focal_points():
    system = SymplecticSystem(identity_system(2, 3))
    t = focal_tally(system, principal_solution(system, 0))
    assert t.l_total == t.l_star_total == 0
    assert disconjugacy_check(system)[0]


def test_disconjugacy_needs_two_steps():
    with pytest.raises(UnsupportedRouteError):
        disconjugacy_check(SymplecticSystem(identity_system(1, 0)))


def test_non_symplectic_coefficient_rejected():
    S = np.eye(2)
    S[0, 1] = 1e-3
    S[1, 0] = 1e-3
    with pytest.raises(NotSymplecticError):
        SymplecticSystem((S,))


def test_principal_solution_hits_zero_frame():
    system = random_system(2, 3, 4)
    traj = principal_solution(system, 2)
    assert np.allclose(traj.frames[2], np.vstack([np.zeros((2, 2)), np.eye(2)]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5), seeds, st.integers(-3, 3), st.integers(-3, 3))
def test_scalar_focal_counts_match_oracle(N, seed, x0, u0):
    if (x0, u0) == (0, 0):
        return
    system = random_system(1, N, seed)
    traj = propagate(system, np.array([[float(x0)], [float(u0)]]))
    t = focal_tally(system, traj)
    fwd, bwd = scalar_focal_counts([S.tolist() for S in system.coefficients], float(x0), float(u0))
    assert (t.m, t.m_star) == (tuple(fwd), tuple(bwd))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.integers(0, 5), seeds, st.sampled_from(["integer", "real"]))
def test_system_identities(n, N, seed, kind):
    system = random_system(n, N, seed, kind=kind)
    checks = system_identity_report(system, random_frame(n, seed + 1, kind=kind), lower_block_triangular(n, seed))
    assert not _failed(checks)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.integers(0, 5), seeds)
def test_cyclic_sums_of_fundamental_chain(n, N, seed):
    system = random_system(n, N, seed)
    rep = focal_via_cyclic(system, principal_solution(system, 0))
    assert not _failed(rep.checks)
