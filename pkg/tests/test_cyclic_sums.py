import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import cyclic_lines, random_chain, unit_triangular

from cyclicsums.corpus import build_corpus, line
from cyclicsums.cyclic_sums import (
    FrameChain,
    UnsupportedRouteError,
    chain_property_report,
    cyclic_sum_bounds,
    cyclic_sum_first,
    cyclic_sum_second,
    cyclic_sum_via_inertia,
    cyclic_sums,
    geometric_identities,
    intersection_dimension,
    nu_via_inertia,
    permuted_block_inertia,
    route_agreement,
    transversal_chart_sums,
    wronskian_block_matrix,
)
from cyclicsums.lagrangian import random_frame, random_symplectic
from cyclicsums.linalg_core import InputError, inertia

seeds = st.integers(0, 2**31 - 1)
lines = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda p: p != (0, 0))


def _failed(checks):
    return [c.as_dict() for c in checks if not c.ok]


def test_curated_triple():
    frames = [line(1, 0), line(0, 1), line(1, 1)]
    assert cyclic_sums(frames).as_tuple() == (2, 1, 1, 0)
    S = wronskian_block_matrix(frames).S
    assert np.array_equal(S, [[0, 1, 1], [1, 0, -1], [1, -1, 0]])
    # independent eigenvalue count on the hand-written matrix
    ev = np.linalg.eigvalsh(np.array([[0, 1, 1], [1, 0, -1], [1, -1, 0]], float))
    assert (int((ev > 0.5).sum()), int((ev < -0.5).sum())) == (2, 1)


def test_two_frames_give_rank_of_wronskian():
    frames = [random_frame(2, 1), random_frame(2, 2)]
    b = cyclic_sums(frames)
    r = np.linalg.matrix_rank(frames[0].T @ np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]]) @ frames[1])
    assert b.as_tuple() == (r, r, 0, 0)


def test_single_frame_rejected():
    with pytest.raises(InputError):
        cyclic_sums([line(1, 0)])


def test_mixed_dimensions_rejected():
    with pytest.raises(InputError):
        FrameChain((line(1, 0), random_frame(2, 0)))


def test_reduced_route_needs_three_frames():
    with pytest.raises(UnsupportedRouteError):
        nu_via_inertia([line(1, 0), line(0, 1)], route="reduced")


def test_split_helpers():
    frames = [line(1, 0), line(0, 1), line(1, 1)]
    assert cyclic_sum_first(frames) == (2, 1)
    assert cyclic_sum_second(frames) == (1, 0)


@settings(max_examples=150, deadline=None)
@given(st.lists(lines, min_size=2, max_size=6))
def test_lines_match_scalar_oracle(pts):
    frames = [line(*p) for p in pts]
    assert cyclic_sums(frames).as_tuple() == cyclic_lines(pts)


@pytest.mark.parametrize("t", range(40))
def test_all_routes_agree(t):
    frames = random_chain(7, t)
    assert not _failed(route_agreement(frames, seed=t))
    b = cyclic_sums(frames)
    assert cyclic_sum_via_inertia(frames) == (b.mu_minus, b.mu_plus)
    assert permuted_block_inertia(frames) == (b.mu_minus, b.mu_plus)
    assert transversal_chart_sums(frames, seed=t).as_tuple() == b.as_tuple()


@pytest.mark.parametrize("t", range(40))
def test_propositions(t):
    frames = random_chain(8, t)
    n, m = frames[0].shape[1], len(frames)
    R = random_symplectic(n, t)
    C = [unit_triangular(n, 100 * t + k) for k in range(m)]
    assert not _failed(chain_property_report(frames, R, C))
    assert not _failed(geometric_identities(frames))
    assert not _failed(cyclic_sum_bounds(frames, R).checks)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.lists(seeds, min_size=2, max_size=6))
def test_second_kind_is_nonnegative_and_connected(n, frame_seeds):
    frames = [random_frame(n, s) for s in frame_seeds]
    b = cyclic_sums(frames)
    assert b.nu_minus >= 0 and b.nu_plus >= 0
    assert b.mu_minus - b.nu_minus == b.mu_plus - b.nu_plus


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.lists(seeds, min_size=2, max_size=6))
def test_inertia_of_S_reproduces_first_kind(n, frame_seeds):
    frames = [random_frame(n, s, kind="real") for s in frame_seeds]
    B = wronskian_block_matrix(frames)
    t = inertia(B.S, scale=B.scale)
    b = cyclic_sums(frames)
    assert (t.i_plus, t.i_minus) == (b.mu_minus, b.mu_plus)


def test_intersection_dimension_of_repeated_subspace():
    Y = random_frame(2, 3)
    assert intersection_dimension([Y, 2 * Y, Y @ np.array([[1.0, 1.0], [0.0, 1.0]])]) == 2


@pytest.mark.parametrize("fixture", build_corpus(), ids=lambda f: f.name)
def test_corpus_expected_values(fixture):
    b = cyclic_sums(fixture.frames)
    if "mu" in fixture.expected:
        assert (b.mu_minus, b.mu_plus) == fixture.expected["mu"]
    if "nu" in fixture.expected:
        assert (b.nu_minus, b.nu_plus) == fixture.expected["nu"]
    assert not _failed(route_agreement(fixture.frames))
