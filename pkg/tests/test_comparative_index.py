import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import mu_generic, mu_lines, unit_triangular

from cyclicsums.comparative_index import (
    comparative_index,
    comparative_index_via_block_inertia,
    comparative_index_via_Q,
    lemma_properties,
    mu,
    mu_star,
    route_agreement,
    special_cases,
    verify_main_theorem,
)
from cyclicsums.corpus import build_corpus, line
from cyclicsums.lagrangian import InvalidFrameError, frame_to_symplectic, lower_block_triangular, random_frame, random_symplectic, zero_frame

seeds = st.integers(0, 2**31 - 1)
dims = st.integers(1, 3)
kinds = st.sampled_from(["integer", "real"])
coords = st.integers(-3, 3)


def _failed(checks):
    return [c.as_dict() for c in checks if not c.ok]


def test_equal_frames_have_zero_index():
    Y = random_frame(2, 11)
    assert (mu(Y, Y), mu_star(Y, Y)) == (0, 0)


def test_breakdown_of_vertical_against_horizontal():
    b = comparative_index(zero_frame(2), np.vstack([np.eye(2), np.zeros((2, 2))]))
    assert b.counts() == (2, 0, 0)


def test_invalid_frame_rejected():
    with pytest.raises(InvalidFrameError):
        comparative_index(np.zeros((2, 1)), line(0, 1))


@settings(max_examples=200, deadline=None)
@given(coords, coords, coords, coords)
def test_lines_match_scalar_oracle(x, u, xh, uh):
    if (x, u) == (0, 0) or (xh, uh) == (0, 0):
        return
    b = comparative_index(line(x, u), line(xh, uh))
    assert (b.mu, b.mu_star) == mu_lines((x, u), (xh, uh))


@settings(max_examples=60, deadline=None)
@given(dims, seeds, seeds)
def test_generic_position_matches_eigenvalue_oracle(n, s1, s2):
    Y, Yh = random_frame(n, s1, kind="real"), random_frame(n, s2, kind="real")
    for F in (Y, Yh):
        if np.linalg.svd(F[:n], compute_uv=False)[-1] < 1e-3:
            return
    b = comparative_index(Y, Yh)
    assert (b.mu, b.mu_star) == mu_generic(Y, Yh)


@settings(max_examples=80, deadline=None)
@given(dims, seeds, seeds, kinds)
def test_three_routes_agree(n, s1, s2, kind):
    Y, Yh = random_frame(n, s1, kind=kind), random_frame(n, s2, kind=kind)
    assert not _failed(route_agreement(Y, Yh))
    a = comparative_index(Y, Yh)
    assert a.counts() == comparative_index_via_Q(Y, Yh).counts()
    assert (a.mu, a.mu_star) == comparative_index_via_block_inertia(Y, Yh)


@settings(max_examples=80, deadline=None)
@given(dims, seeds, seeds, seeds, kinds)
def test_lemma_properties(n, s1, s2, s3, kind):
    Y, Yh = random_frame(n, s1, kind=kind), random_frame(n, s2, kind=kind)
    checks = lemma_properties(Y, Yh, unit_triangular(n, s3), unit_triangular(n, s3 + 1), lower_block_triangular(n, s3))
    assert not _failed(checks)


@settings(max_examples=80, deadline=None)
@given(dims, seeds, seeds, seeds, kinds)
def test_main_theorem(n, s1, s2, s3, kind):
    Y, Yh = random_frame(n, s1, kind=kind), random_frame(n, s2, kind=kind)
    W = random_symplectic(n, s3, kind=kind)
    assert not _failed(verify_main_theorem(W, Y, Yh))


@settings(max_examples=40, deadline=None)
@given(dims, seeds, seeds, seeds)
def test_index_depends_only_on_completion_through_frames(n, s1, s2, s3):
    # two completions Z, Z' of the same frame give the same moved index
    Y, Yh = random_frame(n, s1), random_frame(n, s2)
    Z = frame_to_symplectic(Y)
    Zp = Z @ lower_block_triangular(n, s3)
    E = zero_frame(n)
    a = comparative_index(np.linalg.solve(Z, E), np.linalg.solve(Z, Yh))
    b = comparative_index(np.linalg.solve(Zp, E), np.linalg.solve(Zp, Yh))
    assert (a.mu, a.mu_star) == (b.mu, b.mu_star)


@pytest.mark.parametrize("fixture", build_corpus(), ids=lambda f: f.name)
def test_special_cases_on_corpus(fixture):
    for Y in fixture.frames:
        assert not _failed(special_cases(Y))
