import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_chain

from cyclicsums.corpus import line
from cyclicsums.cyclic_sums import cyclic_sums
from cyclicsums.kashiwara import (
    kashiwara_checks,
    kashiwara_form_matrix,
    kashiwara_index,
    kashiwara_inverse_formulas,
    kashiwara_sign_representations,
    kashiwara_via_cyclic,
)
from cyclicsums.lagrangian import random_frame, random_symplectic
from cyclicsums.linalg_core import InputError

seeds = st.integers(0, 2**31 - 1)


def _failed(checks):
    return [c.as_dict() for c in checks if not c.ok]


def _brute_tau(Y1, Y2, Y3):
    """Signature of the form on coordinates (c1, c2, c3), by sampling its Gram matrix entrywise."""
    n = Y1.shape[1]
    Jn = np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
    Ys = (Y1, Y2, Y3)

    def B(c):
        xs = [Y @ c[k * n : (k + 1) * n] for k, Y in enumerate(Ys)]
        return xs[0] @ Jn @ xs[1] + xs[1] @ Jn @ xs[2] + xs[2] @ Jn @ xs[0]

    d = 3 * n
    E = np.eye(d)
    G = np.array([[0.5 * (B(E[i] + E[j]) - B(E[i]) - B(E[j])) for j in range(d)] for i in range(d)])
    ev = np.linalg.eigvalsh(G)
    cut = 1e-9 * max(1.0, np.abs(ev).max())
    return int((ev > cut).sum()) - int((ev < -cut).sum())


def test_curated_triple():
    frames = [line(1, 0), line(0, 1), line(1, 1)]
    assert kashiwara_index(frames) == -1
    assert _brute_tau(*frames) == -1
    assert not _failed(kashiwara_checks(frames))


def test_all_equal_triple():
    Y = line(0, 1)
    assert kashiwara_index([Y, Y, Y]) == 0


def test_needs_three_frames():
    with pytest.raises(InputError):
        kashiwara_index([line(1, 0), line(0, 1)])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), seeds, seeds, seeds)
def test_form_matches_brute_force(n, s1, s2, s3):
    frames = [random_frame(n, s) for s in (s1, s2, s3)]
    assert kashiwara_form_matrix(*frames).signature() == _brute_tau(*frames)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.lists(seeds, min_size=3, max_size=6), seeds)
def test_symplectic_invariance(n, frame_seeds, s):
    frames = [random_frame(n, x) for x in frame_seeds]
    W = random_symplectic(n, s)
    assert kashiwara_index([W @ Y for Y in frames]) == kashiwara_index(frames)


@pytest.mark.parametrize("t", range(30))
def test_representations_agree(t):
    frames = random_chain(9, t)
    if len(frames) < 3:
        frames = frames + [random_frame(frames[0].shape[1], t)]
    R = random_symplectic(frames[0].shape[1], t)
    reps = kashiwara_sign_representations(frames, R)
    assert len(set(reps.values())) == 1
    assert kashiwara_via_cyclic(frames) == kashiwara_index(frames)
    assert kashiwara_inverse_formulas(frames) == cyclic_sums(frames)
    assert not _failed(kashiwara_checks(frames, R))
