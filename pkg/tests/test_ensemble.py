import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfilter import (
    DegenerateBasisError,
    LengthMismatch,
    NormalizationError,
    PartitionError,
    PureState2D,
    RankError,
    RawState,
    embed_raw,
    gram,
    validate_ensemble,
)
from qfilter.ensemble import OverlapMatrix

from conftest import random_ensembles

H = math.sqrt(3) / 2
TRINE = [(1, 0), (-0.5, -H), (-0.5, H)]


def test_validate_trine():
    ens = validate_ensemble(TRINE, [1 / 3, 1 / 3, 1 / 3], 1)
    assert len(ens) == 3 and ens.subset_size == 1


def test_validate_orthonormal_pair():
    ens = validate_ensemble([(1, 0), (0, 1)], [0.5, 0.5], 1)
    assert ens.weights == (0.5, 0.5)


def test_validate_accepts_json_style_amplitudes():
    ens = validate_ensemble([[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [0.5, 0.5], 1)
    assert ens.states[1].c2 == 1j


@pytest.mark.parametrize(
    "states, priors, m, exc",
    [
        ([(1, 0), (0, 1)], [0.5, 0.6], 1, NormalizationError),
        ([(1, 0), (0, 1)], [1.5, -0.5], 1, NormalizationError),
        ([(1, 0), (0.9, 0)], [0.5, 0.5], 1, NormalizationError),
        ([(1, 0), (0, 1)], [0.5, 0.5], 2, PartitionError),
        ([(1, 0), (0, 1)], [0.5, 0.5], 0, PartitionError),
        ([(1, 0)], [1.0], 1, PartitionError),
        ([(1, 0), (0, 1)], [1.0], 1, LengthMismatch),
        ([(1, 0, 0), (0, 1)], [0.5, 0.5], 1, LengthMismatch),
    ],
)
def test_validate_rejects(states, priors, m, exc):
    with pytest.raises(exc):
        validate_ensemble(states, priors, m)


def test_zero_priors_are_kept():
    ens = validate_ensemble([(1, 0), (0, 1), (0.6, 0.8)], [1.0, 0.0, 0.0], 1)
    assert ens.priors == (1.0, 0.0, 0.0)


def test_gram_trine_overlaps():
    ens = validate_ensemble(TRINE, [1 / 3] * 3, 1)
    a = gram(ens)
    for k in range(3):
        for l in range(3):
            direct = sum(np.conj(x) * y for x, y in zip(TRINE[k], TRINE[l]))
            assert abs(a[k, l] - direct) < 1e-15
            if k != l:
                assert abs(abs(a[k, l]) - 0.5) < 1e-15
    # 4|A|^2 = 4 - 3 sin^2(2 beta) at beta = pi/4
    assert abs(4 * abs(a[0, 1]) ** 2 - (4 - 3 * math.sin(math.pi / 2) ** 2)) < 1e-14


def test_gram_identical_and_orthogonal():
    same = validate_ensemble([(0.6, 0.8j), (0.6, 0.8j)], [0.5, 0.5], 1)
    assert abs(gram(same)[0, 1] - 1) < 1e-15
    ortho = validate_ensemble([(1, 0), (0, 1)], [0.5, 0.5], 1)
    assert gram(ortho)[0, 1] == 0


def test_gram_invariants_random():
    for ens in random_ensembles(1, 200):
        a = gram(ens)
        n = a.size
        assert np.allclose(a.entries, a.entries.conj().T, atol=1e-12)
        assert np.allclose(np.diag(a.entries), 1, atol=1e-12)
        ev = a.eigenvalues()
        assert ev[0] >= -1e-10 and ev[-1] <= n + 1e-10


def test_gram_psd_matches_2x2_brute_force():
    for ens in random_ensembles(2, 100, n_states=2):
        a = gram(ens).entries
        # eigenvalues of [[1, x], [x*, 1]] are 1 -+ |x|
        assert np.allclose(np.linalg.eigvalsh(a), [1 - abs(a[0, 1]), 1 + abs(a[0, 1])], atol=1e-14)


def test_overlap_matrix_rejects_non_hermitian():
    with pytest.raises(ValueError):
        OverlapMatrix(np.array([[1, 0.5], [0.2, 1]]))
    with pytest.raises(ValueError):
        OverlapMatrix(np.array([[1, 2], [2, 1]]))


def _random_unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / abs(np.diag(r)))


def test_embed_coplanar_states_in_four_dimensions(rng):
    plane = np.array([[1, 0], [0.6, 0.8j], [np.cos(1.1), np.exp(0.3j) * np.sin(1.1)]])
    u = _random_unitary(rng, 4)
    raw = plane @ u[:2, :]
    emb = embed_raw([RawState(tuple(r)) for r in raw])
    got = np.array([s.vector for s in emb])
    assert np.max(np.abs(got.conj() @ got.T - raw.conj() @ raw.T)) < 1e-10


def test_embed_rejects_three_dimensional_span(rng):
    raw = _random_unitary(rng, 3)[:3, :]
    with pytest.raises(RankError, match="state 2"):
        embed_raw(raw)


def test_embed_two_dimensional_pair():
    a12 = 0.36 + 0.48j
    raw = [(1, 0), (a12, math.sqrt(1 - abs(a12) ** 2))]
    s1, s2 = embed_raw(raw)
    assert (s1.c1, s1.c2) == (1, 0)
    assert abs(s2.c1 - a12) < 1e-15
    # gamma_2 = 0: second coordinate real and positive
    assert s2.c2.imag == 0 and abs(s2.c2 - math.sqrt(1 - abs(a12) ** 2)) < 1e-15


def test_embed_partner_skips_parallel_states():
    raw = [(1, 0, 0), (1j, 0, 0), (0.6, 0, 0.8)]
    emb = embed_raw(raw)
    assert abs(emb[1].c1 - 1j) < 1e-15
    assert abs(emb[2].c2 - 0.8) < 1e-15


def test_embed_all_parallel_raises():
    with pytest.raises(DegenerateBasisError, match="trivial guess"):
        embed_raw([(1, 0), (-1, 0), (1j, 0)])


def test_embed_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        embed_raw([(1, 0), (1, 1)])


def test_state_normalization_tolerance():
    PureState2D(1 + 2e-13, 0)
    with pytest.raises(NormalizationError):
        PureState2D(1 + 1e-11, 0)


@st.composite
def coplanar_raw(draw):
    n = draw(st.integers(2, 6))
    d = draw(st.integers(2, 5))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    plane = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    plane /= np.linalg.norm(plane, axis=1)[:, None]
    return plane @ _random_unitary(rng, d)[:2, :]


@settings(max_examples=200, deadline=None)
@given(coplanar_raw())
def test_embed_preserves_overlaps(raw):
    emb = embed_raw(raw)
    got = np.array([s.vector for s in emb])
    assert np.max(np.abs(got.conj() @ got.T - raw.conj() @ raw.T)) < 1e-9


@settings(max_examples=200, deadline=None)
@given(coplanar_raw())
def test_embed_is_idempotent(raw):
    once = embed_raw(raw)
    twice = embed_raw([s.vector for s in once])
    a = np.array([s.vector for s in once])
    b = np.array([s.vector for s in twice])
    assert np.max(np.abs(a.conj() @ a.T - b.conj() @ b.T)) < 1e-12
