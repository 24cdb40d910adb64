import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from mgtpr.analytics import (
    covariance_pca,
    export_phase_portrait,
    pca,
    portrait_csv,
    portrait_svg,
    trace_matrix,
    ztransform,
)
from mgtpr.errors import DegenerateInput
from mgtpr.harmony import state_vectors
from mgtpr.schemes import ArithmeticScheme, FractalScheme


def test_ztransform_examples():
    Z = ztransform(np.array([[0.0, 3.0], [2.0, 3.0]]))
    assert Z[:, 0].tolist() == [-1.0, 1.0]
    assert Z[:, 1].tolist() == [0.0, 0.0]


@settings(max_examples=50)
@given(arrays(float, (6, 5), elements=st.floats(-100, 100)))
def test_ztransform_moments_and_idempotence(M):
    Z = ztransform(M)
    assert np.allclose(Z.mean(axis=0), 0, atol=1e-12)
    ok = M.std(axis=0) > 1e-6
    assert np.allclose(Z[:, ok].std(axis=0), 1)
    assert np.allclose(ztransform(Z)[:, ok], Z[:, ok], atol=1e-9)


def test_two_points():
    M = np.array([[0.0, 0.0, 0.0], [1.0, 2.0, 2.0]])
    comps, proj = pca(M, 1)
    assert np.allclose(np.abs(comps[0]), np.array([1, 2, 2]) / 3)


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_gram_matches_covariance(seed):
    rng = np.random.default_rng(seed)
    T, d = rng.integers(3, 9), rng.integers(3, 21)
    M = rng.normal(size=(T, d))
    a, b = pca(M, 2), covariance_pca(M, 2)
    assert np.allclose(a.eigenvalues, b.eigenvalues, atol=1e-9)
    for i in range(2):
        assert np.allclose(a.components[i], b.components[i], atol=1e-9)
        assert np.allclose(a.projections[:, i], b.projections[:, i], atol=1e-9)


def test_top_eigenvalues_capture_most_variance():
    rng = np.random.default_rng(1)
    M = rng.normal(size=(8, 20)) * np.linspace(3, 0.1, 20)
    res = pca(M, 2)
    X = M - M.mean(axis=0)
    for _ in range(50):
        Q, _ = np.linalg.qr(rng.normal(size=(20, 2)))
        assert res.eigenvalues.sum() >= ((X @ Q) ** 2).sum() / 8 - 1e-9


def test_projection_preserves_distances_in_subspace():
    rng = np.random.default_rng(2)
    M = rng.normal(size=(6, 10))
    res = pca(M, 2)
    X = M - M.mean(axis=0)
    P = X @ res.components.T @ res.components
    d1 = np.linalg.norm(P[0] - P[3])
    d2 = np.linalg.norm(res.projections[0] - res.projections[3])
    assert np.isclose(d1, d2)


def test_degenerate():
    with pytest.raises(DegenerateInput):
        pca(np.ones((4, 3)), 1)
    with pytest.raises(DegenerateInput):
        trace_matrix([np.zeros(3)])


@pytest.mark.parametrize("scheme", [ArithmeticScheme(), FractalScheme()], ids=lambda s: s.name)
def test_trace_portrait(trace, scheme, tmp_path):
    Z = ztransform(trace_matrix(state_vectors(trace, scheme)))
    res = pca(Z, 2)
    assert res.projections.shape == (9, 2)
    for i in range(2):
        j = np.argmax(np.abs(res.components[i]))
        assert res.components[i, j] > 0
    csv, svg = export_phase_portrait(res.projections, tmp_path / "p")
    assert len(csv.read_text().splitlines()) == 10
    assert svg.read_text().count('class="state"') == 9
    first = svg.read_bytes()
    export_phase_portrait(res.projections, tmp_path / "p")
    assert svg.read_bytes() == first
    assert portrait_csv(res.projections) == csv.read_text()
    assert portrait_svg(res.projections) != ""
