import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

import gsc
from gsc.errors import InvalidParameter, NotSymmetric


def test_two_by_two_kernel():
    emb = gsc.smallest_eigenpairs([[1, -1], [-1, 1]], 1)
    assert abs(emb.eigenvalues[0]) < 1e-15
    np.testing.assert_allclose(emb.vectors[:, 0], [2 ** -0.5, 2 ** -0.5], atol=1e-15)


def test_identity():
    emb = gsc.smallest_eigenpairs(np.eye(3), 2)
    np.testing.assert_array_equal(emb.eigenvalues, [1, 1])
    np.testing.assert_allclose(emb.vectors.T @ emb.vectors, np.eye(2), atol=1e-12)


def test_trace_and_kernel():
    emb = gsc.smallest_eigenpairs([[2, -2], [-2, 2]], 2)
    np.testing.assert_allclose(emb.eigenvalues, [0, 4], atol=1e-14)


def test_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        gsc.smallest_eigenpairs([[0, 1], [0, 0]], 1)
    with pytest.raises(NotSymmetric):
        gsc.smallest_eigenpairs(np.ones((2, 3)), 1)


def test_tolerates_round_off_asymmetry():
    m = np.array([[2.0, -1.0], [-1.0 + 1e-12, 2.0]])
    emb = gsc.smallest_eigenpairs(m, 2)
    np.testing.assert_allclose(emb.eigenvalues, [1, 3], atol=1e-10)


@pytest.mark.parametrize("k", [0, 4])
def test_k_range(k):
    with pytest.raises(InvalidParameter):
        gsc.smallest_eigenpairs(np.eye(3), k)


def test_sign_convention():
    v = np.array([[0.1, -0.6], [-0.8, 0.6], [0.3, 0.1]])
    out = gsc.sign_normalize(v)
    np.testing.assert_array_equal(out, [[-0.1, 0.6], [0.8, -0.6], [-0.3, -0.1]])


def test_degenerate_block_does_not_depend_on_input_basis(rng):
    # a rotation of the input permutes LAPACK's basis but not the subspace
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    m = q @ np.diag([1.0, 1.0, 1.0, 2.0, 3.0, 4.0]) @ q.T
    m = 0.5 * (m + m.T)
    a = gsc.smallest_eigenpairs(m, 3, seed=7).vectors
    perm = np.array([3, 1, 5, 0, 2, 4])
    b = gsc.smallest_eigenpairs(m[np.ix_(perm, perm)], 3, seed=7).vectors
    # same subspace up to the vertex relabelling
    proj_a = a @ a.T
    proj_b = b @ b.T
    np.testing.assert_allclose(proj_a[np.ix_(perm, perm)], proj_b, atol=1e-10)
    again = gsc.smallest_eigenpairs(m, 3, seed=7).vectors
    np.testing.assert_array_equal(a, again)


@st.composite
def symmetric(draw, max_n=20):
    n = draw(st.integers(1, max_n))
    a = draw(arrays(float, (n, n), elements=st.floats(-10, 10)))
    return a + a.T


@settings(max_examples=100, deadline=None)
@given(symmetric(), st.data())
def test_residual_and_oracle(m, data):
    n = m.shape[0]
    k = data.draw(st.integers(1, n))
    emb = gsc.smallest_eigenpairs(m, k)
    u, lam = emb.vectors, emb.eigenvalues
    np.testing.assert_allclose(u.T @ u, np.eye(k), atol=1e-8)
    assert np.all(np.diff(lam) >= 0)
    scale = max(np.linalg.norm(m), 1e-300)
    assert np.linalg.norm(m @ u - u * lam) <= 1e-7 * scale + 1e-12
    np.testing.assert_allclose(lam, np.linalg.eigvalsh(m)[:k], atol=1e-9 * max(1, np.abs(m).max()))
    again = gsc.smallest_eigenpairs(m, k)
    np.testing.assert_array_equal(u, again.vectors)
