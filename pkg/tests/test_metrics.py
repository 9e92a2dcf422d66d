import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sklearn import metrics as skm

import gsc
from gsc.errors import InvalidParameter, InvalidPartition, ShapeMismatch


def test_nmi_examples():
    assert gsc.nmi([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0
    assert gsc.nmi([0, 0, 1, 2], [5, 5, 9, 7]) == 1.0
    assert gsc.nmi([0, 0, 1, 1], [0, 1, 0, 1]) == 0.0


def test_nmi_degenerate_conventions():
    assert gsc.nmi([0, 0, 0], [1, 1, 1]) == 1.0
    assert gsc.nmi([0, 0, 0], [0, 1, 1]) == 0.0
    assert gsc.nmi([3], [4]) == 1.0


def test_ari_examples():
    assert gsc.ari([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0
    assert gsc.ari([0, 0, 1, 1], [0, 1, 0, 1]) == -0.5
    assert gsc.ari([0, 0, 1, 1], [0, 0, 0, 0]) == 0.0


def test_length_mismatch():
    with pytest.raises(ShapeMismatch):
        gsc.nmi([0, 1], [0, 1, 1])
    with pytest.raises(ShapeMismatch):
        gsc.ari([0, 1], [0])
    with pytest.raises(ShapeMismatch):
        gsc.ari([0], [0])


def test_contingency_table():
    t = gsc.contingency_table(["a", "a", "b"], [1, 2, 2])
    np.testing.assert_array_equal(t.counts, [[1, 1], [0, 1]])
    assert t.n == 3 and t.row_marginals.tolist() == [2, 1] and t.col_marginals.tolist() == [1, 2]


def test_ch_example_and_degenerate():
    x = np.array([0.0, 1.0, 10.0, 11.0])
    assert gsc.calinski_harabasz(x, [0, 0, 1, 1]) == 200.0
    score, flag = gsc.calinski_harabasz([0.0, 0.0, 5.0, 5.0], [0, 0, 1, 1], full_output=True)
    assert score == gsc.CH_SENTINEL and flag
    assert gsc.calinski_harabasz(x, [0, 1, 0, 1]) < 200.0


def test_ch_increases_with_tighter_clusters():
    x = np.array([0.0, 1.0, 10.0, 11.0])
    lab = [0, 0, 1, 1]
    centre = np.array([0.5, 0.5, 10.5, 10.5])
    tighter = centre + 0.5 * (x - centre)
    assert gsc.calinski_harabasz(tighter, lab) > gsc.calinski_harabasz(x, lab)


def test_ch_errors():
    x = np.arange(4.0)
    with pytest.raises(InvalidParameter):
        gsc.calinski_harabasz(x, [0, 0, 0, 0])
    with pytest.raises(InvalidParameter):
        gsc.calinski_harabasz(x, [0, 1, 2, 3])
    with pytest.raises(InvalidPartition):
        gsc.calinski_harabasz(x, [0, 0, 2, 2], k=3)
    with pytest.raises(InvalidPartition):
        gsc.calinski_harabasz(x, [0.0, 0.0, 1.0, 1.0])


labels = st.lists(st.integers(0, 4), min_size=2, max_size=40)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_invariances_and_sklearn_oracle(data):
    a = np.array(data.draw(labels))
    b = np.array(data.draw(st.lists(st.integers(0, 4), min_size=a.size, max_size=a.size)))
    perm = np.array(data.draw(st.permutations(range(5))))
    for f in (gsc.nmi, gsc.ari):
        v = f(a, b)
        assert f(b, a) == v
        assert f(perm[a], b) == v
        assert f(a, perm[b]) == v
    assert gsc.ari(a, a) == 1.0
    if np.unique(a).size > 1:
        assert gsc.nmi(a, a) == 1.0
    if np.unique(a).size > 1 and np.unique(b).size > 1:
        ref = skm.normalized_mutual_info_score(a, b, average_method="geometric")
        assert abs(gsc.nmi(a, b) - ref) <= 1e-12
    assert abs(gsc.ari(a, b) - skm.adjusted_rand_score(a, b)) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_ch_matches_sklearn(data):
    n = data.draw(st.integers(4, 30))
    k = data.draw(st.integers(2, n - 1))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    lab = np.r_[np.arange(k), rng.integers(0, k, n - k)]
    x = rng.standard_normal((n, 3))
    assert np.isclose(gsc.calinski_harabasz(x, lab, k), skm.calinski_harabasz_score(x, lab), rtol=1e-10)
