import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import gsc
from gsc.errors import DegenerateMeasure, NotConverged, ShapeMismatch

from conftest import adjacency, graph_and_measure


def P(rows):
    return gsc.transition_matrix(gsc.from_adjacency(rows))


def dense(rows):
    return gsc.TransitionMatrix(np.asarray(rows, dtype=float))


def test_measure_validation():
    with pytest.raises(DegenerateMeasure):
        gsc.VertexMeasure([0.0, 0.0])
    with pytest.raises(DegenerateMeasure):
        gsc.VertexMeasure([1.0, -1.0])
    with pytest.raises(DegenerateMeasure):
        gsc.VertexMeasure([1.0, np.nan])
    assert gsc.VertexMeasure([0.0, 2.0]).total() == 2.0


def test_power_measure_t0_uniform(rng):
    p = gsc.teleport_mix(P(rng.random((4, 4))), 0.6)
    np.testing.assert_array_equal(gsc.power_measure(p, 0, 1.0).values, np.full(4, 0.25))


def test_power_measure_alpha0_ones(rng):
    p = P(rng.random((5, 5)))
    for t in (0, 3, 17):
        np.testing.assert_array_equal(gsc.power_measure(p, t, 0.0).values, np.ones(5))


def test_power_measure_hand_example():
    nu = gsc.power_measure(dense([[0.25, 0.75], [0.75, 0.25]]), 1, 1.0)
    np.testing.assert_allclose(nu.values, [0.5, 0.5], atol=1e-15)
    assert nu.label == "power(t=1,gamma=1,alpha=1)"


def test_power_measure_zero_entry_nonpositive_alpha():
    # vertex 0 has no in-edges, so after one step it carries no mass
    p = P([[0, 1], [0, 1]])
    with pytest.raises(DegenerateMeasure):
        gsc.power_measure(p, 1, 0.0)
    with pytest.raises(DegenerateMeasure):
        gsc.power_measure(p, 1, -1.0)
    np.testing.assert_array_equal(gsc.power_measure(p, 1, 2.0).values, [0.0, 1.0])


def test_power_measure_path_matches_direct(rng):
    p = gsc.teleport_mix(P(rng.random((6, 6)) < 0.5), 0.8)
    path = list(gsc.power_measure_path(p, 5, 0.7))
    assert [t for t, _ in path] == list(range(6))
    for t, nu in path:
        direct = (np.full(6, 1 / 6) @ np.linalg.matrix_power(p.toarray(), t)) ** 0.7
        np.testing.assert_allclose(nu.values, direct, rtol=1e-12)


@settings(max_examples=40, deadline=None)
@given(graph_and_measure(), st.floats(0.1, 10.0), st.integers(0, 6))
def test_power_measure_scale_covariance(gm, c, t):
    g, mu = gm
    p = gsc.transition_matrix(g)
    base = gsc.power_measure(p, t, 1.0, mu).values
    scaled = gsc.power_measure(p, t, 1.0, c * mu.values).values
    np.testing.assert_allclose(scaled, c * base, rtol=1e-12, atol=1e-300)
    b2 = gsc.power_measure(p, t, 2.0, mu).values
    s2 = gsc.power_measure(p, t, 2.0, c * mu.values).values
    np.testing.assert_allclose(s2, c ** 2 * b2, rtol=1e-10, atol=1e-300)


def test_outflow_examples():
    swap = P([[0, 1], [1, 0]])
    np.testing.assert_array_equal(gsc.outflow_measure([1, 1], swap).values, [1, 1])
    np.testing.assert_array_equal(gsc.outflow_measure([2, 1], swap).values, [1, 2])
    cyc = P([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    np.testing.assert_array_equal(gsc.outflow_measure([1, 1, 1], cyc).values, [1, 1, 1])
    assert gsc.outflow_measure([1, 1], swap).label == "outflow"


def test_outflow_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        gsc.outflow_measure([1, 1, 1], P([[0, 1], [1, 0]]))


@settings(max_examples=60, deadline=None)
@given(graph_and_measure())
def test_outflow_mass_conservation(gm):
    g, nu = gm
    xi = gsc.outflow_measure(nu, gsc.transition_matrix(g))
    assert abs(xi.total() - nu.total()) <= 1e-10 * max(1.0, nu.total())


def test_stationary_examples():
    cyc = P([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    np.testing.assert_allclose(gsc.stationary_distribution(cyc).values, [1 / 3] * 3, atol=1e-12)
    two = dense([[0.5, 0.5], [0.25, 0.75]])
    np.testing.assert_allclose(gsc.stationary_distribution(two).values, [1 / 3, 2 / 3], atol=1e-12)
    flip = P([[0, 1], [1, 0]])
    np.testing.assert_allclose(gsc.stationary_distribution(flip).values, [0.5, 0.5], atol=1e-12)


def test_stationary_fixed_point(rng):
    p = gsc.teleport_mix(P(rng.random((20, 20)) < 0.2), 0.85)
    pi = gsc.stationary_distribution(p).values
    assert abs(pi.sum() - 1) < 1e-12
    assert np.abs(pi @ p.toarray() - pi).sum() <= 1e-12


def test_stationary_not_converged_reports_residual():
    with pytest.raises(NotConverged) as info:
        gsc.stationary_distribution(dense([[0.5, 0.5], [0.25, 0.75]]), max_iter=1)
    assert info.value.residual > 1e-12
