import numpy as np

from gsc.experiments import small_cluster_candidates, toy_experiment


def test_candidates():
    truth = np.array([0, 0, 0, 1, 1, 1, 1])
    vsc = np.array([1, 1, 0, 0, 1, 0, 0])
    a, b = small_cluster_candidates(truth, vsc)
    assert a == {0, 1, 2}
    assert b == {0, 1, 2, 4}


def test_candidates_coincide_when_isolated():
    truth = np.array([0, 0, 1, 1])
    a, b = small_cluster_candidates(truth, np.array([1, 1, 0, 0]))
    assert a == b


def test_toy_experiment_report():
    rep = toy_experiment(0, alphas=[0, 2, 4], sweep_alphas=[0, 1, 2])
    assert set(rep.partitions) == {"truth", "kmeans", "vsc", "gsc"}
    assert rep.scores["kmeans"] >= 0.9
    assert rep.scores["gsc"] == max(s for _, s in rep.gsc_path)
    assert not rep.graph.directed
    s = rep.summary()
    assert s["alpha_th"] == rep.alpha_th and len(s["gsc_path"]) == 3
    assert rep.sweep.alphas.tolist() == [0, 1, 2]
