"""The unbalanced two-Gaussian experiment: k-means, vanilla and generalized spectral clustering."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cluster import Partition, kmeans, measure_partition, sc_sym, task_rng
from .data import PointCloud, knn_digraph, toy_unbalanced
from .energy import CrossoverSweep, ToyModelParams, energy_crossover_sweep, theoretical_alpha
from .graph import Digraph, symmetrize
from .measure import VertexMeasure
from .metrics import nmi

__all__ = ["ToyReport", "toy_experiment", "small_cluster_candidates", "default_alpha_grid"]

TOY_K_NEIGHBORS = 6
TOY_MODEL = ToyModelParams(0.08, 0.29, 0.75)


def default_alpha_grid(stop: float = 8.0, step: float = 0.5) -> np.ndarray:
    return np.round(np.arange(0.0, stop + step / 2, step), 10)


@dataclass(eq=False)
class ToyReport:
    """Everything produced by one run of the toy experiment."""

    cloud: PointCloud
    graph: Digraph
    partitions: dict
    scores: dict
    alpha_best: float
    gsc_path: list
    sweep: CrossoverSweep
    alpha_th: float
    sets: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "n": self.cloud.n,
            "k_neighbors": TOY_K_NEIGHBORS,
            "nmi": dict(self.scores),
            "alpha_best": self.alpha_best,
            "gsc_path": [{"alpha": a, "nmi": s} for a, s in self.gsc_path],
            "alpha_xp": self.sweep.alpha_xp,
            "alpha_th": self.alpha_th,
            "small_cluster_size": len(self.sets["a"]),
            "competitor_size": len(self.sets["b"]),
        }


def small_cluster_candidates(truth, vsc_labels) -> tuple[frozenset, frozenset]:
    """The two vertex sets compared in the energy crossover.

    ``a`` is the true small cluster. ``b`` is ``a`` together with the
    vanilla cluster that holds most of ``a``, i.e. the larger set that an
    unregularized cut prefers. When vanilla clustering already isolates
    ``a`` the two sets coincide and no crossover exists.
    """
    truth = np.asarray(truth)
    vsc_labels = np.asarray(vsc_labels)
    small = np.flatnonzero(truth == 0)
    host = np.bincount(vsc_labels[small]).argmax()
    a = frozenset(small.tolist())
    b = a | frozenset(np.flatnonzero(vsc_labels == host).tolist())
    return a, b


def toy_experiment(seed: int = 0, n1: int = 30, n2: int = 300, *,
                   alphas=None, sweep_alphas=None, restarts: int = 10,
                   model: ToyModelParams = TOY_MODEL) -> ToyReport:
    """Run the full unbalanced-cluster comparison on one toy draw.

    GSC here uses the stationary measure raised to a power, ``pi ** alpha``,
    on the symmetrized K-NN graph, and reports the alpha with the best NMI.
    """
    cloud = toy_unbalanced(n1, n2, seed)
    g = symmetrize(knn_digraph(cloud, TOY_K_NEIGHBORS))
    truth = cloud.labels
    alphas = default_alpha_grid() if alphas is None else np.asarray(alphas, dtype=float)
    sweep_alphas = default_alpha_grid(8.0, 0.1) if sweep_alphas is None else sweep_alphas

    parts: dict[str, Partition] = {"truth": Partition(truth.copy(), 2, {"method": "ground-truth"})}
    parts["kmeans"] = kmeans(cloud.points, 2, restarts, task_rng(seed, 0))
    parts["vsc"] = sc_sym(g, 2, "sym1", seed, restarts)

    deg = g.out_degree
    pi = deg / deg.sum()
    path = []
    best = None
    for i, alpha in enumerate(alphas):
        nu = VertexMeasure(pi ** alpha, f"stationary^{alpha:g}")
        part = measure_partition(g, nu, 2, seed=seed, restarts=restarts, keys=(i,))
        score = nmi(truth, part.labels)
        path.append((float(alpha), score))
        if best is None or score > best[0]:
            best = (score, float(alpha), part)
    parts["gsc"] = best[2]
    parts["gsc"].provenance.update({"method": "gsc", "measure": "stationary^alpha", "alpha": best[1]})

    set_a, set_b = small_cluster_candidates(truth, parts["vsc"].labels)
    sweep = energy_crossover_sweep(g, set_a, set_b, sweep_alphas)
    scores = {name: nmi(truth, p.labels) for name, p in parts.items() if name != "truth"}
    return ToyReport(cloud, g, parts, scores, best[1], path, sweep,
                     theoretical_alpha(model), {"a": set_a, "b": set_b})
