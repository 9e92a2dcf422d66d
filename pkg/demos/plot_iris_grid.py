"""
Grid search on Iris
===================

A directed K-NN graph on the raw Iris measurements (K = ceil(ln 150) = 6),
then every (alpha, t) pair of the GSC1 grid. The best point is picked
either with the ground truth (NMI) or without it (Calinski-Harabasz).
"""

from pathlib import Path

import numpy as np

import gsc

iris = gsc.load_csv(Path(__file__).parents[1] / "tests" / "data" / "iris.csv", label_column=-1)

# count_self=True ranks each point as its own nearest neighbour
g = gsc.knn_digraph(iris.points, count_self=True)
print(g, "min out-degree", g.out_degree.min())

sel = gsc.Selection("nmi", labels=iris.labels, features=iris.points)
best, grid = gsc.grid_search(g, 3, "gsc1", sel, t_max=30, restarts=30)
print("supervised pick:", {k: best.provenance[k] for k in ("alpha", "t")},
      "NMI", round(gsc.nmi(iris.labels, best.labels), 4))

###############################################################################
# The same grid ranked by CH, which never looks at labels.

by_ch = max(grid, key=lambda e: e.scores["ch"] or -np.inf)
print("CH pick:", by_ch.params, "NMI", round(by_ch.scores["nmi"], 4))

###############################################################################
# NMI across t for a few exponents.

table = {}
for e in grid:
    table.setdefault(e.params["alpha"], []).append(e.scores["nmi"])
for alpha in (0.0, 0.5, 1.0):
    row = np.round(table[alpha][:10], 3)
    print(f"alpha={alpha}: {row.tolist()}")

###############################################################################
# Baselines for comparison.

for method in ("sc-sym1", "sc-sym2"):
    part, _ = gsc.grid_search(g, 3, method, sel, restarts=30)
    print(method, round(gsc.nmi(iris.labels, part.labels), 4))
