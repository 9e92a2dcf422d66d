"""
Generalized Laplacians on a small digraph
=========================================

The quadratic form of ``L(nu)`` is the Dirichlet energy weighted by an
arbitrary vertex measure. With the stationary distribution it reduces to
twice the classical directed Laplacian.
"""

import numpy as np

import gsc

W = np.array([
    [0, 1, 1, 0],
    [0, 0, 1, 0],
    [1, 0, 0, 1],
    [0, 0, 1, 0],
], dtype=float)
g = gsc.from_adjacency(W)
P = gsc.transition_matrix(g)
print(P.toarray())

nu = gsc.VertexMeasure([1.0, 2.0, 0.5, 1.0])
lap = gsc.generalized_laplacian(nu, P)
print("L(nu) =\n", lap.matrix)
print("row sums", lap.matrix.sum(axis=1))

f = np.array([1.0, -1.0, 0.0, 2.0])
print("energy", gsc.dirichlet_energy(nu, P, f), "quadratic form", f @ lap.matrix @ f)

###############################################################################
# The cut identity: escape mass in both directions equals the energy of
# the indicator.

S, Sc = {0, 1}, {2, 3}
q = gsc.cut_measure(nu, P, S, Sc) + gsc.cut_measure(nu, P, Sc, S)
print("q(S,S') + q(S',S) =", q, " D(chi_S) =", gsc.dirichlet_energy(nu, P, gsc.indicator(S, 4)))

###############################################################################
# Stationary measure: compare with the classical construction.

pi = gsc.stationary_distribution(P, max_iter=5000)
_, classical = gsc.classical_directed_laplacians(P, pi)
print(np.abs(gsc.generalized_laplacian(pi, P).matrix - 2 * classical).max())

###############################################################################
# The normalized operator has its spectrum in [0, 2].

sym = gsc.normalized_generalized_laplacian(lap)
print(np.round(np.linalg.eigvalsh(sym), 4))
