"""
Iterated-power measures on a directed graph
===========================================

Start from the uniform measure, push it ``t`` steps through a teleporting
walk and raise it to ``alpha``. As ``t`` grows the measure settles on the
stationary distribution, and so does the Dirichlet energy it induces.
"""

import numpy as np

import gsc

rng = np.random.default_rng(0)
n = 30
W = (rng.random((n, n)) < 0.1).astype(float)
W[np.arange(n), (np.arange(n) + 1) % n] = 1.0
g = gsc.from_adjacency(W)
P = gsc.transition_matrix(g)

for gamma in (1.0, 0.85, 0.5):
    mixed = gsc.teleport_mix(P, gamma)
    pi = gsc.stationary_distribution(mixed).values
    gaps = [np.abs(nu.values - pi).sum() for t, nu in gsc.power_measure_path(mixed, 40, 1.0)]
    print(f"gamma={gamma}: |nu_t - pi|_1 at t=0,10,20,40:", np.round([gaps[i] for i in (0, 10, 20, 40)], 8))

###############################################################################
# Energy of a fixed function under nu_t, always measured on the original
# walk while the measure comes from the teleporting one.

f = rng.standard_normal(n)
mixed = gsc.teleport_mix(P, 0.85)
for t, nu in gsc.power_measure_path(mixed, 20, 1.0):
    if t % 5 == 0:
        print(t, round(gsc.dirichlet_energy(nu, P, f), 6))

###############################################################################
# GSC2 over a short path of t on a planted two-block digraph.

blocks = np.repeat([0, 1], 15)
dense_in = (rng.random((n, n)) < 0.4) & (blocks[:, None] == blocks[None, :])
sparse_out = rng.random((n, n)) < 0.03
h = gsc.from_adjacency((dense_in | sparse_out).astype(float))
for entry in gsc.gsc_run(h, 2, "gsc2", alpha=0.5, gamma=0.85, t_max=4):
    print(entry.params, "NMI", round(gsc.nmi(blocks, entry.partition.labels), 3))
