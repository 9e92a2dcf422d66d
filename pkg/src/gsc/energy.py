"""Generalized Dirichlet energies, random-walk cut measures and the
unbalanced-cluster analysis built on them."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import (
    DegenerateFunction,
    InvalidParameter,
    InvalidPartition,
    InvalidSets,
    ShapeMismatch,
)
from .graph import Digraph, TransitionMatrix, transition_matrix
from .measure import VertexMeasure, as_values

__all__ = [
    "ToyModelParams",
    "CrossoverSweep",
    "vertex_set",
    "indicator",
    "dirichlet_energy",
    "normalized_dirichlet",
    "cut_measure",
    "partition_energy",
    "internal_frontier",
    "theoretical_alpha",
    "energy_crossover_sweep",
]


def vertex_set(members: Iterable[int], n: int) -> frozenset:
    """Validate vertex indices and return them as a frozenset."""
    members = [int(m) for m in members]
    s = frozenset(members)
    if len(s) != len(members):
        raise InvalidSets("vertex set contains duplicates")
    if s and (min(s) < 0 or max(s) >= n):
        raise InvalidSets(f"vertex index out of range [0, {n})")
    return s


def indicator(s: Iterable[int], n: int) -> np.ndarray:
    """Characteristic function of ``s`` as a float vector of length ``n``."""
    chi = np.zeros(n)
    chi[list(vertex_set(s, n))] = 1.0
    return chi


def _edges(p: TransitionMatrix):
    if p.is_dense:
        rows, cols = np.nonzero(p.matrix)
        return rows, cols, p.matrix[rows, cols]
    coo = sp.coo_matrix(p.matrix)
    return coo.row, coo.col, coo.data


def dirichlet_energy(nu, p: TransitionMatrix, f) -> float:
    """``sum_{x,y} nu(x) p(x,y) |f(x) - f(y)|^2`` over the stored edges of ``p``."""
    n = p.n
    v = as_values(nu, n)
    f = as_values(f, n)
    rows, cols, data = _edges(p)
    return float(np.sum(v[rows] * data * (f[rows] - f[cols]) ** 2))


def normalized_dirichlet(nu, p: TransitionMatrix, f) -> float:
    """Rayleigh quotient: the energy divided by ``sum_x (nu + xi)(x) f(x)^2``."""
    n = p.n
    v = as_values(nu, n)
    f = as_values(f, n)
    if not np.any(f):
        raise DegenerateFunction("normalized energy is undefined for f = 0")
    xi = p.left_apply(v)
    norm2 = float(np.sum((v + xi) * f ** 2))
    if norm2 == 0.0:
        raise DegenerateFunction("f vanishes on the support of nu + xi")
    return dirichlet_energy(v, p, f) / norm2


def cut_measure(nu, p: TransitionMatrix, s, u) -> float:
    """Probability mass ``q(S, U) = sum_{x in S, y in U} nu(x) p(x, y)``."""
    n = p.n
    v = as_values(nu, n)
    s = vertex_set(s, n)
    u = vertex_set(u, n)
    if s & u:
        raise InvalidSets("S and U must be disjoint")
    if not s or not u:
        return 0.0
    rows, cols, data = _edges(p)
    in_s = indicator(s, n).astype(bool)
    in_u = indicator(u, n).astype(bool)
    mask = in_s[rows] & in_u[cols]
    return float(np.sum(v[rows[mask]] * data[mask]))


def partition_energy(nu, p: TransitionMatrix, parts: Sequence) -> float:
    """Sum of the energies of the indicator functions of a partition."""
    n = p.n
    sets = []
    for part in parts:
        try:
            sets.append(vertex_set(part, n))
        except InvalidSets as exc:
            raise InvalidPartition(str(exc)) from exc
    covered = sum(len(s) for s in sets)
    union = frozenset().union(*sets) if sets else frozenset()
    if covered != len(union) or len(union) != n:
        raise InvalidPartition("parts must be pairwise disjoint and cover every vertex")
    return math.fsum(dirichlet_energy(nu, p, indicator(s, n)) for s in sets)


def internal_frontier(g: Digraph, v) -> frozenset:
    """Vertices of ``v`` with at least one out-edge leaving ``v``."""
    v = vertex_set(v, g.n)
    inside = np.zeros(g.n, dtype=bool)
    inside[list(v)] = True
    coo = g.weights.tocoo()
    leaving = inside[coo.row] & ~inside[coo.col]
    return frozenset(int(x) for x in np.unique(coo.row[leaving]))


@dataclass(frozen=True)
class ToyModelParams:
    """Asymptotic constants of the two-cluster toy model.

    b is the limiting fraction of the small cluster, c the frontier
    constant and rho the frontier-to-interior degree ratio.
    """

    b: float
    c: float
    rho: float

    def __post_init__(self):
        if not 0 < self.b < 1:
            raise InvalidParameter(f"b must lie in (0, 1), got {self.b}")
        if not self.c > 0:
            raise InvalidParameter(f"c must be positive, got {self.c}")
        if not 0 < self.rho < 1:
            raise InvalidParameter(f"rho must lie in (0, 1), got {self.rho}")


def theoretical_alpha(params) -> float:
    """Exponent above which ``pi ** alpha`` regularization favours the small cluster.

    Accepts a :class:`ToyModelParams` or a ``(b, c, rho)`` tuple.
    """
    if not isinstance(params, ToyModelParams):
        params = ToyModelParams(*params)
    return math.log(params.b / params.c) / math.log(params.rho)


@dataclass(frozen=True, eq=False)
class CrossoverSweep:
    alphas: np.ndarray
    energy_a: np.ndarray
    energy_b: np.ndarray
    alpha_xp: float | None

    def rows(self):
        return list(zip(self.alphas.tolist(), self.energy_a.tolist(), self.energy_b.tolist()))

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alpha", "energy_a", "energy_b"])
        for a, ea, eb in self.rows():
            writer.writerow([repr(a), repr(ea), repr(eb)])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text


def energy_crossover_sweep(g: Digraph, set_a, set_b, alphas) -> CrossoverSweep:
    """Compare normalized energies of two indicator functions under ``pi ** alpha``.

    ``g`` must be undirected, so that the stationary measure is the degree
    distribution. ``alpha_xp`` is the smallest grid value at which the
    energy of ``set_a`` drops strictly below that of ``set_b``, or None.
    """
    if g.directed:
        raise InvalidParameter("crossover sweep needs an undirected graph; symmetrize first")
    n = g.n
    chi_a = indicator(set_a, n)
    chi_b = indicator(set_b, n)
    p = transition_matrix(g)
    deg = g.out_degree
    pi = deg / deg.sum()
    alphas = np.sort(np.asarray(list(alphas), dtype=float))
    ea = np.empty(alphas.size)
    eb = np.empty(alphas.size)
    for i, alpha in enumerate(alphas):
        nu = VertexMeasure(pi ** alpha, f"stationary^{alpha:g}")
        ea[i] = normalized_dirichlet(nu, p, chi_a)
        eb[i] = normalized_dirichlet(nu, p, chi_b)
    below = np.flatnonzero(ea < eb)
    alpha_xp = float(alphas[below[0]]) if below.size else None
    return CrossoverSweep(alphas, ea, eb, alpha_xp)
