"""k-means, generalized spectral clustering (GSC) and baseline spectral methods.

Every method follows the same pipeline: build a symmetric operator on the
graph, embed vertices with eigenvectors (or singular vectors), then run
k-means on the embedding rows. All randomness is derived from a single
integer seed through :func:`task_rng`, keyed by the position of the task in
its grid, so results do not depend on execution order.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateMeasure, GSCError, InvalidParameter
from .graph import Digraph, symmetrize, teleport_mix, transition_matrix
from .laplacian import generalized_laplacian, normalized_generalized_laplacian
from .measure import power_measure_path, stationary_distribution
from .metrics import ari, calinski_harabasz, nmi
from .spectral import smallest_eigenpairs

__all__ = [
    "Partition",
    "GridEntry",
    "GridResult",
    "Selection",
    "METHODS",
    "task_rng",
    "kmeans",
    "spectral_partition",
    "measure_partition",
    "gsc_run",
    "sc_sym",
    "sc_sym_operator",
    "dsc_plus",
    "dsc_plus_operator",
    "di_sim",
    "di_sim_operator",
    "grid_search",
    "score_partition",
]

METHODS = ("gsc1", "gsc2", "gsc3", "sc-sym1", "sc-sym2", "dsc-plus", "di-sim-l", "di-sim-r")

KMEANS_MAX_ITER = 300
KMEANS_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Partition:
    """Cluster labels in ``[0, k)`` plus a record of how they were produced."""

    labels: np.ndarray
    k: int
    provenance: dict = field(default_factory=dict)

    def sets(self) -> list[frozenset]:
        return [frozenset(np.flatnonzero(self.labels == c).tolist()) for c in range(self.k)]

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)


@dataclass(frozen=True, eq=False)
class GridEntry:
    params: dict
    partition: Partition
    scores: dict

    def to_dict(self, labels: bool = True) -> dict:
        out = {"params": dict(self.params)}
        if labels:
            out["labels"] = self.partition.labels.tolist()
        out["scores"] = dict(self.scores)
        return out


@dataclass(eq=False)
class GridResult:
    entries: list = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_json(self, labels: bool = True) -> list:
        return [e.to_dict(labels) for e in self.entries]


@dataclass(frozen=True, eq=False)
class Selection:
    """How grid points are ranked.

    ``metric`` is ``"nmi"`` or ``"ari"`` (needs ``labels``) or ``"ch"``
    (needs the original ``features``).
    """

    metric: str = "nmi"
    labels: np.ndarray | None = None
    features: np.ndarray | None = None

    def __post_init__(self):
        if self.metric not in ("nmi", "ari", "ch"):
            raise InvalidParameter(f"unknown selection metric {self.metric!r}")
        if self.metric in ("nmi", "ari") and self.labels is None:
            raise InvalidParameter("supervised selection needs ground-truth labels")
        if self.metric == "ch" and self.features is None:
            raise InvalidParameter("Calinski-Harabasz selection needs feature vectors")


def task_rng(seed: int, *keys: int) -> np.random.Generator:
    """Counter-based generator for the task identified by ``keys``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(ss))


# ---------------------------------------------------------------- k-means

def _kmeanspp(x: np.ndarray, xx: np.ndarray, k: int, restarts: int, rng) -> np.ndarray:
    n = x.shape[0]
    first = rng.integers(n, size=restarts)
    centers = np.empty((restarts, k, x.shape[1]))
    centers[:, 0] = x[first]
    closest = np.maximum(xx[None, :] - 2 * centers[:, 0] @ x.T + xx[first][:, None], 0.0)
    for c in range(1, k):
        total = closest.sum(axis=1)
        u = rng.random(restarts)
        cdf = np.cumsum(closest, axis=1)
        pick = np.empty(restarts, dtype=int)
        for r in range(restarts):
            if total[r] > 0:
                pick[r] = min(np.searchsorted(cdf[r], u[r] * total[r], side="right"), n - 1)
            else:
                pick[r] = rng.integers(n)
        centers[:, c] = x[pick]
        d2 = np.maximum(xx[None, :] - 2 * np.einsum("rd,nd->rn", x[pick], x) + xx[pick][:, None], 0.0)
        np.minimum(closest, d2, out=closest)
    return centers


def _assign(x, xx, centers):
    cc = np.einsum("rkd,rkd->rk", centers, centers)
    d2 = xx[None, :, None] - 2 * np.einsum("nd,rkd->rnk", x, centers) + cc[:, None, :]
    np.maximum(d2, 0.0, out=d2)
    labels = d2.argmin(axis=2)
    dist = np.take_along_axis(d2, labels[..., None], axis=2)[..., 0]
    return labels, dist


def _relabel(labels: np.ndarray) -> np.ndarray:
    """Renumber clusters by order of first appearance."""
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    mapping = np.empty(order.size, dtype=int)
    mapping[np.unique(labels)[order]] = np.arange(order.size)
    return mapping[labels]


def kmeans(points, k: int, restarts: int = 10, seed=0) -> Partition:
    """Lloyd's algorithm with k-means++ seeding, best of ``restarts`` by inertia.

    All restarts run together as one batched computation. Iteration stops
    when no restart's inertia changes by more than ``1e-10`` or after 300
    sweeps. A cluster that empties is re-seeded from the point farthest
    from its current centre.

    Parameters
    ----------
    points : array_like, shape (n, d)
    k : int
        Number of clusters, ``1 <= k <= n``.
    restarts : int
    seed : int or numpy Generator
    """
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    n = x.shape[0]
    k = int(k)
    if not 1 <= k <= n:
        raise InvalidParameter(f"k must lie in [1, {n}], got {k}")
    if restarts < 1:
        raise InvalidParameter("restarts must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    xc = x - x.mean(axis=0)
    xx = np.einsum("nd,nd->n", xc, xc)

    centers = _kmeanspp(xc, xx, k, restarts, rng)
    prev = np.full(restarts, np.inf)
    reseeded = 0
    for it in range(KMEANS_MAX_ITER):
        labels, dist = _assign(xc, xx, centers)
        inertia = dist.sum(axis=1)
        if np.all(np.abs(prev - inertia) <= KMEANS_TOL):
            break
        prev = inertia
        onehot = np.zeros((restarts, n, k))
        np.put_along_axis(onehot, labels[..., None], 1.0, axis=2)
        counts = onehot.sum(axis=1)
        sums = np.einsum("rnk,nd->rkd", onehot, xc)
        nonempty = counts > 0
        centers = np.where(nonempty[..., None], sums / np.maximum(counts, 1)[..., None], centers)
        for r, c in zip(*np.nonzero(~nonempty)):
            far = int(np.argmax(dist[r]))
            centers[r, c] = xc[far]
            dist[r, far] = -1.0
            reseeded += 1
    labels, dist = _assign(xc, xx, centers)
    best = int(np.argmin(dist.sum(axis=1)))
    lab = _relabel(labels[best])
    inertia = float(np.sum((xc - _centroids(xc, lab))**2))
    return Partition(
        lab,
        k,
        {
            "method": "kmeans",
            "restart_count": int(restarts),
            "kmeans_inertia": inertia,
            "iterations": it + 1,
            "empty_clusters": int(k - np.unique(lab).size),
            "reseeded": reseeded,
        },
    )


def _centroids(x, labels):
    k = labels.max() + 1
    sums = np.zeros((k, x.shape[1]))
    np.add.at(sums, labels, x)
    return (sums / np.bincount(labels, minlength=k)[:, None])[labels]


# ---------------------------------------------------------------- spectral methods

def spectral_partition(matrix, k: int, seed: int = 0, restarts: int = 10, keys=(0,)) -> Partition:
    """Embed with the ``k`` smallest eigenvectors of ``matrix`` and run k-means."""
    emb = smallest_eigenpairs(matrix, k, seed=seed)
    part = kmeans(emb.vectors, k, restarts=restarts, seed=task_rng(seed, *keys))
    part.provenance["eigenvalues"] = emb.eigenvalues.tolist()
    part.provenance["seed"] = int(seed)
    return part


def measure_partition(g: Digraph, nu, k: int, *, normalized: bool = False,
                      seed: int = 0, restarts: int = 10, keys=(0,)) -> Partition:
    """Spectral partition with the generalized Laplacian of an arbitrary measure.

    The energy always uses the natural random walk of ``g``.
    """
    lap = generalized_laplacian(nu, transition_matrix(g))
    mat = normalized_generalized_laplacian(lap) if normalized else lap.matrix
    return spectral_partition(mat, k, seed, restarts, keys)


def _check_k(g: Digraph, k: int) -> int:
    k = int(k)
    if not 1 <= k <= g.n:
        raise InvalidParameter(f"k must lie in [1, {g.n}], got {k}")
    return k


def gsc_run(g: Digraph, k: int, variant: str = "gsc1", alpha: float = 1.0,
            gamma: float | None = None, t_max: int = 100, seed: int = 0,
            restarts: int = 10) -> GridResult:
    """Generalized spectral clustering for every ``t`` in ``0..t_max``.

    For each ``t`` the regularizing measure is the ``t``-step iterated
    power of the teleport-mixed walk raised to ``alpha``; the Laplacian is
    always built on the original walk, never on the mixed one.

    Parameters
    ----------
    variant : {"gsc1", "gsc2", "gsc3"}
        ``gsc1`` uses no teleportation (``gamma`` must be None or 1);
        ``gsc2`` and ``gsc3`` need ``gamma`` in ``[0, 1)``; ``gsc3`` uses the
        normalized Laplacian.
    """
    variant = variant.lower()
    k = _check_k(g, k)
    if variant == "gsc1":
        if gamma is not None and float(gamma) != 1.0:
            raise InvalidParameter("gsc1 uses gamma = 1")
        gamma = 1.0
    elif variant in ("gsc2", "gsc3"):
        if gamma is None or not 0.0 <= float(gamma) < 1.0:
            raise InvalidParameter(f"{variant} needs gamma in [0, 1), got {gamma}")
        gamma = float(gamma)
    else:
        raise InvalidParameter(f"unknown GSC variant {variant!r}")
    p = transition_matrix(g)
    p_mix = teleport_mix(p, gamma)
    result = GridResult()
    for t, nu in power_measure_path(p_mix, int(t_max), float(alpha)):
        lap = generalized_laplacian(nu, p)
        mat = normalized_generalized_laplacian(lap) if variant == "gsc3" else lap.matrix
        part = spectral_partition(mat, k, seed, restarts, keys=(t,))
        params = {"method": variant, "alpha": float(alpha), "t": t, "gamma": gamma}
        part.provenance.update(params)
        result.entries.append(GridEntry(params, part, {}))
    return result


def sc_sym_operator(g: Digraph, variant: str = "sym1") -> np.ndarray:
    w = symmetrize(g).toarray()
    d = w.sum(axis=1)
    if variant.lower() in ("sym1", "sc-sym1"):
        return np.diag(d) - w
    if variant.lower() in ("sym2", "sc-sym2"):
        inv = np.zeros_like(d)
        inv[d > 0] = 1.0 / np.sqrt(d[d > 0])
        lap = np.eye(g.n) - np.multiply.outer(inv, inv) * w
        isolated = d == 0
        lap[isolated, :] = 0.0
        lap[:, isolated] = 0.0
        return lap
    raise InvalidParameter(f"unknown SC-SYM variant {variant!r}")


def sc_sym(g: Digraph, k: int, variant: str = "sym1", seed: int = 0,
           restarts: int = 10) -> Partition:
    """Vanilla spectral clustering on the symmetrized adjacency.

    ``sym1`` embeds ``D - W``; ``sym2`` embeds ``I - D^-1/2 W D^-1/2``.
    """
    k = _check_k(g, k)
    part = spectral_partition(sc_sym_operator(g, variant), k, seed, restarts)
    part.provenance["method"] = "sc-" + variant.lower().removeprefix("sc-")
    return part


def dsc_plus_operator(g: Digraph, gamma: float) -> np.ndarray:
    """``I - (Phi^1/2 P Phi^-1/2 + Phi^-1/2 P^T Phi^1/2) / 2`` on the teleporting walk."""
    gamma = float(gamma)
    if not 0.0 <= gamma < 1.0:
        raise InvalidParameter(f"DSC+ needs gamma in [0, 1), got {gamma}")
    p_mix = teleport_mix(transition_matrix(g), gamma)
    # teleport chains contract at rate gamma; budget enough steps for 1e-12
    steps = int(np.ceil(np.log(1e-13) / np.log(gamma))) + 10 if gamma > 0 else 10
    pi = stationary_distribution(p_mix, max_iter=max(10 * g.n, steps)).values
    s = np.sqrt(pi)
    a = s[:, None] * p_mix.toarray() / s[None, :]
    return np.eye(g.n) - 0.5 * (a + a.T)


def dsc_plus(g: Digraph, k: int, gamma: float = 0.8, seed: int = 0,
             restarts: int = 10) -> Partition:
    """Spectral clustering of the teleporting walk (symmetric normalized form)."""
    k = _check_k(g, k)
    part = spectral_partition(dsc_plus_operator(g, gamma), k, seed, restarts)
    part.provenance.update({"method": "dsc-plus", "operator": "dsc_plus_sym", "gamma": float(gamma)})
    return part


def di_sim_operator(g: Digraph, tau: float) -> np.ndarray:
    """``(D_out + tau I)^-1/2 W (D_in + tau I)^-1/2``."""
    tau = float(tau)
    if tau < 0:
        raise InvalidParameter(f"tau must be nonnegative, got {tau}")
    d_out = g.out_degree + tau
    d_in = g.in_degree + tau
    if np.any(d_out == 0) or np.any(d_in == 0):
        raise DegenerateMeasure("isolated vertex with tau = 0: degree regularization is singular")
    return g.toarray() / np.sqrt(d_out)[:, None] / np.sqrt(d_in)[None, :]


def di_sim(g: Digraph, k: int, side: str = "left", tau: float = 1.0, seed: int = 0,
           restarts: int = 10) -> Partition:
    """Co-clustering with the top-k singular vectors of the regularized operator.

    ``left`` clusters sending patterns (left singular vectors), ``right``
    receiving patterns. Rows are L2-normalized before k-means.
    """
    k = _check_k(g, k)
    side = side.lower()
    if side not in ("left", "right"):
        raise InvalidParameter(f"side must be 'left' or 'right', got {side!r}")
    u, s, vt = np.linalg.svd(di_sim_operator(g, tau))
    u, v = u[:, :k], vt[:k].T
    # flip each singular pair together, fixed by the left vector
    idx = np.argmax(np.abs(u), axis=0)
    signs = np.where(u[idx, np.arange(k)] < 0, -1.0, 1.0)
    emb = u * signs if side == "left" else v * signs
    norms = np.linalg.norm(emb, axis=1, keepdims=True)
    emb = np.divide(emb, norms, out=np.zeros_like(emb), where=norms > 0)
    part = kmeans(emb, k, restarts=restarts, seed=task_rng(seed, 0))
    part.provenance.update({
        "method": f"di-sim-{side[0]}",
        "tau": float(tau),
        "seed": int(seed),
        "singular_values": s[:k].tolist(),
    })
    return part


# ---------------------------------------------------------------- grid search

def score_partition(labels, selection: Selection | None = None, *,
                    truth=None, features=None, k: int | None = None) -> dict:
    """Every score that the available references allow; undefined ones are None."""
    if selection is not None:
        truth = selection.labels if truth is None else truth
        features = selection.features if features is None else features
    scores = {}
    if truth is not None:
        scores["nmi"] = nmi(truth, labels)
        scores["ari"] = ari(truth, labels)
    if features is not None:
        try:
            scores["ch"] = float(calinski_harabasz(features, labels, k))
        except GSCError:
            scores["ch"] = None
    return scores


_GRID_DEFAULTS = {
    "alphas": tuple(round(0.1 * i, 10) for i in range(11)),
    "t_max": 100,
    "gammas": tuple(round(0.05 * i, 10) for i in range(20)),
    "taus": tuple(float(i) for i in range(1, 21)),
}


def _grid_tasks(method: str, alphas, t_max, gammas, taus):
    """Independent units of work for a method, in canonical grid order."""
    if method == "gsc1":
        return [("gsc", (method, a, None, t_max)) for a in alphas]
    if method in ("gsc2", "gsc3"):
        return [("gsc", (method, a, gm, t_max)) for gm in gammas for a in alphas]
    if method in ("sc-sym1", "sc-sym2"):
        return [("sym", (method,))]
    if method == "dsc-plus":
        return [("dsc", (gm,)) for gm in gammas]
    if method in ("di-sim-l", "di-sim-r"):
        return [("disim", (method, tau)) for tau in taus]
    raise InvalidParameter(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")


def _run_task(task, g, k, seed, restarts, truth, features):
    kind, args = task
    if kind == "gsc":
        method, alpha, gamma, t_max = args
        entries = gsc_run(g, k, method, alpha, gamma, t_max, seed, restarts).entries
    elif kind == "sym":
        part = sc_sym(g, k, args[0].removeprefix("sc-"), seed, restarts)
        entries = [GridEntry({"method": args[0]}, part, {})]
    elif kind == "dsc":
        part = dsc_plus(g, k, args[0], seed, restarts)
        entries = [GridEntry({"method": "dsc-plus", "gamma": float(args[0])}, part, {})]
    else:
        method, tau = args
        side = "left" if method.endswith("-l") else "right"
        part = di_sim(g, k, side, tau, seed, restarts)
        entries = [GridEntry({"method": method, "tau": float(tau)}, part, {})]
    for e in entries:
        e.scores.update(score_partition(e.partition.labels, truth=truth, features=features, k=k))
    return entries


def _rank_key(entry: GridEntry, metric: str, tau_order: dict):
    score = entry.scores.get(metric)
    if score is None or not np.isfinite(score):
        score = -np.inf
    p = entry.params
    return (
        -score,
        p.get("t", 0),
        p.get("alpha", 0.0),
        -p.get("gamma", 0.0),
        tau_order.get(p.get("tau"), 0),
    )


def grid_search(g: Digraph, k: int, method: str, selection: Selection, *,
                alphas: Sequence[float] | None = None, t_max: int | None = None,
                gammas: Sequence[float] | None = None, taus: Sequence[float] | None = None,
                seed: int = 0, restarts: int = 10, workers: int = 1):
    """Evaluate a method over its parameter grid and pick the best partition.

    Parameters not used by ``method`` are ignored; omitted grids fall back
    to alpha in {0, 0.1, ..., 1}, t in 0..100, gamma in {0, 0.05, ..., 0.95}
    and tau in {1, ..., 20}. Ties are broken towards smaller t, smaller
    alpha, larger gamma and the earlier tau.

    Returns
    -------
    best : Partition
    grid : GridResult
        One entry per evaluated grid point, in canonical grid order.
    """
    method = method.lower()
    alphas = tuple(_GRID_DEFAULTS["alphas"] if alphas is None else alphas)
    gammas = tuple(_GRID_DEFAULTS["gammas"] if gammas is None else gammas)
    taus = tuple(_GRID_DEFAULTS["taus"] if taus is None else taus)
    t_max = _GRID_DEFAULTS["t_max"] if t_max is None else int(t_max)
    if not alphas or not gammas or not taus or t_max < 0:
        raise InvalidParameter("parameter grids must be non-empty")
    tasks = _grid_tasks(method, alphas, t_max, gammas, taus)
    common = (g, _check_k(g, k), int(seed), int(restarts), selection.labels, selection.features)

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=int(workers)) as pool:
            chunks = list(pool.map(_run_task, tasks, *(itertools.repeat(c) for c in common)))
    else:
        chunks = [_run_task(task, *common) for task in tasks]

    grid = GridResult([e for chunk in chunks for e in chunk])
    tau_order = {float(t): i for i, t in enumerate(taus)}
    best = min(grid.entries, key=lambda e: _rank_key(e, selection.metric, tau_order))
    return best.partition, grid
