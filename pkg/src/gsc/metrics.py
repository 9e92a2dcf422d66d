"""Partition quality: NMI and ARI against a reference, Calinski-Harabasz on features.

NMI and ARI sum their terms with :func:`math.fsum` and integer pair
counts, so relabeling either argument or swapping the arguments gives
bit-identical results.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, InvalidPartition, ShapeMismatch

__all__ = [
    "ContingencyTable",
    "contingency_table",
    "nmi",
    "ari",
    "calinski_harabasz",
    "CH_SENTINEL",
]

CH_SENTINEL = 1e15


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    counts: np.ndarray
    row_marginals: np.ndarray
    col_marginals: np.ndarray
    n: int


def _labels(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 1:
        raise ShapeMismatch(f"labels must be one-dimensional, got shape {a.shape}")
    return a


def contingency_table(a, b) -> ContingencyTable:
    a = _labels(a)
    b = _labels(b)
    if a.size != b.size:
        raise ShapeMismatch(f"label vectors differ in length: {a.size} vs {b.size}")
    _, ia = np.unique(a, return_inverse=True)
    _, ib = np.unique(b, return_inverse=True)
    counts = np.zeros((ia.max(initial=-1) + 1, ib.max(initial=-1) + 1), dtype=np.int64)
    np.add.at(counts, (ia, ib), 1)
    return ContingencyTable(counts, counts.sum(axis=1), counts.sum(axis=0), int(a.size))


def _entropy(marginals, n: int) -> float:
    return math.fsum((int(c) / n) * math.log(n / int(c)) for c in marginals if c > 0)


def nmi(a, b) -> float:
    """Normalized mutual information ``I(a; b) / sqrt(H(a) H(b))`` (natural logs).

    Two single-cluster labelings score 1; if only one of them is trivial
    the score is 0.
    """
    table = contingency_table(a, b)
    n = table.n
    if n < 1:
        raise ShapeMismatch("labels must not be empty")
    ha = _entropy(table.row_marginals, n)
    hb = _entropy(table.col_marginals, n)
    if ha == 0.0 and hb == 0.0:
        return 1.0
    if ha == 0.0 or hb == 0.0:
        return 0.0
    terms = []
    rows, cols = np.nonzero(table.counts)
    for i, j in zip(rows, cols):
        nij = int(table.counts[i, j])
        ai = int(table.row_marginals[i])
        bj = int(table.col_marginals[j])
        terms.append((nij / n) * math.log((n * nij) / (ai * bj)))
    mi = max(math.fsum(terms), 0.0)
    return min(mi / math.sqrt(ha * hb), 1.0)


def ari(a, b) -> float:
    """Adjusted Rand index from pair counts of the contingency table."""
    table = contingency_table(a, b)
    n = table.n
    if n < 2:
        raise ShapeMismatch("ARI needs at least two items")

    def pairs(x):
        return sum(int(v) * (int(v) - 1) // 2 for v in np.ravel(x))

    index = pairs(table.counts)
    sum_a = pairs(table.row_marginals)
    sum_b = pairs(table.col_marginals)
    total = n * (n - 1) // 2
    # scale by total to keep every quantity an integer until the last division
    num = index * total - sum_a * sum_b
    den = (sum_a + sum_b) * total - 2 * sum_a * sum_b
    if den == 0:
        return 1.0
    return 2 * num / den


def calinski_harabasz(features, labels, k: int | None = None, *, full_output: bool = False):
    """Calinski-Harabasz index ``(SSB / (k - 1)) / (SSW / (n - k))``.

    Parameters
    ----------
    features : array_like, shape (n, d)
    labels : array_like of int, shape (n,)
        Cluster ids in ``[0, k)``; every cluster must be non-empty.
    k : int, optional
        Cluster count, inferred as ``max(labels) + 1`` when omitted.
    full_output : bool
        Also return a flag telling whether the within-cluster scatter was
        zero, in which case the score is the sentinel ``1e15``.
    """
    x = np.asarray(features, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    lab = _labels(labels)
    n = x.shape[0]
    if lab.size != n:
        raise ShapeMismatch(f"{n} feature rows but {lab.size} labels")
    if not np.issubdtype(lab.dtype, np.integer):
        raise InvalidPartition("labels must be integers")
    if k is None:
        k = int(lab.max()) + 1 if n else 0
    if not 2 <= k <= n - 1:
        raise InvalidParameter(f"k must lie in [2, n - 1] = [2, {n - 1}], got {k}")
    if lab.min() < 0 or lab.max() >= k:
        raise InvalidPartition(f"labels must lie in [0, {k})")
    counts = np.bincount(lab, minlength=k)
    if np.any(counts == 0):
        raise InvalidPartition("every cluster must be non-empty")
    mean = x.mean(axis=0)
    centroids = np.zeros((k, x.shape[1]))
    np.add.at(centroids, lab, x)
    centroids /= counts[:, None]
    ssb = float(np.sum(counts * np.sum((centroids - mean) ** 2, axis=1)))
    ssw = float(np.sum((x - centroids[lab]) ** 2))
    degenerate = ssw == 0.0
    score = CH_SENTINEL if degenerate else (ssb / (k - 1)) / (ssw / (n - k))
    return (score, degenerate) if full_output else score
