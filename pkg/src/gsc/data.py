"""Point clouds: CSV ingestion, the unbalanced Gaussian toy set and directed K-NN graphs."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import InvalidParameter, ParseError, ShapeMismatch
from .graph import Digraph, from_adjacency

__all__ = [
    "PointCloud",
    "default_k",
    "knn_digraph",
    "standardize",
    "toy_unbalanced",
    "load_csv",
    "write_csv",
]


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        x = np.asarray(self.points, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        if x.ndim != 2:
            raise ShapeMismatch(f"points must be an (n, d) array, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ParseError("points must be finite")
        object.__setattr__(self, "points", x)
        if self.labels is not None:
            lab = np.asarray(self.labels)
            if lab.shape != (x.shape[0],):
                raise ShapeMismatch(f"expected {x.shape[0]} labels, got shape {lab.shape}")
            object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def default_k(n: int) -> int:
    """Neighbourhood size ``ceil(ln N)``."""
    return int(math.ceil(math.log(n)))


def standardize(points) -> tuple[np.ndarray, np.ndarray]:
    """Column-wise z-scores; zero-variance columns are dropped.

    Returns the standardized array and the indices of the kept columns.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    std = x.std(axis=0)
    keep = np.flatnonzero(std > 0)
    z = (x[:, keep] - x[:, keep].mean(axis=0)) / std[keep]
    return z, keep


def _squared_distances(x: np.ndarray, rows: slice) -> np.ndarray:
    diff = x[rows, None, :] - x[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def knn_digraph(pc, k_neighbors: int | None = None, *, count_self: bool = False,
                chunk: int = 256) -> Digraph:
    """Unweighted directed K-NN graph.

    ``w_ij = 1`` iff ``|x_i - x_j|^2 <= dist_K(x_i)^2``. The comparison is
    on squared distances, so the self-loop and every tie at the K-th
    distance are included.

    Parameters
    ----------
    pc : PointCloud or array_like
    k_neighbors : int, optional
        ``K``; defaults to ``ceil(ln N)``.
    count_self : bool
        When False (default) ``dist_K`` is the distance to the K-th nearest
        *other* point. When True the query point is its own first
        neighbour, as returned by the usual ``kneighbors`` query on the
        training set, so only ``K - 1`` other points are guaranteed.
    chunk : int
        Query rows processed per block of the pairwise distance matrix.
    """
    x = pc.points if isinstance(pc, PointCloud) else PointCloud(pc).points
    n = x.shape[0]
    if n < 2:
        raise InvalidParameter("K-NN graph needs at least two points")
    k = default_k(n) if k_neighbors is None else int(k_neighbors)
    limit = n if count_self else n - 1
    if not 1 <= k <= limit:
        raise InvalidParameter(f"k_neighbors must lie in [1, {limit}], got {k}")
    rows, cols = [], []
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        d2 = _squared_distances(x, slice(lo, hi))
        ranked = d2.copy()
        if not count_self:
            ranked[np.arange(hi - lo), np.arange(lo, hi)] = np.inf
        kth = np.partition(ranked, k - 1, axis=1)[:, k - 1]
        r, c = np.nonzero(d2 <= kth[:, None])
        rows.append(r + lo)
        cols.append(c)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    w = sp.csr_matrix((np.ones(r.size), (r, c)), shape=(n, n))
    return from_adjacency(w)


def toy_unbalanced(n1: int = 30, n2: int = 300, seed: int = 0) -> PointCloud:
    """Two isotropic unit-variance Gaussians in 2-D centred at (-2, -2) and (2, 2).

    The first ``n1`` points are labelled 0, the next ``n2`` labelled 1.
    """
    if n1 < 1 or n2 < 1:
        raise InvalidParameter("both clusters need at least one point")
    rng = np.random.default_rng(seed)
    small = rng.normal(-2.0, 1.0, size=(n1, 2))
    large = rng.normal(2.0, 1.0, size=(n2, 2))
    labels = np.r_[np.zeros(n1, dtype=int), np.ones(n2, dtype=int)]
    return PointCloud(np.vstack([small, large]), labels)


def _is_float(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def load_csv(path, label_column: int | None = None) -> PointCloud:
    """Read a rectangular CSV of numeric features and an optional label column.

    A first row with any non-numeric feature cell is taken as a header.
    Labels are factorized to ``0..k-1`` in order of first appearance.
    Negative ``label_column`` counts from the end.
    """
    path = Path(path)
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError(f"{path}: empty file")
    width = len(rows[0])
    if label_column is not None:
        if not -width <= label_column < width:
            raise ParseError(f"{path}: label column {label_column} out of range for {width} columns")
        label_column %= width
    feature_cols = [j for j in range(width) if j != label_column]

    start = 0
    if any(not _is_float(rows[0][j]) for j in feature_cols if j < len(rows[0])):
        start = 1
    if start >= len(rows):
        raise ParseError(f"{path}: header only, no data rows")

    points, raw_labels = [], []
    for lineno, row in enumerate(rows[start:], start=start + 1):
        if len(row) != width:
            raise ParseError(f"{path}:{lineno}: expected {width} columns, got {len(row)}")
        values = []
        for j in feature_cols:
            cell = row[j].strip()
            try:
                values.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"{path}:{lineno}: column {j} is not numeric: {cell!r}"
                ) from None
        points.append(values)
        if label_column is not None:
            raw_labels.append(row[label_column].strip())

    labels = None
    if label_column is not None:
        codes: dict[str, int] = {}
        labels = np.array([codes.setdefault(v, len(codes)) for v in raw_labels], dtype=int)
    return PointCloud(np.array(points, dtype=float).reshape(len(points), len(feature_cols)), labels)


def write_csv(pc: PointCloud, path, header=None) -> None:
    """Write features (and labels, if any) as CSV; 2-D data gets ``x,y,label``."""
    if header is None:
        names = ["x", "y"] if pc.dim == 2 else [f"f{j}" for j in range(pc.dim)]
        header = names + (["label"] if pc.labels is not None else [])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(pc.n):
            row = [repr(float(v)) for v in pc.points[i]]
            if pc.labels is not None:
                row.append(str(pc.labels[i]))
            writer.writerow(row)
