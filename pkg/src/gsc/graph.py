"""Sparse weighted digraphs, random-walk transition matrices and teleport mixing."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import InvalidParameter, InvalidWeight, ParseError, ShapeMismatch

__all__ = [
    "Digraph",
    "TransitionMatrix",
    "from_adjacency",
    "transition_matrix",
    "teleport_mix",
    "symmetrize",
    "read_edgelist",
    "write_edgelist",
]


@dataclass(frozen=True, eq=False)
class Digraph:
    """Weighted directed graph stored as a CSR adjacency matrix.

    Only strictly positive weights are stored. ``directed`` is False only
    when the adjacency matrix is exactly symmetric.
    """

    n: int
    weights: sp.csr_matrix
    directed: bool

    @property
    def nnz(self) -> int:
        return self.weights.nnz

    @property
    def out_degree(self) -> np.ndarray:
        return np.asarray(self.weights.sum(axis=1)).ravel()

    @property
    def in_degree(self) -> np.ndarray:
        return np.asarray(self.weights.sum(axis=0)).ravel()

    def toarray(self) -> np.ndarray:
        return self.weights.toarray()

    def edges(self):
        """Iterate over stored edges as ``(i, j, w)`` in row-major order."""
        coo = self.weights.tocoo()
        for i, j, w in zip(coo.row, coo.col, coo.data):
            yield int(i), int(j), float(w)

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Digraph(n={self.n}, nnz={self.nnz}, {kind})"


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Row-stochastic matrix, sparse for the natural walk, dense once mixed.

    ``gamma`` records the teleport mixing weight that produced the matrix
    (1.0 for the natural random walk).
    """

    matrix: sp.csr_matrix | np.ndarray
    gamma: float = 1.0

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_dense(self) -> bool:
        return isinstance(self.matrix, np.ndarray)

    def toarray(self) -> np.ndarray:
        if self.is_dense:
            return self.matrix
        return self.matrix.toarray()

    def row_sums(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=1)).ravel()

    def left_apply(self, v) -> np.ndarray:
        """Return the row vector ``v^T P``."""
        v = np.asarray(v, dtype=float)
        if self.is_dense:
            return v @ self.matrix
        return self.matrix.T @ v

    def __repr__(self):
        store = "dense" if self.is_dense else "sparse"
        return f"TransitionMatrix(n={self.n}, {store}, gamma={self.gamma})"


def _is_symmetric(w: sp.csr_matrix) -> bool:
    return (w != w.T).nnz == 0


def _make_digraph(w: sp.csr_matrix) -> Digraph:
    w = w.tocsr()
    w.eliminate_zeros()
    w.sort_indices()
    return Digraph(n=w.shape[0], weights=w, directed=not _is_symmetric(w))


def from_adjacency(weights, n: int | None = None) -> Digraph:
    """Build a :class:`Digraph` from an adjacency matrix or a triplet list.

    Parameters
    ----------
    weights : array_like, sparse matrix or iterable of (i, j, w)
        Square nonnegative adjacency matrix. When ``n`` is given, an
        iterable of ``(i, j, w)`` triplets instead; duplicates are summed.
    n : int, optional
        Vertex count; its presence selects triplet input.
    """
    if n is not None:
        w = _from_triplets(weights, n)
    elif sp.issparse(weights):
        w = sp.csr_matrix(weights, dtype=float)
        _check_values(w.data)
    else:
        try:
            arr = np.asarray(weights, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ShapeMismatch(f"cannot read adjacency: {exc}") from exc
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ShapeMismatch(f"adjacency must be square, got shape {arr.shape}")
        w = sp.csr_matrix(_check_values(arr))
    if w.shape[0] != w.shape[1]:
        raise ShapeMismatch(f"adjacency must be square, got shape {w.shape}")
    if w.shape[0] == 0:
        raise ShapeMismatch("graph must have at least one vertex")
    return _make_digraph(w)


def _check_values(values: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise InvalidWeight("weights must be finite")
    if np.any(values < 0):
        raise InvalidWeight("weights must be nonnegative")
    return values


def _from_triplets(triplets, n: int) -> sp.csr_matrix:
    rows, cols, vals = [], [], []
    for item in triplets:
        if len(item) != 3:
            raise ShapeMismatch(f"expected (i, j, w) triplets, got {item!r}")
        i, j, w = item
        rows.append(int(i))
        cols.append(int(j))
        vals.append(float(w))
    vals = _check_values(np.asarray(vals, dtype=float))
    n = int(n)
    if n <= 0:
        raise ShapeMismatch("graph must have at least one vertex")
    if rows and (min(rows + cols) < 0 or max(rows + cols) >= n):
        raise ShapeMismatch(f"vertex index out of range [0, {n})")
    return sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()


def transition_matrix(g: Digraph) -> TransitionMatrix:
    """Natural random walk ``p(x, y) = w(x, y) / d+(x)``.

    Sinks (zero out-degree) get an absorbing self-loop so that every row
    stays a probability distribution.
    """
    d = g.out_degree
    sink = d == 0
    inv = np.zeros_like(d)
    inv[~sink] = 1.0 / d[~sink]
    p = sp.diags(inv) @ g.weights
    if sink.any():
        idx = np.flatnonzero(sink)
        p = p + sp.coo_matrix((np.ones(idx.size), (idx, idx)), shape=p.shape)
    p = sp.csr_matrix(p)
    p.sort_indices()
    return TransitionMatrix(p, gamma=1.0)


def teleport_mix(p: TransitionMatrix, gamma: float) -> TransitionMatrix:
    """Mix a walk with uniform teleportation: ``gamma P + (1 - gamma) J / N``.

    ``gamma = 1`` returns ``p`` itself; any other value yields a dense matrix.
    """
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise InvalidParameter(f"gamma must lie in [0, 1], got {gamma}")
    if gamma == 1.0:
        return p
    n = p.n
    mixed = gamma * p.toarray() + (1.0 - gamma) / n
    return TransitionMatrix(mixed, gamma=gamma)


def symmetrize(g: Digraph) -> Digraph:
    """Return the undirected graph with weights ``(w_ij + w_ji) / 2``."""
    w = (g.weights + g.weights.T) * 0.5
    w = sp.csr_matrix(w)
    w.eliminate_zeros()
    w.sort_indices()
    return Digraph(n=g.n, weights=w, directed=False)


def write_edgelist(g: Digraph, path) -> None:
    """Write ``g`` as a text edge list with an ``n=<N> directed=<0|1>`` header."""
    lines = [f"n={g.n} directed={int(g.directed)}"]
    lines.extend(f"{i} {j} {w!r}" for i, j, w in g.edges())
    Path(path).write_text("\n".join(lines) + "\n")


def read_edgelist(path) -> Digraph:
    text = Path(path).read_text().splitlines()
    if not text:
        raise ParseError(f"{path}: empty edge list")
    header = dict(tok.split("=", 1) for tok in text[0].split() if "=" in tok)
    try:
        n = int(header["n"])
        declared = bool(int(header.get("directed", 1)))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"{path}: bad header {text[0]!r}") from exc
    triplets = []
    for lineno, line in enumerate(text[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"{path}:{lineno}: expected 'i j w', got {line!r}")
        try:
            triplets.append((int(parts[0]), int(parts[1]), float(parts[2])))
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    g = from_adjacency(triplets, n=n)
    if not declared and g.directed:
        raise ParseError(f"{path}: header says undirected but weights are asymmetric")
    return g
