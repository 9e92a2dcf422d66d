"""Smallest eigenpairs of symmetric operators, with a reproducible basis."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import InvalidParameter, NotSymmetric

__all__ = ["SpectralEmbedding", "smallest_eigenpairs", "sign_normalize"]

SYMMETRY_TOL = 1e-8
# gap, relative to the spectral radius, under which eigenvalues form one block
DEGENERACY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralEmbedding:
    vectors: np.ndarray
    eigenvalues: np.ndarray
    provenance: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.eigenvalues.size


def sign_normalize(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so that each column's first largest-magnitude entry is positive."""
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _degenerate_blocks(w: np.ndarray, scale: float):
    """Split the ascending spectrum into runs of numerically equal eigenvalues."""
    tol = DEGENERACY_TOL * scale
    start = 0
    for i in range(1, w.size + 1):
        if i == w.size or w[i] - w[i - 1] > tol:
            yield start, i
            start = i


def _canonical_basis(block: np.ndarray, seed: int, start: int) -> np.ndarray:
    # Project seeded directions onto the eigenspace so the basis depends
    # only on the subspace, not on which basis LAPACK happened to return.
    rng = np.random.default_rng([seed, start, block.shape[1]])
    probe = rng.standard_normal((block.shape[0], block.shape[1]))
    q, r = np.linalg.qr(block @ (block.T @ probe))
    return q * np.where(np.diag(r) < 0, -1.0, 1.0)


def smallest_eigenpairs(m, k: int, seed: int = 0) -> SpectralEmbedding:
    """Eigenvectors of the ``k`` smallest eigenvalues of a symmetric matrix.

    Parameters
    ----------
    m : array_like
        Symmetric matrix. Asymmetry up to ``1e-8`` (relative to the largest
        entry) is averaged away; anything larger is rejected.
    k : int
        Number of eigenpairs, ``1 <= k <= n``.
    seed : int
        Seeds the rotation used inside degenerate eigenspaces.

    Returns
    -------
    SpectralEmbedding
        Columns sorted by ascending eigenvalue, orthonormal, with the sign
        convention of :func:`sign_normalize`.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    k = int(k)
    if not 1 <= k <= n:
        raise InvalidParameter(f"k must lie in [1, {n}], got {k}")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    asym = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    if asym > SYMMETRY_TOL * scale:
        raise NotSymmetric(f"matrix is not symmetric (max asymmetry {asym:.3e})")
    if asym > 0:
        m = 0.5 * (m + m.T)
    w, v = scipy.linalg.eigh(m)
    # measures such as pi ** alpha can shrink the whole operator far below
    # unit scale, so the block tolerance is purely relative
    spread = float(np.max(np.abs(w))) if w.size else 0.0
    for lo, hi in _degenerate_blocks(w, spread):
        if lo >= k:
            break
        if hi - lo > 1:
            v[:, lo:hi] = _canonical_basis(v[:, lo:hi], seed, lo)
    vectors = sign_normalize(v[:, :k])
    return SpectralEmbedding(np.ascontiguousarray(vectors), w[:k].copy(), {"seed": seed})
