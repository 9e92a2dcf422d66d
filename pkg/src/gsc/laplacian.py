"""Measure-regularized graph Laplacians (dense)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateMeasure
from .graph import TransitionMatrix
from .measure import VertexMeasure, as_values

__all__ = [
    "GeneralizedLaplacian",
    "generalized_laplacian",
    "generalized_rw_laplacian",
    "classical_directed_laplacians",
    "normalized_generalized_laplacian",
]


@dataclass(frozen=True, eq=False)
class GeneralizedLaplacian:
    """Symmetric operator whose quadratic form is the generalized Dirichlet energy.

    Attributes
    ----------
    matrix : ndarray
        ``N + Xi - (N P + P^T N)`` or its normalized congruence.
    weight_vector : ndarray
        ``nu + xi``, the weights of the Rayleigh-quotient denominator.
    kind : str
        ``"unnormalized"`` or ``"normalized"``.
    provenance : dict
        Free-form description of how the measure was obtained.
    """

    matrix: np.ndarray
    weight_vector: np.ndarray
    kind: str = "unnormalized"
    provenance: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def _label(nu) -> str:
    return nu.label if isinstance(nu, VertexMeasure) else "custom"


def generalized_laplacian(nu, p: TransitionMatrix) -> GeneralizedLaplacian:
    """``L(nu) = N + Xi - (N P + P^T N)`` with ``N = diag(nu)``, ``Xi = diag(P^T nu)``."""
    v = as_values(nu, p.n)
    xi = p.left_apply(v)
    np_ = v[:, None] * p.toarray()
    # a + b == b + a in IEEE arithmetic, so this is exactly symmetric
    mat = -(np_ + np_.T)
    mat[np.diag_indices_from(mat)] += v + xi
    prov = {"measure": _label(nu), "gamma": p.gamma}
    return GeneralizedLaplacian(mat, v + xi, "unnormalized", prov)


def generalized_rw_laplacian(nu, p: TransitionMatrix) -> np.ndarray:
    """``I - (I + N^-1 Xi)^-1 (P + N^-1 P^T N)``; needs a strictly positive ``nu``."""
    v = as_values(nu, p.n)
    if np.any(v <= 0):
        raise DegenerateMeasure("random-walk Laplacian needs a strictly positive measure")
    xi = p.left_apply(v)
    P = p.toarray()
    adjoint = P.T * v[None, :] / v[:, None]
    scale = v / (v + xi)
    return np.eye(p.n) - scale[:, None] * (P + adjoint)


def classical_directed_laplacians(p: TransitionMatrix, pi) -> tuple[np.ndarray, np.ndarray]:
    """Random-walk and unnormalized Laplacians of an ergodic walk.

    Returns ``(I - (P + Pi^-1 P^T Pi) / 2, Pi - (Pi P + P^T Pi) / 2)``.
    """
    v = as_values(pi, p.n)
    if np.any(v <= 0):
        raise DegenerateMeasure("stationary measure must be strictly positive")
    P = p.toarray()
    l_rw = np.eye(p.n) - 0.5 * (P + P.T * v[None, :] / v[:, None])
    pp = v[:, None] * P
    lap = np.diag(v) - 0.5 * (pp + pp.T)
    return l_rw, lap


def normalized_generalized_laplacian(lap: GeneralizedLaplacian) -> np.ndarray:
    """``diag(w)^-1/2 L diag(w)^-1/2`` with ``w = nu + xi``.

    Its eigenproblem is equivalent to ``L u = lambda diag(w) u``.
    """
    w = lap.weight_vector
    if np.any(w <= 0):
        raise DegenerateMeasure("normalization weights nu + xi must be strictly positive")
    s = 1.0 / np.sqrt(w)
    return np.multiply.outer(s, s) * lap.matrix
