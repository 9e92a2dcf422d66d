"""Vertex measures built from random walks.

The iterated-power measure is the regularizer of generalized spectral
clustering: start from a distribution ``mu`` (uniform by default), push it
``t`` steps through a possibly teleport-mixed walk and raise the result
elementwise to the power ``alpha``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMeasure, InvalidParameter, NotConverged, ShapeMismatch
from .graph import TransitionMatrix

__all__ = [
    "VertexMeasure",
    "power_measure",
    "power_measure_path",
    "outflow_measure",
    "stationary_distribution",
    "as_values",
]


@dataclass(frozen=True, eq=False)
class VertexMeasure:
    values: np.ndarray
    label: str = "custom"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise ShapeMismatch(f"measure must be a vector, got shape {v.shape}")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise DegenerateMeasure("measure entries must be finite and nonnegative")
        if not np.any(v > 0):
            raise DegenerateMeasure("measure must have at least one positive entry")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def total(self) -> float:
        return float(self.values.sum())


def as_values(nu, n: int | None = None) -> np.ndarray:
    """Return the raw vector of a measure or array-like, checking its length."""
    v = nu.values if isinstance(nu, VertexMeasure) else np.asarray(nu, dtype=float)
    if v.ndim != 1:
        raise ShapeMismatch(f"expected a vector, got shape {v.shape}")
    if n is not None and v.size != n:
        raise ShapeMismatch(f"expected length {n}, got {v.size}")
    return v


def _raise_power(v: np.ndarray, alpha: float) -> np.ndarray:
    if alpha <= 0 and np.any(v == 0):
        raise DegenerateMeasure(
            f"measure has zero entries; cannot raise to power alpha={alpha}"
        )
    return v ** alpha


def power_measure_path(p_mix: TransitionMatrix, t_max: int, alpha: float, mu=None):
    """Yield ``(t, VertexMeasure)`` for ``t = 0, ..., t_max``.

    Each step costs one vector-matrix product; the powers of the walk are
    never formed.
    """
    if t_max < 0:
        raise InvalidParameter(f"t must be nonnegative, got {t_max}")
    n = p_mix.n
    if mu is None:
        v = np.full(n, 1.0 / n)
    else:
        v = as_values(mu, n).copy()
        if np.any(v < 0):
            raise DegenerateMeasure("initial measure must be nonnegative")
    for t in range(t_max + 1):
        if t > 0:
            v = p_mix.left_apply(v)
        label = f"power(t={t},gamma={p_mix.gamma:g},alpha={alpha:g})"
        yield t, VertexMeasure(_raise_power(v, alpha), label)


def power_measure(p_mix: TransitionMatrix, t: int, alpha: float, mu=None) -> VertexMeasure:
    """Iterated-power measure ``nu(x) = (mu^T P^t delta_x) ** alpha``.

    Parameters
    ----------
    p_mix : TransitionMatrix
        Walk used to transport ``mu``; usually the output of
        :func:`gsc.graph.teleport_mix`.
    t : int
        Number of walk steps.
    alpha : float
        Elementwise exponent. Values ``<= 0`` require strictly positive
        transported mass.
    mu : array_like or VertexMeasure, optional
        Starting measure, uniform ``1/N`` when omitted.
    """
    t = int(t)
    nu = None
    for _, nu in power_measure_path(p_mix, t, alpha, mu):
        pass
    return nu


def outflow_measure(nu, p: TransitionMatrix) -> VertexMeasure:
    """One-step push-forward ``xi(y) = sum_x nu(x) p(x, y)``."""
    v = as_values(nu, p.n)
    return VertexMeasure(p.left_apply(v), "outflow")


def stationary_distribution(p: TransitionMatrix, tol: float = 1e-12,
                            max_iter: int | None = None) -> VertexMeasure:
    """Stationary distribution by power iteration from the uniform start.

    The average of the last two iterates is tested, so that period-2
    chains still converge. The caller is responsible for ergodicity.

    Raises
    ------
    NotConverged
        If the L1 residual ``||pi P - pi||_1`` is still above ``tol`` after
        ``max_iter`` steps (default ``10 N``).
    """
    n = p.n
    if max_iter is None:
        max_iter = 10 * n
    x = np.full(n, 1.0 / n)
    residual = np.inf
    for _ in range(max(int(max_iter), 1)):
        nxt = p.left_apply(x)
        avg = 0.5 * (x + nxt)
        avg /= avg.sum()
        residual = float(np.abs(p.left_apply(avg) - avg).sum())
        if residual <= tol:
            return VertexMeasure(avg, "stationary")
        x = nxt
    raise NotConverged(
        f"stationary distribution did not converge in {max_iter} iterations "
        f"(residual {residual:.3e})",
        residual,
    )
