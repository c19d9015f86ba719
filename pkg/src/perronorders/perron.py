"""Dominant (Perron) eigenpairs by power iteration, and the consistency index.

Vectors are normalized so that their last entry is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import NoConvergence
from .matrix_core import DiagonalVector, ReciprocalMatrix, diag_similarity

__all__ = [
    "SolverConfig",
    "PerronPair",
    "right_perron",
    "left_perron",
    "consistency_index",
    "row_sum_normalize",
    "power_iteration",
]


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-12
    max_iter: int = 10_000

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if int(self.max_iter) < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class PerronPair:
    """Dominant eigenvalue with its positive eigenvector.

    ``spread`` is max - min of the componentwise ratios (Mx)_i / x_i at the
    returned vector; it is zero for an exact eigenvector.
    """

    lam: float
    vector: np.ndarray
    side: Literal["right", "left"]
    residual: float
    iterations: int = 0
    spread: float = 0.0

    def __post_init__(self):
        v = np.array(self.vector, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    @property
    def n(self) -> int:
        return self.vector.shape[0]


def power_iteration(M, cfg: SolverConfig = DEFAULT_CONFIG, start=None):
    """Power iteration on an entrywise positive matrix.

    Stops once successive last-entry-normalized iterates differ by at most
    ``tol`` (max-norm, relative to the iterate) and the eigen-residual is at
    most ``10 * tol``.  Returns ``(lam, x, residual, iterations, spread)``.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    x = np.ones(n) if start is None else np.array(start, dtype=float)
    x = x / x[-1]
    residual = np.inf
    for k in range(1, int(cfg.max_iter) + 1):
        y = M @ x
        x_new = y / y[-1]
        scale = np.max(np.abs(x_new))
        step = np.max(np.abs(x_new - x)) / scale
        x = x_new
        if step <= cfg.tol:
            Mx = M @ x
            ratios = Mx / x
            lam = float(np.mean(ratios))
            residual = float(np.max(np.abs(Mx - lam * x)) / scale)
            if residual <= 10 * cfg.tol:
                spread = float(np.max(ratios) - np.min(ratios))
                return lam, x, residual, k, spread
    raise NoConvergence(int(cfg.max_iter), residual if np.isfinite(residual) else step)


def _pair(M, side, cfg, start) -> PerronPair:
    lam, x, residual, k, spread = power_iteration(M, cfg, start)
    return PerronPair(lam, x, side, residual, k, spread)


def right_perron(A: ReciprocalMatrix, cfg: SolverConfig = DEFAULT_CONFIG, start=None) -> PerronPair:
    """Right Perron pair of A, starting from the all-ones vector unless given."""
    return _pair(A.dense, "right", cfg, start)


def left_perron(A: ReciprocalMatrix, cfg: SolverConfig = DEFAULT_CONFIG, start=None) -> PerronPair:
    """Left Perron pair of A (the right Perron pair of A^T)."""
    return _pair(A.dense.T, "left", cfg, start)


def consistency_index(A: ReciprocalMatrix, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """CI = (lambda - n) / (n - 1)."""
    lam = right_perron(A, cfg).lam
    return (lam - A.n) / (A.n - 1)


def row_sum_normalize(
    A: ReciprocalMatrix, cfg: SolverConfig = DEFAULT_CONFIG
) -> tuple[ReciprocalMatrix, PerronPair]:
    """Return S^-1 A S with S = diag(right Perron vector), plus that pair.

    Every row of the result sums to the Perron root and its right Perron
    vector is the all-ones vector.
    """
    pair = right_perron(A, cfg)
    return diag_similarity(A, DiagonalVector(1.0 / pair.vector)), pair
