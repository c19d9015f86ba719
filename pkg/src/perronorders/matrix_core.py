"""Reciprocal matrices, generators and similarity transforms.

A reciprocal (pairwise comparison) matrix is positive with unit diagonal and
``a[j, i] == 1 / a[i, j]``.  The canonical representation keeps the strictly
upper triangle and derives everything else, so reciprocity cannot be broken by
later arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidPermutation,
    NonFinite,
    NonPositiveEntry,
    NotSquare,
    ReciprocityViolation,
    WrongLength,
)

__all__ = [
    "ReciprocalMatrix",
    "DiagonalVector",
    "PermutationSpec",
    "from_upper_triangle",
    "validate_approx",
    "consistent_from_weights",
    "random_reciprocal",
    "diag_similarity",
    "perm_similarity",
    "is_consistent",
]

DEFAULT_RECIPROCITY_TOL = 1e-3


def _positive_vector(values, name: str) -> np.ndarray:
    x = np.array(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(x)):
        raise NonFinite(f"{name} has non-finite entries")
    if np.any(x <= 0):
        raise NonPositiveEntry(f"{name} has non-positive entries")
    return x


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


class ReciprocalMatrix:
    """Immutable n-by-n reciprocal matrix.

    Internally each off-diagonal pair is stored as ``(x, 1/x)`` where exactly
    one side is the source value.  Canonical construction makes the upper entry
    the source; permutation similarity only moves entries around, so it never
    re-rounds a value and permuting back restores the matrix bit for bit.
    """

    def __init__(self, full: np.ndarray, *, _trusted: bool = False):
        if not _trusted:
            raise TypeError(
                "use from_upper_triangle / validate_approx to build a ReciprocalMatrix"
            )
        self._full = _readonly(full)

    @classmethod
    def _from_upper(cls, n: int, upper: np.ndarray) -> "ReciprocalMatrix":
        full = np.eye(n)
        iu = np.triu_indices(n, 1)
        full[iu] = upper
        full[iu[1], iu[0]] = 1.0 / upper
        return cls(full, _trusted=True)

    @property
    def n(self) -> int:
        return self._full.shape[0]

    @cached_property
    def upper(self) -> np.ndarray:
        """Strictly upper entries in row-major order (a12, a13, ..., a(n-1)n)."""
        return _readonly(self._full[np.triu_indices(self.n, 1)])

    def to_dense(self) -> np.ndarray:
        """Return a writable copy of the full matrix."""
        return self._full.copy()

    @property
    def dense(self) -> np.ndarray:
        """Read-only view of the full matrix."""
        return self._full

    def __array__(self, dtype=None, copy=None):
        return self._full.astype(dtype) if dtype is not None else self._full.copy()

    def __eq__(self, other):
        if not isinstance(other, ReciprocalMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._full, other._full)

    def __hash__(self):
        return hash((self.n, self._full.tobytes()))

    def __repr__(self):
        rows = np.array2string(self._full, precision=4, suppress_small=True)
        return f"ReciprocalMatrix(n={self.n},\n{rows})"


@dataclass(frozen=True)
class DiagonalVector:
    """Positive scale factors d for the similarity D A D^-1."""

    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d", _readonly(_positive_vector(self.d, "diagonal")))

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def inverse(self) -> "DiagonalVector":
        return DiagonalVector(1.0 / self.d)


@dataclass(frozen=True)
class PermutationSpec:
    """A bijection of {0..n-1}; ``perm[i]`` is the source index for position i."""

    perm: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(i) for i in self.perm)
        if sorted(p) != list(range(len(p))):
            raise InvalidPermutation(f"not a permutation of 0..{len(p) - 1}: {p}")
        object.__setattr__(self, "perm", p)

    @classmethod
    def from_one_based(cls, perm: Sequence[int]) -> "PermutationSpec":
        return cls(tuple(int(i) - 1 for i in perm))

    @classmethod
    def identity(cls, n: int) -> "PermutationSpec":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.perm)

    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.perm)

    def inverse(self) -> "PermutationSpec":
        inv = [0] * self.n
        for i, p in enumerate(self.perm):
            inv[p] = i
        return PermutationSpec(tuple(inv))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n))


def from_upper_triangle(n: int, upper: Sequence[float]) -> ReciprocalMatrix:
    """Build a reciprocal matrix from its strictly upper entries (row-major).

    >>> from_upper_triangle(2, [3]).dense.tolist()
    [[1.0, 3.0], [0.3333333333333333, 1.0]]
    """
    n = int(n)
    if n < 2:
        raise WrongLength(f"dimension must be at least 2, got {n}")
    vals = np.array(upper, dtype=float).reshape(-1)
    expected = n * (n - 1) // 2
    if vals.shape[0] != expected:
        raise WrongLength(f"expected {expected} upper entries for n={n}, got {vals.shape[0]}")
    vals = _positive_vector(vals, "upper triangle")
    return ReciprocalMatrix._from_upper(n, vals)


def validate_approx(M, tol: float = DEFAULT_RECIPROCITY_TOL) -> ReciprocalMatrix:
    """Accept a dense, possibly rounded matrix and return its canonical form.

    The check is ``|a_ij * a_ji - 1| <= tol`` off the diagonal and
    ``|a_ii - 1| <= tol`` on it.  The result is rebuilt from M's upper triangle.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"matrix must be square, got shape {M.shape}")
    n = M.shape[0]
    if n < 2:
        raise WrongLength(f"dimension must be at least 2, got {n}")
    if not np.all(np.isfinite(M)):
        raise NonFinite("matrix has non-finite entries")
    if np.any(M <= 0):
        raise NonPositiveEntry("matrix has non-positive entries")
    for i in range(n):
        r = abs(M[i, i] - 1.0)
        if r > tol:
            raise ReciprocityViolation(i + 1, i + 1, r)
        for j in range(i + 1, n):
            r = abs(M[i, j] * M[j, i] - 1.0)
            if r > tol:
                raise ReciprocityViolation(i + 1, j + 1, r)
    return ReciprocalMatrix._from_upper(n, M[np.triu_indices(n, 1)])


def consistent_from_weights(w: Sequence[float]) -> ReciprocalMatrix:
    """The consistent matrix with entries w_i / w_j."""
    w = _positive_vector(w, "weights")
    if w.shape[0] < 2:
        raise WrongLength("need at least 2 weights")
    iu = np.triu_indices(w.shape[0], 1)
    return ReciprocalMatrix._from_upper(w.shape[0], w[iu[0]] / w[iu[1]])


def random_reciprocal(n: int, delta: float = 0.0, seed=None) -> ReciprocalMatrix:
    """Random reciprocal matrix at inconsistency scale ``delta``.

    Weights are drawn uniformly from [1, 9]; each upper entry w_i/w_j is then
    multiplied by exp(delta * u) with u uniform on [-1, 1].  delta = 0 gives a
    consistent matrix.
    """
    if int(n) < 2:
        raise WrongLength(f"dimension must be at least 2, got {n}")
    if not (delta >= 0 and np.isfinite(delta)):
        raise ValueError(f"delta must be finite and >= 0, got {delta}")
    n = int(n)
    rng = np.random.default_rng(seed)
    w = rng.uniform(1.0, 9.0, size=n)
    noise = rng.uniform(-1.0, 1.0, size=n * (n - 1) // 2)
    iu = np.triu_indices(n, 1)
    upper = w[iu[0]] / w[iu[1]]
    if delta > 0:
        upper = upper * np.exp(delta * noise)
    return ReciprocalMatrix._from_upper(n, upper)


def diag_similarity(A: ReciprocalMatrix, d) -> ReciprocalMatrix:
    """D A D^-1, i.e. entries d_i * a_ij / d_j."""
    if not isinstance(d, DiagonalVector):
        d = DiagonalVector(d)
    if d.n != A.n:
        raise DimensionMismatch(f"diagonal has length {d.n}, matrix is {A.n}x{A.n}")
    iu = np.triu_indices(A.n, 1)
    upper = d.d[iu[0]] * A.upper / d.d[iu[1]]
    return ReciprocalMatrix._from_upper(A.n, upper)


def perm_similarity(A: ReciprocalMatrix, p) -> ReciprocalMatrix:
    """P A P^T with result[i, j] = A[p(i), p(j)]."""
    if not isinstance(p, PermutationSpec):
        p = PermutationSpec(tuple(p))
    if p.n != A.n:
        raise DimensionMismatch(f"permutation has length {p.n}, matrix is {A.n}x{A.n}")
    idx = np.array(p.perm)
    return ReciprocalMatrix(A.dense[np.ix_(idx, idx)], _trusted=True)


def is_consistent(A: ReciprocalMatrix, rtol: float = 1e-12) -> bool:
    """Triple check a_ij * a_jk == a_ik within relative tolerance."""
    M = A.dense
    lhs = M[:, :, None] * M[None, :, :]
    rhs = M[:, None, :]
    return bool(np.all(np.abs(lhs - rhs) <= rtol * rhs))
