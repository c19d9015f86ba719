"""Strict orders of positive vectors, tie detection and order comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidPermutation, NonPositiveEntry, Tie

__all__ = [
    "DEFAULT_TIE_TOL",
    "OrderSpec",
    "TieReport",
    "OrderRelation",
    "order_of",
    "entrywise_inverse",
    "compare_orders",
    "discordant_pairs",
]

DEFAULT_TIE_TOL = 1e-9


@dataclass(frozen=True)
class OrderSpec:
    """Indices listed from smallest entry to largest (0-based internally)."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(i) for i in self.ranking)
        if sorted(r) != list(range(len(r))):
            raise InvalidPermutation(f"ranking is not a permutation: {r}")
        object.__setattr__(self, "ranking", r)

    @classmethod
    def from_one_based(cls, ranking: Sequence[int]) -> "OrderSpec":
        return cls(tuple(int(i) - 1 for i in ranking))

    @classmethod
    def parse(cls, text: str) -> "OrderSpec":
        """Parse a comma-separated 1-based ranking such as ``"4,3,2,1"``."""
        try:
            items = [int(t) for t in text.replace(" ", "").split(",") if t]
        except ValueError as exc:
            raise InvalidPermutation(f"cannot parse order {text!r}") from exc
        return cls.from_one_based(items)

    @classmethod
    def ascending(cls, n: int) -> "OrderSpec":
        return cls(tuple(range(n)))

    @classmethod
    def descending(cls, n: int) -> "OrderSpec":
        return cls(tuple(range(n - 1, -1, -1)))

    @property
    def n(self) -> int:
        return len(self.ranking)

    def reversed(self) -> "OrderSpec":
        return OrderSpec(self.ranking[::-1])

    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.ranking)

    def ranks(self) -> np.ndarray:
        """ranks()[i] is the 0-based position of index i in the ranking."""
        r = np.empty(self.n, dtype=int)
        r[list(self.ranking)] = np.arange(self.n)
        return r

    def __str__(self):
        return ",".join(str(i) for i in self.one_based())


@dataclass(frozen=True)
class TieReport:
    """Index pairs (0-based) whose entries are equal within the tie tolerance."""

    pairs: tuple[tuple[int, int], ...] = field(default_factory=tuple)
    tie_tol: float = DEFAULT_TIE_TOL

    def one_based(self) -> tuple[tuple[int, int], ...]:
        return tuple((i + 1, j + 1) for i, j in self.pairs)

    def __bool__(self):
        return bool(self.pairs)

    def __str__(self):
        return ", ".join(f"({i},{j})" for i, j in self.one_based())


@dataclass(frozen=True)
class OrderRelation:
    """Outcome of :func:`compare_orders`: ``same``, ``reverse`` or ``other``."""

    kind: str
    discordant: int

    def __str__(self):
        if self.kind == "other":
            return f"Other({self.discordant} discordant pairs)"
        return self.kind.capitalize()


def find_ties(x, tie_tol: float = DEFAULT_TIE_TOL) -> TieReport:
    x = np.asarray(x, dtype=float)
    pairs = tuple(
        (i, j)
        for i, j in combinations(range(x.shape[0]), 2)
        if abs(x[i] - x[j]) <= tie_tol * max(abs(x[i]), abs(x[j]))
    )
    return TieReport(pairs, tie_tol)


def order_of(x, tie_tol: float = DEFAULT_TIE_TOL) -> OrderSpec:
    """Ascending order of x; raises :class:`Tie` if two entries are too close."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] < 1:
        raise ValueError("cannot order an empty vector")
    ties = find_ties(x, tie_tol)
    if ties:
        raise Tie(ties)
    return OrderSpec(tuple(int(i) for i in np.argsort(x, kind="stable")))


def entrywise_inverse(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise NonPositiveEntry("entrywise inverse needs strictly positive entries")
    return 1.0 / x


def discordant_pairs(a: OrderSpec, b: OrderSpec) -> int:
    """Number of index pairs ranked one way by ``a`` and the other way by ``b``."""
    if a.n != b.n:
        raise DimensionMismatch(f"orders have lengths {a.n} and {b.n}")
    ra, rb = a.ranks(), b.ranks()
    da = np.sign(ra[:, None] - ra[None, :])
    db = np.sign(rb[:, None] - rb[None, :])
    return int(np.sum(np.triu(da * db < 0, 1)))


def compare_orders(a: OrderSpec, b: OrderSpec) -> OrderRelation:
    d = discordant_pairs(a, b)
    if d == 0:
        return OrderRelation("same", 0)
    if d == a.n * (a.n - 1) // 2:
        return OrderRelation("reverse", d)
    return OrderRelation("other", d)
