"""Build a reciprocal matrix whose right and inverse-left Perron vectors have
prescribed orders.

Pipeline for a seed matrix A:

1. A' = S^-1 A S with S = diag(right Perron vector of A); A' has constant row
   sums, so its right Perron vector is all ones.
2. u = left Perron vector of A' (must have distinct entries).
3. Relabel A' by a permutation similarity so that 1/u lands in the requested
   order.
4. B = D A' D^-1 with D = diag(w), w close to 1 in the requested right order.
   The right Perron vector of B is exactly w; for small enough eps the left
   vector keeps the order of u.  eps is found by halving.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistentSeed, DimensionMismatch, EpsTooLarge, LeftPerronTie, ScheduleExhausted, Tie
from .matrix_core import (
    DiagonalVector,
    PermutationSpec,
    ReciprocalMatrix,
    diag_similarity,
    perm_similarity,
)
from .ordering import DEFAULT_TIE_TOL, OrderSpec, compare_orders, entrywise_inverse, order_of
from .perron import (
    DEFAULT_CONFIG,
    PerronPair,
    SolverConfig,
    left_perron,
    right_perron,
    row_sum_normalize,
)

__all__ = [
    "TargetOrders",
    "EpsilonSchedule",
    "EpsTrial",
    "ConstructionResult",
    "VerificationReport",
    "make_w",
    "place_left_order",
    "construct",
    "verify",
    "CONSISTENT_CI_TOL",
    "CI_TOL",
    "RIGHT_VECTOR_TOL",
]

CONSISTENT_CI_TOL = 1e-9
CI_TOL = 1e-8
RIGHT_VECTOR_TOL = 1e-8


@dataclass(frozen=True)
class TargetOrders:
    """Requested ascending orders of the right vector and of 1/left vector."""

    right_order: OrderSpec
    inv_left_order: OrderSpec

    def __post_init__(self):
        if self.right_order.n != self.inv_left_order.n:
            raise DimensionMismatch("target orders have different lengths")

    @property
    def n(self) -> int:
        return self.right_order.n


@dataclass(frozen=True)
class EpsilonSchedule:
    eps0: float = 0.01
    shrink: float = 0.5
    max_halvings: int = 40

    def __post_init__(self):
        if not self.eps0 > 0:
            raise ValueError(f"eps0 must be positive, got {self.eps0}")
        if not 0 < self.shrink < 1:
            raise ValueError(f"shrink must lie in (0, 1), got {self.shrink}")
        if int(self.max_halvings) < 0:
            raise ValueError("max_halvings must be >= 0")

    def __iter__(self):
        eps = self.eps0
        for _ in range(int(self.max_halvings) + 1):
            yield eps
            eps *= self.shrink


@dataclass(frozen=True)
class EpsTrial:
    eps: float
    ok: bool
    reason: str = ""


@dataclass
class ConstructionResult:
    B: ReciprocalMatrix
    w: DiagonalVector
    epsilon: float
    seed_A: ReciprocalMatrix
    targets: TargetOrders
    A_prime: ReciprocalMatrix
    permutation: PermutationSpec
    right: PerronPair
    left: PerronPair
    ci_seed: float
    ci_B: float
    trace: list[EpsTrial] = field(default_factory=list)

    @property
    def right_order(self) -> OrderSpec:
        return order_of(self.right.vector, 0.0)

    @property
    def inv_left_order(self) -> OrderSpec:
        return order_of(entrywise_inverse(self.left.vector), 0.0)

    @property
    def relation(self):
        return compare_orders(self.right_order, self.inv_left_order)


@dataclass
class VerificationReport:
    checks: dict[str, bool]
    details: dict[str, object]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]


def make_w(order: OrderSpec, eps: float) -> DiagonalVector:
    """Arithmetic grid 1 - (n-k) eps placed so that ``w`` has the given order.

    >>> make_w(OrderSpec.ascending(4), 0.01).d.round(12).tolist()
    [0.97, 0.98, 0.99, 1.0]
    """
    n = order.n
    if not eps > 0:
        raise EpsTooLarge(f"eps must be positive, got {eps}")
    if eps * (n - 1) >= 1:
        raise EpsTooLarge(f"eps={eps} too large for n={n}: entries would be <= 0")
    w = np.empty(n)
    for k, idx in enumerate(order.ranking):
        w[idx] = 1.0 - (n - 1 - k) * eps
    return DiagonalVector(w)


def place_left_order(
    A_prime: ReciprocalMatrix,
    u: PerronPair,
    target: OrderSpec,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> tuple[ReciprocalMatrix, PermutationSpec]:
    """Permute A' so that the inverse of its left Perron vector has order ``target``.

    The left vector itself must end up in the reverse of ``target``.
    """
    if target.n != A_prime.n or u.n != A_prime.n:
        raise DimensionMismatch("order, vector and matrix sizes differ")
    current = order_of(u.vector, tie_tol)
    wanted = target.reversed()
    perm = [0] * A_prime.n
    for k, pos in enumerate(wanted.ranking):
        perm[pos] = current.ranking[k]
    p = PermutationSpec(tuple(perm))
    if p.is_identity():
        return A_prime, p
    return perm_similarity(A_prime, p), p


def _ci(lam: float, n: int) -> float:
    return (lam - n) / (n - 1)


def construct(
    seed_A: ReciprocalMatrix,
    targets: TargetOrders,
    sched: EpsilonSchedule = EpsilonSchedule(),
    cfg: SolverConfig = DEFAULT_CONFIG,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> ConstructionResult:
    """Run the full construction; returns the largest scheduled eps that works."""
    n = seed_A.n
    if targets.n != n:
        raise DimensionMismatch(f"targets have length {targets.n}, matrix is {n}x{n}")

    A_prime, right_seed = row_sum_normalize(seed_A, cfg)
    ci_seed = _ci(right_seed.lam, n)
    if ci_seed <= CONSISTENT_CI_TOL:
        raise ConsistentSeed(
            f"seed matrix is consistent (CI = {ci_seed:.3g}); its right and "
            "inverse-left Perron vectors coincide"
        )

    u = left_perron(A_prime, cfg)
    try:
        A_perm, perm = place_left_order(A_prime, u, targets.inv_left_order, tie_tol)
    except Tie as exc:
        raise LeftPerronTie(exc.report) from None

    trace: list[EpsTrial] = []
    for eps in sched:
        try:
            w = make_w(targets.right_order, eps)
        except EpsTooLarge:
            trace.append(EpsTrial(eps, False, "eps too large"))
            continue
        B = diag_similarity(A_perm, w)
        right = right_perron(B, cfg)
        left = left_perron(B, cfg)
        try:
            got_right = order_of(right.vector, tie_tol)
            got_inv_left = order_of(entrywise_inverse(left.vector), tie_tol)
        except Tie as exc:
            trace.append(EpsTrial(eps, False, f"tie at {exc.report}"))
            continue
        if got_right != targets.right_order:
            trace.append(EpsTrial(eps, False, f"right order {got_right}"))
            continue
        if got_inv_left != targets.inv_left_order:
            trace.append(EpsTrial(eps, False, f"inverse-left order {got_inv_left}"))
            continue
        trace.append(EpsTrial(eps, True))
        return ConstructionResult(
            B=B,
            w=w,
            epsilon=eps,
            seed_A=seed_A,
            targets=targets,
            A_prime=A_perm,
            permutation=perm,
            right=right,
            left=left,
            ci_seed=ci_seed,
            ci_B=_ci(right.lam, n),
            trace=trace,
        )
    raise ScheduleExhausted(trace)


def _fresh_start(n: int) -> np.ndarray:
    # Deliberately not the all-ones start used by construct().
    return np.arange(1, n + 1, dtype=float)[::-1]


def verify(
    result: ConstructionResult,
    cfg: SolverConfig = DEFAULT_CONFIG,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> VerificationReport:
    """Recompute everything about ``result`` from scratch and check its invariants."""
    B, n = result.B, result.B.n
    start = _fresh_start(n)
    right = right_perron(B, cfg, start=start)
    left = left_perron(B, cfg, start=start)
    seed_pair = right_perron(result.seed_A, cfg, start=start)
    ci_B = _ci(right.lam, n)
    ci_seed = _ci(seed_pair.lam, n)

    checks: dict[str, bool] = {}
    details: dict[str, object] = {"ci_seed": ci_seed, "ci_B": ci_B, "lam": right.lam}

    try:
        got_right = order_of(right.vector, tie_tol)
        details["right_order"] = got_right
        checks["right_order"] = got_right == result.targets.right_order
    except Tie as exc:
        details["right_order"] = f"tie {exc.report}"
        checks["right_order"] = False

    try:
        got_inv_left = order_of(entrywise_inverse(left.vector), tie_tol)
        details["inv_left_order"] = got_inv_left
        checks["inv_left_order"] = got_inv_left == result.targets.inv_left_order
    except Tie as exc:
        details["inv_left_order"] = f"tie {exc.report}"
        checks["inv_left_order"] = False

    drift = abs(ci_B - ci_seed)
    details["ci_drift"] = drift
    checks["ci_invariance"] = drift <= CI_TOL

    w = result.w.d
    in_range = bool(np.all(w <= 1.0) and np.all(w >= 1.0 - n * result.epsilon))
    checks["w_range"] = in_range and w.shape[0] == n

    if w.shape[0] == n:
        x = right.vector / right.vector[-1]
        dev = float(np.max(np.abs(x - w / w[-1])) / np.max(np.abs(w / w[-1])))
    else:
        dev = float("inf")
    details["right_vector_deviation"] = dev
    checks["right_vector_is_w"] = dev <= RIGHT_VECTOR_TOL
    return VerificationReport(checks, details)
