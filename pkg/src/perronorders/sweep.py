"""Empirical check that every pair of target orders is reachable."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .constructor import EpsilonSchedule, TargetOrders, construct, verify
from .errors import PerronOrdersError
from .matrix_core import ReciprocalMatrix, random_reciprocal
from .ordering import DEFAULT_TIE_TOL, OrderSpec
from .perron import DEFAULT_CONFIG, SolverConfig


@dataclass
class Trial:
    seed: int
    targets: TargetOrders
    ok: bool
    eps: float | None = None
    ci_drift: float | None = None
    right_vector_deviation: float | None = None
    reason: str = ""


@dataclass
class SweepSummary:
    n: int
    trials: list[Trial] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def successes(self) -> int:
        return sum(t.ok for t in self.trials)

    @property
    def success_rate(self) -> float:
        return self.successes / len(self.trials) if self.trials else 0.0

    @property
    def failures(self) -> list[Trial]:
        return [t for t in self.trials if not t.ok]

    @property
    def eps_values(self) -> np.ndarray:
        return np.array([t.eps for t in self.trials if t.ok])

    @property
    def max_ci_drift(self) -> float:
        vals = [t.ci_drift for t in self.trials if t.ci_drift is not None]
        return max(vals) if vals else float("nan")

    @property
    def max_right_vector_deviation(self) -> float:
        vals = [t.right_vector_deviation for t in self.trials if t.right_vector_deviation is not None]
        return max(vals) if vals else float("nan")


def run_trial(
    A: ReciprocalMatrix,
    targets: TargetOrders,
    seed: int,
    sched: EpsilonSchedule,
    cfg: SolverConfig,
    tie_tol: float,
) -> Trial:
    try:
        result = construct(A, targets, sched, cfg, tie_tol)
        report = verify(result, cfg, tie_tol)
    except PerronOrdersError as exc:
        return Trial(seed, targets, False, reason=f"{type(exc).__name__}: {exc}")
    return Trial(
        seed,
        targets,
        report.passed,
        eps=result.epsilon,
        ci_drift=report.details["ci_drift"],
        right_vector_deviation=report.details["right_vector_deviation"],
        reason="" if report.passed else "verify failed: " + ", ".join(report.failures()),
    )


def random_sweep(
    n: int,
    count: int,
    delta: float,
    seed: int = 0,
    sched: EpsilonSchedule = EpsilonSchedule(),
    cfg: SolverConfig = DEFAULT_CONFIG,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> SweepSummary:
    """``count`` trials; trial k uses a fresh seed matrix and random targets from seed + k."""
    summary = SweepSummary(n)
    t0 = time.perf_counter()
    for k in range(count):
        s = seed + k
        rng = np.random.default_rng(s)
        A = random_reciprocal(n, delta, rng)
        targets = TargetOrders(OrderSpec(tuple(rng.permutation(n))), OrderSpec(tuple(rng.permutation(n))))
        summary.trials.append(run_trial(A, targets, s, sched, cfg, tie_tol))
    summary.seconds = time.perf_counter() - t0
    return summary


def exhaustive_sweep(
    n: int,
    delta: float,
    seed: int = 0,
    sched: EpsilonSchedule = EpsilonSchedule(),
    cfg: SolverConfig = DEFAULT_CONFIG,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> SweepSummary:
    """All n! x n! target pairs on one random seed matrix."""
    summary = SweepSummary(n)
    t0 = time.perf_counter()
    A = random_reciprocal(n, delta, seed)
    perms = [OrderSpec(p) for p in itertools.permutations(range(n))]
    for right in perms:
        for inv_left in perms:
            summary.trials.append(run_trial(A, TargetOrders(right, inv_left), seed, sched, cfg, tie_tol))
    summary.seconds = time.perf_counter() - t0
    return summary
