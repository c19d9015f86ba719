"""The published 4x4 example as built-in golden data, and a self-check runner."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constructor import TargetOrders, construct
from .errors import PerronOrdersError
from .matrix_core import (
    DEFAULT_RECIPROCITY_TOL,
    DiagonalVector,
    ReciprocalMatrix,
    diag_similarity,
    from_upper_triangle,
    validate_approx,
)
from .ordering import OrderSpec, compare_orders, entrywise_inverse, order_of
from .perron import DEFAULT_CONFIG, SolverConfig, left_perron, right_perron, row_sum_normalize

GOLDEN_TOL = 5e-4

# Row-wise strictly upper entries of the seed matrix A.
SEED_UPPER = (0.6801, 0.1181, 0.5869, 0.2605, 1.7259, 1.6563)

# Printed values, 4 decimals.
SEED_PRINTED = (
    (1.0, 0.6801, 0.1181, 0.5869),
    (1.4704, 1.0, 0.2605, 1.7259),
    (8.4660, 3.8385, 1.0, 1.6563),
    (1.7038, 0.5794, 0.6038, 1.0),
)
RIGHT_SEED = (0.5, 1.0, 3.0, 1.0)
ROW_SUM_FORM = (
    (1.0, 1.3602, 0.7087, 1.1738),
    (0.7352, 1.0, 0.78153, 1.7259),
    (1.4110, 1.2795, 1.0, 0.5521),
    (0.8519, 0.5794, 1.8113, 1.0),
)
LEFT_ROW_SUM_FORM = (0.9062, 0.9475, 0.9850, 1.0)
W_INCREASING = (0.97, 0.98, 0.99, 1.0)
LEFT_B_INCREASING = (0.9343, 0.9669, 0.995, 1.0)
W_DECREASING = (1.0, 0.99, 0.98, 0.97)
LEFT_B_DECREASING = (0.8790, 0.9283, 0.9750, 1.0)


def seed_matrix() -> ReciprocalMatrix:
    return from_upper_triangle(4, SEED_UPPER)


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    expected: object
    computed: object
    diff: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<48s} max|diff| = {self.diff:.2e}"


def _scaled(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x / x[-1]


def _plain(x) -> tuple[float, ...]:
    return tuple(float(v) for v in x)


def _vector_check(name, expected, computed, tol) -> GoldenCheck:
    e, c = _scaled(expected), _scaled(computed)
    diff = float(np.max(np.abs(e - c)))
    return GoldenCheck(name, _plain(e), _plain(np.round(c, 6)), diff, diff <= tol)


def _relation_check(name, expected_kind, right, inv_left) -> GoldenCheck:
    rel = compare_orders(order_of(right, 0.0), order_of(inv_left, 0.0))
    ok = rel.kind == expected_kind
    return GoldenCheck(name, expected_kind, rel.kind, 0.0 if ok else 1.0, ok)


def run_example(cfg: SolverConfig = DEFAULT_CONFIG, tol: float = GOLDEN_TOL) -> list[GoldenCheck]:
    """Recompute every printed quantity of the example and diff against it."""
    checks: list[GoldenCheck] = []
    A = seed_matrix()

    # The printed lower triangle is rounded independently of the upper one
    # (1/0.1181 = 8.4674 vs printed 8.4660), so it is checked as a reciprocal
    # matrix at the loading tolerance rather than entrywise at ``tol``.
    printed = np.array(SEED_PRINTED)
    residual = float(np.max(np.abs(printed * printed.T - 1.0)))
    try:
        same_upper = validate_approx(printed) == A
    except PerronOrdersError:
        same_upper = False
    checks.append(
        GoldenCheck(
            "printed A is reciprocal within 1e-3",
            DEFAULT_RECIPROCITY_TOL,
            residual,
            residual,
            same_upper,
        )
    )

    v = right_perron(A, cfg)
    checks.append(_vector_check("right Perron vector of A", RIGHT_SEED, v.vector, tol))

    A_prime, _ = row_sum_normalize(A, cfg)
    expected = np.array(ROW_SUM_FORM)
    for i in range(4):
        for j in range(4):
            diff = float(abs(A_prime.dense[i, j] - expected[i, j]))
            checks.append(
                GoldenCheck(
                    f"A' entry ({i + 1},{j + 1})",
                    float(expected[i, j]),
                    round(float(A_prime.dense[i, j]), 6),
                    diff,
                    diff <= tol,
                )
            )

    u = left_perron(A_prime, cfg)
    checks.append(_vector_check("left Perron vector of A'", LEFT_ROW_SUM_FORM, u.vector, tol))

    cases = (
        ("w increasing", W_INCREASING, LEFT_B_INCREASING, "reverse"),
        ("w decreasing", W_DECREASING, LEFT_B_DECREASING, "same"),
    )
    for label, w, left_expected, relation in cases:
        B = diag_similarity(A_prime, DiagonalVector(w))
        right = right_perron(B, cfg)
        left = left_perron(B, cfg)
        checks.append(_vector_check(f"right Perron vector of B ({label})", w, right.vector, tol))
        checks.append(_vector_check(f"left Perron vector of B ({label})", left_expected, left.vector, tol))
        checks.append(
            _relation_check(
                f"right vs inverse-left relation ({label})",
                relation,
                right.vector,
                entrywise_inverse(left.vector),
            )
        )

        # The same B must come out of the full construction at the first eps.
        targets = TargetOrders(order_of(w, 0.0), OrderSpec.descending(4))
        name = f"construct() picks w ({label})"
        try:
            result = construct(A, targets, cfg=cfg)
        except PerronOrdersError as exc:
            checks.append(GoldenCheck(name, w, str(exc), float("inf"), False))
            continue
        diff = float(np.max(np.abs(result.w.d - np.array(w))))
        checks.append(GoldenCheck(name, w, _plain(result.w.d), diff, diff <= tol))
    return checks
