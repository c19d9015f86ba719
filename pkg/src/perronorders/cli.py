"""Command-line interface.

Exit codes:
    0  success
    1  a check failed (example diff, sweep failure, construction not verified)
    2  bad input: usage, parse, reciprocity or parameter error
    3  power iteration did not converge
    4  seed matrix is consistent
    5  left Perron vector of the normalized seed has tied entries
    6  epsilon schedule exhausted
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import example as golden
from .constructor import EpsilonSchedule, TargetOrders, construct, verify
from .errors import (
    ConsistentSeed,
    LeftPerronTie,
    NoConvergence,
    PerronOrdersError,
    ScheduleExhausted,
    Tie,
)
from .matrix_core import DEFAULT_RECIPROCITY_TOL, random_reciprocal
from .matrix_io import dumps_matrix, load_matrix
from .ordering import DEFAULT_TIE_TOL, OrderSpec, compare_orders, entrywise_inverse, order_of
from .perron import SolverConfig, left_perron, right_perron
from .sweep import exhaustive_sweep, random_sweep

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_CONSISTENT = 4
EXIT_TIE = 5
EXIT_EXHAUSTED = 6

COINCIDE_TOL = 1e-8


class _InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _fmt_vec(x) -> str:
    return "(" + ", ".join(f"{v:.6f}" for v in np.asarray(x)) + ")"


def _solver_config(args) -> SolverConfig:
    try:
        return SolverConfig(tol=args.tol, max_iter=args.max_iter)
    except ValueError as exc:
        raise _InputError(str(exc)) from None


def _schedule(args) -> EpsilonSchedule:
    try:
        return EpsilonSchedule(args.eps0, args.shrink, args.max_halvings)
    except ValueError as exc:
        raise _InputError(str(exc)) from None


def _load(args):
    try:
        return load_matrix(args.matrix, args.reciprocity_tol)
    except OSError as exc:
        raise _InputError(f"{args.matrix}: {exc.strerror}") from None
    except PerronOrdersError as exc:
        raise _InputError(f"{args.matrix}: {exc}") from None


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _order_or_tie(x, tie_tol):
    try:
        return order_of(x, tie_tol), None
    except Tie as exc:
        return None, exc.report


def cmd_solve(args) -> int:
    A = _load(args)
    cfg = _solver_config(args)
    right = right_perron(A, cfg)
    left = left_perron(A, cfg)
    inv_left = entrywise_inverse(left.vector)
    inv_left = inv_left / inv_left[-1]
    ci = (right.lam - A.n) / (A.n - 1)

    r_order, r_tie = _order_or_tie(right.vector, args.tie_tol)
    l_order, l_tie = _order_or_tie(inv_left, args.tie_tol)
    gap = float(np.max(np.abs(right.vector - inv_left)) / np.max(right.vector))
    if gap <= COINCIDE_TOL:
        relation = "vectors coincide"
    elif r_order is None or l_order is None:
        relation = "unavailable (tie)"
    else:
        relation = str(compare_orders(r_order, l_order))

    def order_text(order, tie):
        return str(order) if order is not None else f"unavailable, tie at {tie}"

    lines = [
        f"n                      {A.n}",
        f"lambda                 {right.lam:.10f}",
        f"CI                     {ci:.10f}",
        f"right Perron vector    {_fmt_vec(right.vector)}",
        f"left Perron vector     {_fmt_vec(left.vector)}",
        f"inverse-left vector    {_fmt_vec(inv_left)}",
        f"right order            {order_text(r_order, r_tie)}",
        f"inverse-left order     {order_text(l_order, l_tie)}",
        f"relation               {relation}",
    ]
    payload = {
        "n": A.n,
        "lambda": right.lam,
        "ci": ci,
        "right": right.vector.tolist(),
        "left": left.vector.tolist(),
        "inverse_left": inv_left.tolist(),
        "right_order": list(r_order.one_based()) if r_order else None,
        "right_ties": [list(p) for p in r_tie.one_based()] if r_tie else [],
        "inverse_left_order": list(l_order.one_based()) if l_order else None,
        "inverse_left_ties": [list(p) for p in l_tie.one_based()] if l_tie else [],
        "relation": relation,
    }
    _emit(args, payload, lines)
    return EXIT_OK


def _parse_order(text: str, n: int, flag: str) -> OrderSpec:
    try:
        order = OrderSpec.parse(text)
    except PerronOrdersError as exc:
        raise _InputError(f"{flag}: {exc}") from None
    if order.n != n:
        raise _InputError(f"{flag}: expected a permutation of 1..{n}, got {text!r}")
    return order


def cmd_construct(args) -> int:
    A = _load(args)
    cfg = _solver_config(args)
    sched = _schedule(args)
    targets = TargetOrders(
        _parse_order(args.right_order, A.n, "--right-order"),
        _parse_order(args.inv_left_order, A.n, "--inv-left-order"),
    )
    result = construct(A, targets, sched, cfg, args.tie_tol)
    report = verify(result, cfg, args.tie_tol)

    text = dumps_matrix(result.B, args.format)
    if args.out:
        Path(args.out).write_text(text)

    lines = [
        f"w                      {_fmt_vec(result.w.d)}",
        f"eps                    {result.epsilon:.6g}",
        f"lambda                 {result.right.lam:.10f}",
        f"CI(seed)               {result.ci_seed:.10f}",
        f"CI(B)                  {result.ci_B:.10f}",
        f"permutation of A'      {','.join(map(str, result.permutation.one_based()))}",
        f"right Perron of B      {_fmt_vec(result.right.vector)}",
        f"left Perron of B       {_fmt_vec(result.left.vector)}",
        f"right order            {result.right_order}",
        f"inverse-left order     {result.inv_left_order}",
        f"relation               {result.relation}",
        "eps trials             "
        + "; ".join(f"{t.eps:.3g}:{'ok' if t.ok else t.reason}" for t in result.trace),
        "verification:",
    ]
    lines += [f"  {'PASS' if ok else 'FAIL'}  {name}" for name, ok in report.checks.items()]
    if not args.out:
        lines += ["B:", text.rstrip("\n")]
    payload = {
        "w": result.w.d.tolist(),
        "eps": result.epsilon,
        "lambda": result.right.lam,
        "ci_seed": result.ci_seed,
        "ci_B": result.ci_B,
        "permutation": list(result.permutation.one_based()),
        "right": result.right.vector.tolist(),
        "left": result.left.vector.tolist(),
        "right_order": list(result.right_order.one_based()),
        "inverse_left_order": list(result.inv_left_order.one_based()),
        "relation": result.relation.kind,
        "trace": [{"eps": t.eps, "ok": t.ok, "reason": t.reason} for t in result.trace],
        "verification": report.checks,
        "B": result.B.dense.tolist(),
    }
    _emit(args, payload, lines)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_example(args) -> int:
    cfg = _solver_config(args)
    checks = golden.run_example(cfg)
    if args.json:
        print(json.dumps([{"name": c.name, "diff": c.diff, "passed": c.passed} for c in checks], indent=2))
    else:
        for c in checks:
            print(c.line())
        failed = [c for c in checks if not c.passed]
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
        for c in failed:
            print(f"diff in {c.name}: expected {c.expected}, computed {c.computed}", file=sys.stderr)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


def cmd_gen(args) -> int:
    if args.n < 2:
        raise _InputError(f"n must be at least 2, got {args.n}")
    if not args.delta >= 0:
        raise _InputError(f"delta must be >= 0, got {args.delta}")
    text = dumps_matrix(random_reciprocal(args.n, args.delta, args.seed), args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.n < 4:
        raise _InputError(
            "n must be at least 4: for n = 3 the right and inverse-left Perron "
            "vectors always coincide, so most order pairs are unreachable"
        )
    cfg = _solver_config(args)
    sched = _schedule(args)
    if args.exhaustive:
        summary = exhaustive_sweep(args.n, args.delta, args.seed, sched, cfg, args.tie_tol)
    else:
        summary = random_sweep(args.n, args.count, args.delta, args.seed, sched, cfg, args.tie_tol)
    eps = summary.eps_values
    lines = [
        f"n                      {summary.n}",
        f"mode                   {'exhaustive' if args.exhaustive else 'random'}",
        f"trials                 {len(summary.trials)}",
        f"success rate           {100 * summary.success_rate:.1f}%",
        f"max CI drift           {summary.max_ci_drift:.3e}",
        f"max |right - w|        {summary.max_right_vector_deviation:.3e}",
        f"runtime                {summary.seconds:.2f} s",
    ]
    if eps.size:
        lines.insert(
            4,
            f"eps min/median/max     {eps.min():.3g} / {np.median(eps):.3g} / {eps.max():.3g}",
        )
    failures = sorted(summary.failures, key=lambda t: t.seed)
    for t in failures:
        lines.append(
            f"FAIL seed={t.seed} right={t.targets.right_order} "
            f"inv-left={t.targets.inv_left_order}: {t.reason}"
        )
    payload = {
        "n": summary.n,
        "trials": len(summary.trials),
        "successes": summary.successes,
        "eps": eps.tolist(),
        "max_ci_drift": summary.max_ci_drift,
        "max_right_vector_deviation": summary.max_right_vector_deviation,
        "seconds": summary.seconds,
        "failures": [
            {
                "seed": t.seed,
                "right_order": list(t.targets.right_order.one_based()),
                "inverse_left_order": list(t.targets.inv_left_order.one_based()),
                "reason": t.reason,
            }
            for t in failures
        ],
    }
    _emit(args, payload, lines)
    return EXIT_OK if not failures and summary.trials else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--tol", type=float, default=1e-12, help="power iteration tolerance")
    solver.add_argument("--max-iter", type=int, default=10_000)
    solver.add_argument("--tie-tol", type=float, default=DEFAULT_TIE_TOL,
                        help="relative gap below which two entries count as tied")
    solver.add_argument("--json", action="store_true", help="print the report as JSON")

    schedule = argparse.ArgumentParser(add_help=False)
    schedule.add_argument("--eps0", type=float, default=0.01)
    schedule.add_argument("--shrink", type=float, default=0.5)
    schedule.add_argument("--max-halvings", type=int, default=40)

    matrix = argparse.ArgumentParser(add_help=False)
    matrix.add_argument("matrix", help="matrix file (text or JSON)")
    matrix.add_argument("--reciprocity-tol", type=float, default=DEFAULT_RECIPROCITY_TOL,
                        help="accepted |a_ij*a_ji - 1| when loading")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text", help="matrix output format")
    fmt.add_argument("--out", help="write the matrix here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="perronorders",
        description="Reciprocal matrices with prescribed orders of the right and "
        "entrywise-inverse left Perron eigenvectors.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("\n", 2)[2],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[matrix, solver],
                       help="Perron pairs, CI and orders of a matrix")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "construct",
        parents=[matrix, solver, schedule, fmt],
        help="build B with the requested orders",
        description="Orders are comma-separated 1-based rankings from smallest to "
        "largest entry. --inv-left-order names the order of the ENTRYWISE INVERSE "
        "of the left Perron vector, so the left vector itself ends up in the "
        "reverse order.",
    )
    p.add_argument("--right-order", required=True, help="e.g. 1,2,3,4")
    p.add_argument("--inv-left-order", required=True, help="e.g. 4,3,2,1")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("example", parents=[solver], help="replay the built-in 4x4 example")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("gen", parents=[fmt], help="random reciprocal matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, default=0.0, help="inconsistency scale (0 = consistent)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", parents=[solver, schedule],
                       help="construct for many random seeds and target orders")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--delta", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true",
                   help="all n! x n! order pairs on a single seed matrix")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        _err(str(exc))
        return EXIT_INPUT
    except NoConvergence as exc:
        _err(str(exc))
        return EXIT_SOLVER
    except ConsistentSeed as exc:
        _err(str(exc))
        return EXIT_CONSISTENT
    except LeftPerronTie as exc:
        _err(f"left Perron vector of the row-sum normal form has ties: {exc.report}")
        return EXIT_TIE
    except ScheduleExhausted as exc:
        _err(str(exc))
        return EXIT_EXHAUSTED


if __name__ == "__main__":
    sys.exit(main())
