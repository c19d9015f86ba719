"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PerronOrdersError(Exception):
    """Base class for every error raised by this package."""


class MatrixError(PerronOrdersError, ValueError):
    pass


class NonPositiveEntry(MatrixError):
    pass


class NonFinite(MatrixError):
    pass


class WrongLength(MatrixError):
    pass


class NotSquare(MatrixError):
    pass


class DimensionMismatch(MatrixError):
    pass


class InvalidPermutation(MatrixError):
    pass


class ReciprocityViolation(MatrixError):
    """Raised when a dense matrix is not reciprocal within tolerance.

    ``i`` and ``j`` are 1-based, matching user-facing output.
    """

    def __init__(self, i: int, j: int, residual: float):
        self.i = i
        self.j = j
        self.residual = residual
        super().__init__(
            f"reciprocity violated at ({i},{j}): |a_ij*a_ji - 1| = {residual:.3g}"
        )


class NoConvergence(PerronOrdersError, ArithmeticError):
    def __init__(self, max_iter: int, residual: float):
        self.max_iter = max_iter
        self.residual = residual
        super().__init__(
            f"power iteration did not converge in {max_iter} iterations "
            f"(residual {residual:.3g})"
        )


class Tie(PerronOrdersError, ValueError):
    """Order extraction refused because some entries are (nearly) equal."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"tied entries: {report}")


class EpsTooLarge(PerronOrdersError, ValueError):
    pass


class ConsistentSeed(PerronOrdersError, ValueError):
    pass


class LeftPerronTie(Tie):
    pass


class ScheduleExhausted(PerronOrdersError, RuntimeError):
    def __init__(self, trace):
        self.trace = trace
        super().__init__(
            f"no epsilon in the schedule produced the target orders "
            f"({len(trace)} tried)"
        )
