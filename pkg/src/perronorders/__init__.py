"""Reciprocal matrices whose right and entrywise-inverse left Perron
eigenvectors have prescribed orders."""

from .constructor import (
    ConstructionResult,
    EpsilonSchedule,
    TargetOrders,
    construct,
    make_w,
    place_left_order,
    verify,
)
from .errors import *  # noqa: F401,F403
from .matrix_core import (
    DiagonalVector,
    PermutationSpec,
    ReciprocalMatrix,
    consistent_from_weights,
    diag_similarity,
    from_upper_triangle,
    is_consistent,
    perm_similarity,
    random_reciprocal,
    validate_approx,
)
from .ordering import OrderRelation, OrderSpec, TieReport, compare_orders, entrywise_inverse, order_of
from .perron import (
    PerronPair,
    SolverConfig,
    consistency_index,
    left_perron,
    right_perron,
    row_sum_normalize,
)

__version__ = "0.1.0"
