import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from perronorders.errors import DimensionMismatch, InvalidPermutation, NonPositiveEntry, Tie
from perronorders.ordering import (
    OrderSpec,
    compare_orders,
    discordant_pairs,
    entrywise_inverse,
    find_ties,
    order_of,
)

vectors = st.lists(st.floats(0.01, 100.0), min_size=1, max_size=9)
perms = st.integers(1, 8).flatmap(lambda n: st.permutations(range(n)))


def tie_free(x, tol=1e-9):
    return not find_ties(x, tol)


def test_order_of_increasing():
    assert order_of([0.9062, 0.9475, 0.9850, 1]).one_based() == (1, 2, 3, 4)


def test_order_of_example_right_vector_tie():
    with pytest.raises(Tie) as info:
        order_of([0.5, 1, 3, 1])
    assert info.value.report.one_based() == ((2, 4),)


def test_order_of_simple():
    assert order_of([3, 1, 2]).one_based() == (2, 3, 1)


def test_order_tie_is_relative():
    assert order_of([1.0, 1.0 + 1e-6]).one_based() == (1, 2)
    with pytest.raises(Tie):
        order_of([1.0, 1.0 + 1e-6], tie_tol=1e-5)


def test_entrywise_inverse():
    np.testing.assert_array_equal(entrywise_inverse([1, 2, 4]), [1, 0.5, 0.25])
    np.testing.assert_array_equal(entrywise_inverse(np.ones(5)), np.ones(5))
    with pytest.raises(NonPositiveEntry):
        entrywise_inverse([1.0, 0.0])


def test_compare_orders_examples():
    asc = OrderSpec.from_one_based((1, 2, 3, 4))
    assert compare_orders(asc, OrderSpec.from_one_based((4, 3, 2, 1))).kind == "reverse"
    assert compare_orders(asc, asc).kind == "same"
    other = compare_orders(asc, OrderSpec.from_one_based((2, 1, 3, 4)))
    assert (other.kind, other.discordant) == ("other", 1)


def test_compare_orders_example_increasing_w():
    right = order_of([0.97, 0.98, 0.99, 1])
    inv_left = order_of(entrywise_inverse([0.9343, 0.9669, 0.995, 1]))
    assert compare_orders(right, inv_left).kind == "reverse"


def test_compare_orders_mismatch():
    with pytest.raises(DimensionMismatch):
        compare_orders(OrderSpec.ascending(3), OrderSpec.ascending(4))


def test_order_spec_parse():
    assert OrderSpec.parse("4,3,2,1") == OrderSpec.descending(4)
    assert str(OrderSpec.parse(" 2, 1 ,3")) == "2,1,3"
    with pytest.raises(InvalidPermutation):
        OrderSpec.parse("1,1,2")
    with pytest.raises(InvalidPermutation):
        OrderSpec.parse("a,b")


@settings(max_examples=100)
@given(vectors, st.floats(1e-3, 1e3))
def test_scale_invariance(x, c):
    x = np.array(x)
    assume(tie_free(x, 1e-6))
    assert order_of(c * x) == order_of(x)


@settings(max_examples=100)
@given(vectors)
def test_inverse_involution(x):
    x = np.array(x)
    np.testing.assert_allclose(entrywise_inverse(entrywise_inverse(x)), x, rtol=1e-15)


@settings(max_examples=100)
@given(vectors)
def test_inverse_reverses_order(x):
    x = np.array(x)
    assume(tie_free(x, 1e-6))
    a, b = order_of(x), order_of(entrywise_inverse(x))
    assert b == a.reversed()
    assert compare_orders(a, b).kind in ("reverse", "same")  # same only for n = 1
    if len(x) > 1:
        assert compare_orders(a, b).kind == "reverse"


@settings(max_examples=100)
@given(perms)
def test_compare_self_and_reverse(p):
    a = OrderSpec(tuple(p))
    assert compare_orders(a, a).kind == "same"
    if a.n > 1:
        assert compare_orders(a, a.reversed()).kind == "reverse"


@settings(max_examples=100)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))))
def test_compare_symmetric_and_matches_brute_force(pq):
    a, b = OrderSpec(tuple(pq[0])), OrderSpec(tuple(pq[1]))
    assert compare_orders(a, b) == compare_orders(b, a)
    assert discordant_pairs(a, b) == oracles.discordant_brute(a.ranks(), b.ranks())
